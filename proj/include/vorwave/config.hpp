#pragma once

#include "vorwave/grid.hpp"
#include "vorwave/vorticity.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace vorwave {

struct TraceRequest {
    double x0 = 0.0;
    double y0 = 0.0;
    double periods = 1.0;
    double dt = 0.0; // 0 = default (2 pi / c) / 2000
};

/// Validated run configuration. Amplitudes are in units of the laminar depth
/// at the bifurcation point. Unknown keys and out-of-range values are errors.
struct RunConfig {
    std::vector<double> gamma;
    double g = 9.81;
    double p0 = -1.0;
    int nq = 128;
    int np = 64;
    double a_max = 0.01;
    double delta_a = 0.0025;
    double tol = 1e-10;
    int max_iter = 25;
    double lambda = 1.0; // laminar profile parameter for the `laminar` command
    double lambda_min = 0.05;
    double lambda_max = 2.0;
    std::string out = "out";
    std::string kernels = "auto";
    int jobs = 1;
    int field_nx = 64;
    int field_ny = 33;
    bool plot_streamlines = true;
    bool plot_orbits = true;
    std::vector<TraceRequest> trace;
    std::vector<std::vector<double>> sweep_gammas;

    WaveParameters wave_parameters() const;
    VorticitySpec vorticity() const;
    nlohmann::json to_json() const;
};

/// Load `path` (empty = defaults only), then apply `key=value` overrides
/// (values parsed as JSON, falling back to raw strings). Throws ConfigError
/// naming the offending key on parse errors, unknown keys, or bad ranges.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides);

/// Validate an already-assembled JSON object into a RunConfig.
RunConfig config_from_json(const nlohmann::json& j);

} // namespace vorwave
