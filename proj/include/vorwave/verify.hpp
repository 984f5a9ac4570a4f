#pragma once

#include "vorwave/fields.hpp"
#include "vorwave/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace vorwave {

/// One verified claim. Strict inequalities are asserted with tolerance bands,
/// never machine-strict: "x > 0" passes when min x > -tol_eq and the extremal
/// value also exceeds a positivity floor (so an identically-zero field cannot
/// pass vacuously). Skipped checks name the unmet hypothesis.
struct CheckResult {
    std::string id;
    bool applied = true;
    std::string skip_reason;
    bool pass = true;
    double margin = 0.0;
    double tolerance = 0.0;
    std::string worst_location;
    std::string note;
};

struct VerificationReport {
    std::vector<double> gamma_coeffs;
    double g = 0.0, p0 = 0.0;
    int nq = 0, np = 0;
    double amplitude = 0.0, amplitude_rel = 0.0;
    double d = 0.0, c = 0.0, Q = 0.0, C = 0.0;
    double max_abs_eta_x = 0.0;
    bool trivial = true;
    double tol_eq = 0.0, pos_floor = 0.0, tol_drift = 0.0;
    std::vector<std::string> validation_violations;
    std::vector<CheckResult> checks;
    bool overall = false;

    nlohmann::json to_json() const;
};

// The four suites. Gates follow the hypotheses of the corresponding claims;
// checks whose "near the bifurcation point" hypothesis (operationalized as
// a <= 0.05 d) is unmet still run but are labeled instead of failed.
std::vector<CheckResult> check_monotonicity_suite(const WaveSolution& sol,
                                                  const PhysicalFrame& frame);
std::vector<CheckResult> check_drift_suite(const WaveSolution& sol, const PhysicalFrame& frame);
std::vector<CheckResult> check_identity_suite(const WaveSolution& sol,
                                              const PhysicalFrame& frame);
std::vector<CheckResult> check_surface_suite(const WaveSolution& sol,
                                             const PhysicalFrame& frame);

VerificationReport run_all(const WaveSolution& sol);

/// Max-abs residuals of the four differential operator identities evaluated on
/// the discrete solution, measured on the interior with `trim_p` of each
/// p-boundary excluded (second order under grid refinement).
struct OperatorResiduals {
    double hq_op = 0.0;
    double hp_op = 0.0;
    double hqp_op = 0.0;
    double hdiffeo = 0.0;
};
OperatorResiduals operator_identity_residuals(const WaveSolution& sol, double trim_p);

/// Tolerance used for operator-identity checks at a given grid, anchored at
/// 1e-3 on a 256 x 128 grid and scaled with (dq^2 + dp^2).
double operator_identity_tolerance(const HodographGrid& grid);

} // namespace vorwave
