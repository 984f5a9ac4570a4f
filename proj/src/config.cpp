#include "vorwave/config.hpp"
#include "vorwave/errors.hpp"

#include <fstream>
#include <set>

namespace vorwave {

namespace {

const std::set<std::string> kKnownKeys = {
    "gamma",      "g",          "p0",         "Nq",         "Np",
    "a_max",      "delta_a",    "tol",        "max_iter",   "lambda",
    "lambda_min", "lambda_max", "out",        "kernels",    "jobs",
    "field_nx",   "field_ny",   "plot_streamlines", "plot_orbits",
    "trace",      "sweep_gammas"};

template <typename T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

} // namespace

WaveParameters RunConfig::wave_parameters() const {
    WaveParameters p;
    p.g = g;
    p.p0 = p0;
    p.nq = nq;
    p.np = np;
    p.tol = tol;
    p.max_iter = max_iter;
    return p;
}

VorticitySpec RunConfig::vorticity() const { return VorticitySpec(gamma, -p0); }

nlohmann::json RunConfig::to_json() const {
    nlohmann::json jtrace = nlohmann::json::array();
    for (const auto& t : trace)
        jtrace.push_back({{"x0", t.x0}, {"y0", t.y0}, {"periods", t.periods}, {"dt", t.dt}});
    return nlohmann::json{
        {"gamma", gamma},
        {"g", g},
        {"p0", p0},
        {"Nq", nq},
        {"Np", np},
        {"a_max", a_max},
        {"delta_a", delta_a},
        {"tol", tol},
        {"max_iter", max_iter},
        {"lambda", lambda},
        {"lambda_min", lambda_min},
        {"lambda_max", lambda_max},
        {"out", out},
        {"kernels", kernels},
        {"jobs", jobs},
        {"field_nx", field_nx},
        {"field_ny", field_ny},
        {"plot_streamlines", plot_streamlines},
        {"plot_orbits", plot_orbits},
        {"trace", jtrace},
        {"sweep_gammas", sweep_gammas},
    };
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKnownKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");

    RunConfig c;
    c.gamma = get_or<std::vector<double>>(j, "gamma", {});
    c.g = get_or<double>(j, "g", 9.81);
    c.p0 = get_or<double>(j, "p0", -1.0);
    c.nq = get_or<int>(j, "Nq", 128);
    c.np = get_or<int>(j, "Np", 64);
    c.a_max = get_or<double>(j, "a_max", 0.01);
    c.delta_a = get_or<double>(j, "delta_a", 0.0025);
    c.tol = get_or<double>(j, "tol", 1e-10);
    c.max_iter = get_or<int>(j, "max_iter", 25);
    c.lambda = get_or<double>(j, "lambda", 1.0);
    c.lambda_min = get_or<double>(j, "lambda_min", 0.05);
    c.lambda_max = get_or<double>(j, "lambda_max", 2.0);
    c.out = get_or<std::string>(j, "out", "out");
    c.kernels = get_or<std::string>(j, "kernels", "auto");
    c.jobs = get_or<int>(j, "jobs", 1);
    c.field_nx = get_or<int>(j, "field_nx", 64);
    c.field_ny = get_or<int>(j, "field_ny", 33);
    c.plot_streamlines = get_or<bool>(j, "plot_streamlines", true);
    c.plot_orbits = get_or<bool>(j, "plot_orbits", true);
    if (j.contains("trace")) {
        if (!j.at("trace").is_array()) throw ConfigError("config key 'trace' must be an array");
        for (const auto& e : j.at("trace")) {
            if (!e.is_object()) throw ConfigError("config key 'trace' entries must be objects");
            for (auto it = e.begin(); it != e.end(); ++it)
                if (it.key() != "x0" && it.key() != "y0" && it.key() != "periods" &&
                    it.key() != "dt")
                    throw ConfigError("unknown trace key '" + it.key() + "'");
            TraceRequest t;
            t.x0 = get_or<double>(e, "x0", 0.0);
            t.y0 = get_or<double>(e, "y0", 0.0);
            t.periods = get_or<double>(e, "periods", 1.0);
            t.dt = get_or<double>(e, "dt", 0.0);
            if (t.periods <= 0.0) throw ConfigError("trace periods must be positive");
            if (t.dt < 0.0) throw ConfigError("trace dt must be nonnegative");
            c.trace.push_back(t);
        }
    }
    c.sweep_gammas = get_or<std::vector<std::vector<double>>>(j, "sweep_gammas", {});

    // range validation, each error naming the key
    if (!(c.g > 0.0)) throw ConfigError("g must be positive");
    if (!(c.p0 < 0.0)) throw ConfigError("p0 must be negative");
    if (c.nq < 16 || c.nq % 2 != 0) throw ConfigError("Nq must be even and >= 16");
    if (c.np < 8) throw ConfigError("Np must be >= 8");
    if (c.a_max < 0.0) throw ConfigError("a_max must be nonnegative");
    if (!(c.delta_a > 0.0)) throw ConfigError("delta_a must be positive");
    if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    if (c.max_iter < 1) throw ConfigError("max_iter must be >= 1");
    if (!(c.lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!(c.lambda_min > 0.0) || !(c.lambda_max > c.lambda_min))
        throw ConfigError("lambda_min/lambda_max must satisfy 0 < lambda_min < lambda_max");
    if (c.kernels != "auto" && c.kernels != "scalar" && c.kernels != "avx2" &&
        c.kernels != "neon")
        throw ConfigError("kernels must be one of auto, scalar, avx2, neon");
    if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
    if (c.field_nx < 2 || c.field_ny < 2) throw ConfigError("field_nx/field_ny must be >= 2");
    return c;
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    nlohmann::json j = nlohmann::json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config parse error in " + path + ": " + e.what());
        }
    }
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "' is not of the form key=value");
        std::string key = ov.substr(0, eq);
        std::string val = ov.substr(eq + 1);
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(val);
        } catch (const nlohmann::json::exception&) {
            parsed = val; // plain string
        }
        j[key] = parsed;
    }
    return config_from_json(j);
}

} // namespace vorwave
