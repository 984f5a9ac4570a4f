#include "vorwave/driver.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/exporters.hpp"
#include "vorwave/fields.hpp"
#include "vorwave/kernels.hpp"
#include "vorwave/kinematics.hpp"
#include "vorwave/svg.hpp"
#include "vorwave/verify.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <string>

namespace vorwave {

namespace {

void echo_config(const RunConfig& cfg) {
    ensure_directory(cfg.out);
    write_json(cfg.out + "/effective_config.json", cfg.to_json());
}

void select_kernels(const RunConfig& cfg) {
    if (!kernels::select(cfg.kernels))
        throw ConfigError("kernels backend '" + cfg.kernels + "' is not available on this machine");
}

std::string solution_dir(const std::string& out, size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "/sol_%03zu", index);
    return out + buf;
}

nlohmann::json frame_json(const BranchPoint& bp, const PhysicalFrame& frame) {
    return nlohmann::json{
        {"a", bp.a},
        {"amplitude", bp.sol.amplitude},
        {"d", frame.d},
        {"c", frame.c},
        {"Q", bp.sol.Q},
        {"C", frame.C},
        {"max_abs_eta_x", frame.max_abs_eta_x},
        {"newton", {{"iterations", bp.newton.iterations},
                    {"final_residual", bp.newton.final_residual}}},
    };
}

void write_solution_artifacts(const RunConfig& cfg, const std::string& dir,
                              const BranchPoint& bp) {
    ensure_directory(dir);
    const WaveSolution& sol = bp.sol;
    const HodographGrid& grid = sol.grid;
    PhysicalFrame frame = derive_frame(sol);

    {
        std::vector<std::vector<double>> rows;
        rows.reserve(static_cast<size_t>(grid.nq) * grid.rows());
        for (int j = 0; j <= grid.np; ++j)
            for (int i = 0; i < grid.nq; ++i)
                rows.push_back({grid.q(i), grid.p(j), sol.h.at(i, j)});
        write_csv(dir + "/h.csv", {"q", "p", "h"}, rows);
    }
    write_json(dir + "/frame.json", frame_json(bp, frame));
    {
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < grid.nq; ++i)
            rows.push_back({grid.q(i), frame.eta[i], frame.eta_x[i], frame.eta_xx[i]});
        write_csv(dir + "/surface.csv", {"x", "eta", "eta_x", "eta_xx"}, rows);
    }
    {
        // sampled physical fields on a lattice: skip points above the surface
        FieldSampler fs(sol, frame);
        std::vector<std::vector<double>> rows;
        for (int ix = 0; ix < cfg.field_nx; ++ix) {
            double x = -kPi + kTwoPi * ix / cfg.field_nx;
            double eta = fs.surface_height(x);
            for (int iy = 0; iy < cfg.field_ny; ++iy) {
                double y = -frame.d + (eta + frame.d) * iy / (cfg.field_ny - 1);
                double p = fs.locate_p(x, y);
                Velocity v = fs.velocity_hodograph(x, p);
                rows.push_back({x, y, v.u, v.v, -p});
            }
        }
        write_csv(dir + "/fields.csv", {"x", "y", "u", "v", "psi"}, rows);
    }
}

int cmd_laminar(const RunConfig& cfg) {
    echo_config(cfg);
    VorticitySpec gamma = cfg.vorticity();
    LaminarProfile prof = solve_laminar(gamma, cfg.p0, cfg.lambda, cfg.g, cfg.np);
    {
        std::vector<std::vector<double>> rows;
        HodographGrid grid(cfg.nq, cfg.np, cfg.p0);
        for (int j = 0; j <= cfg.np; ++j)
            rows.push_back({grid.p(j), prof.H[j], prof.Hp[j], prof.c - 1.0 / prof.Hp[j]});
        write_csv(cfg.out + "/laminar_profile.csv", {"p", "H", "Hp", "u"}, rows);
    }
    {
        std::vector<std::vector<double>> rows;
        const int n = 200;
        for (int k = 0; k <= n; ++k) {
            double l = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * k / n;
            try {
                rows.push_back({l, dispersion_residual(gamma, cfg.p0, cfg.g, 1, l, cfg.np)});
            } catch (const SolverError&) {
                // stagnating lambda: no residual defined
            }
        }
        write_csv(cfg.out + "/dispersion_scan.csv", {"lambda", "residual"}, rows);
    }
    write_json(cfg.out + "/laminar.json",
               nlohmann::json{{"lambda", prof.lambda},
                              {"d", prof.depth()},
                              {"c", prof.c},
                              {"Q", prof.Q}});
    return 0;
}

int cmd_bifurcate(const RunConfig& cfg) {
    echo_config(cfg);
    VorticitySpec gamma = cfg.vorticity();
    BifurcationPoint bif =
        find_bifurcation(gamma, cfg.p0, cfg.g, 1, cfg.lambda_min, cfg.lambda_max, cfg.np);
    write_json(cfg.out + "/bifurcation.json",
               nlohmann::json{{"lambda", bif.lambda},
                              {"d", bif.profile.depth()},
                              {"c", bif.profile.c},
                              {"Q", bif.profile.Q}});
    std::vector<std::vector<double>> rows;
    HodographGrid grid(cfg.nq, cfg.np, cfg.p0);
    for (int j = 0; j <= cfg.np; ++j)
        rows.push_back({grid.p(j), bif.eigenfunction[j], bif.profile.H[j], bif.profile.Hp[j]});
    write_csv(cfg.out + "/eigenfunction.csv", {"p", "m", "H", "Hp"}, rows);
    return 0;
}

nlohmann::json branch_json(const BranchState& branch) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& bp : branch.points) {
        PhysicalFrame frame = derive_frame(bp.sol);
        pts.push_back(frame_json(bp, frame));
    }
    return nlohmann::json{{"lambda", branch.bifurcation.lambda},
                          {"depth", branch.bifurcation.profile.depth()},
                          {"c0", branch.bifurcation.profile.c},
                          {"halvings", branch.halvings},
                          {"points", std::move(pts)}};
}

int cmd_solve(const RunConfig& cfg) {
    echo_config(cfg);
    BranchState branch = solve_branch(cfg);
    write_json(cfg.out + "/branch.json", branch_json(branch));
    for (size_t k = 0; k < branch.points.size(); ++k)
        write_solution_artifacts(cfg, solution_dir(cfg.out, k), branch.points[k]);
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    echo_config(cfg);
    BranchState branch = solve_branch(cfg);
    const BranchPoint& bp = branch.points.back();
    PhysicalFrame frame = derive_frame(bp.sol);
    FieldSampler fs(bp.sol, frame);
    const HodographGrid& grid = bp.sol.grid;

    std::vector<TraceRequest> requests = cfg.trace;
    if (requests.empty()) {
        for (double rel : {0.0, 0.5, 1.0}) {
            TraceRequest t;
            t.x0 = 0.0;
            double eta0 = fs.surface_height(0.0);
            t.y0 = -frame.d + rel * (eta0 + frame.d);
            requests.push_back(t);
        }
    }
    nlohmann::json summary = nlohmann::json::array();
    for (size_t k = 0; k < requests.size(); ++k) {
        const TraceRequest& t = requests[k];
        double tau_guess = kTwoPi / frame.c;
        double t_max = 3.0 * tau_guess * t.periods;
        Trajectory traj = integrate_trajectory(fs, t.x0, t.y0, t_max, t.dt,
                                               static_cast<int>(std::ceil(t.periods)));
        std::vector<std::vector<double>> rows;
        for (size_t s = 0; s < traj.t.size(); ++s)
            rows.push_back({traj.t[s], traj.X[s], traj.Y[s], traj.xs[s], traj.ys[s]});
        char buf[48];
        std::snprintf(buf, sizeof buf, "/trajectory_%02u.csv", static_cast<unsigned>(k));
        write_csv(cfg.out + buf, {"t", "X", "Y", "x", "y"}, rows);
        summary.push_back(nlohmann::json{{"x0", t.x0},
                                         {"y0", t.y0},
                                         {"p", traj.p},
                                         {"tau", traj.tau},
                                         {"drift", traj.drift},
                                         {"period_complete", traj.period_complete},
                                         {"max_psi_drift", traj.max_psi_drift}});
    }
    write_json(cfg.out + "/trajectories.json", summary);

    {
        std::vector<std::vector<double>> rows;
        for (int j = 0; j <= grid.np; ++j) {
            Streamline s = streamline(fs, grid.p(j));
            for (int i = 0; i < grid.nq; ++i)
                rows.push_back({grid.p(j), s.x[i], s.sigma[i], s.slope[i]});
        }
        write_csv(cfg.out + "/streamlines.csv", {"p", "x", "sigma", "slope"}, rows);
    }
    {
        nlohmann::json levels = nlohmann::json::array();
        for (int j = 0; j <= grid.np; ++j) {
            DriftResult dr = traversal_and_drift(fs, grid.p(j));
            levels.push_back(
                nlohmann::json{{"p", grid.p(j)}, {"tau", dr.tau}, {"drift", dr.drift}});
        }
        write_json(cfg.out + "/drift.json", levels);
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    echo_config(cfg);
    BranchState branch = solve_branch(cfg);
    nlohmann::json sols = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& bp : branch.points) {
        VerificationReport rep = run_all(bp.sol);
        all_pass = all_pass && rep.overall;
        sols.push_back(rep.to_json());
    }
    write_json(cfg.out + "/report.json",
               nlohmann::json{{"solutions", std::move(sols)},
                              {"overall", all_pass ? "pass" : "fail"}});
    return all_pass ? 0 : 4;
}

int cmd_plot(const RunConfig& cfg) {
    echo_config(cfg);
    BranchState branch = solve_branch(cfg);
    const BranchPoint& bp = branch.points.back();
    PhysicalFrame frame = derive_frame(bp.sol);
    FieldSampler fs(bp.sol, frame);
    if (cfg.plot_streamlines)
        write_streamline_figure(cfg.out + "/figure_streamlines.svg", fs);
    if (cfg.plot_orbits) {
        std::vector<Trajectory> orbits;
        double eta0 = fs.surface_height(0.0);
        for (double rel : {0.15, 0.5, 0.97}) {
            double y0 = -frame.d + rel * (eta0 + frame.d);
            double t_max = 3.0 * kTwoPi / frame.c;
            orbits.push_back(integrate_trajectory(fs, 0.0, y0, t_max, 0.0, 1));
        }
        write_drift_orbit_figure(cfg.out + "/figure_drift_orbits.svg", fs, orbits);
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    echo_config(cfg);
    std::vector<std::vector<double>> gammas = cfg.sweep_gammas;
    if (gammas.empty()) gammas = {{}, {-0.1}};

    auto one = [&cfg](size_t idx, const std::vector<double>& gam) -> int {
        RunConfig sub = cfg;
        sub.gamma = gam;
        char buf[32];
        std::snprintf(buf, sizeof buf, "/sweep_%02zu", idx);
        sub.out = cfg.out + buf;
        sub.sweep_gammas.clear();
        int rc = cmd_solve(sub);
        if (rc != 0) return rc;
        return cmd_verify(sub);
    };

    std::vector<int> results(gammas.size(), 0);
    if (cfg.jobs <= 1) {
        for (size_t k = 0; k < gammas.size(); ++k) results[k] = one(k, gammas[k]);
    } else {
        std::vector<std::future<int>> futs;
        for (size_t k = 0; k < gammas.size(); ++k)
            futs.push_back(std::async(std::launch::async, one, k, gammas[k]));
        for (size_t k = 0; k < futs.size(); ++k) results[k] = futs[k].get();
    }
    nlohmann::json rows = nlohmann::json::array();
    bool ok = true;
    for (size_t k = 0; k < gammas.size(); ++k) {
        rows.push_back(nlohmann::json{{"gamma", gammas[k]},
                                      {"status", results[k] == 0 ? "pass" : "fail"}});
        ok = ok && results[k] == 0;
    }
    write_json(cfg.out + "/sweep_summary.json", rows);
    return ok ? 0 : 4;
}

} // namespace

BranchState solve_branch(const RunConfig& cfg) {
    BranchOptions opts;
    opts.a_max_rel = cfg.a_max;
    opts.delta_a_rel = cfg.delta_a;
    opts.lambda_lo = cfg.lambda_min;
    opts.lambda_hi = cfg.lambda_max;
    return continue_branch(cfg.vorticity(), cfg.wave_parameters(), opts);
}

int run_command(const std::string& command, const RunConfig& cfg) {
    select_kernels(cfg);
    if (command == "laminar") return cmd_laminar(cfg);
    if (command == "bifurcate") return cmd_bifurcate(cfg);
    if (command == "solve") return cmd_solve(cfg);
    if (command == "trace") return cmd_trace(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "plot") return cmd_plot(cfg);
    if (command == "sweep") return cmd_sweep(cfg);
    throw ConfigError("unknown command '" + command + "'");
}

} // namespace vorwave
