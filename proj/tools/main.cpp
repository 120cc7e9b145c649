// forcycle: bifurcation-analysis toolkit for a periodically forced
// heteroclinic cycle. Subcommands cover region classification, diagram
// tracing, fold/Hopf/double-eigenvalue loci, fold-branch stability,
// invariant manifolds, frequency-locking windows, direct ODE
// integration, locked-orbit search, and (delta, gamma) region atlases.

#include <CLI11.hpp>

#include "forcycle/diagram.hpp"
#include "forcycle/errors.hpp"
#include "forcycle/io/csv.hpp"
#include "forcycle/io/svg.hpp"
#include "forcycle/locking.hpp"
#include "forcycle/odesim.hpp"
#include "forcycle/parallel.hpp"
#include "forcycle/scalar_family.hpp"
#include "forcycle/stability.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace {

using namespace forcycle;

// ---------------------------------------------------------------------------
// Config-file expansion: a flat "key = value" file ('#' comments) becomes
// long options injected after the subcommand name. Keys already present on
// the command line are dropped, so explicit flags win; unknown keys fall
// through to the parser and are rejected as unexpected arguments.
// ---------------------------------------------------------------------------

std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> rest;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string t = argv[i];
        if (t == "--config") {
            if (i + 1 >= argc)
                throw DomainError("--config needs a file path");
            config_path = argv[++i];
        } else if (t.rfind("--config=", 0) == 0) {
            config_path = t.substr(9);
        } else {
            rest.push_back(t);
        }
    }
    if (config_path.empty())
        return rest;

    std::unordered_set<std::string> given;
    for (const std::string& t : rest)
        if (t.rfind("--", 0) == 0)
            given.insert(t.substr(0, t.find('=')));

    std::ifstream f(config_path);
    if (!f)
        throw DomainError("config: cannot read '" + config_path + "'");
    auto trim = [](const std::string& v) {
        const char* ws = " \t\r";
        const auto b = v.find_first_not_of(ws);
        if (b == std::string::npos)
            return std::string();
        return v.substr(b, v.find_last_not_of(ws) - b + 1);
    };
    std::vector<std::string> file_tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty())
            continue;
        const auto eq = entry.find('=');
        const std::string key = eq == std::string::npos ? std::string()
                                                        : trim(entry.substr(0, eq));
        const std::string val = eq == std::string::npos ? std::string()
                                                        : trim(entry.substr(eq + 1));
        if (key.empty() || val.empty())
            throw DomainError("config: line " + std::to_string(lineno) +
                              " is not 'key = value': '" + entry + "'");
        const std::string opt = "--" + key;
        if (given.count(opt))
            continue; // command-line flags win
        if (val == "true") {
            file_tokens.push_back(opt); // bare flag
        } else if (val == "false") {
            // flag left off
        } else {
            file_tokens.push_back(opt);
            file_tokens.push_back(val);
        }
    }

    std::vector<std::string> merged;
    merged.reserve(rest.size() + file_tokens.size());
    std::size_t pos = 0;
    while (pos < rest.size() && rest[pos].rfind("-", 0) == 0)
        merged.push_back(rest[pos++]); // top-level flags stay in front
    if (pos < rest.size())
        merged.push_back(rest[pos++]); // the subcommand name
    merged.insert(merged.end(), file_tokens.begin(), file_tokens.end());
    merged.insert(merged.end(), rest.begin() + static_cast<long>(pos), rest.end());
    return merged;
}

// ---------------------------------------------------------------------------
// Output-path handling: FORCYCLE_OUT_DIR prefixes relative paths.
// ---------------------------------------------------------------------------

std::string resolve_out(const std::string& path) {
    if (path.empty())
        return path;
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* env = std::getenv("FORCYCLE_OUT_DIR"); env && *env)
            p = std::filesystem::path(env) / p;
    }
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    return p.string();
}

// ---------------------------------------------------------------------------
// Shared option groups
// ---------------------------------------------------------------------------

/// delta/K either given directly or derived from the flow parameters
/// alpha, beta via delta = (alpha-beta)/(alpha+beta), K = (alpha+beta)^2/(2 alpha).
struct MapSource {
    double delta = 0.0;
    double K = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    CLI::Option* opt_delta = nullptr;
    CLI::Option* opt_alpha = nullptr;
    CLI::Option* opt_beta = nullptr;

    void add_to(CLI::App* sub, bool with_K) {
        opt_delta = sub->add_option("--delta", delta, "Saddle value delta (> 1)");
        opt_alpha = sub->add_option("--alpha", alpha, "Flow parameter alpha (> 0)");
        opt_beta = sub->add_option("--beta", beta, "Flow parameter beta (< 0)");
        opt_delta->excludes(opt_alpha)->excludes(opt_beta);
        if (with_K) {
            CLI::Option* opt_K =
                sub->add_option("--K", K, "Phase-drift constant K (> 0)")
                    ->excludes(opt_alpha)
                    ->excludes(opt_beta);
            (void)opt_K;
        }
    }

    /// Resolve to (delta, K); throws DomainError on inconsistent input.
    void resolve() {
        const bool has_ab = opt_alpha->count() > 0 || opt_beta->count() > 0;
        if (opt_delta->count() > 0) {
            return; // delta (and K) given directly
        }
        if (!has_ab)
            throw DomainError("either --delta or both --alpha and --beta required");
        if (opt_alpha->count() == 0 || opt_beta->count() == 0)
            throw DomainError("--alpha and --beta must be given together");
        ModelParams flow(alpha, beta, 0.0, 1.0);
        delta = flow.delta();
        K = flow.K();
    }
};

void print_fixed_point(const FixedPointInfo& fp, const std::string& label) {
    std::cout << label << ": tau=" << io::format_g17(fp.tau)
              << " s=" << io::format_g17(fp.s) << " class=" << to_string(fp.cls)
              << " |lambda1|=" << io::format_g17(std::abs(fp.lambda1))
              << " |lambda2|=" << io::format_g17(std::abs(fp.lambda2))
              << " det=" << io::format_g17(fp.det)
              << " trace=" << io::format_g17(fp.trace) << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand implementations (each returns the process exit code)
// ---------------------------------------------------------------------------

int run_classify(double delta, double gamma, double k) {
    const RegionLabel lbl = classify_region(delta, gamma, k);
    std::cout << "region=" << to_string(lbl.tag) << "\n";
    if (delta > 1.0 && delta < golden_phi()) {
        const TransitionThresholds thr = transition_thresholds(delta, k);
        std::cout << "gamma_plus=" << io::format_g17(thr.gamma_plus) << "\n";
        if (thr.gamma_minus)
            std::cout << "gamma_minus=" << io::format_g17(*thr.gamma_minus) << "\n";
    }
    std::cout << "delta_phi=" << io::format_g17(golden_phi()) << "\n";
    return 0;
}

int run_trace(const MapParams& mp, std::size_t n_tau, double tau_min,
              const std::string& out, const std::string& svg) {
    TraceOptions opts;
    opts.tau_min = tau_min;
    const Diagram dia = trace_diagram(mp, n_tau, opts);
    std::cout << "region=" << to_string(dia.region.tag)
              << " curves=" << dia.curves.size() << " folds=" << dia.folds.size()
              << "\n";
    for (std::size_t c = 0; c < dia.curves.size(); ++c)
        std::cout << "curve " << c << ": points=" << dia.curves[c].points.size()
                  << " closed=" << (dia.curves[c].closed ? 1 : 0)
                  << " winding=" << dia.curves[c].winding
                  << " folds=" << dia.curves[c].folds.size() << "\n";
    if (!out.empty())
        io::write_diagram_csv(dia, resolve_out(out));
    if (!svg.empty())
        io::render_diagram_svg(dia, resolve_out(svg));
    return 0;
}

int run_folds(const MapParams& mp, const std::string& out) {
    const std::vector<FoldPoint> folds = find_folds(mp);
    for (const FoldPoint& f : folds)
        std::cout << "fold: tau=" << io::format_g17(f.tau)
                  << " s=" << io::format_g17(f.s_star) << " eps=" << f.eps
                  << " criticality=" << to_string(f.criticality)
                  << " level=" << io::format_g17(f.level) << "\n";
    if (folds.empty())
        std::cout << "no folds\n";
    if (!out.empty())
        io::write_folds_csv(folds, resolve_out(out));
    return 0;
}

int run_stability(const MapParams& mp, double window, bool have_point, double tau,
                  double s, const std::string& out) {
    if (have_point) {
        const FixedPointInfo fp = classify_fixed_point(mp, tau, s);
        print_fixed_point(fp, "fixed point");
        return 0;
    }
    const std::vector<FoldPoint> folds = find_folds(mp);
    if (folds.empty()) {
        std::cout << "no folds\n";
        return 0;
    }
    bool degraded = false;
    std::string csv;
    csv += "fold_tau,s_star,eps,criticality,lambda2,branch_larger_s,branch_smaller_s\n";
    for (const FoldPoint& f : folds) {
        const double l2 = lambda2_at_fold(mp, f.tau, f.eps);
        std::string larger = "-", smaller = "-";
        try {
            const FoldBranchStability fb = fold_branch_stability(mp, f, window);
            larger = to_string(fb.branch_larger_s);
            smaller = to_string(fb.branch_smaller_s);
        } catch (const Error& e) {
            degraded = true;
            std::cerr << "fold at tau=" << io::format_g17(f.tau)
                      << ": branch classification failed: " << e.what() << "\n";
        }
        std::cout << "fold: tau=" << io::format_g17(f.tau) << " eps=" << f.eps
                  << " criticality=" << to_string(f.criticality)
                  << " lambda2=" << io::format_g17(l2) << " larger_s=" << larger
                  << " smaller_s=" << smaller << "\n";
        csv += io::format_g17(f.tau) + "," + io::format_g17(f.s_star) + "," +
               std::to_string(f.eps) + "," + to_string(f.criticality) + "," +
               io::format_g17(l2) + "," + larger + "," + smaller + "\n";
    }
    if (!out.empty()) {
        const std::string path = resolve_out(out);
        std::ofstream ofs(path, std::ios::binary);
        if (!ofs)
            throw IoError("cannot open '" + path + "' for writing");
        ofs << csv;
    }
    return degraded ? 1 : 0;
}

int run_hopf(double delta, double k, double K, double tau_lo, double tau_hi,
             std::size_t n, bool side, const std::string& out,
             const std::string& failures_out) {
    const double tm = tau_m(delta);
    if (tau_lo <= 0.0)
        tau_lo = 0.05 * tm;
    if (tau_hi <= 0.0)
        tau_hi = 0.995 * tm;
    if (!(tau_lo < tau_hi))
        throw DomainError("hopf: need tau-lo < tau-hi");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = tau_lo + (tau_hi - tau_lo) * static_cast<double>(i) /
                               static_cast<double>(n > 1 ? n - 1 : 1);
    HopfOptions opts;
    opts.compute_side = side;
    const HopfLocus locus = solve_hopf_locus(delta, k, K, grid, opts);
    std::cout << "hopf points=" << locus.points.size()
              << " failures=" << locus.failures.size() << "\n";
    for (const HopfPoint& h : locus.points)
        std::cout << "hopf: tau=" << io::format_g17(h.tau)
                  << " gamma=" << io::format_g17(h.gamma)
                  << " s=" << io::format_g17(h.s)
                  << " theta=" << io::format_g17(h.theta)
                  << " side=" << to_string(h.side) << "\n";
    if (!out.empty())
        io::write_hopf_csv(locus, resolve_out(out));
    if (!failures_out.empty())
        io::write_hopf_failures_csv(locus, resolve_out(failures_out));
    return locus.failures.empty() ? 0 : 1;
}

int run_bt(double delta, double k, double K, const std::string& out) {
    const std::vector<BTPoint> pts = find_bt_points(delta, k, K);
    for (const BTPoint& b : pts)
        std::cout << "double-eigenvalue point: eps=" << b.eps
                  << " tau=" << io::format_g17(b.tau)
                  << " gamma=" << io::format_g17(b.gamma)
                  << " residual=" << io::format_g17(b.residual) << "\n";
    if (!out.empty())
        io::write_bt_csv(pts, resolve_out(out));
    return 0;
}

int run_manifolds(const MapParams& mp, double tau, bool have_s, double s,
                  std::size_t steps, std::size_t points, double seed_distance,
                  const std::string& out, const std::string& svg) {
    std::optional<FixedPointInfo> saddle;
    if (have_s) {
        saddle = classify_fixed_point(mp, tau, s);
    } else {
        // Pick the saddle among the two diagram phases at this radius.
        const double u = (F_delta(mp.delta, tau) / mp.gamma - 1.0) / mp.k;
        if (std::abs(u) > 1.0)
            throw DomainError("manifolds: no diagram branch at tau = " +
                              std::to_string(tau));
        const double s_lower = wrap_2pi(std::asin(u));
        const double s_upper = wrap_2pi(M_PI - std::asin(u));
        for (double cand : {s_lower, s_upper}) {
            const FixedPointInfo fp = classify_fixed_point(mp, tau, cand);
            if (fp.cls == StabilityClass::saddle) {
                saddle = fp;
                break;
            }
        }
        if (!saddle)
            throw NotSaddleError("manifolds: neither fixed point at tau = " +
                                 std::to_string(tau) + " is a saddle");
    }
    ManifoldOptions opts;
    opts.points_per_segment = points;
    opts.seed_distance = seed_distance;
    const std::vector<ManifoldTrace> traces =
        trace_invariant_manifolds(mp, tau, *saddle, steps, opts);
    bool truncated = false;
    bool any_gap = false;
    for (const ManifoldTrace& tr : traces) {
        std::cout << "branch " << to_string(tr.branch) << ": points="
                  << tr.points.size()
                  << " min_crossing_gap=" << io::format_g17(tr.min_crossing_gap)
                  << " sign_change=" << (tr.sign_change ? 1 : 0)
                  << " truncated=" << (tr.truncated ? 1 : 0) << "\n";
        truncated = truncated || tr.truncated;
        any_gap = any_gap || tr.min_crossing_gap != 0.0 || tr.sign_change;
    }
    if (!any_gap)
        std::cout << "note: no crossing data (traces end inside the exclusion "
                     "radius around the saddle); increase --steps\n";
    if (!out.empty())
        io::write_manifolds_csv(traces, resolve_out(out));
    if (!svg.empty())
        io::render_manifolds_svg(traces, resolve_out(svg));
    return 0;
}

int run_lock(const MapParams& mp, int n_max, const std::string& out) {
    const std::vector<OmegaWindow> windows = lock_windows(mp, n_max);
    if (windows.empty())
        std::cout << "no locking windows\n";
    for (const OmegaWindow& w : windows)
        std::cout << "window: n=" << w.n << " omega_lo=" << io::format_g17(w.omega_lo)
                  << " omega_hi=" << io::format_g17(w.omega_hi)
                  << " source=" << to_string(w.source)
                  << " stability_note=" << to_string(w.stability_note) << "\n";
    if (!out.empty())
        io::write_windows_csv(windows, resolve_out(out));
    return 0;
}

int run_report(double delta, double k, const std::string& out) {
    const TorusChaosReport rep = torus_and_chaos_report(delta, k);
    const std::string text = rep.to_text();
    std::cout << text;
    if (!out.empty()) {
        const std::string path = resolve_out(out);
        std::ofstream ofs(path, std::ios::binary);
        if (!ofs)
            throw IoError("cannot open '" + path + "' for writing");
        ofs << text;
    }
    return 0;
}

int run_simulate(const ModelParams& mp, const State3& st0, double t_end, double tol,
                 std::size_t n_samples, const std::string& out) {
    std::vector<double> times;
    for (std::size_t i = 1; i + 1 < n_samples; ++i)
        times.push_back(st0.t + (t_end - st0.t) * static_cast<double>(i) /
                                    static_cast<double>(n_samples - 1));
    const Trajectory traj = integrate(mp, st0, t_end, tol, times);
    const State3& last = traj.samples.back();
    std::cout << "samples=" << traj.samples.size()
              << " final: t=" << io::format_g17(last.t)
              << " x=" << io::format_g17(last.x) << " y=" << io::format_g17(last.y)
              << " z=" << io::format_g17(last.z) << "\n";
    if (!out.empty())
        io::write_trajectory_csv(traj, resolve_out(out));
    return 0;
}

int run_locked_orbit(const ModelParams& mp, State3 seed, int n, int relax_periods,
                     double tol, const std::string& out) {
    if (relax_periods > 0) {
        const double t_end = seed.t + relax_periods * mp.forcing_period();
        seed = integrate(mp, seed, t_end, tol).samples.back();
    }
    seed.t = 0.0; // the stroboscopic section is anchored at t = 0
    const StroboOrbit orbit = find_locked_orbit(mp, seed, n, tol);
    std::cout << "locked orbit: n=" << orbit.n
              << " residual=" << io::format_g17(orbit.residual)
              << " attracting=" << (orbit.attracting() ? 1 : 0) << "\n";
    for (const auto& m : orbit.spectrum)
        std::cout << "multiplier: " << io::format_g17(m.real()) << (m.imag() < 0 ? "-" : "+")
                  << io::format_g17(std::abs(m.imag())) << "i |.|="
                  << io::format_g17(std::abs(m)) << "\n";
    const State3& s0 = orbit.samples.front();
    std::cout << "state: x=" << io::format_g17(s0.x) << " y=" << io::format_g17(s0.y)
              << " z=" << io::format_g17(s0.z) << "\n";
    if (!out.empty())
        io::write_strobo_csv(orbit, resolve_out(out));
    return 0;
}

int run_sweep(double k, double d_lo, double d_hi, double g_lo, double g_hi,
              std::size_t nd, std::size_t ng, const std::string& out,
              const std::string& svg) {
    if (!(d_hi > d_lo) || !(g_hi > g_lo) || nd < 2 || ng < 2)
        throw DomainError("sweep: need delta-hi > delta-lo, gamma-hi > gamma-lo, "
                          "and at least 2 samples per axis");
    std::vector<io::AtlasCell> cells(nd * ng);
    parallel_for(cells.size(), [&](std::size_t idx) {
        const std::size_t i = idx / ng, j = idx % ng;
        io::AtlasCell& c = cells[idx];
        c.delta = d_lo + (d_hi - d_lo) * static_cast<double>(i) /
                             static_cast<double>(nd - 1);
        c.gamma = g_lo + (g_hi - g_lo) * static_cast<double>(j) /
                             static_cast<double>(ng - 1);
        c.k = k;
        c.tag = classify_region(c.delta, c.gamma, c.k).tag;
    });
    std::cout << "cells=" << cells.size() << "\n";
    if (!out.empty())
        io::write_atlas_csv(cells, resolve_out(out));
    if (!svg.empty())
        io::render_atlas_svg(cells, k, resolve_out(svg));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forcycle: bifurcation analysis of a periodically forced "
                 "heteroclinic cycle"};
    app.require_subcommand(1);

    std::function<int()> action;

    auto configure = [](CLI::App* sub) {
        sub->add_option("--config")
            ->type_name("FILE")
            ->description("Read options from a flat key = value file "
                          "('#' comments; command-line flags win)");
    };

    // --- classify ----------------------------------------------------------
    {
        auto* sub = app.add_subcommand("classify", "Label a (delta, gamma, k) triple");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        src->add_to(sub, false);
        sub->add_option("--gamma", *gamma, "Forcing amplitude (>= 0)")->required();
        sub->add_option("--k", *k, "Forcing shape parameter (>= 0)")->required();
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_classify(src->delta, *gamma, *k);
            };
        });
    }

    // --- trace -------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("trace", "Trace the diagram on the cylinder");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        auto n_tau = std::make_shared<std::size_t>(4096);
        auto tau_min = std::make_shared<double>(1e-6);
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--gamma", *gamma)->required();
        sub->add_option("--k", *k)->required();
        sub->add_option("--n-tau", *n_tau, "Radial grid size (>= 100)");
        sub->add_option("--tau-min", *tau_min, "Lower end of the radial grid");
        sub->add_option("--out", *out, "Diagram CSV path");
        sub->add_option("--svg", *svg, "Diagram SVG path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_trace(MapParams(src->delta, *gamma, *k, src->K), *n_tau,
                                 *tau_min, *out, *svg);
            };
        });
    }

    // --- folds -------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("folds", "Locate the fold points");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        src->add_to(sub, false);
        sub->add_option("--gamma", *gamma)->required();
        sub->add_option("--k", *k)->required();
        sub->add_option("--out", *out, "Folds CSV path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_folds(MapParams(src->delta, *gamma, *k, 1.0), *out);
            };
        });
    }

    // --- stability ---------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "stability", "Classify fold branches, or one fixed point via --tau/--s");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        auto window = std::make_shared<double>(1e-3);
        auto tau = std::make_shared<double>(0.0);
        auto s = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--gamma", *gamma)->required();
        sub->add_option("--k", *k)->required();
        sub->add_option("--window", *window, "Radial window for branch sampling");
        auto* opt_tau = sub->add_option("--tau", *tau, "Fixed-point radius");
        auto* opt_s = sub->add_option("--s", *s, "Fixed-point phase");
        opt_tau->needs(opt_s);
        opt_s->needs(opt_tau);
        sub->add_option("--out", *out, "Stability CSV path");
        sub->callback([=, &action] {
            const bool have_point = opt_tau->count() > 0;
            action = [=] {
                src->resolve();
                return run_stability(MapParams(src->delta, *gamma, *k, src->K),
                                     *window, have_point, *tau, *s, *out);
            };
        });
    }

    // --- hopf --------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("hopf", "Solve the Hopf locus on a tau grid");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto k = std::make_shared<double>(0.0);
        auto tau_lo = std::make_shared<double>(0.0);
        auto tau_hi = std::make_shared<double>(0.0);
        auto n = std::make_shared<std::size_t>(25);
        auto no_side = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        auto failures = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--k", *k)->required();
        sub->add_option("--tau-lo", *tau_lo, "Grid start (default 0.05 tau_m)");
        sub->add_option("--tau-hi", *tau_hi, "Grid end (default 0.995 tau_m)");
        sub->add_option("--n", *n, "Grid size");
        sub->add_flag("--no-side", *no_side, "Skip super/subcritical side detection");
        sub->add_option("--out", *out, "Hopf CSV path");
        sub->add_option("--failures", *failures, "Failure-entries CSV path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_hopf(src->delta, *k, src->K, *tau_lo, *tau_hi, *n,
                                !*no_side, *out, *failures);
            };
        });
    }

    // --- bt ----------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "bt", "Locate the double-eigenvalue (Bogdanov-Takens type) points");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto k = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--k", *k)->required();
        sub->add_option("--out", *out, "CSV path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_bt(src->delta, *k, src->K, *out);
            };
        });
    }

    // --- manifolds ---------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "manifolds", "Trace invariant manifolds of a saddle fixed point");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        auto tau = std::make_shared<double>(0.0);
        auto s = std::make_shared<double>(0.0);
        auto steps = std::make_shared<std::size_t>(10);
        auto points = std::make_shared<std::size_t>(16);
        auto seed_distance = std::make_shared<double>(1e-6);
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--gamma", *gamma)->required();
        sub->add_option("--k", *k)->required();
        sub->add_option("--tau", *tau, "Saddle radius (= shift parameter)")->required();
        auto* opt_s = sub->add_option("--s", *s, "Saddle phase (default: auto-pick)");
        sub->add_option("--steps", *steps, "Map iterations per branch");
        sub->add_option("--points", *points, "Seed points per fundamental segment");
        sub->add_option("--seed-distance", *seed_distance, "Initial eigenvector offset");
        sub->add_option("--out", *out, "Manifolds CSV path");
        sub->add_option("--svg", *svg, "Manifolds SVG path");
        sub->callback([=, &action] {
            const bool have_s = opt_s->count() > 0;
            action = [=] {
                src->resolve();
                return run_manifolds(MapParams(src->delta, *gamma, *k, src->K), *tau,
                                     have_s, *s, *steps, *points, *seed_distance,
                                     *out, *svg);
            };
        });
    }

    // --- lock --------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("lock", "Compute 1:n frequency-locking windows");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto gamma = std::make_shared<double>(0.0);
        auto k = std::make_shared<double>(0.0);
        auto n_max = std::make_shared<int>(3);
        auto out = std::make_shared<std::string>();
        src->add_to(sub, true);
        sub->add_option("--gamma", *gamma)->required();
        sub->add_option("--k", *k)->required();
        sub->add_option("--n-max", *n_max, "Largest frequency ratio");
        sub->add_option("--out", *out, "Windows CSV path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_lock(MapParams(src->delta, *gamma, *k, src->K), *n_max,
                                *out);
            };
        });
    }

    // --- report ------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "report", "Torus / chaos predictions at fixed (delta, k)");
        configure(sub);
        auto src = std::make_shared<MapSource>();
        auto k = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        src->add_to(sub, false);
        sub->add_option("--k", *k)->required();
        sub->add_option("--out", *out, "Report text path");
        sub->callback([=, &action] {
            action = [=] {
                src->resolve();
                return run_report(src->delta, *k, *out);
            };
        });
    }

    // --- simulate ----------------------------------------------------------
    {
        auto* sub = app.add_subcommand("simulate", "Integrate the forced flow");
        configure(sub);
        auto alpha = std::make_shared<double>(2.0);
        auto beta = std::make_shared<double>(-0.5);
        auto gamma = std::make_shared<double>(0.0);
        auto omega = std::make_shared<double>(1.0);
        auto x0 = std::make_shared<double>(0.05);
        auto y0 = std::make_shared<double>(0.05);
        auto z0 = std::make_shared<double>(0.0);
        auto t_end = std::make_shared<double>(100.0);
        auto tol = std::make_shared<double>(1e-9);
        auto n_samples = std::make_shared<std::size_t>(501);
        auto out = std::make_shared<std::string>();
        sub->add_option("--alpha", *alpha, "Flow parameter alpha (> 0)");
        sub->add_option("--beta", *beta, "Flow parameter beta (< 0)");
        sub->add_option("--gamma", *gamma, "Forcing amplitude (>= 0)");
        sub->add_option("--omega", *omega, "Forcing frequency (> 0)");
        sub->add_option("--x0", *x0);
        sub->add_option("--y0", *y0);
        auto* opt_z0 = sub->add_option("--z0", *z0, "Default: on the unit sphere");
        sub->add_option("--t-end", *t_end);
        sub->add_option("--tol", *tol, "Integrator tolerance in [1e-12, 1e-6]");
        sub->add_option("--samples", *n_samples, "Number of CSV sample rows");
        sub->add_option("--out", *out, "Trajectory CSV path");
        sub->callback([=, &action] {
            const bool have_z0 = opt_z0->count() > 0;
            action = [=] {
                double z = *z0;
                if (!have_z0) {
                    const double r2 = (*x0) * (*x0) + (*y0) * (*y0);
                    if (r2 >= 1.0)
                        throw DomainError("simulate: default z0 needs x0^2+y0^2 < 1");
                    z = std::sqrt(1.0 - r2);
                }
                return run_simulate(ModelParams(*alpha, *beta, *gamma, *omega),
                                    State3{*x0, *y0, z, 0.0}, *t_end, *tol,
                                    *n_samples, *out);
            };
        });
    }

    // --- locked-orbit ------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "locked-orbit", "Newton search for a 1:n stroboscopic fixed point");
        configure(sub);
        auto alpha = std::make_shared<double>(2.0);
        auto beta = std::make_shared<double>(-0.5);
        auto gamma = std::make_shared<double>(0.0);
        auto omega = std::make_shared<double>(1.0);
        auto n = std::make_shared<int>(1);
        auto x0 = std::make_shared<double>(0.05);
        auto y0 = std::make_shared<double>(0.05);
        auto z0 = std::make_shared<double>(0.0);
        auto relax = std::make_shared<int>(50);
        auto tol = std::make_shared<double>(1e-10);
        auto out = std::make_shared<std::string>();
        sub->add_option("--alpha", *alpha);
        sub->add_option("--beta", *beta);
        sub->add_option("--gamma", *gamma);
        sub->add_option("--omega", *omega)->required();
        sub->add_option("--n", *n, "Frequency ratio 1:n");
        sub->add_option("--x0", *x0);
        sub->add_option("--y0", *y0);
        auto* opt_z0 = sub->add_option("--z0", *z0, "Default: on the unit sphere");
        sub->add_option("--relax", *relax, "Forcing periods of pre-relaxation");
        sub->add_option("--tol", *tol, "Integrator tolerance");
        sub->add_option("--out", *out, "Stroboscopic-orbit CSV path");
        sub->callback([=, &action] {
            const bool have_z0 = opt_z0->count() > 0;
            action = [=] {
                double z = *z0;
                if (!have_z0) {
                    const double r2 = (*x0) * (*x0) + (*y0) * (*y0);
                    if (r2 >= 1.0)
                        throw DomainError("locked-orbit: default z0 needs x0^2+y0^2 < 1");
                    z = std::sqrt(1.0 - r2);
                }
                return run_locked_orbit(ModelParams(*alpha, *beta, *gamma, *omega),
                                        State3{*x0, *y0, z, 0.0}, *n, *relax, *tol,
                                        *out);
            };
        });
    }

    // --- sweep -------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "sweep", "Region atlas over a (delta, gamma) grid at fixed k");
        configure(sub);
        auto k = std::make_shared<double>(0.0);
        auto d_lo = std::make_shared<double>(1.05);
        auto d_hi = std::make_shared<double>(2.2);
        auto g_lo = std::make_shared<double>(0.0);
        auto g_hi = std::make_shared<double>(1.5);
        auto nd = std::make_shared<std::size_t>(120);
        auto ng = std::make_shared<std::size_t>(120);
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        sub->add_option("--k", *k)->required();
        sub->add_option("--delta-lo", *d_lo);
        sub->add_option("--delta-hi", *d_hi);
        sub->add_option("--gamma-lo", *g_lo);
        sub->add_option("--gamma-hi", *g_hi);
        sub->add_option("--n-delta", *nd);
        sub->add_option("--n-gamma", *ng);
        sub->add_option("--out", *out, "Atlas CSV path");
        sub->add_option("--svg", *svg, "Atlas SVG path");
        sub->callback([=, &action] {
            action = [=] {
                return run_sweep(*k, *d_lo, *d_hi, *g_lo, *g_hi, *nd, *ng, *out,
                                 *svg);
            };
        });
    }

    std::vector<std::string> args;
    try {
        args = expand_config_args(argc, argv);
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargv;
    cargv.reserve(args.size() + 1);
    cargv.push_back(argv[0]);
    for (const std::string& s : args)
        cargv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
