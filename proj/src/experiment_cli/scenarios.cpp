#include "fnls/scenarios.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fnls/checkpoint.hpp"
#include "fnls/dynamics.hpp"
#include "fnls/errors.hpp"
#include "fnls/hartree.hpp"
#include "fnls/inequality.hpp"
#include "fnls/manifest.hpp"
#include "fnls/random_family.hpp"
#include "fnls/spectral_ops.hpp"

#ifndef FNLS_VERSION
#define FNLS_VERSION "unknown"
#endif

namespace fnls {

namespace fs = std::filesystem;

std::string code_version() { return FNLS_VERSION; }

std::string csv_header() {
    return "t,mass,kinetic,potential,energy,virial_A,virial_A_rhs,m1,m2,m1_tilde,s_alpha,conc_r_half,conc_r_full,"
           "sym_dev,dt";
}

std::string csv_row(const DiagnosticsRecord& r) {
    const double v[] = {r.t,  r.mass, r.kinetic,  r.potential, r.energy,      r.virial_A,    r.virial_A_rhs, r.m1,
                        r.m2, r.m1_tilde, r.s_alpha, r.conc_r_half, r.conc_r_full, r.sym_dev, r.dt};
    std::string s;
    for (double x : v) {
        if (!s.empty()) s += ',';
        s += format_real(x);
    }
    return s;
}

ComplexField make_initial_data(const InitialData& in, const GridPtr& grid, const ModelParams& p,
                               const GroundState* gs) {
    switch (in.kind) {
        case InitialData::Kind::Gaussian:
        case InitialData::Kind::ChirpedGaussian: {
            const double b = 0.5 / (in.sigma * in.sigma);
            const double chirp = in.kind == InitialData::Kind::ChirpedGaussian ? in.chirp_b : 0.0;
            const double a = in.amplitude;
            return sample_radial(grid, [=](double r) { return a * std::exp(cplx(-b * r * r, chirp * r * r)); });
        }
        case InitialData::Kind::ScaledGroundState: {
            if (!gs) throw InvalidInput("scaled_groundstate needs a ground state");
            return cplx(in.factor, 0.0) * gs->field;
        }
        case InitialData::Kind::FromCheckpoint: {
            const Checkpoint c = read_checkpoint(in.path);
            if (c.branch != p.branch || c.alpha != p.alpha)
                throw CheckpointError(CheckpointError::Kind::Dimension,
                                      "checkpoint model (branch, alpha) differs from the scenario model");
            return checkpoint_field(c, grid);
        }
    }
    throw InvalidInput("unknown initial data");
}

namespace {

struct Out {
    fs::path dir;
    std::vector<std::string>& artifacts;

    std::string path(const std::string& name) {
        artifacts.push_back(name);
        return (dir / name).string();
    }
    void text(const std::string& name, const std::string& body) {
        std::ofstream f(path(name), std::ios::trunc);
        if (!f) throw Error("cannot write " + (dir / name).string());
        f << body;
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Manifest base_manifest(const ScenarioConfig& cfg, Scenario s) {
    Manifest m;
    m.set("scenario", scenario_name(s));
    m.set("code_version", code_version());
    m.set("d", cfg.model.d);
    m.set("alpha", cfg.model.alpha);
    m.set("branch", branch_name(cfg.model.branch));
    m.set("L", cfg.L);
    m.set("n", cfg.n);
    m.set("seed", cfg.seed);
    m.set("rng", "splitmix64(seed, counter)");
    m.set("omp_max_threads", omp_get_max_threads());
    const auto& e = cfg.evolve;
    m.set("evolve.dt_init", e.dt_init);
    m.set("evolve.t_max", e.t_max);
    m.set("evolve.cfl_safety", e.cfl_safety);
    m.set("evolve.blowup_kinetic_factor", e.blowup_kinetic_factor);
    m.set("evolve.gradient_resolution_floor", e.gradient_resolution_floor);
    m.set("evolve.checkpoint_every", e.checkpoint_every);
    m.set("evolve.record_every", e.record_every);
    m.set("evolve.adaptive", e.adaptive);
    m.set("evolve.max_steps", e.max_steps);
    m.set("evolve.stability_constant", e.stability_constant);
    const auto& in = cfg.initial;
    m.set("initial_data.kind", initial_data_name(in.kind));
    m.set("initial_data.sigma", in.sigma);
    m.set("initial_data.amplitude", in.amplitude);
    m.set("initial_data.chirp_b", in.chirp_b);
    m.set("initial_data.factor", in.factor);
    m.set("initial_data.path", in.path);
    m.set("groundstate.tol", cfg.groundstate.tol);
    m.set("groundstate.max_iter", cfg.groundstate.max_iter);
    m.set("groundstate.core_width", cfg.groundstate.core_width);
    if (cfg.model.branch == Branch::Hartree) {
        const auto& cal = hartree_calibration(cfg.model.d, cfg.model.alpha);
        m.set("hartree.c_dalpha", cal.c_dalpha);
        m.set("hartree.reference_n", cal.reference_n);
        m.set("hartree.reference_L", cal.reference_L);
        m.set("hartree.reference_value", cal.reference_value);
    }
    return m;
}

void add_groundstate(Manifest& m, const GroundState& gs, const std::string& prefix = "") {
    m.set(prefix + "residual", gs.residual);
    m.set(prefix + "kinetic_threshold", gs.kinetic_threshold);
    m.set(prefix + "energy_threshold", gs.energy_threshold);
    m.set(prefix + "iterations", gs.iterations);
    m.set(prefix + "restarts", gs.restarts);
    m.set(prefix + "zero_mode_symbol", gs.params.zero_mode_symbol);
    m.set(prefix + "kappa", gs.kappa);
    m.set(prefix + "core_width", gs.core_width);
    m.set(prefix + "final_stabilizer", gs.final_stabilizer);
    m.set(prefix + "residual_monotone", gs.residual_monotone);
    m.set(prefix + "radially_nonincreasing", gs.radially_nonincreasing);
}

GroundState solve_groundstate(const ScenarioConfig& cfg, const GridPtr& g, std::ostream* log) {
    GroundStateOptions o;
    o.tol = cfg.groundstate.tol;
    o.max_iter = cfg.groundstate.max_iter;
    o.core_width = cfg.groundstate.core_width;
    if (log) *log << "ground state: d = " << g->dim() << ", n = " << g->n() << ", L = " << g->half_length() << "\n";
    auto gs = petviashvili_solve(cfg.model, g, o);
    if (log) *log << "  iterations " << gs.iterations << ", residual " << gs.residual << "\n";
    return gs;
}

ScenarioResult groundstate_scenario(const ScenarioConfig& cfg, Out& out, std::ostream* log) {
    auto g = make_grid(cfg.model.d, cfg.n, cfg.L);
    const GroundState gs = solve_groundstate(cfg, g, log);
    const Thresholds th = thresholds(gs);
    Manifest m = base_manifest(cfg, Scenario::GroundState);
    add_groundstate(m, gs);
    m.set("C_dalpha", th.c_dalpha);
    m.set("identity_defect", th.identity_defect);
    ClosedFormFit fit{};
    if (cfg.model.branch == Branch::Power) {
        fit = fit_closed_form(gs.field, gs.params);
        m.set("closed_form.c1", fit.c1);
        m.set("closed_form.c2", fit.c2);
        m.set("closed_form.rel_l2_error", fit.rel_l2_error);
    }
    write_checkpoint(out.path("groundstate.fnls"), gs.field, gs.params, 0.0);
    m.set("checkpoint", "groundstate.fnls");

    std::ostringstream rep;
    rep << "ground state thresholds (" << branch_name(cfg.model.branch) << ", d = " << cfg.model.d
        << ", alpha = " << cfg.model.alpha << ", n = " << cfg.n << ", L = " << cfg.L << ")\n";
    rep << "residual            " << format_real(gs.residual) << "\n";
    rep << "iterations          " << gs.iterations << "\n";
    rep << "kinetic_threshold   " << format_real(th.kinetic) << "\n";
    rep << "energy_threshold    " << format_real(th.energy) << "\n";
    rep << "C_dalpha            " << format_real(th.c_dalpha) << "\n";
    rep << "identity_defect     " << format_real(th.identity_defect) << "\n";
    out.text("thresholds.txt", rep.str());

    std::ostringstream prof;
    prof << "# r mean_abs mean_density closed_form spread count\n";
    for (const auto& b : radial_profile(gs.field, 64, cfg.model.alpha)) {
        const double cf = cfg.model.branch == Branch::Power
                              ? fit.c1 * std::pow(1.0 + fit.c2 * b.r * b.r, -0.5 * (cfg.model.d - cfg.model.alpha))
                              : NAN;
        prof << format_real(b.r) << ' ' << format_real(b.mean_abs) << ' ' << format_real(b.mean_density) << ' '
             << format_real(cf) << ' ' << format_real(b.spread) << ' ' << b.count << "\n";
    }
    out.text("profile.dat", prof.str());
    std::ostringstream hist;
    hist << "# iteration relative_change\n";
    for (std::size_t i = 0; i < gs.residual_history.size(); ++i)
        hist << i + 1 << ' ' << format_real(gs.residual_history[i]) << "\n";
    out.text("residual_history.dat", hist.str());
    m.write(out.path("manifest.txt"));

    ScenarioResult r;
    r.summary = "ground state: residual " + fmt("%.3e", gs.residual) + ", kinetic threshold " +
                fmt("%.10g", th.kinetic) + ", identity defect " + fmt("%.2e", th.identity_defect);
    return r;
}

struct ShellSnapshot {
    double t;
    double kinetic_raw;
    KineticShells shells;
};

ScenarioResult evolve_scenario(const ScenarioConfig& cfg, Scenario which, Out& out, std::ostream* log) {
    auto g = make_grid(cfg.model.d, cfg.n, cfg.L);
    const bool want_gs =
        cfg.initial.kind == InitialData::Kind::ScaledGroundState || which == Scenario::Concentrate;
    std::optional<GroundState> gs;
    if (want_gs) gs = solve_groundstate(cfg, g, log);
    const ModelParams p = gs ? gs->params : cfg.model;
    const ComplexField phi = make_initial_data(cfg.initial, g, p, gs ? &*gs : nullptr);

    Manifest m = base_manifest(cfg, which);
    if (gs) add_groundstate(m, *gs, "groundstate.");
    std::optional<PreconditionClass> pclass;
    if (gs) {
        pclass = precondition_class(phi, p, *gs);
        m.set("precondition_class", to_string(*pclass));
    }
    m.set("initial.energy", energy(phi, p).energy);
    m.set("initial.kinetic_norm_sq", kinetic_norm_sq(phi, p));
    m.set("initial.symmetry_deviation", symmetry_deviation(phi));

    std::ofstream csv(out.path("diagnostics.csv"), std::ios::trunc);
    if (!csv) throw Error("cannot write diagnostics.csv");
    csv << csv_header() << "\n";

    const double kth = gs ? gs->kinetic_threshold : 0.0;
    std::vector<DiagnosticsRecord> records;
    std::deque<ShellSnapshot> snaps;
    DiagnosticsSinks sinks;
    sinks.kinetic_threshold = kth;
    sinks.on_record = [&](const DiagnosticsRecord& r) {
        csv << csv_row(r) << "\n";
        records.push_back(r);
    };
    if (which == Scenario::Concentrate) {
        sinks.on_record_state = [&](const DiagnosticsRecord& r, const ComplexField& u) {
            snaps.push_back({r.t, 2.0 * r.kinetic, kinetic_shells(u, p)});
            if (snaps.size() > 40) snaps.pop_front();
        };
    }
    int n_ckpt = 0;
    sinks.on_checkpoint = [&](const TrajectoryState& s) {
        char name[64];
        std::snprintf(name, sizeof name, "checkpoint_%08ld.fnls", s.step_count);
        write_checkpoint(out.path(name), s.u, p, s.t);
        ++n_ckpt;
    };

    if (log) *log << "evolving to t = " << cfg.evolve.t_max << "\n";
    const RunOutcome res = evolve(phi, p, cfg.evolve, sinks);
    csv.close();
    write_checkpoint(out.path("final.fnls"), res.final_state.u, p, res.final_state.t);

    m.set("outcome", to_string(res.kind));
    m.set("t_final", res.t);
    m.set("steps", res.steps);
    m.set("records", static_cast<long>(records.size()));
    m.set("checkpoints", n_ckpt);
    m.set("max_kinetic_ratio", res.max_kinetic_ratio);
    m.set("radial_warning", res.radial_warning);
    m.set("s_alpha_final", records.empty() ? 0.0 : records.back().s_alpha);
    if (res.kind == RunOutcome::Kind::BlowupDetected) {
        m.set("t_star_estimate", res.fit.t_star);
        m.set("t_star_theta", res.fit.theta);
        m.set("t_star_fit_residual", res.fit.residual);
        m.set("t_star_fit_valid", res.fit.valid);
    }

    std::ostringstream rep;
    rep << "outcome             " << to_string(res.kind) << "\n";
    rep << "t_final             " << format_real(res.t) << "\n";
    rep << "steps               " << res.steps << "\n";
    rep << "max_kinetic_ratio   " << format_real(res.max_kinetic_ratio) << "\n";
    if (gs) {
        double kmin = HUGE_VAL, kmax = 0.0;
        for (const auto& r : records) {
            kmin = std::min(kmin, 2.0 * r.kinetic);
            kmax = std::max(kmax, 2.0 * r.kinetic);
        }
        bool holds = true;
        if (*pclass == PreconditionClass::SubThreshold) holds = kmax < kth;
        if (*pclass == PreconditionClass::BlowupClass) holds = kmin >= kth;
        rep << "precondition_class  " << to_string(*pclass) << "\n";
        rep << "kinetic_threshold   " << format_real(kth) << "\n";
        rep << "kinetic_sq_min      " << format_real(kmin) << "\n";
        rep << "kinetic_sq_max      " << format_real(kmax) << "\n";
        rep << "trapping_holds      " << (holds ? "yes" : "no") << "\n";
        m.set("trapping.kinetic_sq_min", kmin);
        m.set("trapping.kinetic_sq_max", kmax);
        m.set("trapping.holds", holds);
    }
    if (res.kind == RunOutcome::Kind::BlowupDetected) {
        rep << "t_star_estimate     " << format_real(res.fit.t_star) << " (theta " << format_real(res.fit.theta)
            << ", residual " << format_real(res.fit.residual) << ")\n";
    }

    if (which == Scenario::Concentrate) {
        const double tstar = res.kind == RunOutcome::Kind::BlowupDetected && res.fit.valid ? res.fit.t_star : res.t;
        std::ostringstream dat;
        dat << "# t conc_r_half conc_r_full R kinetic_within_R kinetic_sq\n";
        double best_within = 0.0;
        for (const auto& sn : snaps) {
            const double R = 10.0 * std::pow(std::max(0.0, tstar - sn.t), 1.0 / cfg.model.alpha);
            const double within = kinetic_within(sn.shells, R);
            best_within = std::max(best_within, within);
            const auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.t == sn.t; });
            dat << format_real(sn.t) << ' ' << format_real(it->conc_r_half) << ' ' << format_real(it->conc_r_full)
                << ' ' << format_real(R) << ' ' << format_real(within) << ' ' << format_real(sn.kinetic_raw) << "\n";
        }
        out.text("concentration.dat", dat.str());
        const std::size_t tail = std::min<std::size_t>(20, records.size());
        bool monotone = true;
        for (std::size_t i = records.size() - tail; i + 1 < records.size(); ++i)
            if (records[i + 1].conc_r_half > records[i].conc_r_half) monotone = false;
        rep << "conc_r_half_nonincreasing_last20  " << (monotone ? "yes" : "no") << "\n";
        rep << "max_kinetic_within_R              " << format_real(best_within) << "\n";
        rep << "ratio_to_threshold                " << format_real(best_within / kth) << "\n";
        m.set("concentration.r_half_nonincreasing", monotone);
        m.set("concentration.max_kinetic_within_R", best_within);
        m.set("concentration.ratio_to_threshold", best_within / kth);
        m.set("concentration.t_star_used", tstar);
    }
    out.text(which == Scenario::Concentrate ? "concentration.txt" : "evolve.txt", rep.str());
    m.write(out.path("manifest.txt"));

    ScenarioResult r;
    r.summary = to_string(res.kind) + " at t = " + fmt("%.6g", res.t) + " after " + std::to_string(res.steps) +
                " steps";
    r.exit_code = res.kind == RunOutcome::Kind::ResolutionLost ? kExitResolutionLost : kExitOk;
    return r;
}

// refined grid doubles n, or halves it when the doubled grid is too large
std::pair<int, int> grid_pair(int d, int n) {
    if (std::pow(2.0 * n, d) <= static_cast<double>(1 << 21) && !(d == 5 && 2 * n > 32)) return {n, 2 * n};
    return {n / 2, n};
}

ScenarioResult thresholds_scenario(const ScenarioConfig& cfg, Out& out, std::ostream* log) {
    const auto [n1, n2] = grid_pair(cfg.model.d, cfg.n);
    Manifest m = base_manifest(cfg, Scenario::Thresholds);
    std::ostringstream rep, dat;
    rep << "# n residual kinetic_threshold energy_threshold C_dalpha C^(-2/(mu-2)) identity_defect\n";
    std::vector<double> ks;
    double worst = 0.0;
    for (int n : {n1, n2}) {
        auto g = make_grid(cfg.model.d, n, cfg.L);
        const GroundState gs = solve_groundstate(cfg, g, log);
        const Thresholds th = thresholds(gs);
        const double mu = cfg.model.mu();
        const std::string pre = "n" + std::to_string(n) + ".";
        add_groundstate(m, gs, pre);
        m.set(pre + "C_dalpha", th.c_dalpha);
        m.set(pre + "identity_defect", th.identity_defect);
        rep << n << ' ' << format_real(gs.residual) << ' ' << format_real(th.kinetic) << ' ' << format_real(th.energy)
            << ' ' << format_real(th.c_dalpha) << ' ' << format_real(std::pow(th.c_dalpha, -2.0 / (mu - 2.0))) << ' '
            << format_real(th.identity_defect) << "\n";
        ks.push_back(th.kinetic);
        worst = std::max(worst, th.identity_defect);
    }
    const double cross = std::abs(ks[1] - ks[0]) / ks[1];
    rep << "# relative change of the kinetic threshold between grids: " << format_real(cross) << "\n";
    m.set("max_identity_defect", worst);
    m.set("kinetic_threshold_grid_change", cross);
    out.text("thresholds.txt", rep.str());
    m.write(out.path("manifest.txt"));
    ScenarioResult r;
    r.summary = "thresholds: max identity defect " + fmt("%.2e", worst) + ", grid change " + fmt("%.2e", cross);
    return r;
}

ScenarioResult verify_scenario(const ScenarioConfig& cfg, Out& out, std::ostream* log) {
    const auto& v = cfg.verify;
    const int d = cfg.model.d;
    const double alpha = cfg.model.alpha;
    Manifest m = base_manifest(cfg, Scenario::Verify);
    m.set("verify.family_size", v.family_size);
    m.set("verify.window_T", v.window_T);
    m.set("verify.n_samples", v.n_samples);
    m.set("verify.sobolev_family_size", v.sobolev_family_size);
    m.set("verify.commutator_n", v.commutator_n);
    m.set("verify.commutator_L", v.commutator_L);
    std::ostringstream rep;

    // linear estimates
    auto g = make_grid(d, cfg.n, cfg.L);
    if (log) *log << "linear estimates over " << v.family_size << " bumps\n";
    const auto family = radial_bump_family(g, cfg.seed, v.family_size);
    StrichartzReport sr{d, cfg.n, cfg.L, alpha, cfg.seed, v.n_samples, {}};
    double worst_change = 0.0;
    std::ostringstream sdat;
    sdat << "# q r window_T max_ratio\n";
    for (double q : {4.0, 6.0, 12.0}) {
        const auto pair = admissible_pair_for_q(q, alpha, d);
        const auto a = strichartz_family_sup(family, pair, alpha, v.window_T, v.n_samples);
        const auto b = strichartz_family_sup(family, pair, alpha, 2.0 * v.window_T, v.n_samples);
        sr.rows.push_back(a);
        sr.rows.push_back(b);
        worst_change = std::max(worst_change, std::abs(b.max_ratio / a.max_ratio - 1.0));
        for (const auto& row : {a, b})
            sdat << format_real(row.pair.q) << ' ' << format_real(row.pair.r) << ' ' << format_real(row.window_T)
                 << ' ' << format_real(row.max_ratio) << "\n";
    }
    rep << format_report(sr);
    rep << "# worst relative change under window doubling: " << format_real(worst_change) << "\n\n";
    m.set("strichartz.worst_window_change", worst_change);
    out.text("strichartz.dat", sdat.str());

    // radial Sobolev ratio under refinement
    const auto [n1, n2] = grid_pair(d, cfg.n);
    if (log) *log << "radial Sobolev ratio over " << v.sobolev_family_size << " bumps on n = " << n1 << ", " << n2 << "\n";
    auto g1 = make_grid(d, n1, cfg.L), g2 = make_grid(d, n2, cfg.L);
    CounterRng rng(cfg.seed + 1);
    double sup1 = 0.0, sup2 = 0.0;
    std::ostringstream rdat;
    rdat << "# k ratio_n" << n1 << " ratio_n" << n2 << "\n";
    for (int k = 0; k < v.sobolev_family_size; ++k) {
        const auto terms = radial_bump_params(rng, k);
        const double r1 = radial_sobolev_ratio(radial_bump(g1, terms), alpha);
        const double r2 = radial_sobolev_ratio(radial_bump(g2, terms), alpha);
        sup1 = std::max(sup1, r1);
        sup2 = std::max(sup2, r2);
        rdat << k << ' ' << format_real(r1) << ' ' << format_real(r2) << "\n";
    }
    const double sob_change = std::abs(sup2 / sup1 - 1.0);
    rep << "# radial Sobolev ratio: sup over " << v.sobolev_family_size << " bumps\n";
    rep << "n = " << n1 << "  " << format_real(sup1) << "\n";
    rep << "n = " << n2 << "  " << format_real(sup2) << "\n";
    rep << "relative change " << format_real(sob_change) << "\n\n";
    m.set("sobolev.sup_coarse", sup1);
    m.set("sobolev.sup_fine", sup2);
    m.set("sobolev.relative_change", sob_change);
    out.text("sobolev.dat", rdat.str());

    // commutator decay in d = 2
    if (log) *log << "commutator slopes\n";
    auto gc = make_grid(2, v.commutator_n, v.commutator_L);
    std::ostringstream cdat;
    cdat << "# s lambda norm\n";
    rep << "# commutator decay (d = 2, n = " << v.commutator_n << ", L = " << v.commutator_L << ")\n";
    for (double s : {1.5, 0.5}) {
        const auto c = commutator_scaling_check(s, v.commutator_lambdas, gc, false);
        for (std::size_t i = 0; i < c.lambdas.size(); ++i)
            cdat << format_real(s) << ' ' << format_real(c.lambdas[i]) << ' ' << format_real(c.norms[i]) << "\n";
        rep << "s = " << s << "  slope " << format_real(c.slope) << "\n";
        m.set("commutator.slope_s" + fmt("%g", s), c.slope);
    }
    out.text("commutator.dat", cdat.str());
    out.text("verify.txt", rep.str());
    m.write(out.path("manifest.txt"));
    ScenarioResult r;
    r.summary = "verify: window change " + fmt("%.3f", worst_change) + ", Sobolev refinement change " +
                fmt("%.3f", sob_change);
    return r;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, Scenario s, const std::string& out_dir, std::ostream* log) {
    ScenarioConfig c = cfg;
    apply_scenario_defaults(c, s);
    c.model.validate();
    c.evolve.validate();
    fs::create_directories(out_dir);
    ScenarioResult res;
    Out out{fs::path(out_dir), res.artifacts};
    ScenarioResult r;
    switch (s) {
        case Scenario::GroundState: r = groundstate_scenario(c, out, log); break;
        case Scenario::Evolve:
        case Scenario::Concentrate: r = evolve_scenario(c, s, out, log); break;
        case Scenario::Thresholds: r = thresholds_scenario(c, out, log); break;
        case Scenario::Verify: r = verify_scenario(c, out, log); break;
    }
    r.artifacts = std::move(res.artifacts);
    return r;
}

int run_scenario_guarded(const ScenarioConfig& cfg, Scenario s, const std::string& out_dir, std::ostream& err,
                         std::ostream* log) {
    try {
        const auto r = run_scenario(cfg, s, out_dir, log);
        if (log) *log << r.summary << "\n";
        return r.exit_code;
    } catch (const ConfigError& e) {
        for (const auto& m : e.messages) err << "config error: " << m << "\n";
        return kExitConfig;
    } catch (const CheckpointError& e) {
        err << "checkpoint error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ModelError& e) {
        err << "model error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonConvergence& e) {
        err << "numerical error: " << e.what() << " (residual " << e.last_residual << " after " << e.iterations
            << " iterations)\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace fnls
