#include "fnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral_ops.hpp"

namespace fnls {

void EvolveConfig::validate() const {
    std::string msg;
    if (!(dt_init > 0.0) || !std::isfinite(dt_init)) msg += "dt_init must be positive; ";
    if (!(t_max > 0.0) || !std::isfinite(t_max)) msg += "t_max must be positive; ";
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) msg += "cfl_safety must lie in (0, 1]; ";
    if (!(blowup_kinetic_factor > 1.0)) msg += "blowup_kinetic_factor must exceed 1; ";
    if (!(gradient_resolution_floor > 0.0 && gradient_resolution_floor < 1.0))
        msg += "gradient_resolution_floor must lie in (0, 1); ";
    if (checkpoint_every <= 0) msg += "checkpoint_every must be positive; ";
    if (record_every <= 0) msg += "record_every must be positive; ";
    if (max_steps <= 0) msg += "max_steps must be positive; ";
    if (!(stability_constant > 0.0)) msg += "stability_constant must be positive; ";
    if (!msg.empty()) throw InvalidInput(msg.substr(0, msg.size() - 2));
}

double TrajectoryState::s_alpha_norm(const ModelParams& p) const {
    return std::pow(s_alpha_integral, 1.0 / p.s_alpha_q());
}

SplitStepper::SplitStepper(const GridPtr& grid, const ModelParams& p) : grid_(grid), p_(p) {
    p_.validate();
    if (grid_->dim() != p_.d) throw GridMismatch("grid dimension differs from model dimension");
    sym_ = kinetic_symbol(*grid_, p_);
    linear_rate_ = std::pow(grid_->dealias_cutoff(), p_.alpha);
}

StepInfo SplitStepper::step(ComplexField& u, double dt) const {
    require_same_grid(u.grid(), *grid_);
    if (!u.is_physical()) throw InvalidInput("step expects a physical-space field");
    const auto& mask = grid_->dealias_mask();
    auto a = u.span();

    fft_forward(a, *grid_);
    kernels::linear_phase(a, sym_, 0.5 * dt, {});
    fft_inverse(a, *grid_);

    if (dt != 0.0) {
        const RealField v = potential(u, p_);
        kernels::phase_rotate(a, v.values, dt);
    }

    fft_forward(a, *grid_);
    StepInfo info;
    const double total = kernels::sum_abs2(a);
    kernels::linear_phase(a, sym_, 0.5 * dt, mask);
    const double kept = kernels::sum_abs2(a);
    const double n = static_cast<double>(grid_->size());
    info.kinetic_raw = kernels::weighted_abs2(a, sym_) * grid_->cell_volume() / n;
    info.high_fraction = total > 0.0 ? std::max(0.0, (total - kept) / total) : 0.0;
    fft_inverse(a, *grid_);

    if (!u.all_finite() || !std::isfinite(info.kinetic_raw))
        throw NumericalOverflow("non-finite field after split step");
    return info;
}

TrajectoryState strang_step(const TrajectoryState& s, double dt, const ModelParams& p) {
    if (!std::isfinite(dt)) throw InvalidInput("dt must be finite");
    SplitStepper stepper(s.u.grid_ptr(), p);
    TrajectoryState out = s;
    stepper.step(out.u, dt);
    out.t = s.t + dt;
    out.step_count = s.step_count + 1;
    out.last_dt = dt;
    return out;
}

namespace {

double adapt_dt_with(const TrajectoryState& s, const ModelParams& p, const EvolveConfig& cfg, double linear_rate) {
    const RealField v = potential(s.u, p);
    double vmax = 0.0;
    for (double x : v.values) vmax = std::max(vmax, std::abs(x));
    double dt = cfg.cfl_safety * std::min(cfg.dt_init, cfg.stability_constant / (vmax + linear_rate));
    if (s.last_dt > 0.0) dt = std::min(dt, 2.0 * s.last_dt);
    return dt;
}

}  // namespace

double adapt_dt(const TrajectoryState& s, const ModelParams& p, const EvolveConfig& cfg) {
    return adapt_dt_with(s, p, cfg, std::pow(s.u.grid().dealias_cutoff(), p.alpha));
}

double s_alpha_accumulate(const TrajectoryState& s, double dt, const ModelParams& p) {
    const double q = p.s_alpha_q();
    const double r = p.s_alpha_r();
    return s.s_alpha_integral + std::abs(dt) * std::pow(lp_norm(s.u, r), q);
}

std::string to_string(PreconditionClass c) {
    switch (c) {
        case PreconditionClass::SubThreshold: return "SubThreshold";
        case PreconditionClass::BlowupClass: return "BlowupClass";
        case PreconditionClass::Indeterminate: return "Indeterminate";
    }
    return "?";
}

PreconditionClass precondition_class(const ComplexField& phi, const ModelParams& p, const GroundState& gs) {
    if (!(gs.residual < 1e-4)) throw InvalidInput("ground state residual too large for classification");
    if (p.d != gs.params.d || p.branch != gs.params.branch || std::abs(p.alpha - gs.params.alpha) > 1e-14)
        throw ModelError("model differs from the ground state's model");
    const ModelParams& q = gs.params;
    const double e_w = energy(gs.field, q).energy;
    const double k_w = kinetic_norm_sq(gs.field, q);
    const double e = energy(phi, q).energy;
    const double k = kinetic_norm_sq(phi, q);
    constexpr double tol = 1e-9;
    const bool energy_ok = e < e_w + tol * std::abs(e_w);
    if (!energy_ok) return PreconditionClass::Indeterminate;
    if (k >= k_w * (1.0 - tol)) return PreconditionClass::BlowupClass;
    if (e < e_w - tol * std::abs(e_w)) return PreconditionClass::SubThreshold;
    return PreconditionClass::Indeterminate;
}

std::string to_string(RunOutcome::Kind k) {
    switch (k) {
        case RunOutcome::Kind::Completed: return "Completed";
        case RunOutcome::Kind::BlowupDetected: return "BlowupDetected";
        case RunOutcome::Kind::ResolutionLost: return "ResolutionLost";
    }
    return "?";
}

TStarFit fit_t_star(const std::vector<DiagnosticsRecord>& records, double alpha) {
    TStarFit best;
    if (records.empty()) return best;
    const std::size_t m = std::min<std::size_t>(20, records.size());
    const std::size_t first = records.size() - m;
    const double t_last = records.back().t;
    best.t_star = t_last;
    if (m < 3) return best;
    best.residual = std::numeric_limits<double>::infinity();
    for (double theta : {0.5 * alpha, 1.0}) {
        double st = 0, sy = 0, stt = 0, sty = 0;
        std::vector<double> ts, ys;
        for (std::size_t i = first; i < records.size(); ++i) {
            const double kin = 2.0 * records[i].kinetic;
            if (!(kin > 0.0)) return best;
            ts.push_back(records[i].t);
            ys.push_back(std::pow(kin, -theta));
        }
        for (std::size_t i = 0; i < m; ++i) {
            st += ts[i];
            sy += ys[i];
            stt += ts[i] * ts[i];
            sty += ts[i] * ys[i];
        }
        const double md = static_cast<double>(m);
        const double den = md * stt - st * st;
        if (!(den > 0.0)) continue;
        const double b = (md * sty - st * sy) / den;
        const double a = (sy - b * st) / md;
        double ss = 0.0, ymax = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e = ys[i] - (a + b * ts[i]);
            ss += e * e;
            ymax = std::max(ymax, std::abs(ys[i]));
        }
        const double res = std::sqrt(ss / md) / ymax;
        if (!(b < 0.0) || !(res < best.residual)) continue;
        best.residual = res;
        best.theta = theta;
        best.t_star = std::max(t_last, -a / b);
        best.valid = true;
    }
    if (!best.valid) best.residual = 0.0;
    return best;
}

RunOutcome evolve(const ComplexField& phi, const ModelParams& p, const EvolveConfig& cfg,
                  const DiagnosticsSinks& sinks) {
    cfg.validate();
    if (!phi.all_finite()) throw InvalidInput("initial data not finite");
    SplitStepper stepper(phi.grid_ptr(), p);
    const ModelParams& mp = stepper.params();

    RunOutcome out;
    out.radial_warning = symmetry_deviation(phi) > 1e-3;

    ComplexField u0 = to_spectral(phi);
    dealias(u0);
    TrajectoryState s;
    s.u = to_physical(u0);

    RecordOptions ro;
    ro.kinetic_threshold = sinks.kinetic_threshold;
    ro.with_virial_M = sinks.with_virial_M;

    std::deque<DiagnosticsRecord> tail;
    double last_recorded_t = -1.0;
    auto emit = [&](double dt) {
        DiagnosticsRecord r = make_record(s.u, mp, s.t, s.s_alpha_norm(mp), dt, ro);
        if (sinks.on_record) sinks.on_record(r);
        if (sinks.on_record_state) sinks.on_record_state(r, s.u);
        tail.push_back(r);
        if (tail.size() > 64) tail.pop_front();
        last_recorded_t = s.t;
    };

    const double k0 = kinetic_norm_sq(s.u, mp);
    out.initial_kinetic = k0;
    out.max_kinetic_ratio = 1.0;
    const double lin_rate = stepper.linear_rate();
    const double t_eps = 1e-12 * cfg.t_max;

    double dt_next = cfg.adaptive ? adapt_dt_with(s, mp, cfg, lin_rate) : cfg.dt_init;
    emit(dt_next);

    ComplexField backup = s.u;
    out.kind = RunOutcome::Kind::Completed;
    while (s.t < cfg.t_max - t_eps && s.step_count < cfg.max_steps) {
        double dt = cfg.adaptive ? adapt_dt_with(s, mp, cfg, lin_rate) : cfg.dt_init;
        if (s.t + dt > cfg.t_max) dt = cfg.t_max - s.t;
        backup.values() = s.u.values();
        const double sa = s_alpha_accumulate(s, dt, mp);
        const StepInfo info = stepper.step(s.u, dt);

        const bool spectral_trigger = info.high_fraction > 1.0 - cfg.gradient_resolution_floor;
        const bool kinetic_trigger = k0 > 0.0 && info.kinetic_raw > cfg.blowup_kinetic_factor * k0;
        if (spectral_trigger) {
            // keep the last resolved state
            s.u.values() = backup.values();
            if (last_recorded_t != s.t) emit(dt);
            out.kind = kinetic_trigger ? RunOutcome::Kind::BlowupDetected : RunOutcome::Kind::ResolutionLost;
            break;
        }
        s.s_alpha_integral = sa;
        s.t += dt;
        s.last_dt = dt;
        ++s.step_count;
        if (k0 > 0.0) out.max_kinetic_ratio = std::max(out.max_kinetic_ratio, info.kinetic_raw / k0);

        const bool done = s.t >= cfg.t_max - t_eps || s.step_count >= cfg.max_steps;
        if (s.step_count % cfg.record_every == 0 || done) emit(dt);
        if (sinks.on_checkpoint && s.step_count % cfg.checkpoint_every == 0) sinks.on_checkpoint(s);
    }

    out.t = s.t;
    out.steps = s.step_count;
    out.tail.assign(tail.begin(), tail.end());
    if (out.kind == RunOutcome::Kind::BlowupDetected) out.fit = fit_t_star(out.tail, mp.alpha);
    out.final_state = std::move(s);
    return out;
}

ComplexField linear_propagate(const ComplexField& f, double t, double alpha) {
    ComplexField a = to_spectral(f);
    const auto sym = fractional_symbol(a.grid(), alpha);
    kernels::linear_phase(a.span(), sym, t, {});
    return to_physical(a);
}

}  // namespace fnls
