#include "fnls/ground_state.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral_ops.hpp"

namespace fnls {

namespace {

double mean_real(const ComplexField& f) {
    double s = 0.0;
    for (const auto& z : f.values()) s += z.real();
    return s / static_cast<double>(f.size());
}

void check_seed(const ComplexField& seed) {
    const double mx = kernels::max_abs(seed.span());
    if (!(mx > 0.0) || !seed.all_finite()) throw InvalidInput("seed must be finite and nonzero");
    for (const auto& z : seed.values()) {
        if (z.real() < -1e-14 * mx) throw InvalidInput("seed changes sign");
        if (std::abs(z.imag()) > 1e-12 * mx) throw InvalidInput("seed must be real");
    }
}

struct Attempt {
    bool converged = false;
    ComplexField w;
    int iterations = 0;
    double stabilizer = 0.0;
    double last_residual = 0.0;
    std::vector<double> history;
};

Attempt iterate(const ModelParams& p, const GridPtr& g, const ComplexField& seed, double kappa, double tol,
                int max_iter) {
    const std::size_t o = g->origin_index();
    const auto sym = fractional_symbol(*g, p.alpha);
    const double gamma = p.petviashvili_gamma();

    ComplexField wt(g);
    const double m0 = mean_real(seed);
    for (std::size_t i = 0; i < wt.size(); ++i) wt[i] = seed[i].real() - m0;

    Attempt a{false, wt, 0, 0.0, 0.0, {}};
    ComplexField W(g);
    std::vector<cplx> wh(g->size()), nh(g->size());
    for (int it = 1; it <= max_iter; ++it) {
        const double c = kappa * wt[o].real();
        for (std::size_t i = 0; i < W.size(); ++i) W[i] = wt[i].real() + c;
        ComplexField n = nonlinearity(W, p);
        for (std::size_t i = 0; i < wh.size(); ++i) {
            wh[i] = wt[i];
            nh[i] = n[i].real();
        }
        fft_forward(wh, *g);
        fft_forward(nh, *g);
        nh[0] = 0.0;
        wh[0] = 0.0;
        const double K = kernels::weighted_abs2(wh, sym);
        double P = 0.0, res2 = 0.0, w2 = kernels::sum_abs2(W.span()) * static_cast<double>(g->size());
        for (std::size_t i = 1; i < wh.size(); ++i) {
            P += nh[i].real() * wh[i].real() + nh[i].imag() * wh[i].imag();
            res2 += std::norm(sym[i] * wh[i] - nh[i]);
        }
        const double M = K / P;
        a.iterations = it;
        a.stabilizer = M;
        a.last_residual = std::sqrt(res2 / w2);
        a.history.push_back(a.last_residual);
        if (!(P > 0.0) || !std::isfinite(M) || !std::isfinite(a.last_residual)) return a;
        const double f = std::pow(M, gamma);
        for (std::size_t i = 1; i < wh.size(); ++i) nh[i] *= f / sym[i];
        fft_inverse(nh, *g);
        double diff2 = 0.0, new2 = 0.0;
        for (std::size_t i = 0; i < wt.size(); ++i) {
            const double v = nh[i].real();
            diff2 += (v - wt[i].real()) * (v - wt[i].real());
            new2 += v * v;
            wt[i] = v;
        }
        if (wt[o].real() <= 0.0) return a;
        if (std::sqrt(diff2 / new2) < tol) {
            a.converged = true;
            break;
        }
    }
    a.w = wt;
    return a;
}

double profile_box_mean(const ModelParams& p, const SpectralGrid& g, double width) {
    const auto& r2 = g.r_squared();
    const double e = -0.5 * (p.d - p.alpha);
    double s = 0.0;
    for (double x : r2) s += std::pow(1.0 + x / (width * width), e);
    return s / static_cast<double>(g.size());
}

bool monotone_tail(const std::vector<double>& h) {
    const std::size_t n = h.size();
    for (std::size_t i = n > 10 ? n - 10 : 1; i < n; ++i)
        if (h[i] > h[i - 1]) return false;
    return true;
}

}  // namespace

ComplexField closed_form_W(const ModelParams& p, double c1, double c2, const GridPtr& grid) {
    const double e = -0.5 * (p.d - p.alpha);
    return sample_radial(grid, [&](double r) { return cplx(c1 * std::pow(1.0 + c2 * r * r, e)); });
}

double ground_state_residual(const ComplexField& w, const ModelParams& p) {
    ComplexField r = apply_symbol(w, kinetic_symbol(w.grid(), p));
    r -= nonlinearity(w, p);
    return l2_norm(r) / l2_norm(w);
}

GroundState petviashvili_solve(const ModelParams& p_in, const GridPtr& grid, const ComplexField& seed, double tol,
                               int max_iter, const GroundStateOptions& opts) {
    ModelParams p = p_in;
    p.zero_mode_symbol = 0.0;
    p.validate();
    if (grid->dim() != p.d) throw ModelError("grid dimension differs from model dimension");
    if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
    if (max_iter < 1) throw InvalidInput("max_iter must be positive");
    require_same_grid(seed.grid(), *grid);
    check_seed(seed);

    const double width = opts.core_width > 0.0 ? opts.core_width : std::max(1.0, 3.0 * grid->dx());
    const double m = profile_box_mean(p, *grid, width);
    const double kappa = m / (1.0 - m);

    Attempt a = iterate(p, grid, seed, kappa, tol, max_iter);
    int restarts = 0;
    if (!a.converged) {
        restarts = 1;
        auto alt = sample_radial(grid, [](double r) { return cplx(std::exp(-0.25 * r * r)); });
        a = iterate(p, grid, alt, kappa, tol, max_iter);
        if (!a.converged)
            throw NonConvergence("petviashvili iteration did not converge", a.last_residual, a.iterations);
    }

    const std::size_t o = grid->origin_index();
    ComplexField W(grid);
    const double c = kappa * a.w[o].real();
    for (std::size_t i = 0; i < W.size(); ++i) W[i] = a.w[i].real() + c;

    ComplexField n = nonlinearity(W, p);
    p.zero_mode_symbol = mean_real(n) / mean_real(W);
    p.validate();

    const double K = kinetic_norm_sq(W, p);
    const double P = potential_integral(W, p);
    const double s = std::pow(K / P, 1.0 / (p.degree() - 1.0));
    W *= s;

    GroundState gs;
    gs.field = W;
    gs.params = p;
    gs.kinetic_threshold = kinetic_norm_sq(W, p);
    gs.energy_threshold = (0.5 - 1.0 / p.mu()) * gs.kinetic_threshold;
    gs.residual = ground_state_residual(W, p);
    gs.iterations = a.iterations;
    gs.restarts = restarts;
    gs.final_stabilizer = a.stabilizer;
    gs.core_width = width;
    gs.kappa = kappa;
    gs.residual_history = std::move(a.history);
    gs.residual_monotone = monotone_tail(gs.residual_history);

    auto bins = radial_profile(W, std::max(8, grid->n() / 4), p.alpha);
    for (std::size_t b = 1; b < bins.size(); ++b)
        if (bins[b].count && bins[b - 1].count && bins[b].mean_abs > bins[b - 1].mean_abs * (1.0 + 1e-12))
            gs.radially_nonincreasing = false;
    return gs;
}

GroundState petviashvili_solve(const ModelParams& p, const GridPtr& grid, const GroundStateOptions& opts) {
    auto seed = sample_radial(grid, [](double r) { return cplx(std::exp(-r * r)); });
    return petviashvili_solve(p, grid, seed, opts.tol, opts.max_iter, opts);
}

double best_constant_functional(const ComplexField& u, const ModelParams& p) {
    const double K = kinetic_norm_sq(u, p);
    const double P = potential_integral(u, p);
    if (p.branch == Branch::Power) {
        if (!(K > 0.0)) throw InvalidInput("best constant functional: zero kinetic norm");
        return P / std::pow(K, 0.5 * p.mu());
    }
    if (!(P > 0.0)) throw InvalidInput("best constant functional: zero potential integral");
    return K * K / P;
}

Thresholds thresholds(const GroundState& gs) {
    if (!(gs.residual < 1e-4)) throw InvalidInput("ground state residual too large for thresholds");
    const auto& p = gs.params;
    Thresholds t;
    const double q = best_constant_functional(gs.field, p);
    t.c_dalpha = p.branch == Branch::Power ? q : 1.0 / q;
    t.kinetic = gs.kinetic_threshold;
    const double predicted = std::pow(t.c_dalpha, -2.0 / (p.mu() - 2.0));
    t.identity_defect = std::abs(t.kinetic - predicted) / t.kinetic;
    if (t.identity_defect > 1e-4)
        throw InconsistencyError("kinetic threshold disagrees with the variational constant");
    t.energy = (0.5 - 1.0 / p.mu()) * t.kinetic;
    return t;
}

ClosedFormFit fit_closed_form(const ComplexField& w, const ModelParams& p) {
    const auto& g = w.grid();
    const auto& r2 = g.r_squared();
    const double e = -0.5 * (p.d - p.alpha);
    double ww = 0.0;
    for (const auto& z : w.values()) ww += z.real() * z.real();

    auto eval = [&](double log_c2, double* c1_out) {
        const double c2 = std::exp(log_c2);
        double fw = 0.0, ff = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double f = std::pow(1.0 + c2 * r2[i], e);
            fw += f * w[i].real();
            ff += f * f;
        }
        const double c1 = fw / ff;
        if (c1_out) *c1_out = c1;
        return std::max(0.0, ww - fw * fw / ff) / ww;
    };
    auto best = boost::math::tools::brent_find_minima([&](double x) { return eval(x, nullptr); }, std::log(1e-4),
                                                      std::log(1e4), 40);
    ClosedFormFit fit;
    fit.c2 = std::exp(best.first);
    fit.rel_l2_error = std::sqrt(eval(best.first, &fit.c1));
    return fit;
}

}  // namespace fnls
