#include "fnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral_ops.hpp"

namespace fnls {

namespace {

ComplexField physical(const ComplexField& f) { return f.is_physical() ? f : to_physical(f); }

// k_a in FFT order along one axis with the Nyquist mode dropped.
std::vector<double> axis_derivative_wavenumbers(const SpectralGrid& g) {
    std::vector<double> k(g.n());
    for (int j = 0; j < g.n(); ++j) k[j] = j == g.n() / 2 ? 0.0 : g.wavenumber(j);
    return k;
}

// i k_a * uh, transformed back
std::vector<cplx> partial(const std::vector<cplx>& uh, const SpectralGrid& g, int axis,
                          const std::vector<double>& k1) {
    std::vector<cplx> out(uh.size());
    int m[5];
    for (std::size_t i = 0; i < uh.size(); ++i) {
        g.unravel(i, m);
        out[i] = cplx(0.0, k1[m[axis]]) * uh[i];
    }
    fft_inverse(out, g);
    return out;
}

std::vector<cplx> with_symbol(const std::vector<cplx>& uh, const std::vector<double>& sym, const SpectralGrid& g) {
    std::vector<cplx> out = uh;
    kernels::scale(out, sym);
    fft_inverse(out, g);
    return out;
}

double virial_A_from(const ComplexField& u, const std::vector<cplx>& uh) {
    const auto& g = u.grid();
    const auto k1 = axis_derivative_wavenumbers(g);
    std::vector<cplx> xgrad(u.size(), cplx(0.0));
    int m[5];
    for (int a = 0; a < g.dim(); ++a) {
        auto da = partial(uh, g, a, k1);
        for (std::size_t i = 0; i < u.size(); ++i) {
            g.unravel(i, m);
            xgrad[i] += g.coordinate(m[a]) * da[i];
        }
    }
    // <u, v> = sum u conj(v); the quantity is -Im <u, x.grad u>
    return -kernels::inner(u.span(), xgrad).imag() * g.cell_volume();
}

KineticShells shells_from(const std::vector<cplx>& h, const SpectralGrid& g) {
    const auto& shell = g.shell_of();
    const std::size_t ns = g.shell_count();
    std::vector<double> per(ns, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) per[shell[i]] += std::norm(h[i]);
    KineticShells out;
    out.radius.resize(ns);
    out.cumulative.resize(ns);
    double run = 0.0;
    const double dv = g.cell_volume();
    for (std::size_t k = 0; k < ns; ++k) {
        run += per[k] * dv;
        out.radius[k] = g.shell_radius(k);
        out.cumulative[k] = run;
    }
    return out;
}

std::vector<double> sqrt_symbol(const SpectralGrid& g, const ModelParams& p) {
    auto s = kinetic_symbol(g, p);
    for (auto& x : s) x = std::sqrt(x);
    return s;
}

}  // namespace

double mass(const ComplexField& u) {
    const ComplexField w = physical(u);
    return kernels::sum_abs2(w.span()) * w.grid().cell_volume();
}

EnergyParts energy(const ComplexField& u, const ModelParams& p) {
    EnergyParts e;
    e.kinetic = 0.5 * kinetic_norm_sq(u, p);
    e.potential = -potential_integral(u, p) / p.mu();
    e.energy = e.kinetic + e.potential;
    return e;
}

double boundary_fraction(const ComplexField& u) {
    const ComplexField w = physical(u);
    const auto& g = w.grid();
    const double mx = kernels::max_abs(w.span());
    if (mx == 0.0) return 0.0;
    double b = 0.0;
    int m[5];
    for (std::size_t i = 0; i < w.size(); ++i) {
        g.unravel(i, m);
        bool edge = false;
        for (int a = 0; a < g.dim(); ++a) edge = edge || m[a] == 0 || m[a] == g.n() - 1;
        if (edge) b = std::max(b, std::abs(w[i]));
    }
    return b / mx;
}

bool boundary_warning(const ComplexField& u) { return boundary_fraction(u) > 1e-8; }

double virial_A(const ComplexField& u) {
    const ComplexField w = physical(u);
    std::vector<cplx> uh = w.values();
    fft_forward(uh, w.grid());
    return virial_A_from(w, uh);
}

VirialRhs virial_rhs(const ComplexField& u, const ModelParams& p) {
    const double K = kinetic_norm_sq(u, p);
    const double P = potential_integral(u, p);
    VirialRhs r;
    r.direct = p.alpha * (K - P);
    const double kin = 0.5 * K, E = kin - P / p.mu();
    r.via_energy = p.alpha * (p.mu() * E - (p.mu() - 2.0) * kin);
    const double scale = std::max({std::abs(r.direct), p.alpha * K, 1e-300});
    r.mismatch = std::abs(r.direct - r.via_energy) > 1e-6 * scale;
    return r;
}

double virial_M(const ComplexField& u, double alpha) {
    const ComplexField w = physical(u);
    const auto& g = w.grid();
    const auto sym = fractional_symbol(g, 2.0 - alpha);
    double total = 0.0;
    int m[5];
    for (int a = 0; a < g.dim(); ++a) {
        ComplexField xu(w.grid_ptr());
        for (std::size_t i = 0; i < w.size(); ++i) {
            g.unravel(i, m);
            xu[i] = g.coordinate(m[a]) * w[i];
        }
        total += symbol_quadratic_form(xu, sym);
    }
    return total;
}

Moments moments(const ComplexField& u) {
    const ComplexField w = physical(u);
    const auto& g = w.grid();
    const auto& r2 = g.r_squared();
    std::vector<double> r4(r2.size());
    for (std::size_t i = 0; i < r2.size(); ++i) r4[i] = r2[i] * r2[i];
    const double dv = g.cell_volume();
    Moments mo;
    mo.m1 = std::sqrt(kernels::weighted_abs2(w.span(), r2) * dv);
    mo.m2 = std::sqrt(kernels::weighted_abs2(w.span(), r4) * dv);
    const ComplexField grad = apply_symbol(w, fractional_symbol(g, 1.0));
    mo.m1_tilde = std::sqrt(kernels::weighted_abs2(grad.span(), r2) * dv);
    mo.boundary_warning = boundary_warning(w);
    return mo;
}

KineticShells kinetic_shells(const ComplexField& u, const ModelParams& p) {
    const ComplexField w = physical(u);
    std::vector<cplx> uh = w.values();
    fft_forward(uh, w.grid());
    return shells_from(with_symbol(uh, sqrt_symbol(w.grid(), p), w.grid()), w.grid());
}

double concentration_radius(const KineticShells& shells, double threshold, double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidInput("theta must lie in (0, 1]");
    if (!(threshold > 0.0)) throw InvalidInput("kinetic threshold must be positive");
    const double target = theta * threshold;
    for (std::size_t k = 0; k < shells.cumulative.size(); ++k)
        if (shells.cumulative[k] >= target) return shells.radius[k];
    return kNoRadius;
}

double concentration_radius(const ComplexField& u, const ModelParams& p, const GroundState& gs, double theta) {
    return concentration_radius(kinetic_shells(u, p), gs.kinetic_threshold, theta);
}

double kinetic_within(const KineticShells& shells, double R) {
    double v = 0.0;
    for (std::size_t k = 0; k < shells.radius.size() && shells.radius[k] <= R; ++k) v = shells.cumulative[k];
    return v;
}

double radial_sobolev_ratio(const ComplexField& f, double alpha, bool require_radial) {
    const ComplexField w = physical(f);
    if (require_radial && symmetry_deviation(w) >= 1e-3) throw InvalidInput("radial_sobolev_ratio needs radial input");
    const auto& g = w.grid();
    const auto& r2 = g.r_squared();
    const double e = 0.25 * (g.dim() - alpha);
    double num = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) num = std::max(num, std::pow(r2[i], e) * std::abs(w[i]));
    const double den = std::sqrt(symbol_quadratic_form(w, fractional_symbol(g, alpha)));
    if (!(den > 0.0)) throw InvalidInput("radial_sobolev_ratio: zero denominator");
    return num / den;
}

DiagnosticsRecord make_record(const ComplexField& u_in, const ModelParams& p, double t, double s_alpha, double dt,
                              const RecordOptions& opts) {
    const ComplexField u = physical(u_in);
    const auto& g = u.grid();
    const double dv = g.cell_volume();
    std::vector<cplx> uh = u.values();
    fft_forward(uh, g);

    DiagnosticsRecord r;
    r.t = t;
    r.dt = dt;
    r.s_alpha = s_alpha;
    r.mass = kernels::sum_abs2(u.span()) * dv;

    const auto sym = kinetic_symbol(g, p);
    const double K = kernels::weighted_abs2(uh, sym) * dv / static_cast<double>(g.size());
    const double P = potential_integral(u, p);
    r.kinetic = 0.5 * K;
    r.potential = -P / p.mu();
    r.energy = r.kinetic + r.potential;

    r.virial_A = virial_A_from(u, uh);
    r.virial_rhs_direct = p.alpha * (K - P);
    r.virial_A_rhs = p.alpha * (p.mu() * r.energy - (p.mu() - 2.0) * r.kinetic);
    r.rhs_mismatch = std::abs(r.virial_rhs_direct - r.virial_A_rhs) >
                     1e-6 * std::max({std::abs(r.virial_rhs_direct), p.alpha * K, 1e-300});

    const auto& r2 = g.r_squared();
    std::vector<double> r4(r2.size());
    for (std::size_t i = 0; i < r2.size(); ++i) r4[i] = r2[i] * r2[i];
    r.m1 = std::sqrt(kernels::weighted_abs2(u.span(), r2) * dv);
    r.m2 = std::sqrt(kernels::weighted_abs2(u.span(), r4) * dv);
    const auto grad = with_symbol(uh, fractional_symbol(g, 1.0), g);
    r.m1_tilde = std::sqrt(kernels::weighted_abs2(grad, r2) * dv);

    if (opts.kinetic_threshold > 0.0) {
        auto root = sym;
        for (auto& x : root) x = std::sqrt(x);
        const auto shells = shells_from(with_symbol(uh, root, g), g);
        r.conc_r_half = concentration_radius(shells, opts.kinetic_threshold, 0.5);
        r.conc_r_full = concentration_radius(shells, opts.kinetic_threshold, 1.0);
    }
    r.sym_dev = symmetry_deviation(u);
    r.boundary_warning = boundary_warning(u);
    if (opts.with_virial_M) r.virial_M = virial_M(u, p.alpha);
    return r;
}

VirialCheck virial_identity_check(const std::vector<DiagnosticsRecord>& w, double alpha) {
    if (w.size() < 5) throw InvalidInput("virial_identity_check needs at least 5 records");
    const double h = w[1].t - w[0].t;
    if (!(h > 0.0)) throw InvalidInput("records must advance in time");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (std::abs((w[i].t - w[i - 1].t) - h) > 1e-9 * h) throw InvalidInput("records are not at a fixed dt");
    VirialCheck c;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double fd = (w[i + 1].virial_A - w[i - 1].virial_A) / (2.0 * h);
        const double scale = std::max(alpha * 2.0 * w[i].kinetic, 1e-300);
        c.max_defect = std::max(c.max_defect, std::abs(fd - w[i].virial_rhs_direct) / scale);
        ++c.points;
    }
    return c;
}

GrowthFit fit_moment_growth(const std::vector<DiagnosticsRecord>& rs) {
    GrowthFit f;
    if (rs.size() < 2) return f;
    double sty = 0.0, stt = 0.0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
        const double t = rs[i].t - rs[0].t, y = rs[i].m1 - rs[0].m1;
        sty += t * y;
        stt += t * t;
        if (t > 0.0) f.envelope_slope = std::max(f.envelope_slope, y / t);
    }
    f.slope = stt > 0.0 ? sty / stt : 0.0;
    double ss = 0.0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
        const double e = rs[i].m1 - rs[0].m1 - f.slope * (rs[i].t - rs[0].t);
        ss += e * e;
    }
    f.rms_residual = std::sqrt(ss / static_cast<double>(rs.size() - 1));
    return f;
}

}  // namespace fnls
