#include "fnls/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/hartree.hpp"
#include "fnls/kernels.hpp"

namespace fnls {

namespace {

void require_finite(const ComplexField& f) {
    if (!f.all_finite()) throw InvalidInput("field has non-finite samples");
}

ComplexField physical(const ComplexField& f) { return f.is_physical() ? f : to_physical(f); }

}  // namespace

std::vector<double> fractional_symbol(const SpectralGrid& g, double s, double zero_mode) {
    const auto& k2 = g.k_squared();
    std::vector<double> out(g.size());
    const double h = 0.5 * s;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = k2[i] > 0.0 ? std::pow(k2[i], h) : 0.0;
    out[0] = zero_mode;
    return out;
}

std::vector<double> kinetic_symbol(const SpectralGrid& g, const ModelParams& p) {
    return fractional_symbol(g, p.alpha, p.zero_mode_symbol);
}

ComplexField apply_symbol(const ComplexField& f, const std::vector<double>& symbol) {
    require_finite(f);
    ComplexField h = to_spectral(f);
    kernels::scale(h.span(), symbol);
    return to_physical(h);
}

ComplexField apply_fractional_laplacian(const ComplexField& f, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("fractional order s must be positive");
    require_finite(f);
    const bool was_spectral = !f.is_physical();
    ComplexField h = to_spectral(f);
    kernels::scale(h.span(), fractional_symbol(f.grid(), s));
    return was_spectral ? h : to_physical(h);
}

void dealias(ComplexField& spectral) {
    if (spectral.is_physical()) throw InvalidInput("dealias expects a spectral field");
    const auto& mask = spectral.grid().dealias_mask();
    auto& v = spectral.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!mask[i]) v[i] = 0.0;
}

RealField power_potential(const ComplexField& u, const ModelParams& p) {
    if (p.branch != Branch::Power) throw ModelError("power_potential called for a hartree model");
    const ComplexField w = physical(u);
    RealField v{w.grid_ptr(), std::vector<double>(w.size())};
    kernels::abs_pow(w.span(), p.sigma(), v.values);
    return v;
}

RealField hartree_potential(const ComplexField& u, const ModelParams& p) {
    if (p.branch != Branch::Hartree) throw ModelError("hartree_potential called for a power model");
    if (!(p.d > 2.0 * p.alpha)) throw ModelError("hartree branch requires d > 2*alpha");
    const ComplexField w = physical(u);
    const auto& g = w.grid();
    if (g.dim() != p.d) throw ModelError("grid dimension differs from model dimension");
    auto kernel = HartreeKernel::get(g, p.alpha);

    std::vector<cplx> rho(w.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(w[i]);
    const double mass = kernels::sum_abs2(w.span()) * g.cell_volume();
    fft_forward(rho, g);
    kernels::scale(rho, kernel->multiplier());
    fft_inverse(rho, g);

    RealField v{w.grid_ptr(), std::vector<double>(w.size())};
    double vmax = 0.0, vmin = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        v.values[i] = rho[i].real();
        vmax = std::max(vmax, v.values[i]);
        vmin = std::min(vmin, v.values[i]);
    }
    const double floor = std::min(0.0, kernel->kernel_min()) * mass;
    if (vmin < floor - 1e-10 * vmax)
        throw DiscretizationError("hartree potential more negative than the periodized kernel allows");
    for (auto& x : v.values) x = std::max(x, 0.0);
    return v;
}

RealField potential(const ComplexField& u, const ModelParams& p) {
    return p.branch == Branch::Power ? power_potential(u, p) : hartree_potential(u, p);
}

ComplexField nonlinearity(const ComplexField& u, const ModelParams& p) {
    ComplexField w = physical(u);
    const auto v = potential(w, p);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= v.values[i];
    return w;
}

cplx l2_inner(const ComplexField& f, const ComplexField& g) {
    require_same_grid(f.grid(), g.grid());
    const ComplexField a = physical(f), b = physical(g);
    return kernels::inner(a.span(), b.span()) * f.grid().cell_volume();
}

double l2_norm(const ComplexField& f) {
    const ComplexField a = physical(f);
    return std::sqrt(kernels::sum_abs2(a.span()) * f.grid().cell_volume());
}

double sup_norm(const ComplexField& f) { return kernels::max_abs(physical(f).span()); }

double lp_norm(const ComplexField& f, double r) {
    if (std::isinf(r)) return sup_norm(f);
    if (!(r >= 1.0)) throw InvalidInput("lp_norm requires r >= 1");
    const ComplexField a = physical(f);
    return std::pow(kernels::sum_abs_pow(a.span(), r) * f.grid().cell_volume(), 1.0 / r);
}

double symbol_quadratic_form(const ComplexField& f, const std::vector<double>& symbol) {
    const ComplexField h = to_spectral(f);
    const auto& g = f.grid();
    return kernels::weighted_abs2(h.span(), symbol) * g.cell_volume() / static_cast<double>(g.size());
}

double kinetic_norm_sq(const ComplexField& f, const ModelParams& p) {
    return symbol_quadratic_form(f, kinetic_symbol(f.grid(), p));
}

double potential_integral(const ComplexField& u, const ModelParams& p) {
    const ComplexField w = physical(u);
    const auto v = potential(w, p);
    return kernels::weighted_abs2(w.span(), v.values) * w.grid().cell_volume();
}

namespace {

struct ShellStats {
    std::vector<double> mean;
    std::vector<double> dev2;
    std::vector<std::size_t> count;
};

ShellStats shell_stats(const ComplexField& f) {
    const auto& g = f.grid();
    const auto& shell = g.shell_of();
    ShellStats s;
    const std::size_t ns = g.shell_count();
    s.mean.assign(ns, 0.0);
    s.dev2.assign(ns, 0.0);
    s.count.assign(ns, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        s.mean[shell[i]] += std::abs(f[i]);
        ++s.count[shell[i]];
    }
    for (std::size_t k = 0; k < ns; ++k)
        if (s.count[k]) s.mean[k] /= static_cast<double>(s.count[k]);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double e = std::abs(f[i]) - s.mean[shell[i]];
        s.dev2[shell[i]] += e * e;
    }
    return s;
}

}  // namespace

std::vector<RadialBin> radial_profile(const ComplexField& f, int n_bins, double alpha) {
    if (n_bins < 8) throw InvalidInput("radial_profile needs at least 8 bins");
    const ComplexField w = physical(f);
    const auto& g = w.grid();
    const ComplexField h = apply_fractional_laplacian(w, 0.5 * alpha);
    const auto stats = shell_stats(w);
    const auto& shell = g.shell_of();
    const auto& r2 = g.r_squared();
    const double L = g.half_length();
    const double width = L / n_bins;

    std::vector<RadialBin> bins(n_bins);
    std::vector<double> dev2(n_bins, 0.0);
    for (int b = 0; b < n_bins; ++b) bins[b] = {(b + 0.5) * width, 0.0, 0.0, 0.0, 0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = std::sqrt(r2[i]);
        if (r >= L) continue;
        const int b = std::min(n_bins - 1, static_cast<int>(r / width));
        auto& bin = bins[b];
        bin.mean_abs += std::abs(w[i]);
        bin.mean_density += std::norm(h[i]);
        const double e = std::abs(w[i]) - stats.mean[shell[i]];
        dev2[b] += e * e;
        ++bin.count;
    }
    for (int b = 0; b < n_bins; ++b) {
        auto& bin = bins[b];
        if (!bin.count) continue;
        const double c = static_cast<double>(bin.count);
        bin.mean_abs /= c;
        bin.mean_density /= c;
        bin.spread = std::sqrt(dev2[b] / c);
    }
    return bins;
}

double symmetry_deviation(const ComplexField& f) {
    const ComplexField w = physical(f);
    const double mx = kernels::max_abs(w.span());
    if (mx == 0.0) return 0.0;
    const auto s = shell_stats(w);
    const auto& g = w.grid();
    const double L = g.half_length();
    double worst = 0.0;
    for (std::size_t k = 0; k < s.mean.size(); ++k) {
        if (!s.count[k] || g.shell_radius(k) >= L) continue;
        worst = std::max(worst, std::sqrt(s.dev2[k] / static_cast<double>(s.count[k])));
    }
    return worst / mx;
}

}  // namespace fnls
