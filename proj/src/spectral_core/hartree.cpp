#include "fnls/hartree.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/field.hpp"
#include "fnls/kernels.hpp"

namespace fnls {

namespace {

double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d); }

struct RefGrid {
    int n;
    double L;
};

RefGrid reference_grid(int d) {
    if (d <= 3) return {64, 6.0};
    if (d == 4) return {32, 6.0};
    return {16, 3.5};
}

HartreeCalibration calibrate(int d, double alpha) {
    if (!(d > 2.0 * alpha)) throw ModelError("hartree kernel requires d > 2*alpha");
    HartreeCalibration cal;
    cal.d = d;
    cal.alpha = alpha;
    const auto ref = reference_grid(d);
    cal.reference_n = ref.n;
    cal.reference_L = ref.L;
    cal.reference_value =
        radial_integral(d, [alpha](double r) { return std::pow(r, -2.0 * alpha) * std::exp(-r * r); });

    auto g = make_grid(d, ref.n, ref.L);
    std::vector<cplx> rho(g->size());
    const auto& r2 = g->r_squared();
    for (std::size_t i = 0; i < g->size(); ++i) rho[i] = std::exp(-r2[i]);
    fft_forward(rho, *g);

    auto m = hartree_multiplier(*g, alpha, 1.0);
    const double m0 = m[0];
    m[0] = 0.0;
    std::vector<cplx> v = rho;
    kernels::scale(v, m);
    fft_inverse(v, *g);
    cal.unit_part = v[g->origin_index()].real();
    cal.zero_mode_part = m0 * rho[0].real() / static_cast<double>(g->size());
    cal.c_dalpha = (cal.reference_value - cal.zero_mode_part) / cal.unit_part;
    if (!std::isfinite(cal.c_dalpha) || cal.c_dalpha <= 0.0)
        throw DiscretizationError("hartree constant calibration failed");
    return cal;
}

}  // namespace

double radial_integral(int d, const std::function<double(double)>& f) {
    // Underflow next to an integrable singularity gives 0*inf; those nodes carry negligible weight.
    auto g = [&](double r) {
        const double v = std::pow(r, d - 1) * f(r);
        return std::isfinite(v) ? v : 0.0;
    };
    boost::math::quadrature::tanh_sinh<double> inner;
    boost::math::quadrature::exp_sinh<double> outer;
    const double a = inner.integrate(g, 0.0, 1.0);
    const double b = outer.integrate([&](double s) { return g(1.0 + s); }, 0.0,
                                     std::numeric_limits<double>::infinity());
    return sphere_area(d) * (a + b);
}

const HartreeCalibration& hartree_calibration(int d, double alpha) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, HartreeCalibration> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, alpha);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, calibrate(d, alpha)).first;
    return it->second;
}

std::vector<double> hartree_multiplier(const SpectralGrid& g, double alpha, double c) {
    const int d = g.dim();
    const double expo = 0.5 * (2.0 * alpha - d);
    const auto& k2 = g.k_squared();
    std::vector<double> m(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) m[i] = k2[i] > 0.0 ? c * std::pow(k2[i], expo) : 0.0;
    const double L = g.half_length();
    m[0] = sphere_area(d) * std::pow(L, d - 2.0 * alpha) / (d - 2.0 * alpha);
    return m;
}

HartreeKernel::HartreeKernel(const SpectralGrid& g, double alpha) {
    if (!(g.dim() > 2.0 * alpha)) throw ModelError("hartree kernel requires d > 2*alpha");
    cal_ = &hartree_calibration(g.dim(), alpha);
    m_ = hartree_multiplier(g, alpha, cal_->c_dalpha);
    std::vector<cplx> k(m_.begin(), m_.end());
    fft_inverse(k, g);
    double mn = k[0].real();
    for (const auto& z : k) mn = std::min(mn, z.real());
    kernel_min_ = mn / g.cell_volume();
}

std::shared_ptr<const HartreeKernel> HartreeKernel::get(const SpectralGrid& g, double alpha) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, double, double>, std::shared_ptr<const HartreeKernel>> cache;
    auto key = std::make_tuple(g.dim(), g.n(), g.half_length(), alpha);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto k = std::make_shared<const HartreeKernel>(g, alpha);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, k).first->second;
}

}  // namespace fnls
