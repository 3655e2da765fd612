#include "fnls/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fnls::kernels {

namespace serial {

void scale(std::span<cplx> a, std::span<const double> m) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= m[i];
}

void linear_phase(std::span<cplx> a, std::span<const double> s, double tau,
                  std::span<const std::uint8_t> mask) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!mask.empty() && !mask[i]) {
            a[i] = 0.0;
            continue;
        }
        const double ph = -tau * s[i];
        a[i] *= cplx(std::cos(ph), std::sin(ph));
    }
}

void phase_rotate(std::span<cplx> u, std::span<const double> v, double tau) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ph = tau * v[i];
        u[i] *= cplx(std::cos(ph), std::sin(ph));
    }
}

void abs_pow(std::span<const cplx> u, double p, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(std::abs(u[i]), p);
}

double sum_abs2(std::span<const cplx> a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return s;
}

double weighted_abs2(std::span<const cplx> a, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::norm(a[i]);
    return s;
}

double sum_abs_pow(std::span<const cplx> a, double r) {
    double s = 0.0;
    for (const auto& z : a) s += std::pow(std::abs(z), r);
    return s;
}

double max_abs(std::span<const cplx> a) {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
}

double max_value(std::span<const double> a) {
    double m = a.empty() ? 0.0 : a[0];
    for (double v : a) m = std::max(m, v);
    return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

double real_weighted_inner(std::span<const cplx> a, std::span<const double> w,
                           std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    return s;
}

}  // namespace serial

namespace omp {

namespace {

constexpr std::size_t kBlocks = 256;

// Block b covers [lo(b), lo(b+1)). Partial sums are combined in block order.
template <class T, class Body>
T blocked_reduce(std::size_t n, T zero, Body body) {
    const std::size_t nb = std::min(kBlocks, std::max<std::size_t>(n, 1));
    std::vector<T> part(nb, zero);
#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = n * b / nb, hi = n * (b + 1) / nb;
        T s = zero;
        for (std::size_t i = lo; i < hi; ++i) s += body(i);
        part[b] = s;
    }
    T s = zero;
    for (const auto& p : part) s += p;
    return s;
}

}  // namespace

void scale(std::span<cplx> a, std::span<const double> m) {
    const std::size_t n = a.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) a[i] *= m[i];
}

void linear_phase(std::span<cplx> a, std::span<const double> s, double tau,
                  std::span<const std::uint8_t> mask) {
    const std::size_t n = a.size();
    const bool masked = !mask.empty();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        if (masked && !mask[i]) {
            a[i] = 0.0;
            continue;
        }
        const double ph = -tau * s[i];
        a[i] *= cplx(std::cos(ph), std::sin(ph));
    }
}

void phase_rotate(std::span<cplx> u, std::span<const double> v, double tau) {
    const std::size_t n = u.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = tau * v[i];
        u[i] *= cplx(std::cos(ph), std::sin(ph));
    }
}

void abs_pow(std::span<const cplx> u, double p, std::span<double> out) {
    const std::size_t n = u.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::abs(u[i]), p);
}

double sum_abs2(std::span<const cplx> a) {
    return blocked_reduce(a.size(), 0.0, [&](std::size_t i) { return std::norm(a[i]); });
}

double weighted_abs2(std::span<const cplx> a, std::span<const double> w) {
    return blocked_reduce(a.size(), 0.0, [&](std::size_t i) { return w[i] * std::norm(a[i]); });
}

double sum_abs_pow(std::span<const cplx> a, double r) {
    return blocked_reduce(a.size(), 0.0, [&](std::size_t i) { return std::pow(std::abs(a[i]), r); });
}

double max_abs(std::span<const cplx> a) {
    double m = 0.0;
    const std::size_t n = a.size();
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double max_value(std::span<const double> a) {
    if (a.empty()) return 0.0;
    double m = a[0];
    const std::size_t n = a.size();
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
    return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    return blocked_reduce(a.size(), cplx(0.0), [&](std::size_t i) { return a[i] * std::conj(b[i]); });
}

double real_weighted_inner(std::span<const cplx> a, std::span<const double> w,
                           std::span<const cplx> b) {
    return blocked_reduce(a.size(), 0.0, [&](std::size_t i) {
        return w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    });
}

}  // namespace omp

}  // namespace fnls::kernels
