#pragma once

// Closed-form reference values used as independent oracles by the tests.

#include <cmath>
#include <numbers>

namespace oracle {

inline double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d); }

// int_{R^d} |x|^{2m} e^{-b|x|^2} dx
inline double gaussian_moment(int d, int m, double b) {
    return 0.5 * sphere_area(d) * std::tgamma(0.5 * d + m) / std::pow(b, 0.5 * d + m);
}

// int_{R^d} |y|^{-2a} e^{-b|y|^2} dy
inline double riesz_gaussian(int d, double a, double b) {
    return 0.5 * sphere_area(d) * std::tgamma(0.5 * (d - 2.0 * a)) / std::pow(b, 0.5 * (d - 2.0 * a));
}

// Fourier transform of |x|^{-2a} on R^d: c |k|^{2a-d}
inline double riesz_fourier_constant(int d, double a) {
    return std::pow(std::numbers::pi, 0.5 * d) * std::pow(2.0, d - 2.0 * a) * std::tgamma(0.5 * (d - 2.0 * a)) /
           std::tgamma(a);
}

// Sharp constant S in ||f||_{2d/(d-2s)}^2 <= S || |∇|^s f ||_2^2.
inline double sharp_sobolev(int d, double s) {
    const double pi = std::numbers::pi;
    return std::pow(2.0, -2.0 * s) * std::pow(pi, -s) * std::tgamma(0.5 * (d - 2.0 * s)) /
           std::tgamma(0.5 * (d + 2.0 * s)) * std::pow(std::tgamma(d) / std::tgamma(0.5 * d), 2.0 * s / d);
}

// ||∇|^{a/2} W||^2 on R^d for the power branch: S^{-d/a}.
inline double power_kinetic_threshold(int d, double a) { return std::pow(sharp_sobolev(d, 0.5 * a), -d / a); }

}  // namespace oracle
