#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

struct HartreeCalibration {
    int d = 0;
    double alpha = 0.0;
    double c_dalpha = 0.0;
    int reference_n = 0;
    double reference_L = 0.0;
    // radial quadrature of |y|^{-2 alpha} e^{-|y|^2} over R^d
    double reference_value = 0.0;
    // spectral value at the origin split as c * unit_part + zero_mode_part
    double unit_part = 0.0;
    double zero_mode_part = 0.0;
};

// Computed once per (d, alpha) and cached.
const HartreeCalibration& hartree_calibration(int d, double alpha);

// Integral over R^d of f(|x|) by radial tanh-sinh / exp-sinh quadrature.
// Integrable singularities at r = 0 are fine.
double radial_integral(int d, const std::function<double(double)>& f);

class HartreeKernel {
public:
    // Cached per (grid, alpha).
    static std::shared_ptr<const HartreeKernel> get(const SpectralGrid& g, double alpha);

    HartreeKernel(const SpectralGrid& g, double alpha);

    const std::vector<double>& multiplier() const { return m_; }
    double zero_mode() const { return m_[0]; }
    // Minimum of the periodized kernel in physical space.
    double kernel_min() const { return kernel_min_; }
    const HartreeCalibration& calibration() const { return *cal_; }

private:
    std::vector<double> m_;
    double kernel_min_ = 0.0;
    const HartreeCalibration* cal_ = nullptr;
};

// Multiplier with constant c and the truncated-ball zero mode.
std::vector<double> hartree_multiplier(const SpectralGrid& g, double alpha, double c);

}  // namespace fnls
