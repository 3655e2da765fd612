#pragma once

#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

// |k|^s in FFT order, with `zero_mode` on the constant mode.
std::vector<double> fractional_symbol(const SpectralGrid& g, double s, double zero_mode = 0.0);
// Symbol of the kinetic operator A: |k|^alpha off zero, p.zero_mode_symbol at zero.
std::vector<double> kinetic_symbol(const SpectralGrid& g, const ModelParams& p);

ComplexField apply_fractional_laplacian(const ComplexField& f, double s);
// Multiplies spectral coefficients by `symbol` and returns to physical space.
ComplexField apply_symbol(const ComplexField& f, const std::vector<double>& symbol);

// Zero every mode outside the 2/3 box. Field must be spectral.
void dealias(ComplexField& spectral);

RealField power_potential(const ComplexField& u, const ModelParams& p);
RealField hartree_potential(const ComplexField& u, const ModelParams& p);
RealField potential(const ComplexField& u, const ModelParams& p);
// V(u) u
ComplexField nonlinearity(const ComplexField& u, const ModelParams& p);

cplx l2_inner(const ComplexField& f, const ComplexField& g);
double l2_norm(const ComplexField& f);
double lp_norm(const ComplexField& f, double r);
double sup_norm(const ComplexField& f);
// ||A^{1/2} f||^2 with the given symbol, via Plancherel.
double symbol_quadratic_form(const ComplexField& f, const std::vector<double>& symbol);
// ||A^{1/2} f||^2 for A the kinetic operator of p.
double kinetic_norm_sq(const ComplexField& f, const ModelParams& p);
// integral of V(u)|u|^2
double potential_integral(const ComplexField& u, const ModelParams& p);

struct RadialBin {
    double r;             // bin center
    double mean_abs;      // shell average of |f|
    double mean_density;  // shell average of ||∇|^{alpha/2} f|^2
    double spread;        // rms deviation of |f| from its exact-lattice-shell mean
    std::size_t count;
};

// Bins of equal width over [0, L); points with |x| >= L are not binned.
std::vector<RadialBin> radial_profile(const ComplexField& f, int n_bins, double alpha);

// Max over exact lattice shells of the rms deviation of |f| from the shell
// mean, relative to max|f|. Zero for functions of |x| alone.
double symmetry_deviation(const ComplexField& f);

}  // namespace fnls
