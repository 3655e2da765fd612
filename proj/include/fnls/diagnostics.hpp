#pragma once

#include <limits>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/ground_state.hpp"
#include "fnls/model.hpp"

namespace fnls {

struct EnergyParts {
    double energy = 0.0;
    double kinetic = 0.0;    // (1/2) ||A^{1/2} u||^2
    double potential = 0.0;  // -(1/mu) int V(u)|u|^2
};

double mass(const ComplexField& u);
EnergyParts energy(const ComplexField& u, const ModelParams& p);

// Largest boundary sample relative to max|u|.
double boundary_fraction(const ComplexField& u);
// True when boundary samples exceed 1e-8 max|u|.
bool boundary_warning(const ComplexField& u);

// -Im <u, x . grad u> with spectral gradient and centered x.
double virial_A(const ComplexField& u);

struct VirialRhs {
    double direct = 0.0;      // alpha (<u, A u> - <u, V(u) u>)
    double via_energy = 0.0;  // alpha (mu E - (mu - 2) K)
    bool mismatch = false;    // relative disagreement above 1e-6
};
VirialRhs virial_rhs(const ComplexField& u, const ModelParams& p);

// sum_j || |∇|^{1 - alpha/2} (x_j u) ||^2
double virial_M(const ComplexField& u, double alpha);

struct Moments {
    double m1 = 0.0;
    double m2 = 0.0;
    double m1_tilde = 0.0;  // || |x| |∇| u ||
    bool boundary_warning = false;
};
Moments moments(const ComplexField& u);

inline constexpr double kNoRadius = std::numeric_limits<double>::infinity();

// Cumulative ||A^{1/2}u||^2 density over exact lattice shells; A is the
// kinetic operator of p.
struct KineticShells {
    std::vector<double> radius;
    std::vector<double> cumulative;
};
KineticShells kinetic_shells(const ComplexField& u, const ModelParams& p);
double concentration_radius(const KineticShells& shells, double threshold, double theta);
double concentration_radius(const ComplexField& u, const ModelParams& p, const GroundState& gs, double theta);
// integral of the kinetic density over |x| <= R
double kinetic_within(const KineticShells& shells, double R);

// sup |x|^{(d-alpha)/2}|f| / || |∇|^{alpha/2} f ||. Rejects non-radial input
// (symmetry_deviation >= 1e-3) unless require_radial is false.
double radial_sobolev_ratio(const ComplexField& f, double alpha, bool require_radial = true);

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    double virial_A = 0.0;
    double virial_A_rhs = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double m1_tilde = 0.0;
    double s_alpha = 0.0;
    double conc_r_half = kNoRadius;
    double conc_r_full = kNoRadius;
    double sym_dev = 0.0;
    double dt = 0.0;
    // not part of the CSV row
    double virial_rhs_direct = 0.0;
    double virial_M = 0.0;
    bool rhs_mismatch = false;
    bool boundary_warning = false;
};

struct RecordOptions {
    // kinetic threshold for the concentration radii; <= 0 leaves them unset
    double kinetic_threshold = 0.0;
    bool with_virial_M = false;
};

DiagnosticsRecord make_record(const ComplexField& u, const ModelParams& p, double t, double s_alpha, double dt,
                              const RecordOptions& opts);

struct VirialCheck {
    double max_defect = 0.0;
    std::size_t points = 0;
};

// Centered differences of A over consecutive records at fixed dt against
// the direct right-hand side. Defect is relative to alpha ||A^{1/2}u||^2.
VirialCheck virial_identity_check(const std::vector<DiagnosticsRecord>& window, double alpha);

struct GrowthFit {
    double slope = 0.0;           // least squares of m1(t) - m1(0) = A t
    double rms_residual = 0.0;
    double envelope_slope = 0.0;  // max over t > 0 of (m1(t) - m1(0)) / t
};
GrowthFit fit_moment_growth(const std::vector<DiagnosticsRecord>& records);

struct CommutatorResult {
    double slope = 0.0;
    std::vector<double> lambdas;
    std::vector<double> norms;
};

// || beta_lam |∇|^s f - |∇|^s (beta_lam f) || for beta a compactly supported
// smooth bump of unit radius and a fixed radial f whose homogeneity matches
// the rate in lam (degree -d/2 + s - 1 for s >= 1, -d/2 otherwise), cut off
// at 4 dx and L/3. Returns the log-log slope.
CommutatorResult commutator_scaling_check(double s, const std::vector<double>& lambdas, const GridPtr& grid,
                                          bool constant_beta = false);
CommutatorResult commutator_scaling_check(double s, const std::vector<double>& lambdas);

}  // namespace fnls
