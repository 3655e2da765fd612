#pragma once

#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

struct GroundStateOptions {
    double tol = 1e-11;
    int max_iter = 2000;
    // Target core width of the profile; <= 0 picks max(1, 3 dx).
    double core_width = 0.0;
};

struct GroundState {
    ComplexField field;
    // Carries the zero-mode symbol of the discrete operator W solves.
    ModelParams params;
    double kinetic_threshold = 0.0;
    double energy_threshold = 0.0;
    double residual = 0.0;
    int iterations = 0;
    int restarts = 0;
    double final_stabilizer = 0.0;
    double core_width = 0.0;
    double kappa = 0.0;
    bool residual_monotone = true;
    bool radially_nonincreasing = true;
    std::vector<double> residual_history;
};

// c1 (1 + c2 |x|^2)^{-(d - alpha)/2}
ComplexField closed_form_W(const ModelParams& p, double c1, double c2, const GridPtr& grid);

// Iterates on the mean-free part w of W = w + kappa*w(0). kappa is fixed by
// the target core width and pins the dilation mode that the periodic box
// leaves free. After convergence the constant mode of the operator is set
// so that A W = V(W) W holds on every mode; the result is rescaled once so
// that ||A^{1/2} W||^2 = int V(W) W^2.
GroundState petviashvili_solve(const ModelParams& p, const GridPtr& grid, const ComplexField& seed,
                               double tol, int max_iter, const GroundStateOptions& opts = {});
GroundState petviashvili_solve(const ModelParams& p, const GridPtr& grid, const GroundStateOptions& opts = {});

// ||A W - V(W) W|| / ||W|| with A the kinetic operator of p.
double ground_state_residual(const ComplexField& w, const ModelParams& p);

// Power: int V(u)|u|^2 / ||A^{1/2}u||^mu. Hartree: ||A^{1/2}u||^4 / int V(u)|u|^2.
double best_constant_functional(const ComplexField& u, const ModelParams& p);

struct Thresholds {
    double kinetic = 0.0;
    double energy = 0.0;
    double c_dalpha = 0.0;
    // |K - C^{-2/(mu-2)}| / K
    double identity_defect = 0.0;
};

Thresholds thresholds(const GroundState& gs);

struct ClosedFormFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double rel_l2_error = 0.0;
};

// Least-squares fit of closed_form_W to a real field, optimal c1 for each c2
// and a bracketed search over log c2.
ClosedFormFit fit_closed_form(const ComplexField& w, const ModelParams& p);

}  // namespace fnls
