#pragma once

#include <string>

namespace fnls {

enum class Branch { Power, Hartree };

std::string branch_name(Branch b);

struct ModelParams {
    int d = 2;
    double alpha = 1.5;
    Branch branch = Branch::Power;
    // Symbol of the kinetic operator on the constant mode. Zero gives the
    // bare |∇|^α; ground-state based runs carry the value produced by the
    // solver (see GroundState).
    double zero_mode_symbol = 0.0;

    static ModelParams power(int d, double alpha);
    static ModelParams hartree(int d, double alpha);

    // Throws ModelError. alpha = 2 is accepted as the classical limit.
    void validate() const;
    // Power: alpha < d <= 2 alpha. Hartree: always (validate covers d > 2 alpha).
    bool threshold_regime() const;

    double mu() const;
    double sigma() const;
    // Homogeneity degree of u -> V(u)u.
    double degree() const;
    double petviashvili_gamma() const;
    // Space-time exponents (q, r) of the scale-critical S_alpha norm.
    double s_alpha_q() const;
    double s_alpha_r() const;
};

}  // namespace fnls
