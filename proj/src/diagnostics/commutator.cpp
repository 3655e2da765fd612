#include <cmath>
#include <numbers>

#include "fnls/diagnostics.hpp"
#include "fnls/errors.hpp"
#include "fnls/spectral_ops.hpp"

namespace fnls {

namespace {

double bump(double q) {
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q));
}

}  // namespace

CommutatorResult commutator_scaling_check(double s, const std::vector<double>& lambdas, const GridPtr& grid,
                                          bool constant_beta) {
    if (!(s > 0.0)) throw InvalidInput("commutator order s must be positive");
    if (lambdas.size() < 2 && !constant_beta) throw InvalidInput("need at least two lambdas");
    const double L = grid->half_length();
    for (double lam : lambdas) {
        if (lam > L / 4.0) throw InvalidInput("lambda too large for the box");
        if (!(lam >= 1.0)) throw InvalidInput("lambda must be at least 1");
    }
    const int d = grid->dim();
    const double a = s >= 1.0 ? -0.5 * d + s - 1.0 : -0.5 * d;
    const double r0 = 4.0 * grid->dx(), R1 = L / 3.0;
    auto f = sample_radial(grid, [&](double r) {
        return cplx(std::pow(r0 * r0 + r * r, 0.5 * a) * std::exp(-std::pow(r / R1, 4)));
    });
    const auto sym = fractional_symbol(*grid, s);
    const ComplexField sf = apply_symbol(f, sym);
    const auto& r2 = grid->r_squared();

    CommutatorResult out;
    out.lambdas = lambdas;
    for (double lam : lambdas) {
        ComplexField bf(grid), b_sf(grid);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double b = constant_beta ? 1.0 : bump(r2[i] / (lam * lam));
            bf[i] = b * f[i];
            b_sf[i] = b * sf[i];
        }
        b_sf -= apply_symbol(bf, sym);
        out.norms.push_back(l2_norm(b_sf));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double x = std::log(lambdas[i]), y = std::log(out.norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

CommutatorResult commutator_scaling_check(double s, const std::vector<double>& lambdas) {
    return commutator_scaling_check(s, lambdas, make_grid(2, 1024, 32.0));
}

}  // namespace fnls
