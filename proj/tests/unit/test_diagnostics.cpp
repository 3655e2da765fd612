#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "fnls/diagnostics.hpp"
#include "fnls/errors.hpp"
#include "fnls/spectral_ops.hpp"
#include "oracles.hpp"

using namespace fnls;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ComplexField gaussian(const GridPtr& g, double b = 0.5, double chirp = 0.0) {
    return sample_radial(g, [=](double r) { return std::exp(cplx(-b * r * r, chirp * r * r)); });
}

}  // namespace

TEST_CASE("mass and energy") {
    auto g = make_grid(2, 256, 12.0);
    const auto p = ModelParams::power(2, 1.5);
    ComplexField zero(g);
    CHECK(mass(zero) == 0.0);
    auto e0 = energy(zero, p);
    CHECK(e0.energy == 0.0);
    CHECK(e0.kinetic == 0.0);
    CHECK(e0.potential == 0.0);

    SUBCASE("gaussian kinetic energy against a Fourier-side radial quadrature") {
        // the lattice sum of |k|^alpha |u^|^2 has a cusp at k = 0 and converges like (pi/L)^{d+alpha}
        auto u = gaussian(make_grid(2, 1024, 96.0));
        // u^(k) = 2 pi e^{-k^2/2} in d = 2
        boost::math::quadrature::exp_sinh<double> q;
        const double radial = q.integrate(
            [](double k) { return k * std::pow(k, 1.5) * std::pow(2 * std::numbers::pi, 2) * std::exp(-k * k); }, 0.0,
            std::numeric_limits<double>::infinity());
        const double want = 0.5 * radial * 2 * std::numbers::pi / std::pow(2 * std::numbers::pi, 2);
        CHECK(rel(energy(u, p).kinetic, want) < 1e-6);
        CHECK(rel(mass(u), std::numbers::pi) < 1e-10);
    }
    SUBCASE("ground state energy") {
        GroundStateOptions o;
        auto gs = petviashvili_solve(p, g, o);
        auto e = energy(gs.field, gs.params);
        const double Kraw = 2.0 * e.kinetic;
        CHECK(rel(e.energy, (0.5 - 1.0 / p.mu()) * Kraw) < 1e-5);
        CHECK(rel(e.energy, e.kinetic + e.potential) < 1e-15);
    }
}

TEST_CASE("virial A") {
    auto g = make_grid(2, 512, 12.0);
    auto u = gaussian(g);
    CHECK(std::abs(virial_A(u)) < 1e-14);
    for (double b : {0.5, 1.0, 2.0}) {
        auto c = gaussian(g, 0.5, b);
        const double want = 2 * b * oracle::gaussian_moment(2, 1, 1.0);
        const double a = virial_A(c);
        CHECK(rel(a, want) < 1e-6);
        CHECK(rel(virial_A(std::polar(1.0, 1.3) * c), a) < 1e-12);
        ComplexField conj(c.grid_ptr());
        for (std::size_t i = 0; i < c.size(); ++i) conj[i] = std::conj(c[i]);
        CHECK(rel(virial_A(conj), -a) < 1e-12);
    }
    CHECK_FALSE(boundary_warning(u));
    auto wide = gaussian(g, 0.01);
    CHECK(boundary_warning(wide));
}

TEST_CASE("moments") {
    auto g = make_grid(2, 256, 12.0);
    auto z = moments(ComplexField(g));
    CHECK(z.m1 == 0.0);
    CHECK(z.m2 == 0.0);
    CHECK(z.m1_tilde == 0.0);
    auto m = moments(gaussian(g));
    CHECK(rel(m.m1 * m.m1, oracle::gaussian_moment(2, 1, 1.0)) < 1e-8);
    CHECK(rel(m.m2 * m.m2, oracle::gaussian_moment(2, 2, 1.0)) < 1e-8);
    CHECK(m.m1_tilde > 0.0);
    CHECK(virial_M(gaussian(g), 1.5) > 0.0);
}

TEST_CASE("concentration radius") {
    const auto p = ModelParams::power(2, 1.5);
    auto g = make_grid(2, 128, 8.0);
    CHECK(concentration_radius(kinetic_shells(ComplexField(g), p), 1.0, 0.5) == kNoRadius);
    auto u = gaussian(g, 0.7);
    auto shells = kinetic_shells(u, p);
    const double K = shells.cumulative.back();
    CHECK(rel(K, kinetic_norm_sq(u, p)) < 1e-12);
    CHECK_THROWS_AS(concentration_radius(shells, K, 0.0), InvalidInput);
    CHECK_THROWS_AS(concentration_radius(shells, K, 1.5), InvalidInput);
    double prev = 0.0;
    for (double th : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double R = concentration_radius(shells, K, th);
        CHECK(R >= prev);
        prev = R;
    }
    CHECK(concentration_radius(shells, 2.0 * K, 1.0) == kNoRadius);
    CHECK(kinetic_within(shells, 1e9) == doctest::Approx(K));

    for (double lam : {2.0, 4.0}) {
        auto g2 = make_grid(2, 128, 8.0 / lam);
        auto u2 = sample_radial(g2, [&](double r) {
            return cplx(std::pow(lam, 0.25) * std::exp(-0.7 * lam * lam * r * r));
        });
        auto s2 = kinetic_shells(u2, p);
        CHECK(rel(s2.cumulative.back(), K) < 1e-6);
        for (double th : {0.5, 0.8}) {
            const double R1 = concentration_radius(shells, K, th), R2 = concentration_radius(s2, K, th);
            CHECK(rel(R2, R1 / lam) < 0.05);
        }
    }
}

TEST_CASE("radial Sobolev ratio") {
    auto g1 = make_grid(2, 128, 8.0);
    auto g2 = make_grid(2, 128, 4.0);
    auto f = [](double r) { return std::exp(-0.5 * r * r) * (1.0 - 0.3 * r * r); };
    auto u1 = sample_radial(g1, [&](double r) { return cplx(f(r)); });
    auto u2 = sample_radial(g2, [&](double r) { return cplx(std::pow(2.0, 0.25) * f(2.0 * r)); });
    CHECK(rel(radial_sobolev_ratio(u2, 1.5), radial_sobolev_ratio(u1, 1.5)) < 1e-6);
    CHECK_THROWS_AS(radial_sobolev_ratio(ComplexField(g1), 1.5), InvalidInput);
    auto tilted = sample_field(g1, [](const double* x) { return cplx(std::exp(-0.3 * (x[0] * x[0] + 2 * x[1] * x[1]))); });
    CHECK_THROWS_AS(radial_sobolev_ratio(tilted, 1.5), InvalidInput);
    CHECK(radial_sobolev_ratio(tilted, 1.5, false) > 0.0);
}

TEST_CASE("commutator scaling") {
    const std::vector<double> lams{1, 2, 4, 8};
    auto hi = commutator_scaling_check(1.5, lams);
    INFO("s=1.5 slope " << hi.slope);
    CHECK(std::abs(hi.slope + 1.0) < 0.15);
    auto lo = commutator_scaling_check(0.5, lams);
    INFO("s=0.5 slope " << lo.slope);
    CHECK(std::abs(lo.slope + 0.5) < 0.1);
    auto g = make_grid(2, 256, 16.0);
    auto flat = commutator_scaling_check(1.5, {1.0, 2.0}, g, true);
    for (double n : flat.norms) CHECK(n < 1e-10);
    CHECK_THROWS_AS(commutator_scaling_check(1.5, {1.0, 5.0}, g), InvalidInput);
}

TEST_CASE("records") {
    const auto p = ModelParams::power(2, 1.5);
    auto g = make_grid(2, 128, 10.0);
    auto u = gaussian(g, 0.5, 0.3);
    RecordOptions o;
    o.kinetic_threshold = 2.0;
    o.with_virial_M = true;
    auto r = make_record(u, p, 0.25, 0.0, 1e-3, o);
    CHECK(r.energy == r.kinetic + r.potential);
    CHECK(rel(r.virial_A_rhs, r.virial_rhs_direct) < 1e-10);
    CHECK_FALSE(r.rhs_mismatch);
    CHECK(rel(r.virial_A, virial_A(u)) < 1e-12);
    CHECK(rel(r.mass, mass(u)) < 1e-14);
    CHECK(r.virial_M > 0.0);
    CHECK(r.conc_r_half <= r.conc_r_full);
    std::vector<DiagnosticsRecord> few(4, r);
    CHECK_THROWS_AS(virial_identity_check(few, p.alpha), InvalidInput);
}
