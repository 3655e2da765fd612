#include <doctest.h>

#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/inequality.hpp"
#include "fnls/random_family.hpp"
#include "fnls/spectral_ops.hpp"

using namespace fnls;

TEST_CASE("admissible pairs") {
    const double inf = kInfiniteExponent;
    for (int d = 2; d <= 5; ++d) CHECK(is_admissible(inf, 2.0, 1.5, d));
    CHECK(is_admissible(6.0, 8.0 / 3.0, 1.5, 2));
    CHECK_FALSE(is_admissible(6.0, 3.0, 1.5, 2));
    CHECK_FALSE(is_admissible(1.5, 8.0, 1.5, 2));
    CHECK_FALSE(is_admissible(NAN, 2.0, 1.5, 2));

    // excluded endpoint lies on the scaling line when alpha = 4/3 in d = 2 (r = 6)
    CHECK(std::abs(4.0 / 3.0 / 2.0 + 2.0 / 6.0 - 1.0) < 1e-15);
    CHECK_FALSE(is_admissible(2.0, 6.0, 4.0 / 3.0, 2));
    for (int d = 2; d <= 5; ++d) CHECK_FALSE(is_admissible(2.0, (4.0 * d - 2) / (2.0 * d - 3), 1.5, d));
    // a nearby pair with q = 2 is fine: d = 3, alpha = 1.5 -> r = 4 (excluded r is 10/3)
    CHECK(is_admissible(2.0, 4.0, 1.5, 3));

    auto p = admissible_pair_for_q(6.0, 1.5, 2);
    CHECK(p.r == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(is_admissible(p, 1.5, 2));
    CHECK(admissible_pair_for_q(inf, 1.7, 3).r == doctest::Approx(2.0));
    CHECK_THROWS_AS(admissible_pair_for_q(1.0, 1.5, 2), InvalidInput);

    AdmissiblePair a{6.0, 8.0 / 3.0}, b{inf, 2.0}, c{6.0, 3.0};
    CHECK(is_dual_admissible(a, b, 1.5, 2) == is_dual_admissible(b, a, 1.5, 2));
    CHECK(is_dual_admissible(a, b, 1.5, 2));
    CHECK(is_dual_admissible(a, c, 1.5, 2) == is_dual_admissible(c, a, 1.5, 2));
    CHECK_FALSE(is_dual_admissible(a, c, 1.5, 2));
}

TEST_CASE("strichartz ratio") {
    auto g = make_grid(2, 256, 12.0);
    const double alpha = 1.5;
    const AdmissiblePair pair{6.0, 8.0 / 3.0};
    auto f = sample_radial(g, [](double r) { return cplx(std::exp(-r * r / 2), 0); });

    SUBCASE("rejections") {
        CHECK_THROWS_AS(strichartz_ratio(ComplexField(g), pair, alpha, 1.0), InvalidInput);
        CHECK_THROWS_AS(strichartz_ratio(f, {6.0, 3.0}, alpha, 1.0), InvalidInput);
        auto h = sample_field(g, [](const double* x) { return cplx(std::exp(-(x[0] - 1) * (x[0] - 1) - x[1] * x[1]), 0); });
        CHECK_THROWS_AS(strichartz_ratio(h, pair, alpha, 1.0), InvalidInput);
    }

    SUBCASE("q = inf, r = 2 gives exactly 1") {
        CHECK(strichartz_ratio(f, {kInfiniteExponent, 2.0}, alpha, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("scaling covariance") {
        const double T = 0.5;
        const double base = strichartz_ratio(f, pair, alpha, T);
        for (double lam : {0.8, 1.5}) {
            auto fl = sample_radial(g, [&](double r) { return cplx(lam * std::exp(-lam * lam * r * r / 2), 0); });
            const double scaled = strichartz_ratio(fl, pair, alpha, T * std::pow(lam, -alpha));
            CHECK(std::abs(scaled / base - 1) < 0.05);
        }
    }

    SUBCASE("phase and reflection invariance") {
        // small odd perturbation keeps the symmetry gate open but makes reflection non-trivial
        auto h = sample_field(g, [](const double* x) {
            const double r2 = x[0] * x[0] + x[1] * x[1];
            return cplx(std::exp(-r2 / 2) * (1 + 2e-4 * x[0]), 0);
        });
        REQUIRE(symmetry_deviation(h) < 1e-3);
        const double base = strichartz_ratio(h, pair, alpha, 0.7);
        CHECK(strichartz_ratio(std::exp(cplx(0, 1.234)) * h, pair, alpha, 0.7) ==
              doctest::Approx(base).epsilon(1e-12));
        ComplexField refl(g);
        const int n = g->n();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) refl[i * n + j] = h[((n - i) % n) * n + (n - j) % n];
        CHECK(l2_norm(refl - h) > 1e-6);
        CHECK(strichartz_ratio(refl, pair, alpha, 0.7) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("random radial family") {
    auto g = make_grid(2, 256, 12.0);
    const AdmissiblePair pair{6.0, 8.0 / 3.0};
    auto fam = radial_bump_family(g, 7, 50);
    REQUIRE(fam.size() == 50);
    auto again = radial_bump_family(g, 7, 50);
    CHECK(fam[17].values() == again[17].values());
    CHECK(radial_bump_family(g, 8, 1)[0].values() != fam[0].values());

    auto r1 = strichartz_family_sup(fam, pair, 1.5, 1.0);
    auto r2 = strichartz_family_sup(fam, pair, 1.5, 2.0);
    MESSAGE("sup ratio T=1: " << r1.max_ratio << "  T=2: " << r2.max_ratio);
    CHECK(std::isfinite(r1.max_ratio));
    CHECK(r1.max_symmetry_deviation < 1e-3);
    CHECK(std::abs(r2.max_ratio / r1.max_ratio - 1) < 0.1);

    StrichartzReport rep{2, 256, 12.0, 1.5, 7, 64, {r1, r2}};
    const auto text = format_report(rep);
    CHECK(text.find("6 2.66667 50") != std::string::npos);
}
