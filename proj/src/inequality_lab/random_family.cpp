#include "fnls/random_family.hpp"

#include <cmath>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return splitmix64(splitmix64(seed_) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
}

std::vector<RadialBump> radial_bump_params(const CounterRng& rng, std::uint64_t k, double scale) {
    if (!(scale > 0.0)) throw InvalidInput("bump scale must be positive");
    const std::uint64_t base = k * 16;
    const int terms = 1 + static_cast<int>(rng.bits(base) % 3);
    std::vector<RadialBump> out;
    for (int j = 0; j < terms; ++j) {
        const std::uint64_t c = base + 1 + 3 * j;
        out.push_back({rng.uniform(c, 0.2, 1.0), j == 0 ? 0.0 : rng.uniform(c + 1, 0.0, 1.5 * scale),
                       rng.uniform(c + 2, 1.2 * scale, 2.0 * scale)});
    }
    return out;
}

ComplexField radial_bump(const GridPtr& g, const std::vector<RadialBump>& terms) {
    return sample_radial(g, [&](double r) {
        double v = 0.0;
        for (const auto& b : terms) {
            const double s = r * r - b.center * b.center;
            const double w2 = b.width * b.width;
            v += b.amplitude * std::exp(-s * s / (2.0 * w2 * w2));
        }
        return cplx(v, 0.0);
    });
}

std::vector<ComplexField> radial_bump_family(const GridPtr& g, std::uint64_t seed, int count, double scale) {
    if (count < 0) throw InvalidInput("family size must be non-negative");
    CounterRng rng(seed);
    std::vector<ComplexField> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) out.push_back(radial_bump(g, radial_bump_params(rng, k, scale)));
    return out;
}

}  // namespace fnls
