#pragma once

#include <cstdint>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

// Stateless generator: value i of stream `seed` is splitmix64(seed, i).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t bits(std::uint64_t counter) const;
    // uniform in [0, 1)
    double uniform(std::uint64_t counter) const;
    double uniform(std::uint64_t counter, double lo, double hi) const;
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

struct RadialBump {
    double amplitude;
    double center;  // ring radius, 0 for a centered bump
    double width;
};

// Member k of the family: 1 to 3 terms a exp(-(r^2 - c^2)^2 / (2 w^4)),
// a in [0.2, 1], c in [0, 1.5 s], w in [1.2 s, 2 s] with s = scale.
// Smooth in r^2, so smooth on the grid.
std::vector<RadialBump> radial_bump_params(const CounterRng& rng, std::uint64_t k, double scale = 1.0);
ComplexField radial_bump(const GridPtr& g, const std::vector<RadialBump>& terms);
std::vector<ComplexField> radial_bump_family(const GridPtr& g, std::uint64_t seed, int count, double scale = 1.0);

}  // namespace fnls
