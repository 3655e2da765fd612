#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

inline constexpr double kInfiniteExponent = std::numeric_limits<double>::infinity();

struct AdmissiblePair {
    double q = 2.0;
    double r = 2.0;
};

// alpha/q + d/r = d/2 to 1e-12, q, r >= 2, and not the excluded pair (2, (4d-2)/(2d-3)).
bool is_admissible(double q, double r, double alpha, int d);
inline bool is_admissible(const AdmissiblePair& p, double alpha, int d) { return is_admissible(p.q, p.r, alpha, d); }

// r solving the scaling relation for the given q; throws if r falls outside [2, inf].
AdmissiblePair admissible_pair_for_q(double q, double alpha, int d);

// Both pairs of an inhomogeneous estimate admissible, each checked on its own.
bool is_dual_admissible(const AdmissiblePair& a, const AdmissiblePair& b, double alpha, int d);

// ||U(t) f||_{L^q([0,T]) L^r} / ||f||_{L^2}, with U(t) = e^{-it|∇|^alpha},
// composite trapezoid over n_samples uniform times (q = inf: max).
double strichartz_ratio(const ComplexField& f, const AdmissiblePair& pair, double alpha, double window_T,
                        int n_samples = 64);

struct StrichartzRow {
    AdmissiblePair pair;
    int family_size = 0;
    double max_ratio = 0.0;
    double window_T = 0.0;
    double max_symmetry_deviation = 0.0;
};

struct StrichartzReport {
    int d = 0;
    int n = 0;
    double L = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    int n_samples = 64;
    std::vector<StrichartzRow> rows;
};

StrichartzRow strichartz_family_sup(const std::vector<ComplexField>& family, const AdmissiblePair& pair,
                                    double alpha, double window_T, int n_samples = 64);

std::string format_report(const StrichartzReport& r);

}  // namespace fnls
