#include "fnls/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/kernels.hpp"
#include "fnls/spectral_ops.hpp"

namespace fnls {

namespace {

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

std::string fmt_exp(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

bool is_admissible(double q, double r, double alpha, int d) {
    if (std::isnan(q) || std::isnan(r) || !(q >= 2.0) || !(r >= 2.0)) return false;
    const double dd = d;
    if (std::abs(alpha * inv(q) + dd * inv(r) - 0.5 * dd) > 1e-12) return false;
    const double r_excl = (4.0 * dd - 2.0) / (2.0 * dd - 3.0);
    if (std::abs(q - 2.0) <= 1e-12 && std::abs(r - r_excl) <= 1e-12 * r_excl) return false;
    return true;
}

AdmissiblePair admissible_pair_for_q(double q, double alpha, int d) {
    if (!(q >= 2.0)) throw InvalidInput("q must be at least 2");
    const double rhs = 0.5 * d - alpha * inv(q);
    if (!(rhs > 0.0)) throw InvalidInput("no admissible r for this q");
    const double r = d / rhs;
    if (r < 2.0 - 1e-12) throw InvalidInput("admissible r would fall below 2");
    return {q, std::max(2.0, r)};
}

bool is_dual_admissible(const AdmissiblePair& a, const AdmissiblePair& b, double alpha, int d) {
    return is_admissible(a, alpha, d) && is_admissible(b, alpha, d);
}

double strichartz_ratio(const ComplexField& f, const AdmissiblePair& pair, double alpha, double window_T,
                        int n_samples) {
    const int d = f.grid().dim();
    if (!is_admissible(pair, alpha, d)) throw InvalidInput("pair is not admissible");
    if (!(window_T > 0.0) || !std::isfinite(window_T)) throw InvalidInput("window_T must be positive");
    if (n_samples < 2) throw InvalidInput("n_samples must be at least 2");
    if (!f.all_finite()) throw InvalidInput("field not finite");
    const ComplexField fp = f.is_physical() ? f : to_physical(f);
    const double m = l2_norm(fp);
    if (!(m > 0.0)) throw InvalidInput("zero field: ratio undefined");
    if (symmetry_deviation(fp) >= 1e-3) throw InvalidInput("field is not radial (symmetry deviation >= 1e-3)");

    const ComplexField fh = to_spectral(fp);
    const auto sym = fractional_symbol(fp.grid(), alpha);
    ComplexField work(fp.grid_ptr(), Representation::Spectral);
    const double h = window_T / (n_samples - 1);
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        work.values() = fh.values();
        kernels::linear_phase(work.span(), sym, i * h, {});
        const double nr = lp_norm(to_physical(work), pair.r);
        if (std::isinf(pair.q)) {
            acc = std::max(acc, nr);
        } else {
            const double w = (i == 0 || i == n_samples - 1) ? 0.5 * h : h;
            acc += w * std::pow(nr, pair.q);
        }
    }
    const double time_norm = std::isinf(pair.q) ? acc : std::pow(acc, 1.0 / pair.q);
    return time_norm / m;
}

StrichartzRow strichartz_family_sup(const std::vector<ComplexField>& family, const AdmissiblePair& pair,
                                    double alpha, double window_T, int n_samples) {
    StrichartzRow row;
    row.pair = pair;
    row.window_T = window_T;
    row.family_size = static_cast<int>(family.size());
    for (const auto& f : family) {
        row.max_ratio = std::max(row.max_ratio, strichartz_ratio(f, pair, alpha, window_T, n_samples));
        row.max_symmetry_deviation = std::max(row.max_symmetry_deviation, symmetry_deviation(f));
    }
    return row;
}

std::string format_report(const StrichartzReport& r) {
    std::ostringstream os;
    os << "# linear estimate check, d = " << r.d << ", alpha = " << r.alpha << ", grid n = " << r.n
       << ", L = " << r.L << ", seed = " << r.seed << ", samples = " << r.n_samples << "\n";
    os << "# q r family_size max_ratio window_T max_sym_dev\n";
    for (const auto& row : r.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %s %d %.10g %.6g %.3e\n", fmt_exp(row.pair.q).c_str(),
                      fmt_exp(row.pair.r).c_str(), row.family_size, row.max_ratio, row.window_T,
                      row.max_symmetry_deviation);
        os << buf;
    }
    return os.str();
}

}  // namespace fnls
