#include "fnls/model.hpp"

#include <cmath>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

std::string branch_name(Branch b) { return b == Branch::Power ? "power" : "hartree"; }

ModelParams ModelParams::power(int d, double alpha) {
    ModelParams p;
    p.d = d;
    p.alpha = alpha;
    p.branch = Branch::Power;
    p.validate();
    return p;
}

ModelParams ModelParams::hartree(int d, double alpha) {
    ModelParams p;
    p.d = d;
    p.alpha = alpha;
    p.branch = Branch::Hartree;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    std::ostringstream os;
    if (d < 2 || d > 5) os << "dimension d must lie in [2, 5], got " << d << "; ";
    if (!(alpha > 1.0 && alpha <= 2.0)) os << "alpha must lie in (1,2], got " << alpha << "; ";
    if (branch == Branch::Hartree && !(d > 2.0 * alpha))
        os << "hartree branch requires d > 2*alpha (kernel |x|^{-2 alpha} locally integrable), got d="
           << d << " alpha=" << alpha << "; ";
    if (!(zero_mode_symbol >= 0.0) || !std::isfinite(zero_mode_symbol))
        os << "zero_mode_symbol must be finite and nonnegative; ";
    auto msg = os.str();
    if (!msg.empty()) throw ModelError(msg.substr(0, msg.size() - 2));
}

bool ModelParams::threshold_regime() const {
    if (branch == Branch::Hartree) return d > 2.0 * alpha;
    return alpha < d && d <= 2.0 * alpha;
}

double ModelParams::mu() const { return branch == Branch::Power ? 2.0 * d / (d - alpha) : 4.0; }

double ModelParams::sigma() const {
    if (branch != Branch::Power) throw ModelError("sigma is defined for the power branch only");
    return 2.0 * alpha / (d - alpha);
}

double ModelParams::degree() const { return branch == Branch::Power ? 1.0 + sigma() : 3.0; }

double ModelParams::petviashvili_gamma() const {
    const double p = degree();
    return p / (p - 1.0);
}

double ModelParams::s_alpha_q() const {
    return branch == Branch::Power ? 2.0 * (d + alpha) / (d - alpha) : 6.0;
}

double ModelParams::s_alpha_r() const {
    if (branch == Branch::Power) return 2.0 * (d + alpha) / (d - alpha);
    const double den = d - 4.0 * alpha / 3.0;
    if (!(den > 0.0)) throw ModelError("S_alpha spatial exponent undefined: d <= 4 alpha / 3");
    const double r = 2.0 * d / den;
    if (r < 1.0) throw ModelError("S_alpha spatial exponent below 1");
    return r;
}

}  // namespace fnls
