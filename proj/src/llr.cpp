#include "polarshape/llr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polarshape {

double softplus(double t) {
    if (std::isinf(t)) return t > 0 ? t : 0.0;
    return std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t)));
}

double prob_zero_from_llr(double llr) {
    if (std::isinf(llr)) return llr > 0 ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp(-llr));
}

double neg_log2_prob(double llr, uint8_t bit) {
    const double t = bit ? llr : -llr;
    return softplus(t) / M_LN2;
}

double llr_check(double a, double b) {
    // A certain operand passes the other through, up to sign.
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    const double smin =
        std::copysign(1.0, a) * std::copysign(1.0, b) * std::min(std::fabs(a), std::fabs(b));
    return smin + std::log1p(std::exp(-std::fabs(a + b))) - std::log1p(std::exp(-std::fabs(a - b)));
}

double llr_var(double first, double second, uint8_t first_bit) {
    return second + (first_bit ? -first : first);
}

double llr_from_probs(double p0, double p1) {
    if (p0 == 0.0 && p1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (p1 == 0.0) return std::numeric_limits<double>::infinity();
    if (p0 == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(p0) - std::log(p1);
}

}  // namespace polarshape
