#include "polarshape/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace polarshape {

Pmf::Pmf(std::vector<double> probs) : p(std::move(probs)) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("Pmf entries must lie in [0,1]");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("Pmf must sum to 1");
}

Pmf Pmf::bernoulli(double prob_one) {
    if (prob_one < 0.0 || prob_one > 1.0) throw std::invalid_argument("probability outside [0,1]");
    return Pmf(std::vector<double>{1.0 - prob_one, prob_one});
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double entropy_bits(const std::vector<double>& probs) {
    double h = 0.0;
    for (double v : probs) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

double variational_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("variational_distance: alphabet mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return 0.5 * s;
}

double variational_distance(const Pmf& a, const Pmf& b) { return variational_distance(a.p, b.p); }

}  // namespace polarshape
