#pragma once

#include <vector>

namespace polarshape {

// Probability mass function over {0, .., size-1}. Entries must be
// nonnegative and sum to one within 1e-12.
struct Pmf {
    std::vector<double> p;

    Pmf() = default;
    explicit Pmf(std::vector<double> probs);

    std::size_t size() const { return p.size(); }
    double operator[](std::size_t i) const { return p[i]; }

    static Pmf bernoulli(double prob_one);  // index 1 carries prob_one
};

// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0. Throws outside [0,1].
double binary_entropy(double p);

double entropy_bits(const std::vector<double>& probs);

// Half the L1 distance between two distributions on the same alphabet.
double variational_distance(const Pmf& a, const Pmf& b);
double variational_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace polarshape
