#pragma once

#include <vector>

namespace polarshape {

// Discrete constellation on the real line under unit average power.
struct Constellation {
    std::vector<double> points;
    std::vector<double> probs;
    int m = 0;          // support size is at most 2^m
    bool dyadic = false;  // every probability an integer multiple of 2^-m

    double average_power() const;
    void validate() const;
};

// 0.5 * log2(1 + snr), the power-constrained AWGN capacity.
double awgn_capacity(double snr);

// I(X; X+Z) in bits for X the constellation and Z ~ N(0, noise_var), via
// quadrature of the output differential entropy with adaptive order.
double mi_discrete_awgn(const Constellation& c, double noise_var, double abs_tol = 1e-6);

// Centered, unit-power sum of m fair bits: an (m+1)-point binomial
// constellation whose weights are m-dyadic by construction.
Constellation dyadic_gaussian_constellation(int m, double snr);

// 2^m Gauss-Hermite nodes for the standard normal, rescaled to unit power.
// The weights are generically non-dyadic.
Constellation gauss_quadrature_constellation(int m, double snr);

// Nodes and weights integrating exactly against the standard normal density.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite_rule(int points);

}  // namespace polarshape
