#pragma once

#include <cstdint>

namespace polarshape {

// Log-likelihood ratios are log(P(bit=0) / P(bit=1)), natural log. +inf and
// -inf are the sentinels for bits that are certain.

double softplus(double t);  // log(1 + e^t), stable for all t

double prob_zero_from_llr(double llr);

// -log2 P(bit | llr), the codelength of the realized bit.
double neg_log2_prob(double llr, uint8_t bit);

// LLR of the XOR of two independent bits with LLRs a and b (check node).
double llr_check(double a, double b);

// LLR of the second bit of a pair once the first is known (variable node):
// second + (1 - 2 * first_bit) * first.
double llr_var(double first, double second, uint8_t first_bit);

double llr_from_probs(double p0, double p1);

}  // namespace polarshape
