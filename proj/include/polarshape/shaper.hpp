#pragma once

#include <cstdint>
#include <vector>

#include "polarshape/bits.hpp"
#include "polarshape/dmc.hpp"
#include "polarshape/pmf.hpp"
#include "polarshape/rng.hpp"

namespace polarshape {

enum class ShaperMode { kStochastic, kDerandomized };

// Turns K uniform payload bits into a length-L block whose distribution
// approximates Bernoulli(p)^L. Payload bits land on the extractor positions;
// the remaining positions are drawn from the exact source conditionals
// (stochastic) or pinned to their most likely value (derandomized, positions
// in deterministic_set only).
struct ShaperSpec {
    int block_length = 0;           // L, power of two
    std::vector<int> extractor_set; // ascending 0-based positions, the E_K
    double p = 0.5;                 // P(source bit = 1)
    ShaperMode mode = ShaperMode::kStochastic;
    std::vector<int> deterministic_set;  // ascending, disjoint from extractor_set

    int payload_bits() const { return static_cast<int>(extractor_set.size()); }
    void validate() const;
};

// log((1-p)/p), the per-leaf prior ratio; +-inf for degenerate p.
double source_leaf_llr(double p);

// log P(U_i = 0 | prefix) - log P(U_i = 1 | prefix) for the source transform
// U = X G_L with X ~ Bernoulli(p)^L, i = prefix.size(). O(L log L) via the
// successive cancellation recursion with leaf ratio (1-p)/p.
double source_lr(double p, int block_length, const BitBlock& prefix);

struct ShapeResult {
    BitBlock x;       // shaped block, length L
    BitBlock u_hat;   // pre-transform bits, length L
    int draws = 0;    // uniform variates consumed
};

// block_index keys the per-position substreams so that distinct super-channels
// within one frame draw independent randomness and the decoder can replay any
// position without replaying the rest.
ShapeResult shape(const ShaperSpec& spec, const BitBlock& input, uint64_t seed,
                  uint64_t block_index);

// Draws the non-payload bit for `position` exactly the way shape() does,
// given the conditional LLR of that position. Shared with the decoder.
uint8_t shaper_draw(double llr, const ShaperSpec& spec, int position, uint64_t seed,
                    uint64_t block_index, bool* consumed);

// Exact joint law of U = X G_L for X ~ Bernoulli(p)^L, all prefix marginals.
// Enumeration-based (L <= 16); independent of the SC recursion, which it
// serves as an oracle for.
class SourcePrefixTable {
  public:
    SourcePrefixTable(double p, int block_length);

    int block_length() const { return length_; }
    // P(U^len = prefix), prefix packed with u_0 as MSB.
    double prefix_prob(int len, uint64_t prefix) const;
    double cond_prob(int len, uint64_t prefix, uint8_t bit) const;
    // H(U_i | U^{i-1}) for i = 0..L-1.
    std::vector<double> conditional_entropies() const;

  private:
    int length_;
    std::vector<std::vector<double>> levels_;  // levels_[i] has 2^i entries
};

// Exact law of the shaped block under uniform payload, as a Pmf over all 2^L
// values of x (packed MSB-first). L <= 16.
Pmf shaper_output_distribution(const ShaperSpec& spec);

// Gallager's baseline: map log2(q) uniform bits to one Bernoulli(k/q) bit.
struct GallagerSpec {
    uint64_t q = 2;  // power of two
    uint64_t k = 0;  // 0 <= k <= q
    void validate() const;
};

// k minimizing |p - k/q|; ties go to the smaller k. The error is at most 1/(2q).
uint64_t best_rational_approx(double p, uint64_t q);

// Interprets u (length log2 q, MSB first) as an integer and emits 1 iff it is
// below k, so the output is Bernoulli(k/q) under uniform input.
uint8_t gallager_shape(const GallagerSpec& spec, const BitBlock& u);

struct GallagerGap {
    uint64_t k = 0;
    double exact_gap = 0.0;  // |I at p - I at k/q|
    double bound = 0.0;      // (3/q) log2 q + 4/q
};

GallagerGap gallager_rate_gap(const Dmc& channel, double p, uint64_t q);

}  // namespace polarshape
