#pragma once

#include <cstdint>
#include <vector>

#include "polarshape/dmc.hpp"
#include "polarshape/shaper.hpp"

namespace polarshape {

// Threshold partition of the polarized positions: random_set holds entries
// with entropy >= 1 - epsilon, deterministic_set those <= epsilon, and
// leftover_set the rest. The non-strict thresholds put boundary entries
// inside the extreme sets.
struct IndexSets {
    int block_length = 0;
    double epsilon = 0.0;
    std::vector<double> entropies;
    std::vector<int> random_set;
    std::vector<int> deterministic_set;
    std::vector<int> leftover_set;
};

struct ExtractorSet {
    int count = 0;
    std::vector<int> indices;  // ascending
};

struct EntropyEstimate {
    std::vector<double> value;
    std::vector<double> std_error;
    int samples = 0;
};

// Exact H(U_i | U^{i-1}) by full enumeration; L <= 16.
std::vector<double> source_entropies_exact(double p, int block_length);

// Unbiased Monte Carlo estimate: per sample, transform a Bernoulli(p) draw
// and score -log2 of each realized conditional from the SC recursion.
EntropyEstimate source_entropies_mc(double p, int block_length, int samples, uint64_t seed,
                                    int jobs = 1);

IndexSets build_index_sets(const std::vector<double>& entropies, double epsilon);

// The K indices of largest entropy; ties prefer the smaller index. Ascending.
ExtractorSet choose_extractor_set(const std::vector<double>& entropies, int K);

// Genie-aided statistics of the outer source-coding layer. For each level i
// (one per extractor position) and each outer position j: the empirical mean
// of -log2 P(T_j = t_j | leaf evidence, T^{j-1}) and the rate at which the
// per-step hard decision disagrees with the true bit. Samples are drawn from
// the deployed encoder: uniform payload through shape(), then the channel.
struct OuterStats {
    int outer_length = 0;  // M
    int samples = 0;
    std::vector<std::vector<double>> entropy;          // [K][M]
    std::vector<std::vector<double>> entropy_se;       // [K][M]
    std::vector<std::vector<double>> decision_error;   // [K][M]
};

OuterStats estimate_outer_stats(const Dmc& channel, const ShaperSpec& shaper, int outer_length,
                                int samples, uint64_t seed, int jobs = 1);

struct FrozenSet {
    int level = 0;       // index into the extractor set
    int outer_length = 0;
    std::vector<int> positions;      // ascending, into [M]
    std::vector<uint8_t> values;
};

// Freeze positions whose estimated entropy is at least epsilon_outer; values
// come from the seed (or zero when frozen_zero).
std::vector<FrozenSet> outer_frozen_sets(const OuterStats& stats, double epsilon_outer,
                                         uint64_t frozen_seed, bool frozen_zero = false);

// Keep exactly `data_bits` positions unfrozen, globally those of smallest
// estimated entropy. Used for rate-matched sweeps.
std::vector<FrozenSet> outer_frozen_sets_fixed_rate(const OuterStats& stats, int data_bits,
                                                    uint64_t frozen_seed, bool frozen_zero = false);

}  // namespace polarshape
