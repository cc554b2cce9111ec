#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polarshape/dmc.hpp"
#include "polarshape/polarize.hpp"
#include "polarshape/shaper.hpp"

namespace polarshape {

// A fully constructed code instance: inner shaper over blocks of length L,
// one outer source-coding polar code of length M per extractor position,
// N = M * L channel uses per frame.
struct CodeSpec {
    int inner_length = 0;   // L
    int outer_length = 0;   // M
    int block_length = 0;   // N = M * L
    double p = 0.5;
    Dmc channel;
    ShaperSpec shaper;                  // extractor set, mode, deterministic set
    std::vector<double> inner_entropies;
    std::vector<FrozenSet> levels;      // one per extractor position
    double epsilon_inner = 0.0;
    double epsilon_outer = 0.0;
    uint64_t construction_seed = 0;
    uint64_t frozen_seed = 0;
    uint64_t shaper_seed = 0;
    double design_rate = 0.0;  // data bits per channel use

    int payload_levels() const { return shaper.payload_bits(); }
    int data_bits() const;
    void validate() const;
};

struct BuildParams {
    int inner_length = 8;
    int outer_length = 16;
    double epsilon_inner = 0.1;
    double epsilon_outer = 0.01;
    ShaperMode mode = ShaperMode::kStochastic;
    std::optional<double> epsilon_derand;  // threshold for the deterministic set;
                                           // unset = lowest half of the non-payload positions
    int inner_samples = 20000;             // Monte Carlo size when L > 16
    int outer_samples = 4000;
    uint64_t seed = 1;
    bool frozen_zero = false;
    std::optional<int> target_data_bits;   // fixed-rate construction when set
    int jobs = 1;
};

// Construction statistics kept alongside the code spec (not serialized).
struct BuildDiagnostics {
    OuterStats outer_stats;
};

CodeSpec build_code(const Dmc& channel, double p, const BuildParams& params,
                    BuildDiagnostics* diagnostics = nullptr);

struct EncodeTrace {
    std::vector<BitBlock> u_hats;  // per super-channel pre-transform bits
    int shaper_draws = 0;
};

// Message bits -> N channel input bits. frame_seed keys the shaper's common
// randomness for this frame and must be passed unchanged to decode().
BitBlock encode(const CodeSpec& spec, const BitBlock& message, uint64_t frame_seed,
                EncodeTrace* trace = nullptr);

// Conditional LLR of inner input bit prefix.size() given the block's channel
// outputs and the reconstructed prefix. Exact under the i.i.d. source model.
double inner_llr(const Dmc& channel, double p, const std::vector<int>& y, const BitBlock& prefix);

// Decode instrumentation, used by the schedule and causality tests.
struct DecodeProbe {
    virtual void on_level_begin(int level) {}
    virtual void on_outer_position(int level, int pos) {}
    virtual void on_outer_decision(int level, int pos, double llr, uint8_t bit) {}
    virtual void on_inner_step(int block, int pos) {}
    virtual void on_inner_alpha(int block, int depth, int index, bool var_kind) {}
    virtual void on_inner_leaf_touch(int block, int index) {}
    virtual void on_level_end(int level) {}
    virtual ~DecodeProbe() = default;
};

struct DecodeResult {
    BitBlock message;
    bool failure = false;  // impossible evidence; counted as a frame error
};

DecodeResult decode(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed,
                    DecodeProbe* probe = nullptr);

// Genie-aided pass: decisions are recorded against the true transmitted
// values and then corrected before decoding continues, so every step is
// conditioned on a correct prefix. Returns per (level, outer position)
// disagreement counts in `wrong`, indexed [level][pos].
void decode_genie(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed,
                  const EncodeTrace& truth, std::vector<std::vector<int>>& wrong);

// Exact maximum a-posteriori message by enumeration over all messages; the
// codeword is deterministic given (message, frame_seed). Tiny instances only.
BitBlock map_decode_oracle(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed);

}  // namespace polarshape
