#include "polarshape/code.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polarshape/errors.hpp"
#include "polarshape/llr.hpp"
#include "polarshape/sc_process.hpp"

namespace polarshape {

int CodeSpec::data_bits() const {
    int total = 0;
    for (const auto& lvl : levels) {
        total += outer_length - static_cast<int>(lvl.positions.size());
    }
    return total;
}

void CodeSpec::validate() const {
    shaper.validate();
    log2_exact(static_cast<std::size_t>(inner_length));
    log2_exact(static_cast<std::size_t>(outer_length));
    if (shaper.block_length != inner_length) throw std::invalid_argument("CodeSpec: shaper length mismatch");
    if (block_length != inner_length * outer_length) throw std::invalid_argument("CodeSpec: N != M * L");
    if (static_cast<int>(levels.size()) != payload_levels()) {
        throw std::invalid_argument("CodeSpec: one frozen set per extractor position required");
    }
}

CodeSpec build_code(const Dmc& channel, double p, const BuildParams& params,
                    BuildDiagnostics* diagnostics) {
    CodeSpec spec;
    spec.inner_length = params.inner_length;
    spec.outer_length = params.outer_length;
    spec.block_length = params.inner_length * params.outer_length;
    spec.p = p;
    spec.channel = channel;
    spec.epsilon_inner = params.epsilon_inner;
    spec.epsilon_outer = params.epsilon_outer;
    spec.construction_seed = derive_seed(params.seed, 1);
    spec.frozen_seed = derive_seed(params.seed, 2);
    spec.shaper_seed = derive_seed(params.seed, 3);

    if (params.inner_length <= 16) {
        spec.inner_entropies = source_entropies_exact(p, params.inner_length);
    } else {
        spec.inner_entropies = source_entropies_mc(p, params.inner_length, params.inner_samples,
                                                   spec.construction_seed, params.jobs)
                                   .value;
        // The estimates are unbiased, so sampling noise can push them past
        // the [0,1] range the threshold partition expects.
        for (double& h : spec.inner_entropies) h = std::clamp(h, 0.0, 1.0);
    }
    IndexSets sets = build_index_sets(spec.inner_entropies, params.epsilon_inner);

    spec.shaper.block_length = params.inner_length;
    spec.shaper.p = p;
    spec.shaper.mode = params.mode;
    spec.shaper.extractor_set = sets.random_set;
    if (params.mode == ShaperMode::kDerandomized) {
        if (params.epsilon_derand) {
            for (int i = 0; i < params.inner_length; ++i) {
                const bool in_extractor = std::binary_search(sets.random_set.begin(),
                                                             sets.random_set.end(), i);
                if (!in_extractor && spec.inner_entropies[i] <= *params.epsilon_derand) {
                    spec.shaper.deterministic_set.push_back(i);
                }
            }
        } else {
            // Pin the most biased half of the non-payload positions, which
            // halves the per-frame randomness budget at any block length.
            std::vector<int> rest;
            for (int i = 0; i < params.inner_length; ++i) {
                if (!std::binary_search(sets.random_set.begin(), sets.random_set.end(), i)) {
                    rest.push_back(i);
                }
            }
            std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
                return spec.inner_entropies[a] < spec.inner_entropies[b];
            });
            rest.resize((rest.size() + 1) / 2);
            std::sort(rest.begin(), rest.end());
            spec.shaper.deterministic_set = std::move(rest);
        }
    }
    spec.shaper.validate();

    OuterStats stats = estimate_outer_stats(channel, spec.shaper, params.outer_length,
                                            params.outer_samples, spec.construction_seed,
                                            params.jobs);
    if (params.target_data_bits) {
        spec.levels = outer_frozen_sets_fixed_rate(stats, *params.target_data_bits,
                                                   spec.frozen_seed, params.frozen_zero);
    } else {
        spec.levels = outer_frozen_sets(stats, params.epsilon_outer, spec.frozen_seed,
                                        params.frozen_zero);
    }
    spec.design_rate = static_cast<double>(spec.data_bits()) / spec.block_length;
    if (diagnostics) diagnostics->outer_stats = std::move(stats);
    spec.validate();
    return spec;
}

namespace {

std::vector<double> channel_leaf_llrs(const Dmc& channel, double p, const std::vector<int>& y,
                                      std::size_t offset, int count) {
    std::vector<double> leaf(count);
    for (int l = 0; l < count; ++l) {
        const int sym = y[offset + l];
        if (sym < 0 || sym >= channel.output_size()) {
            throw std::invalid_argument("received symbol outside the channel output alphabet");
        }
        leaf[l] = llr_from_probs((1.0 - p) * channel.w(0, sym), p * channel.w(1, sym));
    }
    return leaf;
}

}  // namespace

BitBlock encode(const CodeSpec& spec, const BitBlock& message, uint64_t frame_seed,
                EncodeTrace* trace) {
    spec.validate();
    if (static_cast<int>(message.size()) != spec.data_bits()) {
        throw std::invalid_argument("encode: message length must equal the data positions");
    }
    const int m = spec.outer_length;
    const int k = spec.payload_levels();

    // Outer layer: fill each level's block with frozen and message bits and
    // push it through G_M to get the super-channel payload bits.
    std::vector<BitBlock> v(k);
    std::size_t consumed = 0;
    for (int i = 0; i < k; ++i) {
        BitBlock t(m);
        const FrozenSet& frozen = spec.levels[i];
        std::size_t next = 0;
        for (int j = 0; j < m; ++j) {
            if (next < frozen.positions.size() && frozen.positions[next] == j) {
                t[j] = frozen.values[next];
                ++next;
            } else {
                t[j] = message[consumed++] & 1u;
            }
        }
        polar_transform_inplace(t);
        v[i] = std::move(t);
    }

    // Inner layer: one shaper pass per super-channel.
    BitBlock x(spec.block_length);
    if (trace) {
        trace->u_hats.assign(m, {});
        trace->shaper_draws = 0;
    }
    BitBlock payload(k);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < k; ++i) payload[i] = v[i][j];
        ShapeResult shaped = shape(spec.shaper, payload, frame_seed, j);
        std::copy(shaped.x.begin(), shaped.x.end(), x.begin() + std::size_t(j) * spec.inner_length);
        if (trace) {
            trace->shaper_draws += shaped.draws;
            trace->u_hats[j] = std::move(shaped.u_hat);
        }
    }
    return x;
}

double inner_llr(const Dmc& channel, double p, const std::vector<int>& y, const BitBlock& prefix) {
    const int n = static_cast<int>(y.size());
    log2_exact(static_cast<std::size_t>(n));
    if (static_cast<int>(prefix.size()) >= n) throw std::invalid_argument("inner_llr: prefix too long");
    ScProcess proc(channel_leaf_llrs(channel, p, y, 0, n));
    for (uint8_t b : prefix) proc.absorb(b);
    const double llr = proc.step();
    if (std::isnan(llr)) throw ImpossibleEvidenceError("inner_llr: prefix inconsistent with evidence");
    return llr;
}

namespace {

struct InnerBlock {
    ScProcess chan;
    ScProcess src;

    InnerBlock(std::vector<double> chan_leaf, std::vector<double> src_leaf, ScProcess::Probe* probe)
        : chan(std::move(chan_leaf), probe), src(std::move(src_leaf)) {}
};

struct BlockProbeAdapter : ScProcess::Probe {
    DecodeProbe* sink = nullptr;
    int block = 0;
    void on_step(int pos) override { sink->on_inner_step(block, pos); }
    void on_alpha(int depth, int index, bool var_kind) override {
        sink->on_inner_alpha(block, depth, index, var_kind);
    }
    void on_leaf_touch(int index) override { sink->on_inner_leaf_touch(block, index); }
};

// Core of decode()/decode_genie(). `truth` non-null enables genie correction.
DecodeResult run_decoder(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed,
                         DecodeProbe* probe, const EncodeTrace* truth,
                         std::vector<std::vector<int>>* wrong) {
    spec.validate();
    if (static_cast<int>(y.size()) != spec.block_length) {
        throw std::invalid_argument("decode: received length must be N");
    }
    const int m = spec.outer_length;
    const int k = spec.payload_levels();
    const int inner = spec.inner_length;

    DecodeResult result;
    std::vector<BlockProbeAdapter> adapters;
    if (probe) {
        adapters.resize(m);
        for (int j = 0; j < m; ++j) {
            adapters[j].sink = probe;
            adapters[j].block = j;
        }
    }
    std::vector<InnerBlock> blocks;
    blocks.reserve(m);
    const std::vector<double> src_leaf(inner, source_leaf_llr(spec.p));
    for (int j = 0; j < m; ++j) {
        blocks.emplace_back(channel_leaf_llrs(spec.channel, spec.p, y, std::size_t(j) * inner, inner),
                            src_leaf, probe ? &adapters[j] : nullptr);
    }

    bool bad_evidence = false;
    // Replays the shaper for the positions strictly below `until`, using the
    // decoded prefix; a wrong earlier decision simply replays wrong bits,
    // which stays inside the frame-error event.
    auto advance_block = [&](int j, int until) {
        InnerBlock& blk = blocks[j];
        while (blk.chan.position() < until) {
            const int pos = blk.chan.position();
            const double llr = blk.src.step();
            if (std::isnan(llr)) bad_evidence = true;
            const uint8_t bit =
                shaper_draw(llr, spec.shaper, pos, frame_seed, static_cast<uint64_t>(j), nullptr);
            blk.src.absorb(bit);
            blk.chan.absorb(bit);
        }
    };

    for (int i = 0; i < k; ++i) {
        if (probe) {
            probe->on_level_begin(i);
            probe->on_outer_position(i, 0);
        }
        const int e = spec.shaper.extractor_set[i];
        std::vector<double> leaf(m);
        for (int j = 0; j < m; ++j) {
            advance_block(j, e);
            leaf[j] = blocks[j].chan.step();
            if (std::isnan(leaf[j])) bad_evidence = true;
        }

        const FrozenSet& frozen = spec.levels[i];
        BitBlock t_true;
        if (truth) {
            BitBlock v_true(m);
            for (int j = 0; j < m; ++j) v_true[j] = truth->u_hats[j][e];
            t_true = polar_transform(std::move(v_true));
        }
        ScProcess outer(std::move(leaf));
        std::size_t next_frozen = 0;
        for (int j = 0; j < m; ++j) {
            if (probe && j > 0) probe->on_outer_position(i, j);
            uint8_t bit;
            if (next_frozen < frozen.positions.size() && frozen.positions[next_frozen] == j) {
                bit = frozen.values[next_frozen];
                ++next_frozen;
            } else {
                const double llr = outer.step();
                if (std::isnan(llr)) { bad_evidence = true; bit = 0; }
                else bit = llr < 0.0 ? 1 : 0;
                if (probe) probe->on_outer_decision(i, j, llr, bit);
                if (truth) {
                    if (bit != t_true[j]) (*wrong)[i][j] += 1;
                    bit = t_true[j];
                } else {
                    result.message.push_back(bit);
                }
            }
            outer.absorb(bit);
        }
        const BitBlock& v_hat = outer.output_bits();
        for (int j = 0; j < m; ++j) {
            blocks[j].src.absorb(v_hat[j]);
            blocks[j].chan.absorb(v_hat[j]);
        }
        if (probe) probe->on_level_end(i);
    }
    result.failure = bad_evidence;
    return result;
}

}  // namespace

DecodeResult decode(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed,
                    DecodeProbe* probe) {
    return run_decoder(spec, y, frame_seed, probe, nullptr, nullptr);
}

void decode_genie(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed,
                  const EncodeTrace& truth, std::vector<std::vector<int>>& wrong) {
    if (wrong.size() != static_cast<std::size_t>(spec.payload_levels())) {
        wrong.assign(spec.payload_levels(), std::vector<int>(spec.outer_length, 0));
    }
    run_decoder(spec, y, frame_seed, nullptr, &truth, &wrong);
}

BitBlock map_decode_oracle(const CodeSpec& spec, const std::vector<int>& y, uint64_t frame_seed) {
    spec.validate();
    for (int sym : y) {
        if (sym < 0 || sym >= spec.channel.output_size()) {
            throw std::invalid_argument("received symbol outside the channel output alphabet");
        }
    }
    const int data = spec.data_bits();
    if (data > 20) throw std::invalid_argument("map_decode_oracle: instance too large");
    BitBlock best;
    double best_loglik = -std::numeric_limits<double>::infinity();
    for (uint64_t msg = 0; msg < (uint64_t(1) << data); ++msg) {
        const BitBlock message = index_to_bits(msg, data);
        const BitBlock x = encode(spec, message, frame_seed);
        double loglik = 0.0;
        for (int l = 0; l < spec.block_length; ++l) {
            const double w = spec.channel.w(x[l], y[l]);
            if (w == 0.0) { loglik = -std::numeric_limits<double>::infinity(); break; }
            loglik += std::log(w);
        }
        if (loglik > best_loglik) {
            best_loglik = loglik;
            best = message;
        }
    }
    return best;
}

}  // namespace polarshape
