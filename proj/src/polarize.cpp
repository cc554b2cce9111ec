#include "polarshape/polarize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "polarshape/llr.hpp"
#include "polarshape/sc_process.hpp"

namespace polarshape {

namespace {

// Runs fn(chunk_begin, chunk_end, chunk_index) over [0, total) in fixed-size
// chunks. Chunk boundaries do not depend on the worker count, so per-chunk
// accumulators reduce to identical results for any `jobs`.
void run_chunked(int total, int chunk_size, int jobs, int chunk_count,
                 const std::function<void(int, int, int)>& fn) {
    if (jobs <= 1) {
        for (int c = 0; c < chunk_count; ++c) {
            fn(c * chunk_size, std::min(total, (c + 1) * chunk_size), c);
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, chunk_count);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (int c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) {
                fn(c * chunk_size, std::min(total, (c + 1) * chunk_size), c);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<double> source_entropies_exact(double p, int block_length) {
    SourcePrefixTable table(p, block_length);
    return table.conditional_entropies();
}

EntropyEstimate source_entropies_mc(double p, int block_length, int samples, uint64_t seed,
                                    int jobs) {
    if (samples < 1) throw std::invalid_argument("source_entropies_mc: samples must be >= 1");
    const int n = block_length;
    log2_exact(static_cast<std::size_t>(n));

    const int chunk_size = 256;
    const int chunk_count = (samples + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> sums(chunk_count), sqs(chunk_count);

    run_chunked(samples, chunk_size, jobs, chunk_count, [&](int begin, int end, int chunk) {
        std::vector<double> sum(n, 0.0), sq(n, 0.0);
        const double leaf = source_leaf_llr(p);
        for (int s = begin; s < end; ++s) {
            RandomStream draw(seed, {stream_purpose::kInnerConstruction, static_cast<uint64_t>(s), 0});
            BitBlock x(n);
            for (int i = 0; i < n; ++i) x[i] = draw.next_uniform() < p ? 1 : 0;
            polar_transform_inplace(x);  // u = x G
            ScProcess proc(std::vector<double>(n, leaf));
            for (int i = 0; i < n; ++i) {
                const double cost = neg_log2_prob(proc.step(), x[i]);
                sum[i] += cost;
                sq[i] += cost * cost;
                proc.absorb(x[i]);
            }
        }
        sums[chunk] = std::move(sum);
        sqs[chunk] = std::move(sq);
    });

    EntropyEstimate est;
    est.samples = samples;
    est.value.assign(n, 0.0);
    est.std_error.assign(n, 0.0);
    for (int c = 0; c < chunk_count; ++c) {
        for (int i = 0; i < n; ++i) {
            est.value[i] += sums[c][i];
            est.std_error[i] += sqs[c][i];
        }
    }
    for (int i = 0; i < n; ++i) {
        const double mean = est.value[i] / samples;
        const double var = std::max(0.0, est.std_error[i] / samples - mean * mean);
        est.value[i] = mean;
        est.std_error[i] = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
    }
    return est;
}

IndexSets build_index_sets(const std::vector<double>& entropies, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw std::invalid_argument("build_index_sets: epsilon outside (0, 0.5)");
    }
    IndexSets sets;
    sets.block_length = static_cast<int>(entropies.size());
    sets.epsilon = epsilon;
    sets.entropies = entropies;
    for (double& h : sets.entropies) {
        if (h < -1e-9 || h > 1.0 + 1e-9) {
            throw std::invalid_argument("build_index_sets: entropy outside [0,1]");
        }
        h = std::clamp(h, 0.0, 1.0);
    }
    for (int i = 0; i < sets.block_length; ++i) {
        const double h = sets.entropies[i];
        if (h >= 1.0 - epsilon) {
            sets.random_set.push_back(i);
        } else if (h <= epsilon) {
            sets.deterministic_set.push_back(i);
        } else {
            sets.leftover_set.push_back(i);
        }
    }
    return sets;
}

ExtractorSet choose_extractor_set(const std::vector<double>& entropies, int K) {
    const int n = static_cast<int>(entropies.size());
    if (K < 0 || K > n) throw std::invalid_argument("choose_extractor_set: K out of range");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (entropies[a] != entropies[b]) return entropies[a] > entropies[b];
        return a < b;
    });
    ExtractorSet out;
    out.count = K;
    out.indices.assign(order.begin(), order.begin() + K);
    std::sort(out.indices.begin(), out.indices.end());
    return out;
}

OuterStats estimate_outer_stats(const Dmc& channel, const ShaperSpec& shaper, int outer_length,
                                int samples, uint64_t seed, int jobs) {
    shaper.validate();
    log2_exact(static_cast<std::size_t>(outer_length));
    if (samples < 1) throw std::invalid_argument("estimate_outer_stats: samples must be >= 1");
    const int levels = shaper.payload_bits();
    const int m = outer_length;
    const int inner = shaper.block_length;
    const double p = shaper.p;

    OuterStats stats;
    stats.outer_length = m;
    stats.samples = samples;
    stats.entropy.assign(levels, std::vector<double>(m, 0.0));
    stats.entropy_se.assign(levels, std::vector<double>(m, 0.0));
    stats.decision_error.assign(levels, std::vector<double>(m, 0.0));
    if (levels == 0) return stats;

    struct Acc {
        std::vector<std::vector<double>> sum, sq;
        std::vector<std::vector<int>> err;
    };
    const int chunk_size = 16;
    const int chunk_count = (samples + chunk_size - 1) / chunk_size;
    std::vector<Acc> accs(chunk_count);

    run_chunked(samples, chunk_size, jobs, chunk_count, [&](int begin, int end, int chunk) {
        Acc acc;
        acc.sum.assign(levels, std::vector<double>(m, 0.0));
        acc.sq.assign(levels, std::vector<double>(m, 0.0));
        acc.err.assign(levels, std::vector<int>(m, 0));
        std::vector<double> chan_leaf(inner);
        for (int s = begin; s < end; ++s) {
            const uint64_t sample_seed = derive_seed(seed, 0x6F75ULL * 0x10000ULL + s);
            RandomStream payload(sample_seed, {stream_purpose::kOuterConstruction, 0, 0});
            RandomStream noise(sample_seed, {stream_purpose::kChannelNoise, 0, 0});

            // One block of M super-channel uses, sampled from the deployed
            // encoder so the statistics match what decode() will see.
            std::vector<BitBlock> u_true(m);
            std::vector<ScProcess> chan;
            chan.reserve(m);
            std::vector<std::vector<uint8_t>> v(levels, std::vector<uint8_t>(m));
            for (int j = 0; j < m; ++j) {
                BitBlock payload_bits(levels);
                for (int i = 0; i < levels; ++i) payload_bits[i] = payload.next_bit();
                ShapeResult shaped = shape(shaper, payload_bits, sample_seed, j);
                const std::vector<int> y = transmit(channel, shaped.x, noise);
                for (int l = 0; l < inner; ++l) {
                    chan_leaf[l] = llr_from_probs((1.0 - p) * channel.w(0, y[l]),
                                                  p * channel.w(1, y[l]));
                }
                chan.emplace_back(chan_leaf);
                u_true[j] = std::move(shaped.u_hat);
                for (int i = 0; i < levels; ++i) v[i][j] = payload_bits[i];
            }

            for (int i = 0; i < levels; ++i) {
                const int e = shaper.extractor_set[i];
                std::vector<double> leaf(m);
                for (int j = 0; j < m; ++j) {
                    while (chan[j].position() < e) {
                        chan[j].absorb(u_true[j][chan[j].position()]);
                    }
                    leaf[j] = chan[j].step();
                    chan[j].absorb(u_true[j][e]);
                }
                const BitBlock t_true = polar_transform(BitBlock(v[i]));
                ScProcess outer(std::move(leaf));
                for (int j = 0; j < m; ++j) {
                    const double llr = outer.step();
                    const double cost = neg_log2_prob(llr, t_true[j]);
                    acc.sum[i][j] += cost;
                    acc.sq[i][j] += cost * cost;
                    const uint8_t decision = llr < 0.0 ? 1 : 0;
                    if (decision != t_true[j]) acc.err[i][j] += 1;
                    outer.absorb(t_true[j]);
                }
            }
        }
        accs[chunk] = std::move(acc);
    });

    for (int c = 0; c < chunk_count; ++c) {
        for (int i = 0; i < levels; ++i) {
            for (int j = 0; j < m; ++j) {
                stats.entropy[i][j] += accs[c].sum[i][j];
                stats.entropy_se[i][j] += accs[c].sq[i][j];
                stats.decision_error[i][j] += accs[c].err[i][j];
            }
        }
    }
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < m; ++j) {
            const double mean = stats.entropy[i][j] / samples;
            const double var = std::max(0.0, stats.entropy_se[i][j] / samples - mean * mean);
            stats.entropy[i][j] = mean;
            stats.entropy_se[i][j] = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
            stats.decision_error[i][j] /= samples;
        }
    }
    return stats;
}

namespace {

uint8_t frozen_value(uint64_t frozen_seed, bool frozen_zero, int level, int pos) {
    if (frozen_zero) return 0;
    RandomStream stream(frozen_seed, {stream_purpose::kFrozenValues, static_cast<uint64_t>(level),
                                      static_cast<uint64_t>(pos)});
    return stream.next_bit();
}

}  // namespace

std::vector<FrozenSet> outer_frozen_sets(const OuterStats& stats, double epsilon_outer,
                                         uint64_t frozen_seed, bool frozen_zero) {
    if (epsilon_outer <= 0.0) throw std::invalid_argument("outer_frozen_sets: threshold must be positive");
    std::vector<FrozenSet> out(stats.entropy.size());
    for (std::size_t i = 0; i < stats.entropy.size(); ++i) {
        out[i].level = static_cast<int>(i);
        out[i].outer_length = stats.outer_length;
        for (int j = 0; j < stats.outer_length; ++j) {
            if (stats.entropy[i][j] >= epsilon_outer) {
                out[i].positions.push_back(j);
                out[i].values.push_back(frozen_value(frozen_seed, frozen_zero, static_cast<int>(i), j));
            }
        }
    }
    return out;
}

std::vector<FrozenSet> outer_frozen_sets_fixed_rate(const OuterStats& stats, int data_bits,
                                                    uint64_t frozen_seed, bool frozen_zero) {
    const int levels = static_cast<int>(stats.entropy.size());
    const int total = levels * stats.outer_length;
    if (data_bits < 0 || data_bits > total) {
        throw std::invalid_argument("outer_frozen_sets_fixed_rate: data_bits out of range");
    }
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(total);
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < stats.outer_length; ++j) {
            ranked.emplace_back(stats.entropy[i][j], i * stats.outer_length + j);
        }
    }
    std::stable_sort(ranked.begin(), ranked.end());
    std::vector<uint8_t> keep(total, 0);
    for (int r = 0; r < data_bits; ++r) keep[ranked[r].second] = 1;
    std::vector<FrozenSet> out(levels);
    for (int i = 0; i < levels; ++i) {
        out[i].level = i;
        out[i].outer_length = stats.outer_length;
        for (int j = 0; j < stats.outer_length; ++j) {
            if (!keep[i * stats.outer_length + j]) {
                out[i].positions.push_back(j);
                out[i].values.push_back(frozen_value(frozen_seed, frozen_zero, i, j));
            }
        }
    }
    return out;
}

}  // namespace polarshape
