#include "polarshape/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "polarshape/pmf.hpp"

namespace polarshape {

Interval wilson_interval(int successes, int trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = trials;
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct TrialOutcome {
    uint8_t frame_error = 0;
    int bit_errors = 0;
    uint8_t failure = 0;
};

}  // namespace

SimReport run_simulation(const SimConfig& config, const CodeSpec& code, double capacity,
                         double optimal_p) {
    if (config.trials < 1) throw std::invalid_argument("run_simulation: trials must be >= 1");
    SimReport report;
    report.design_rate = code.design_rate;
    report.capacity = capacity;
    report.optimal_p = optimal_p;
    report.used_p = code.p;
    report.rate_capacity_ratio = capacity > 0.0 ? code.design_rate / capacity : 0.0;
    report.frames = config.trials;

    const int data = code.data_bits();
    report.data_bits_total = static_cast<long long>(data) * config.trials;
    const int k = code.payload_levels();
    const int sampled = code.shaper.block_length - k -
                        (code.shaper.mode == ShaperMode::kDerandomized
                             ? static_cast<int>(code.shaper.deterministic_set.size())
                             : 0);
    report.randomness_per_frame = static_cast<long long>(sampled) * code.outer_length;

    const uint64_t message_seed = derive_seed(config.seed, 4);
    const uint64_t noise_seed = derive_seed(config.seed, 5);

    std::vector<TrialOutcome> outcomes(config.trials);
    std::atomic<long long> encode_ns{0}, decode_ns{0};

    auto run_trial = [&](int t) {
        RandomStream msg_stream(message_seed, {stream_purpose::kMessage, static_cast<uint64_t>(t), 0});
        BitBlock message(data);
        for (int i = 0; i < data; ++i) message[i] = msg_stream.next_bit();
        const uint64_t frame_seed = derive_seed(code.shaper_seed, t);

        const auto t0 = std::chrono::steady_clock::now();
        const BitBlock x = encode(code, message, frame_seed);
        const auto t1 = std::chrono::steady_clock::now();
        RandomStream noise(noise_seed, {stream_purpose::kChannelNoise, static_cast<uint64_t>(t), 0});
        const std::vector<int> y = transmit(code.channel, x, noise);
        const auto t2 = std::chrono::steady_clock::now();
        const DecodeResult decoded = decode(code, y, frame_seed);
        const auto t3 = std::chrono::steady_clock::now();

        TrialOutcome out;
        out.failure = decoded.failure ? 1 : 0;
        int bit_errs = 0;
        for (int i = 0; i < data; ++i) bit_errs += (decoded.message[i] != message[i]) ? 1 : 0;
        out.bit_errors = bit_errs;
        out.frame_error = (bit_errs > 0 || decoded.failure) ? 1 : 0;
        outcomes[t] = out;
        encode_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        decode_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t3 - t2).count();
    };

    if (config.jobs <= 1) {
        for (int t = 0; t < config.trials; ++t) run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min(config.jobs, config.trials);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const TrialOutcome& out : outcomes) {
        report.frame_errors += out.frame_error;
        report.bit_errors += out.bit_errors;
    }
    report.fer = static_cast<double>(report.frame_errors) / report.frames;
    report.fer_interval = wilson_interval(report.frame_errors, report.frames);
    report.ber = report.data_bits_total > 0
                     ? static_cast<double>(report.bit_errors) / report.data_bits_total
                     : 0.0;
    report.encode_seconds_per_frame = encode_ns.load() * 1e-9 / report.frames;
    report.decode_seconds_per_frame = decode_ns.load() * 1e-9 / report.frames;
    return report;
}

SimReport run_simulation(const SimConfig& config) {
    const ChannelInfo info = optimal_input(config.channel);
    const double p = config.p.value_or(info.optimal_p);

    BuildParams params;
    params.inner_length = config.inner_length;
    params.outer_length = config.outer_length;
    params.epsilon_inner = config.epsilon_inner;
    params.epsilon_outer = config.epsilon_outer;
    params.mode = config.mode;
    params.epsilon_derand = config.epsilon_derand;
    params.inner_samples = config.inner_samples;
    params.outer_samples = config.outer_samples;
    params.seed = config.seed;
    params.frozen_zero = config.frozen_zero;
    params.jobs = config.jobs;
    if (config.rate_ratio) {
        const int n = config.inner_length * config.outer_length;
        params.target_data_bits =
            static_cast<int>(std::lround(*config.rate_ratio * info.capacity * n));
    }

    const auto c0 = std::chrono::steady_clock::now();
    const CodeSpec code = build_code(config.channel, p, params);
    const auto c1 = std::chrono::steady_clock::now();
    SimReport report = run_simulation(config, code, info.capacity, info.optimal_p);
    report.construct_seconds = std::chrono::duration<double>(c1 - c0).count();
    return report;
}

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "M") return SweepAxis::kOuterLength;
    if (name == "epsilon") return SweepAxis::kEpsilonOuter;
    if (name == "q") return SweepAxis::kGallagerQ;
    if (name == "mode") return SweepAxis::kMode;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

std::vector<SweepRow> sweep(const SimConfig& base, SweepAxis axis,
                            const std::vector<double>& values) {
    std::vector<SweepRow> rows;
    switch (axis) {
        case SweepAxis::kOuterLength:
            for (double v : values) {
                SimConfig cfg = base;
                cfg.outer_length = static_cast<int>(v);
                SweepRow row{"M", v, std::to_string(static_cast<int>(v)), run_simulation(cfg)};
                rows.push_back(std::move(row));
            }
            break;
        case SweepAxis::kEpsilonOuter:
            for (double v : values) {
                SimConfig cfg = base;
                cfg.epsilon_outer = v;
                rows.push_back({"epsilon", v, std::to_string(v), run_simulation(cfg)});
            }
            break;
        case SweepAxis::kMode: {
            for (double v : values) {
                SimConfig cfg = base;
                cfg.mode = v == 0.0 ? ShaperMode::kStochastic : ShaperMode::kDerandomized;
                rows.push_back({"mode", v, v == 0.0 ? "stochastic" : "derandomized",
                                run_simulation(cfg)});
            }
            break;
        }
        case SweepAxis::kGallagerQ: {
            const ChannelInfo info = optimal_input(base.channel);
            const double p = base.p.value_or(info.optimal_p);
            for (double v : values) {
                const uint64_t q = static_cast<uint64_t>(v);
                const GallagerGap gap = gallager_rate_gap(base.channel, p, q);
                SweepRow row;
                row.axis = "q";
                row.value = v;
                row.label = std::to_string(q);
                row.report.capacity = info.capacity;
                row.report.optimal_p = info.optimal_p;
                row.report.used_p = p;
                row.report.design_rate = gap.exact_gap;     // gap carried in-rate column
                row.report.rate_capacity_ratio = gap.bound; // bound alongside
                rows.push_back(std::move(row));
            }
            break;
        }
    }
    return rows;
}

std::vector<ShaperDistanceRow> shaper_distance_experiment(double p, int block_length,
                                                          const std::vector<double>& epsilons) {
    if (block_length > 16) throw std::invalid_argument("shaper_distance_experiment: L above 16");
    const std::vector<double> entropies = source_entropies_exact(p, block_length);

    std::vector<double> truth(std::size_t(1) << block_length);
    for (uint64_t xv = 0; xv < truth.size(); ++xv) {
        double w = 1.0;
        for (int i = 0; i < block_length; ++i) w *= ((xv >> i) & 1u) ? p : (1.0 - p);
        truth[xv] = w;
    }

    std::vector<ShaperDistanceRow> rows;
    for (double eps : epsilons) {
        IndexSets sets = build_index_sets(entropies, eps);
        ShaperSpec spec;
        spec.block_length = block_length;
        spec.p = p;
        spec.extractor_set = sets.random_set;
        const Pmf law = shaper_output_distribution(spec);
        ShaperDistanceRow row;
        row.epsilon = eps;
        row.payload_bits = spec.payload_bits();
        row.distance = variational_distance(law.p, truth);
        row.bound = spec.payload_bits() * std::sqrt(0.5 * M_LN2 * eps);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace polarshape
