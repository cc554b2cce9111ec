#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarshape/code.hpp"
#include "polarshape/dmc.hpp"

namespace polarshape {

struct SimConfig {
    Dmc channel;
    std::optional<double> p;        // input bias override; default: capacity-achieving
    int inner_length = 8;           // L
    int outer_length = 16;          // M
    double epsilon_inner = 0.1;
    double epsilon_outer = 0.01;
    ShaperMode mode = ShaperMode::kStochastic;
    std::optional<double> epsilon_derand;
    std::optional<double> rate_ratio;   // fixed design-rate fraction of capacity
    int inner_samples = 20000;
    int outer_samples = 4000;
    int trials = 100;
    uint64_t seed = 1;
    bool frozen_zero = false;
    int jobs = 1;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct SimReport {
    int frames = 0;
    int frame_errors = 0;
    int bit_errors = 0;
    long long data_bits_total = 0;
    double fer = 0.0;
    Interval fer_interval;
    double ber = 0.0;
    double design_rate = 0.0;
    double capacity = 0.0;
    double optimal_p = 0.0;
    double used_p = 0.0;
    double rate_capacity_ratio = 0.0;
    long long randomness_per_frame = 0;  // shaper variates consumed
    double construct_seconds = 0.0;
    double encode_seconds_per_frame = 0.0;
    double decode_seconds_per_frame = 0.0;
};

SimReport run_simulation(const SimConfig& config);
SimReport run_simulation(const SimConfig& config, const CodeSpec& code, double capacity,
                         double optimal_p);

enum class SweepAxis { kOuterLength, kEpsilonOuter, kGallagerQ, kMode };

SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepRow {
    std::string axis;
    double value = 0.0;
    std::string label;
    SimReport report;
};

std::vector<SweepRow> sweep(const SimConfig& base, SweepAxis axis,
                            const std::vector<double>& values);

// Exact shaper-distance table: one row per epsilon with the extractor set
// R_epsilon built from exact entropies.
struct ShaperDistanceRow {
    double epsilon = 0.0;
    int payload_bits = 0;
    double distance = 0.0;   // exact variational distance to Bernoulli(p)^L
    double bound = 0.0;      // K * sqrt(ln2/2 * epsilon)
};

std::vector<ShaperDistanceRow> shaper_distance_experiment(double p, int block_length,
                                                          const std::vector<double>& epsilons);

}  // namespace polarshape
