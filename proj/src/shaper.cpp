#include "polarshape/shaper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polarshape/llr.hpp"
#include "polarshape/sc_process.hpp"

namespace polarshape {

namespace {

bool strictly_increasing(const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] <= v[i - 1]) return false;
    }
    return true;
}

}  // namespace

void ShaperSpec::validate() const {
    log2_exact(static_cast<std::size_t>(block_length));
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("ShaperSpec: p outside [0,1]");
    if (!strictly_increasing(extractor_set) || !strictly_increasing(deterministic_set)) {
        throw std::invalid_argument("ShaperSpec: index sets must be strictly increasing");
    }
    for (int i : extractor_set) {
        if (i < 0 || i >= block_length) throw std::invalid_argument("ShaperSpec: extractor index out of range");
    }
    for (int i : deterministic_set) {
        if (i < 0 || i >= block_length) throw std::invalid_argument("ShaperSpec: deterministic index out of range");
        if (std::binary_search(extractor_set.begin(), extractor_set.end(), i)) {
            throw std::invalid_argument("ShaperSpec: deterministic_set overlaps extractor_set");
        }
    }
}

double source_leaf_llr(double p) {
    if (p == 0.0) return std::numeric_limits<double>::infinity();
    if (p == 1.0) return -std::numeric_limits<double>::infinity();
    return std::log(1.0 - p) - std::log(p);
}

double source_lr(double p, int block_length, const BitBlock& prefix) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("source_lr: p outside [0,1]");
    if (static_cast<int>(prefix.size()) >= block_length) {
        throw std::invalid_argument("source_lr: prefix as long as the block");
    }
    ScProcess proc(std::vector<double>(block_length, source_leaf_llr(p)));
    for (uint8_t b : prefix) proc.absorb(b);
    return proc.step();
}

uint8_t shaper_draw(double llr, const ShaperSpec& spec, int position, uint64_t seed,
                    uint64_t block_index, bool* consumed) {
    const bool deterministic =
        spec.mode == ShaperMode::kDerandomized &&
        std::binary_search(spec.deterministic_set.begin(), spec.deterministic_set.end(), position);
    if (deterministic) {
        if (consumed) *consumed = false;
        return llr < 0.0 ? 1 : 0;  // ties resolve to 0
    }
    RandomStream stream(seed, {stream_purpose::kShaper, block_index, static_cast<uint64_t>(position)});
    const double v = stream.next_uniform();
    if (consumed) *consumed = true;
    return v < prob_zero_from_llr(llr) ? 0 : 1;
}

ShapeResult shape(const ShaperSpec& spec, const BitBlock& input, uint64_t seed,
                  uint64_t block_index) {
    spec.validate();
    if (static_cast<int>(input.size()) != spec.payload_bits()) {
        throw std::invalid_argument("shape: input length does not match extractor set");
    }
    const int n = spec.block_length;
    ShapeResult result;
    result.u_hat.resize(n);
    ScProcess proc(std::vector<double>(n, source_leaf_llr(spec.p)));
    std::size_t next_payload = 0;
    for (int pos = 0; pos < n; ++pos) {
        uint8_t bit;
        if (next_payload < spec.extractor_set.size() && spec.extractor_set[next_payload] == pos) {
            bit = input[next_payload] & 1u;
            ++next_payload;
        } else {
            bool consumed = false;
            bit = shaper_draw(proc.step(), spec, pos, seed, block_index, &consumed);
            if (consumed) ++result.draws;
        }
        result.u_hat[pos] = bit;
        proc.absorb(bit);
    }
    result.x = polar_transform(result.u_hat);
    return result;
}

SourcePrefixTable::SourcePrefixTable(double p, int block_length) : length_(block_length) {
    const int n = block_length;
    log2_exact(static_cast<std::size_t>(n));
    if (n > 16) throw std::invalid_argument("SourcePrefixTable: block length above 16");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("SourcePrefixTable: p outside [0,1]");
    levels_.assign(n + 1, {});
    std::vector<double>& joint = levels_[n];
    joint.resize(std::size_t(1) << n);
    for (uint64_t u = 0; u < joint.size(); ++u) {
        const BitBlock x = polar_transform(index_to_bits(u, n));
        double w = 1.0;
        for (uint8_t b : x) w *= b ? p : (1.0 - p);
        joint[u] = w;
    }
    for (int lvl = n - 1; lvl >= 0; --lvl) {
        levels_[lvl].resize(std::size_t(1) << lvl);
        for (uint64_t q = 0; q < levels_[lvl].size(); ++q) {
            levels_[lvl][q] = levels_[lvl + 1][2 * q] + levels_[lvl + 1][2 * q + 1];
        }
    }
}

double SourcePrefixTable::prefix_prob(int len, uint64_t prefix) const {
    return levels_[len][prefix];
}

double SourcePrefixTable::cond_prob(int len, uint64_t prefix, uint8_t bit) const {
    const double denom = levels_[len][prefix];
    if (denom <= 0.0) return 0.0;
    return levels_[len + 1][(prefix << 1) | (bit & 1u)] / denom;
}

std::vector<double> SourcePrefixTable::conditional_entropies() const {
    std::vector<double> h(length_);
    double prev = 0.0;
    for (int lvl = 1; lvl <= length_; ++lvl) {
        const double cur = entropy_bits(levels_[lvl]);
        h[lvl - 1] = cur - prev;
        prev = cur;
    }
    return h;
}

Pmf shaper_output_distribution(const ShaperSpec& spec) {
    spec.validate();
    const int n = spec.block_length;
    if (n > 16) throw std::invalid_argument("shaper_output_distribution: L above 16");
    SourcePrefixTable table(spec.p, n);
    const double payload_weight = std::pow(0.5, spec.payload_bits());
    std::vector<double> law(std::size_t(1) << n, 0.0);
    for (uint64_t xv = 0; xv < law.size(); ++xv) {
        // x and u are in bijection, so each atom is a single product.
        const BitBlock u = polar_transform(index_to_bits(xv, n));
        double w = payload_weight;
        uint64_t prefix = 0;
        std::size_t next_payload = 0;
        for (int pos = 0; pos < n && w > 0.0; ++pos) {
            const uint8_t bit = u[pos];
            if (next_payload < spec.extractor_set.size() &&
                spec.extractor_set[next_payload] == pos) {
                ++next_payload;  // uniform payload, weight already applied
            } else if (spec.mode == ShaperMode::kDerandomized &&
                       std::binary_search(spec.deterministic_set.begin(),
                                          spec.deterministic_set.end(), pos)) {
                const double p0 = table.cond_prob(pos, prefix, 0);
                const uint8_t most_likely = p0 >= 0.5 ? 0 : 1;  // ties resolve to 0
                if (bit != most_likely) w = 0.0;
            } else {
                w *= table.cond_prob(pos, prefix, bit);
            }
            prefix = (prefix << 1) | bit;
        }
        law[xv] = w;
    }
    return Pmf(std::move(law));
}

void GallagerSpec::validate() const {
    log2_exact(q);
    if (q < 2) throw std::invalid_argument("GallagerSpec: q must be at least 2");
    if (k > q) throw std::invalid_argument("GallagerSpec: k outside [0, q]");
}

uint64_t best_rational_approx(double p, uint64_t q) {
    if (q < 2) throw std::invalid_argument("best_rational_approx: q must be at least 2");
    log2_exact(q);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("best_rational_approx: p outside [0,1]");
    const double scaled = p * static_cast<double>(q);
    uint64_t lo = static_cast<uint64_t>(std::floor(scaled));
    if (lo > q) lo = q;
    uint64_t best = lo;
    double best_err = std::fabs(p - static_cast<double>(lo) / q);
    if (lo + 1 <= q) {
        const double err = std::fabs(p - static_cast<double>(lo + 1) / q);
        if (err < best_err) { best = lo + 1; best_err = err; }
    }
    return best;
}

uint8_t gallager_shape(const GallagerSpec& spec, const BitBlock& u) {
    spec.validate();
    if (u.size() != static_cast<std::size_t>(log2_exact(spec.q))) {
        throw std::invalid_argument("gallager_shape: input length must be log2(q)");
    }
    return bits_to_index(u) < spec.k ? 1 : 0;
}

GallagerGap gallager_rate_gap(const Dmc& channel, double p, uint64_t q) {
    GallagerGap out;
    out.k = best_rational_approx(p, q);
    const double approx = static_cast<double>(out.k) / static_cast<double>(q);
    out.exact_gap = std::fabs(mutual_information(channel, p) - mutual_information(channel, approx));
    const double qd = static_cast<double>(q);
    out.bound = (3.0 / qd) * std::log2(qd) + 4.0 / qd;
    return out;
}

}  // namespace polarshape
