#include "polarshape/sc_process.hpp"

#include <stdexcept>

#include "polarshape/llr.hpp"

namespace polarshape {

ScProcess::ScProcess(std::vector<double> leaf_llrs, Probe* probe)
    : n_(static_cast<int>(leaf_llrs.size())), probe_(probe) {
    depth_count_ = log2_exact(leaf_llrs.size());
    alpha_.resize(depth_count_ + 1);
    alpha_[0] = std::move(leaf_llrs);
    for (int d = 1; d <= depth_count_; ++d) alpha_[d].resize(n_ >> d);
    beta_.assign(depth_count_ + 1, std::vector<uint8_t>(n_, 0));
    active_.assign(depth_count_ + 1, -1);
    active_[0] = 0;
    touched_.assign(n_, 0);
}

void ScProcess::refill(int depth, int node) {
    const int len = n_ >> depth;
    const std::vector<double>& parent = alpha_[depth - 1];
    std::vector<double>& self = alpha_[depth];
    const bool right = (node & 1) != 0;
    const uint8_t* left_out = right ? beta_[depth].data() + std::size_t(node - 1) * len : nullptr;
    for (int j = 0; j < len; ++j) {
        if (right) {
            self[j] = llr_var(parent[j], parent[j + len], left_out[j]);
        } else {
            self[j] = llr_check(parent[j], parent[j + len]);
        }
        if (probe_) {
            if (depth < depth_count_) probe_->on_alpha(depth, node * len + j, right);
            if (depth == 1) {
                if (!touched_[j]) { probe_->on_leaf_touch(j); touched_[j] = 1; }
                if (!touched_[j + len]) { probe_->on_leaf_touch(j + len); touched_[j + len] = 1; }
            }
        }
    }
    active_[depth] = node;
}

double ScProcess::step() {
    if (pos_ >= n_) throw std::logic_error("ScProcess: sweep already complete");
    if (stepped_) return step_llr_;
    if (probe_) probe_->on_step(pos_);
    if (depth_count_ == 0) {
        step_llr_ = alpha_[0][0];
    } else {
        for (int d = 1; d <= depth_count_; ++d) {
            const int need = pos_ >> (depth_count_ - d);
            if (active_[d] != need) refill(d, need);
        }
        step_llr_ = alpha_[depth_count_][0];
    }
    stepped_ = true;
    return step_llr_;
}

void ScProcess::absorb(uint8_t bit) {
    if (pos_ >= n_) throw std::logic_error("ScProcess: sweep already complete");
    beta_[depth_count_][pos_] = bit & 1u;
    int k = pos_;
    for (int d = depth_count_; d > 0 && (k & 1); --d, k >>= 1) {
        const int len = n_ >> d;
        const std::size_t base = std::size_t(k - 1) * len;  // parent slots; left child first
        for (int j = 0; j < len; ++j) {
            beta_[d - 1][base + j] = beta_[d][base + j] ^ beta_[d][base + len + j];
            beta_[d - 1][base + len + j] = beta_[d][base + len + j];
        }
    }
    ++pos_;
    stepped_ = false;
}

const BitBlock& ScProcess::output_bits() const {
    if (pos_ != n_) throw std::logic_error("ScProcess: sweep not complete");
    return beta_[0];
}

}  // namespace polarshape
