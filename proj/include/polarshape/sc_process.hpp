#pragma once

#include <cstdint>
#include <vector>

#include "polarshape/bits.hpp"

namespace polarshape {

// Successive-cancellation sweep over the transform [[1,0],[1,1]]^{tensor n}
// in natural input order. Leaf LLRs live at the block outputs (the x side);
// the process walks the inputs u_0 .. u_{N-1} in order. At each position the
// caller may ask for the conditional LLR of the next input bit given the
// absorbed prefix and all leaf evidence (step), and must then fix the bit
// (absorb). step() is optional: positions whose value is known from
// elsewhere can be absorbed directly, which skips the LLR work for them.
//
// The recursion pairs leaf j with leaf j + len/2 inside each tree node, the
// left child seeing check combinations and the right child seeing variable
// combinations against the left child's reconstructed output bits. Arrays are
// cached per depth, so a full sweep costs O(N log N) regardless of how the
// step/absorb calls interleave.
class ScProcess {
  public:
    // Observer used by the schedule and causality tests; unused otherwise.
    struct Probe {
        virtual void on_step(int pos) {}
        virtual void on_alpha(int depth, int index, bool var_kind) {}
        virtual void on_leaf_touch(int index) {}
        virtual ~Probe() = default;
    };

    explicit ScProcess(std::vector<double> leaf_llrs, Probe* probe = nullptr);

    int length() const { return n_; }
    // Next input position to be absorbed; n_ once the sweep is complete.
    int position() const { return pos_; }

    // Conditional LLR of input bit `position()`. Idempotent until absorb.
    double step();
    void absorb(uint8_t bit);

    // After all N positions are absorbed: the reconstructed block output
    // x = u G, i.e. the absorbed bits pushed through the transform.
    const BitBlock& output_bits() const;

  private:
    void refill(int depth, int node);

    int n_;
    int depth_count_;  // log2(n_)
    std::vector<std::vector<double>> alpha_;  // per depth, active node's LLRs
    std::vector<std::vector<uint8_t>> beta_;  // per depth, all node outputs
    std::vector<int> active_;                 // node index cached per depth
    std::vector<uint8_t> touched_;
    int pos_ = 0;
    bool stepped_ = false;
    double step_llr_ = 0.0;
    Probe* probe_;
};

}  // namespace polarshape
