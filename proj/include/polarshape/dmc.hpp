#pragma once

#include <string>
#include <vector>

#include "polarshape/bits.hpp"
#include "polarshape/rng.hpp"

namespace polarshape {

// Binary-input discrete memoryless channel, a 2 x |Y| transition table.
// Rows are validated to sum to one (inputs off by more than 1e-9 are
// rejected; smaller drift is renormalized away).
class Dmc {
  public:
    Dmc() : Dmc({1.0, 0.0}, {0.0, 1.0}) {}  // noiseless binary channel
    Dmc(std::vector<double> row0, std::vector<double> row1);

    int output_size() const { return static_cast<int>(w_[0].size()); }
    double w(int x, int y) const { return w_[x][y]; }
    const std::vector<double>& row(int x) const { return w_[x]; }

    // Output distribution under input Bernoulli(p), p = P(X=1).
    std::vector<double> output_distribution(double p) const;

  private:
    std::vector<double> w_[2];
};

Dmc make_bsc(double flip);
Dmc make_bec(double erasure);          // outputs {0, 1, erasure}
Dmc make_zchannel(double one_to_zero); // P(y=0 | x=1)
// name in {bsc, bec, zchannel, asymmetric}; asymmetric takes a row-major
// 2 x (params.size()/2) table.
Dmc builtin_channel(const std::string& name, const std::vector<double>& params);

struct ChannelInfo {
    double optimal_p = 0.0;
    double capacity = 0.0;
    double solver_tolerance = 0.0;
};

// I(X;Y) in bits for X ~ Bernoulli(p), computed as H(Y) - H(Y|X).
double mutual_information(const Dmc& channel, double p);

// Capacity and maximizing input via Blahut-Arimoto, stopped when the
// upper/lower capacity bounds agree within tol. Ties between maximizers are
// broken toward the smallest p.
ChannelInfo optimal_input(const Dmc& channel, double tol = 1e-9, int max_iterations = 10000);

// One output symbol per input bit, sampled by inverse CDF from the stream.
std::vector<int> transmit(const Dmc& channel, const BitBlock& x, RandomStream& stream);

}  // namespace polarshape
