#include "polarshape/dmc.hpp"

#include <cmath>
#include <stdexcept>

#include "polarshape/errors.hpp"
#include "polarshape/pmf.hpp"

namespace polarshape {

Dmc::Dmc(std::vector<double> row0, std::vector<double> row1) {
    if (row0.size() != row1.size() || row0.empty()) {
        throw std::invalid_argument("Dmc: rows must be nonempty and equally sized");
    }
    w_[0] = std::move(row0);
    w_[1] = std::move(row1);
    for (auto& row : w_) {
        double sum = 0.0;
        for (double v : row) {
            if (v < 0.0) throw std::invalid_argument("Dmc: negative transition probability");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("Dmc: row does not sum to 1");
        for (double& v : row) v /= sum;
    }
}

std::vector<double> Dmc::output_distribution(double p) const {
    std::vector<double> out(output_size());
    for (int y = 0; y < output_size(); ++y) out[y] = (1.0 - p) * w_[0][y] + p * w_[1][y];
    return out;
}

Dmc make_bsc(double flip) {
    if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("bsc: flip outside [0,1]");
    return Dmc({1.0 - flip, flip}, {flip, 1.0 - flip});
}

Dmc make_bec(double erasure) {
    if (erasure < 0.0 || erasure > 1.0) throw std::invalid_argument("bec: erasure outside [0,1]");
    return Dmc({1.0 - erasure, 0.0, erasure}, {0.0, 1.0 - erasure, erasure});
}

Dmc make_zchannel(double one_to_zero) {
    if (one_to_zero < 0.0 || one_to_zero > 1.0) {
        throw std::invalid_argument("zchannel: parameter outside [0,1]");
    }
    return Dmc({1.0, 0.0}, {one_to_zero, 1.0 - one_to_zero});
}

Dmc builtin_channel(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n) {
            throw std::invalid_argument("builtin_channel " + name + ": wrong parameter count");
        }
    };
    if (name == "bsc") { want(1); return make_bsc(params[0]); }
    if (name == "bec") { want(1); return make_bec(params[0]); }
    if (name == "zchannel") { want(1); return make_zchannel(params[0]); }
    if (name == "asymmetric") {
        if (params.size() < 4 || params.size() % 2 != 0) {
            throw std::invalid_argument("asymmetric: need a row-major 2 x k table, k >= 2");
        }
        const std::size_t k = params.size() / 2;
        std::vector<double> r0(params.begin(), params.begin() + k);
        std::vector<double> r1(params.begin() + k, params.end());
        return Dmc(std::move(r0), std::move(r1));
    }
    throw std::invalid_argument("unknown channel name: " + name);
}

double mutual_information(const Dmc& channel, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mutual_information: p outside [0,1]");
    const double h_y = entropy_bits(channel.output_distribution(p));
    const double h_y_given_x =
        (1.0 - p) * entropy_bits(channel.row(0)) + p * entropy_bits(channel.row(1));
    return h_y - h_y_given_x;
}

ChannelInfo optimal_input(const Dmc& channel, double tol, int max_iterations) {
    if (tol <= 0.0) throw std::invalid_argument("optimal_input: tol must be positive");
    const int ny = channel.output_size();
    double q[2] = {0.5, 0.5};
    double lower = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> out(ny, 0.0);
        for (int y = 0; y < ny; ++y) out[y] = q[0] * channel.w(0, y) + q[1] * channel.w(1, y);
        double d[2] = {0.0, 0.0};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < ny; ++y) {
                const double wxy = channel.w(x, y);
                if (wxy > 0.0) d[x] += wxy * std::log2(wxy / out[y]);
            }
        }
        lower = q[0] * d[0] + q[1] * d[1];
        const double upper = std::max(d[0], d[1]);
        if (upper - lower < tol) { converged = true; break; }
        const double g0 = q[0] * std::exp2(d[0]);
        const double g1 = q[1] * std::exp2(d[1]);
        q[0] = g0 / (g0 + g1);
        q[1] = g1 / (g0 + g1);
    }
    if (!converged) throw SolverFailure("optimal_input: Blahut-Arimoto did not converge");
    ChannelInfo info;
    info.capacity = std::max(lower, 0.0);
    info.solver_tolerance = tol;
    info.optimal_p = q[1];
    // Exactly flat maxima (e.g. a useless channel) resolve to the smallest p.
    for (double cand : {0.0, 0.5}) {
        if (cand < info.optimal_p && mutual_information(channel, cand) >= info.capacity - 1e-12) {
            info.optimal_p = cand;
            break;
        }
    }
    return info;
}

std::vector<int> transmit(const Dmc& channel, const BitBlock& x, RandomStream& stream) {
    std::vector<int> y(x.size());
    const int ny = channel.output_size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = stream.next_uniform();
        double cdf = 0.0;
        int sym = ny - 1;
        for (int cand = 0; cand < ny; ++cand) {
            cdf += channel.w(x[i] & 1, cand);
            if (u < cdf) { sym = cand; break; }
        }
        y[i] = sym;
    }
    return y;
}

}  // namespace polarshape
