#include "polarshape/awgn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "polarshape/errors.hpp"

namespace polarshape {

double Constellation::average_power() const {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += probs[i] * points[i] * points[i];
    return s;
}

void Constellation::validate() const {
    if (points.size() != probs.size() || points.empty()) {
        throw std::invalid_argument("Constellation: points/probs size mismatch");
    }
    double mass = 0.0;
    for (double w : probs) {
        if (w < 0.0) throw std::invalid_argument("Constellation: negative weight");
        mass += w;
    }
    if (std::fabs(mass - 1.0) > 1e-9) throw std::invalid_argument("Constellation: weights must sum to 1");
    if (average_power() > 1.0 + 1e-9) throw std::invalid_argument("Constellation: power above 1");
}

double awgn_capacity(double snr) {
    if (snr < 0.0) throw std::invalid_argument("awgn_capacity: negative snr");
    return 0.5 * std::log2(1.0 + snr);
}

namespace {

// Orthonormal Hermite recurrence for weight exp(-x^2); values stay O(1) near
// the roots even at high order.
void hermite_value(int n, double x, double* pn, double* dpn) {
    double pm1 = std::pow(M_PI, -0.25);  // p_0
    double p = x * std::sqrt(2.0) * pm1; // p_1
    if (n == 0) { *pn = pm1; *dpn = 0.0; return; }
    for (int k = 1; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(double(k) / (k + 1)) * pm1;
        pm1 = p;
        p = next;
    }
    *pn = p;
    *dpn = std::sqrt(2.0 * n) * pm1;
}

GaussHermiteRule build_rule(int points) {
    // Golub-Welsch on the Jacobi matrix, then one round of Newton polish.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) {
        const double off = std::sqrt(k / 2.0);
        jacobi(k - 1, k) = off;
        jacobi(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success) {
        throw SolverFailure("gauss_hermite_rule: eigen decomposition failed");
    }
    GaussHermiteRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int i = 0; i < points; ++i) {
        double x = solver.eigenvalues()(i);
        for (int it = 0; it < 16; ++it) {
            double pn, dpn;
            hermite_value(points, x, &pn, &dpn);
            const double delta = pn / dpn;
            x -= delta;
            if (std::fabs(delta) < 1e-12 * std::max(1.0, std::fabs(x))) break;
        }
        rule.nodes[i] = x;
        double acc = 0.0;
        double pm1 = std::pow(M_PI, -0.25), p = x * std::sqrt(2.0) * pm1;
        acc += pm1 * pm1;
        for (int k = 1; k < points; ++k) {
            acc += p * p;
            const double next = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(double(k) / (k + 1)) * pm1;
            pm1 = p;
            p = next;
        }
        rule.weights[i] = 1.0 / acc;  // orthonormal-polynomial form of the Gauss weight
    }
    // Convert from weight exp(-x^2) to the standard normal: x' = sqrt(2) x,
    // w' = w / sqrt(pi). The weights then sum to one.
    double mass = 0.0;
    for (int i = 0; i < points; ++i) {
        rule.nodes[i] *= std::sqrt(2.0);
        rule.weights[i] /= std::sqrt(M_PI);
        mass += rule.weights[i];
    }
    for (double& w : rule.weights) w /= mass;
    return rule;
}

const GaussHermiteRule& cached_rule(int points) {
    static std::map<int, GaussHermiteRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
    return it->second;
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int points) {
    if (points < 1) throw std::invalid_argument("gauss_hermite_rule: need at least one point");
    return cached_rule(points);
}

namespace {

// log of the output density of constellation + N(0, v) at y.
double log_output_density(const Constellation& c, double v, double y) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(c.points.size());
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const double d = y - c.points[k];
        terms[k] = c.probs[k] > 0.0 ? std::log(c.probs[k]) - d * d / (2.0 * v)
                                    : -std::numeric_limits<double>::infinity();
        best = std::max(best, terms[k]);
    }
    if (!std::isfinite(best)) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - best);
    return best + std::log(acc) - 0.5 * std::log(2.0 * M_PI * v);
}

// 20-point Gauss-Legendre on [-1, 1] via the Jacobi matrix, cached.
const std::pair<std::vector<double>, std::vector<double>>& legendre_rule() {
    static const auto rule = []() {
        const int n = 20;
        Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            const double off = k / std::sqrt(4.0 * k * k - 1.0);
            jacobi(k - 1, k) = off;
            jacobi(k, k - 1) = off;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
        std::pair<std::vector<double>, std::vector<double>> out;
        for (int i = 0; i < n; ++i) {
            out.first.push_back(solver.eigenvalues()(i));
            out.second.push_back(2.0 * solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i));
        }
        return out;
    }();
    return rule;
}

// -integral of f log2 f over the effective support, composite Gauss-Legendre
// with panels of width sigma * panel_scale. Panels at the noise scale resolve
// the transitions of log f between well-separated mixture components, where a
// single global rule converges poorly.
double output_entropy_bits(const Constellation& c, double v, double panel_scale) {
    const double sigma = std::sqrt(v);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        if (c.probs[k] >= 1e-20) {  // lighter components are below any useful tolerance
            lo = std::min(lo, c.points[k]);
            hi = std::max(hi, c.points[k]);
        }
    }
    lo -= 12.0 * sigma;
    hi += 12.0 * sigma;
    const auto& [nodes, weights] = legendre_rule();
    const int panels = static_cast<int>(std::ceil((hi - lo) / (sigma * panel_scale)));
    const double width = (hi - lo) / panels;
    double acc = 0.0;
    for (int panel = 0; panel < panels; ++panel) {
        const double center = lo + (panel + 0.5) * width;
        double local = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double y = center + 0.5 * width * nodes[q];
            const double lf = log_output_density(c, v, y);
            local += weights[q] * std::exp(lf) * lf;
        }
        acc += local * 0.5 * width;
    }
    return -acc / M_LN2;
}

}  // namespace

double mi_discrete_awgn(const Constellation& c, double noise_var, double abs_tol) {
    c.validate();
    if (noise_var <= 0.0) throw std::invalid_argument("mi_discrete_awgn: noise_var must be positive");
    if (c.points.size() == 1) return 0.0;
    double prev = output_entropy_bits(c, noise_var, 1.0);
    double value = prev;
    bool converged = false;
    for (double scale = 0.5; scale >= 1.0 / 64.0; scale *= 0.5) {
        value = output_entropy_bits(c, noise_var, scale);
        if (std::fabs(value - prev) < 0.5 * abs_tol) { converged = true; break; }
        prev = value;
    }
    if (!converged) throw SolverFailure("mi_discrete_awgn: quadrature did not converge");
    const double h_noise = 0.5 * std::log2(2.0 * M_PI * M_E * noise_var);
    return std::max(0.0, value - h_noise);
}

Constellation dyadic_gaussian_constellation(int m, double /*snr*/) {
    if (m < 1) throw std::invalid_argument("dyadic_gaussian_constellation: m must be >= 1");
    Constellation c;
    c.m = m;
    c.dyadic = true;
    c.points.resize(m + 1);
    c.probs.resize(m + 1);
    double binom = 1.0;  // C(m, 0)
    const double scale = std::pow(0.5, m);
    for (int k = 0; k <= m; ++k) {
        c.points[k] = (2.0 * k - m) / std::sqrt(static_cast<double>(m));
        c.probs[k] = binom * scale;
        binom = binom * (m - k) / (k + 1);
    }
    return c;
}

Constellation gauss_quadrature_constellation(int m, double /*snr*/) {
    if (m < 1) throw std::invalid_argument("gauss_quadrature_constellation: m must be >= 1");
    const GaussHermiteRule rule = gauss_hermite_rule(1 << m);
    Constellation c;
    c.m = m;
    c.dyadic = false;
    c.points = rule.nodes;
    c.probs = rule.weights;
    double power = c.average_power();
    for (double& x : c.points) x /= std::sqrt(power);
    return c;
}

}  // namespace polarshape
