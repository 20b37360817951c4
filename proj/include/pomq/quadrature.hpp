#ifndef POMQ_QUADRATURE_HPP
#define POMQ_QUADRATURE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace pomq {

// One-dimensional quadrature rule: nodes with positive weights.
struct QuadRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes/weights on [-1,1] via the Jacobi-matrix eigenproblem.
inline const QuadRule1D& gauss_legendre(int n) {
    static std::map<int, QuadRule1D> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k - 1, k) = b;
        J(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = es.eigenvalues()[k];
        double v = es.eigenvectors()(0, k);
        rule.weights[k] = 2.0 * v * v;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// Composite Gauss-Legendre rule on [a,b], with panels split at the given
// breakpoints and subdivided so no panel exceeds max_width.
inline QuadRule1D panel_rule(double a, double b, std::vector<double> breakpoints,
                             double max_width = 0.5, int points_per_panel = 16) {
    if (!(a < b)) throw std::invalid_argument("panel_rule: empty range");
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());
    const QuadRule1D& gl = gauss_legendre(points_per_panel);
    QuadRule1D out;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        double lo = std::max(breakpoints[i], a);
        double hi = std::min(breakpoints[i + 1], b);
        if (!(lo < hi)) continue;
        int nsub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
        double w = (hi - lo) / nsub;
        for (int s = 0; s < nsub; ++s) {
            double l = lo + s * w, half = 0.5 * w, mid = l + half;
            for (size_t k = 0; k < gl.size(); ++k) {
                out.nodes.push_back(mid + half * gl.nodes[k]);
                out.weights.push_back(half * gl.weights[k]);
            }
        }
    }
    return out;
}

// Midpoint rule with n uniform cells on [a,b].
inline QuadRule1D midpoint_rule(double a, double b, int n) {
    if (!(a < b) || n < 1) throw std::invalid_argument("midpoint_rule: bad range");
    QuadRule1D out;
    double h = (b - a) / n;
    out.nodes.resize(n);
    out.weights.assign(n, h);
    for (int i = 0; i < n; ++i) out.nodes[i] = a + (i + 0.5) * h;
    return out;
}

// Rectangular phase-space integration domain with a tensor-product rule.
struct PhaseGrid {
    enum class Rule { MidpointUniform, GaussLegendreTensor };

    double q_min = -8.0, q_max = 8.0;
    double p_min = -8.0, p_max = 8.0;
    int n_q = 257, n_p = 257;
    Rule rule = Rule::MidpointUniform;

    PhaseGrid() = default;
    PhaseGrid(double qlo, double qhi, double plo, double phi, int nq, int np,
              Rule r = Rule::MidpointUniform)
        : q_min(qlo), q_max(qhi), p_min(plo), p_max(phi), n_q(nq), n_p(np), rule(r) {
        if (!(q_min < q_max) || !(p_min < p_max) || n_q < 1 || n_p < 1)
            throw std::invalid_argument("PhaseGrid: invalid bounds or resolution");
    }

    static PhaseGrid standard(Rule r = Rule::GaussLegendreTensor) {
        return PhaseGrid(-8.0, 8.0, -8.0, 8.0, 257, 257, r);
    }

    // Axis rule honoring the requested resolution; extra breakpoints (from
    // indicator-region boundaries) split Gauss-Legendre panels so that
    // discontinuity lines coincide with panel edges.
    QuadRule1D axis_rule(bool q_axis, const std::vector<double>& breakpoints = {}) const {
        double lo = q_axis ? q_min : p_min;
        double hi = q_axis ? q_max : p_max;
        int n = q_axis ? n_q : n_p;
        if (rule == Rule::MidpointUniform) return midpoint_rule(lo, hi, n);
        int ppp = 16;
        double width = (hi - lo) / std::max(1.0, std::ceil(n / double(ppp)));
        return panel_rule(lo, hi, breakpoints, width, ppp);
    }

    double radius() const {
        return std::min(std::min(-q_min, q_max), std::min(-p_min, p_max));
    }
};

}  // namespace pomq

#endif
