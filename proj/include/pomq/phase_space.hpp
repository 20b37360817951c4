#ifndef POMQ_PHASE_SPACE_HPP
#define POMQ_PHASE_SPACE_HPP

#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "core.hpp"
#include "fock.hpp"
#include "quadrature.hpp"

namespace pomq {

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
    PhasePoint() = default;
    PhasePoint(double q_, double p_) : q(q_), p(p_) {
        if (!std::isfinite(q) || !std::isfinite(p))
            throw std::invalid_argument("PhasePoint: coordinates must be finite");
    }
};

// ---------------------------------------------------------------------------
// Classical variables f : R^2 -> R

struct Rectangle {
    BorelSet1D q_set;
    BorelSet1D p_set;
};
// Points with cos(angle) q + sin(angle) p >= offset.
struct HalfPlane {
    double angle = 0.0;
    double offset = 0.0;
};
// Angular region, half-open [theta_min, theta_max) measured from +q axis;
// wrap-around (theta_min > theta_max) is allowed.
struct Sector {
    double theta_min = 0.0;
    double theta_max = 0.0;
};
struct Disc {
    double q0 = 0.0;
    double p0 = 0.0;
    double radius = 1.0;
};
using Region = std::variant<Rectangle, HalfPlane, Sector, Disc>;

inline bool region_contains(const Region& r, double q, double p) {
    return std::visit(
        [&](const auto& reg) -> bool {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return reg.q_set.contains(q) && reg.p_set.contains(p);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return std::cos(reg.angle) * q + std::sin(reg.angle) * p >= reg.offset;
            } else if constexpr (std::is_same_v<T, Sector>) {
                double th = std::atan2(p, q);
                if (th < 0.0) th += 2.0 * kPi;
                double lo = std::fmod(reg.theta_min, 2.0 * kPi);
                double hi = std::fmod(reg.theta_max, 2.0 * kPi);
                if (lo < 0.0) lo += 2.0 * kPi;
                if (hi < 0.0) hi += 2.0 * kPi;
                if (lo <= hi) return th >= lo && th < hi;
                return th >= lo || th < hi;  // wrap-around
            } else {
                double dq = q - reg.q0, dp = p - reg.p0;
                return dq * dq + dp * dp <= reg.radius * reg.radius;
            }
        },
        r);
}

// Sampled scalar field on a tensor grid; also the output type of the
// Wigner/Husimi transforms.
struct Field {
    std::vector<double> qs, ps;
    std::vector<double> wq, wp;  // quadrature weights per axis
    Eigen::MatrixXd values;      // qs.size() x ps.size()

    double integral() const {
        double acc = 0.0;
        for (size_t i = 0; i < qs.size(); ++i) {
            double row = 0.0;
            for (size_t j = 0; j < ps.size(); ++j) row += wp[j] * values(i, j);
            acc += wq[i] * row;
        }
        return acc;
    }
    double min_value() const { return values.minCoeff(); }
    double max_value() const { return values.maxCoeff(); }
};

struct Monomial {
    int a = 0;
    int b = 0;
};
struct Indicator {
    Region region;
};
// f(q,p) = -q/p, the arrival time at the origin; undefined at p = 0.
struct ArrivalTime {};
struct GridSampled {
    std::shared_ptr<const Field> field;
};

struct PhaseSpaceFunction {
    std::variant<Monomial, Indicator, ArrivalTime, GridSampled> f;

    static PhaseSpaceFunction monomial(int a, int b) {
        if (a < 0 || b < 0) throw std::invalid_argument("monomial: negative power");
        return {Monomial{a, b}};
    }
    static PhaseSpaceFunction constant_one() { return {Monomial{0, 0}}; }
    static PhaseSpaceFunction indicator(Region r) { return {Indicator{std::move(r)}}; }
    static PhaseSpaceFunction arrival_time() { return {ArrivalTime{}}; }
    static PhaseSpaceFunction grid_sampled(std::shared_ptr<const Field> fld) {
        return {GridSampled{std::move(fld)}};
    }

    bool is_indicator() const { return std::holds_alternative<Indicator>(f); }
    bool is_monomial() const { return std::holds_alternative<Monomial>(f); }

    double evaluate(double q, double p) const {
        return std::visit(
            [&](const auto& v) -> double {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Monomial>) {
                    return std::pow(q, v.a) * std::pow(p, v.b);
                } else if constexpr (std::is_same_v<T, Indicator>) {
                    return region_contains(v.region, q, p) ? 1.0 : 0.0;
                } else if constexpr (std::is_same_v<T, ArrivalTime>) {
                    if (p == 0.0)
                        throw std::domain_error("arrival time undefined at p = 0");
                    return -q / p;
                } else {
                    // nearest-node lookup, no interpolation
                    auto nearest = [](const std::vector<double>& xs, double x) {
                        size_t best = 0;
                        double d = std::abs(xs[0] - x);
                        for (size_t i = 1; i < xs.size(); ++i)
                            if (std::abs(xs[i] - x) < d) d = std::abs(xs[i] - x), best = i;
                        return best;
                    };
                    return v.field->values(nearest(v.field->qs, q), nearest(v.field->ps, p));
                }
            },
            f);
    }

    // f^k; monomial powers add, indicators are idempotent.
    PhaseSpaceFunction pow(int k) const {
        if (k < 1) throw std::invalid_argument("pow: k must be >= 1");
        if (auto* m = std::get_if<Monomial>(&f))
            return monomial(m->a * k, m->b * k);
        if (is_indicator()) return *this;
        throw std::invalid_argument("pow: f^k not representable for this variable");
    }

    // Axis-aligned discontinuity lines, used as quadrature breakpoints.
    std::vector<double> axis_breakpoints(bool q_axis) const {
        const auto* ind = std::get_if<Indicator>(&f);
        if (!ind) return {};
        if (const auto* rect = std::get_if<Rectangle>(&ind->region))
            return q_axis ? rect->q_set.finite_endpoints() : rect->p_set.finite_endpoints();
        if (const auto* hp = std::get_if<HalfPlane>(&ind->region)) {
            double c = std::cos(hp->angle), s = std::sin(hp->angle);
            if (q_axis && std::abs(s) < 1e-12) return {hp->offset / c};
            if (!q_axis && std::abs(c) < 1e-12) return {hp->offset / s};
        }
        return {};
    }
};

// ---------------------------------------------------------------------------
// Weyl / displacement operators

inline Matrix expm_i_hermitian(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (int k = 0; k < h.rows(); ++k)
        phases[k] = std::exp(Complex(0.0, es.eigenvalues()[k]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// W(q,p) = exp(i(pQ - qP)), by eigendecomposition of the Hermitian generator.
inline Matrix weyl_operator(const PhasePoint& pt, const TruncationConfig& cfg) {
    Matrix g = pt.p * build_position(cfg).entries - pt.q * build_momentum(cfg).entries;
    return expm_i_hermitian(g);
}

// Three-factor product form e^{iqp/2} e^{-iqP} e^{ipQ}; validation oracle for
// weyl_operator.
inline Matrix weyl_operator_product(const PhasePoint& pt, const TruncationConfig& cfg) {
    Matrix a = expm_i_hermitian(-pt.q * build_momentum(cfg).entries);
    Matrix b = expm_i_hermitian(pt.p * build_position(cfg).entries);
    return std::exp(Complex(0.0, 0.5 * pt.q * pt.p)) * a * b;
}

// Exact matrix elements <m|D(alpha)|n> of the displacement operator, via the
// associated Laguerre recurrence. These coincide with the untruncated values;
// W(q,p) = D((q+ip)/sqrt(2)).
inline Matrix displacement_matrix(int dim, Complex alpha) {
    const double x = std::norm(alpha);
    // lgam[n] = lgamma(n+1)
    static thread_local std::vector<double> lgam;
    if (static_cast<int>(lgam.size()) < dim + 1) {
        lgam.resize(dim + 1);
        for (int n = 0; n <= dim; ++n) lgam[n] = std::lgamma(n + 1.0);
    }
    // lag(n,k) = L_n^{(k)}(x)
    Eigen::MatrixXd lag(dim, dim);
    for (int k = 0; k < dim; ++k) {
        lag(0, k) = 1.0;
        if (dim > 1) lag(1, k) = 1.0 + k - x;
        for (int n = 1; n + 1 < dim; ++n)
            lag(n + 1, k) =
                ((2.0 * n + 1.0 + k - x) * lag(n, k) - (n + k) * lag(n - 1, k)) / (n + 1.0);
    }
    // scaled powers alpha^k e^{-x/2} and (-conj(alpha))^k e^{-x/2}
    std::vector<Complex> up(dim), lo(dim);
    double damp = std::exp(-0.5 * x);
    up[0] = lo[0] = damp;
    for (int k = 1; k < dim; ++k) {
        up[k] = up[k - 1] * alpha;
        lo[k] = lo[k - 1] * (-std::conj(alpha));
    }
    Matrix d(dim, dim);
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) {
            if (m >= n) {
                int k = m - n;
                d(m, n) = lag(n, k) * up[k] * std::exp(0.5 * (lgam[n] - lgam[m]));
            } else {
                int k = n - m;
                d(m, n) = lag(m, k) * lo[k] * std::exp(0.5 * (lgam[m] - lgam[n]));
            }
        }
    return d;
}

inline Complex displacement_amplitude(const PhasePoint& pt) {
    return Complex(pt.q, pt.p) / std::sqrt(2.0);
}

// Kernel of the Weyl map: W(q,p) parity W(q,p)^* = D(2 alpha) parity.
inline Matrix displaced_parity(int dim, const PhasePoint& pt) {
    Matrix k = displacement_matrix(dim, 2.0 * displacement_amplitude(pt));
    for (int n = 1; n < dim; n += 2) k.col(n) *= -1.0;
    return k;
}

// W(q,p) T W(q,p)^*: positive, trace one (up to truncation at the top levels).
inline Matrix displaced_density(const GeneratingOperator& t, const PhasePoint& pt) {
    Matrix w = displacement_matrix(t.dim(), displacement_amplitude(pt));
    return w * t.matrix * w.adjoint();
}

// ---------------------------------------------------------------------------
// Phase-space transforms

// Largest basis level whose classical support fits the grid with the given
// margin; weight above it must stay below tail_tol.
inline void require_grid_support(const Vector& coeffs, const PhaseGrid& grid,
                                 double tail_tol, double margin = 3.0) {
    double r = grid.radius() - margin;
    double tail = 0.0;
    for (int n = 0; n < coeffs.size(); ++n)
        if (classical_radius(n) > r) tail += std::norm(coeffs[n]);
    if (tail > tail_tol)
        throw TailMassError("state weight " + std::to_string(tail) +
                            " escapes the phase-space grid (tail_tol " +
                            std::to_string(tail_tol) + ")");
}

inline void require_grid_support(const FockState& phi, const PhaseGrid& grid,
                                 double tail_tol, double margin = 3.0) {
    require_grid_support(phi.coeffs, grid, tail_tol, margin);
}

// P^T_phi(q,p) = <phi| W T W^* phi> = sum_r t_r |<phi|W eta_r>|^2.
inline Field generalized_distribution(const GeneratingOperator& t, const FockState& phi,
                                      const PhaseGrid& grid, double tail_tol = 1e-9) {
    require_grid_support(phi, grid, tail_tol);
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix);
    std::vector<std::pair<double, Vector>> comps;
    for (int r = 0; r < t.dim(); ++r)
        if (es.eigenvalues()[r] > 1e-14) {
            require_grid_support(es.eigenvectors().col(r), grid, tail_tol);
            comps.emplace_back(es.eigenvalues()[r], es.eigenvectors().col(r));
        }
    QuadRule1D rq = grid.axis_rule(true), rp = grid.axis_rule(false);
    Field out;
    out.qs = rq.nodes;
    out.ps = rp.nodes;
    out.wq = rq.weights;
    out.wp = rp.weights;
    out.values.resize(rq.size(), rp.size());
    for (size_t i = 0; i < rq.size(); ++i)
        for (size_t j = 0; j < rp.size(); ++j) {
            Matrix w = displacement_matrix(
                phi.dim(), displacement_amplitude({rq.nodes[i], rp.nodes[j]}));
            double v = 0.0;
            for (const auto& [tr, eta] : comps)
                v += tr * std::norm(phi.coeffs.dot(w * eta));
            out.values(i, j) = v;
        }
    return out;
}

// f^W_phi(q,p) = <phi| W parity W^* phi>; real since the kernel is Hermitian.
inline Field wigner_transform(const FockState& phi, const PhaseGrid& grid,
                              double tail_tol = 1e-9) {
    require_grid_support(phi, grid, tail_tol);
    QuadRule1D rq = grid.axis_rule(true), rp = grid.axis_rule(false);
    Field out;
    out.qs = rq.nodes;
    out.ps = rp.nodes;
    out.wq = rq.weights;
    out.wp = rp.weights;
    out.values.resize(rq.size(), rp.size());
    Vector parity_phi = phi.coeffs;
    for (int n = 1; n < phi.dim(); n += 2) parity_phi[n] *= -1.0;
    for (size_t i = 0; i < rq.size(); ++i)
        for (size_t j = 0; j < rp.size(); ++j) {
            Matrix d = displacement_matrix(
                phi.dim(), 2.0 * displacement_amplitude({rq.nodes[i], rp.nodes[j]}));
            out.values(i, j) = phi.coeffs.dot(d * parity_phi).real();
        }
    return out;
}

}  // namespace pomq

#endif
