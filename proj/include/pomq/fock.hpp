#ifndef POMQ_FOCK_HPP
#define POMQ_FOCK_HPP

#include <cmath>
#include <vector>

#include "borel.hpp"
#include "core.hpp"
#include "quadrature.hpp"

namespace pomq {

// Conventions (hbar = 1): Q = (a + a^dag)/sqrt(2), P = i(a^dag - a)/sqrt(2),
// parity = diag((-1)^n), Fourier = diag((-i)^n) so that P = F^dag Q F.

inline HermitianOperator build_position(const TruncationConfig& cfg) {
    cfg.validate();
    Matrix m = Matrix::Zero(cfg.dim, cfg.dim);
    for (int n = 0; n + 1 < cfg.dim; ++n) {
        double v = std::sqrt((n + 1) / 2.0);
        m(n, n + 1) = v;
        m(n + 1, n) = v;
    }
    return HermitianOperator(std::move(m), true, cfg.eig_tol);
}

inline HermitianOperator build_momentum(const TruncationConfig& cfg) {
    cfg.validate();
    Matrix m = Matrix::Zero(cfg.dim, cfg.dim);
    for (int n = 0; n + 1 < cfg.dim; ++n) {
        double v = std::sqrt((n + 1) / 2.0);
        m(n, n + 1) = Complex(0.0, -v);
        m(n + 1, n) = Complex(0.0, v);
    }
    return HermitianOperator(std::move(m), true, cfg.eig_tol);
}

inline HermitianOperator build_parity(const TruncationConfig& cfg) {
    cfg.validate();
    Matrix m = Matrix::Zero(cfg.dim, cfg.dim);
    for (int n = 0; n < cfg.dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return HermitianOperator(std::move(m), true, cfg.eig_tol);
}

// Fourier-Plancherel operator; unitary, not Hermitian. The (-i)^n sign makes
// <phi|E^P(B)phi> = <F phi|E^Q(B) F phi> hold (momentum marginal identity).
inline HermitianOperator build_fourier(const TruncationConfig& cfg) {
    cfg.validate();
    static const Complex pw[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    Matrix m = Matrix::Zero(cfg.dim, cfg.dim);
    for (int n = 0; n < cfg.dim; ++n) m(n, n) = pw[n % 4];
    return HermitianOperator(std::move(m), false);
}

// Eigenvalues ascending, eigenvector columns unitary.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    explicit SpectralDecomposition(const HermitianOperator& a, double tol = 1e-8) {
        if (!a.hermitian)
            throw std::invalid_argument("SpectralDecomposition: operator not Hermitian");
        Eigen::SelfAdjointEigenSolver<Matrix> es(a.entries);
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
        double rec = (eigenvectors * eigenvalues.asDiagonal() *
                          eigenvectors.adjoint() - a.entries).cwiseAbs().maxCoeff();
        if (rec > 10.0 * tol)
            throw std::runtime_error("SpectralDecomposition: reconstruction defect " +
                                     std::to_string(rec));
    }
};

// Sum of eigenprojections of A for eigenvalues in B.
inline HermitianOperator spectral_measure(const HermitianOperator& a,
                                          const BorelSet1D& b, double tol = 1e-8) {
    SpectralDecomposition sd(a, tol);
    int d = a.dim();
    Matrix proj = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
        if (b.contains(sd.eigenvalues[k]))
            proj += sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint();
    return HermitianOperator(std::move(proj), true, 10.0 * tol);
}

// Hermite functions h_0..h_{nmax-1} at x, by the stable normalized recurrence.
inline std::vector<double> hermite_functions(int nmax, double x) {
    std::vector<double> h(nmax);
    h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (nmax > 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int k = 2; k < nmax; ++k)
        h[k] = std::sqrt(2.0 / k) * x * h[k - 1] - std::sqrt((k - 1.0) / k) * h[k - 2];
    return h;
}

// phi(x) = sum_n c_n h_n(x) sampled on a grid.
inline std::vector<Complex> position_wavefunction(const FockState& phi,
                                                  const std::vector<double>& grid) {
    std::vector<Complex> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        auto h = hermite_functions(phi.dim(), grid[i]);
        Complex acc = 0.0;
        for (int n = 0; n < phi.dim(); ++n) acc += phi.coeffs[n] * h[n];
        out[i] = acc;
    }
    return out;
}

// Classical support radius of basis level n (turning point sqrt(2n+1)).
inline double classical_radius(int n) { return std::sqrt(2.0 * n + 1.0); }

// Matrix of the multiplication operator chi_B(x) in the truncated basis:
// M_mn = int_B h_m h_n dx. This is the sharp position observable the marginal
// identities refer to; the eigenprojection sum of the truncated Q matrix
// carries O(node-spacing) boundary error for such sets and is kept separate.
inline HermitianOperator position_spectral_measure(const TruncationConfig& cfg,
                                                   const BorelSet1D& b) {
    cfg.validate();
    double L = classical_radius(cfg.dim) + 6.0;
    Matrix m = Matrix::Zero(cfg.dim, cfg.dim);
    for (const auto& iv : b.intervals) {
        double lo = std::max(iv.lo, -L), hi = std::min(iv.hi, L);
        if (!(lo < hi)) continue;
        QuadRule1D rule = panel_rule(lo, hi, {}, 0.5, 20);
        for (size_t i = 0; i < rule.size(); ++i) {
            auto h = hermite_functions(cfg.dim, rule.nodes[i]);
            for (int r = 0; r < cfg.dim; ++r)
                for (int c = 0; c <= r; ++c) m(r, c) += rule.weights[i] * h[r] * h[c];
        }
    }
    for (int r = 0; r < cfg.dim; ++r)
        for (int c = r + 1; c < cfg.dim; ++c) m(r, c) = m(c, r);
    return HermitianOperator(std::move(m), true, 1e-6);
}

// Momentum analog via Fourier conjugation: E^P(B) = F^dag E^Q(B) F.
inline HermitianOperator momentum_spectral_measure(const TruncationConfig& cfg,
                                                   const BorelSet1D& b) {
    HermitianOperator eq = position_spectral_measure(cfg, b);
    Matrix f = build_fourier(cfg).entries;
    return HermitianOperator(f.adjoint() * eq.entries * f, true, 1e-6);
}

}  // namespace pomq

#endif
