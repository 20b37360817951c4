#include <catch2/catch_amalgamated.hpp>
#include <pomq/pomq.hpp>

using namespace pomq;

namespace {
const TruncationConfig cfg32{32, 1e-9, 1e-8};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("position operator is tridiagonal with ladder couplings") {
    auto q = build_position(cfg32);
    REQUIRE(q.hermitian);
    CHECK(std::abs(q.entries(0, 1).real() - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(q.entries(4, 5).real() - std::sqrt(2.5)) < 1e-15);
    CHECK(std::abs(q.entries(0, 0)) == 0.0);
    CHECK(std::abs(q.entries(0, 2)) == 0.0);
}

TEST_CASE("momentum couplings are imaginary and Fourier-conjugate to position") {
    auto q = build_position(cfg32);
    auto p = build_momentum(cfg32);
    auto f = build_fourier(cfg32);
    CHECK(std::abs(p.entries(2, 3) - Complex(0.0, -std::sqrt(1.5))) < 1e-15);
    // F Q F^dag = -P away from the truncation edge
    Matrix lhs = f.entries * q.entries * f.entries.adjoint();
    int k = cfg32.dim - 2;
    CHECK(max_abs((lhs + p.entries).topLeftCorner(k, k)) < 1e-14);
}

TEST_CASE("parity and fourier satisfy their group relations") {
    auto par = build_parity(cfg32);
    auto f = build_fourier(cfg32);
    Matrix id = Matrix::Identity(cfg32.dim, cfg32.dim);
    CHECK(max_abs(par.entries * par.entries - id) < 1e-15);
    CHECK(max_abs(f.entries * f.entries - par.entries) < 1e-15);
    CHECK(max_abs(f.entries * f.entries * f.entries * f.entries - id) < 1e-15);
}

TEST_CASE("canonical commutator holds away from the truncation edge") {
    TruncationConfig cfg{64, 1e-9, 1e-8};
    Matrix q = build_position(cfg).entries;
    Matrix p = build_momentum(cfg).entries;
    int k = cfg.dim - 2;
    Matrix comm = (q * p - p * q).topLeftCorner(k, k) -
                  Complex(0, 1) * Matrix::Identity(k, k);
    CHECK(max_abs(comm) < 1e-10);
    // ... and is badly violated at the corner
    CHECK(std::abs((q * p - p * q)(cfg.dim - 1, cfg.dim - 1) - Complex(0, 1)) > 1.0);
}

TEST_CASE("position eigenvalues at dim 8 are the classical quadrature nodes") {
    // Reference roots of the degree-8 orthogonal polynomial for weight
    // exp(-x^2), Abramowitz & Stegun table 25.10.
    const double ref[4] = {0.381186990207322, 1.157193712446780, 1.981656756695843,
                           2.930637420257244};
    TruncationConfig cfg{8, 1e-9, 1e-8};
    Eigen::SelfAdjointEigenSolver<Matrix> es(build_position(cfg).entries);
    auto ev = es.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(ev[4 + i] - ref[i]) < 1e-12);
        CHECK(std::abs(ev[3 - i] + ref[i]) < 1e-12);
    }
}

TEST_CASE("hermite functions are orthonormal under quadrature") {
    // independent check of the recurrence: integrate products on a fine grid
    int nmax = 12;
    QuadRule1D rule = panel_rule(-10.0, 10.0, {}, 0.25, 16);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
    for (size_t i = 0; i < rule.size(); ++i) {
        auto h = hermite_functions(nmax, rule.nodes[i]);
        for (int m = 0; m <= nmax; ++m)
            for (int n = 0; n <= nmax; ++n) gram(m, n) += rule.weights[i] * h[m] * h[n];
    }
    CHECK((gram - Eigen::MatrixXd::Identity(nmax + 1, nmax + 1)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("ground state position probability matches the gaussian error integral") {
    TruncationConfig cfg{32, 1e-9, 1e-8};
    auto e = position_spectral_measure(cfg, BorelSet1D::interval(-1.0, 1.0));
    CHECK(std::abs(e.entries(0, 0).real() - 0.8427007929497149) < 1e-10);  // erf(1)
    CHECK(std::abs(e.entries(0, 1)) < 1e-12);  // odd integrand vanishes
}

TEST_CASE("momentum distribution of a basis state equals its position distribution") {
    TruncationConfig cfg{32, 1e-9, 1e-8};
    BorelSet1D b = BorelSet1D::interval(0.3, 1.7);
    auto eq = position_spectral_measure(cfg, b);
    auto ep = momentum_spectral_measure(cfg, b);
    for (int n : {0, 1, 5}) CHECK(std::abs(eq.entries(n, n) - ep.entries(n, n)) < 1e-10);
}

TEST_CASE("eigenprojection spectral measure is additive and resolves the identity") {
    TruncationConfig cfg{16, 1e-9, 1e-8};
    auto q = build_position(cfg);
    auto a = spectral_measure(q, BorelSet1D::interval(-1.0, 0.5));
    auto b = spectral_measure(q, BorelSet1D::interval(0.5, 2.0, false, true));
    auto ab = spectral_measure(q, BorelSet1D::interval(-1.0, 2.0));
    CHECK(max_abs(a.entries + b.entries - ab.entries) < 1e-12);
    auto all = spectral_measure(q, BorelSet1D::real_line());
    CHECK(max_abs(all.entries - Matrix::Identity(cfg.dim, cfg.dim)) < 1e-12);
    // projections: idempotent
    CHECK(max_abs(a.entries * a.entries - a.entries) < 1e-12);
}

TEST_CASE("borel set algebra") {
    auto b = BorelSet1D::interval(-1.0, 2.0).unite(BorelSet1D::half_line_geq(5.0));
    CHECK(b.contains(0.0));
    CHECK(b.contains(6.0));
    CHECK_FALSE(b.contains(3.0));
    auto c = b.complement();
    CHECK(c.contains(3.0));
    CHECK_FALSE(c.contains(0.0));
    CHECK(BorelSet1D::real_line().is_real_line());
    auto ends = b.finite_endpoints();
    REQUIRE(ends.size() == 3);
}

TEST_CASE("truncation config validation") {
    CHECK_THROWS_AS(TruncationConfig(1, 1e-9, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(TruncationConfig(8, -1.0, 1e-8), std::invalid_argument);
    CHECK(TruncationConfig(64, 1e-9, 1e-8).block() == 16);
    CHECK(TruncationConfig(2, 1e-9, 1e-8).block() == 1);
}
