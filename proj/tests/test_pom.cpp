#include <catch2/catch_amalgamated.hpp>
#include <pomq/pomq.hpp>

using namespace pomq;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

DiscretePOM three_outcome(int d) {
    // symmetric labels -1, 0, 1 with commuting diagonal effects
    Matrix a = Matrix::Zero(d, d), b = Matrix::Zero(d, d), c = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        a(i, i) = 0.25;
        b(i, i) = 0.5;
        c(i, i) = 0.25;
    }
    return DiscretePOM({{-1.0, HermitianOperator(a)},
                        {0.0, HermitianOperator(b)},
                        {1.0, HermitianOperator(c)}});
}

FockState random_state(int d, uint64_t seed) {
    Vector v(d);
    for (int i = 0; i < d; ++i)
        v[i] = Complex(uniform01(seed, 2 * i) - 0.5, uniform01(seed, 2 * i + 1) - 0.5);
    v.normalize();
    return FockState(v);
}
}  // namespace

TEST_CASE("POM construction validates effects, labels and normalization") {
    int d = 4;
    Matrix half = 0.5 * Matrix::Identity(d, d);
    CHECK_NOTHROW(DiscretePOM(
        {{0.0, HermitianOperator(half)}, {1.0, HermitianOperator(half)}}));
    CHECK_THROWS_AS(DiscretePOM({{0.0, HermitianOperator(half)},
                                 {0.0, HermitianOperator(half)}}),
                    std::invalid_argument);  // duplicate label
    CHECK_THROWS_AS(DiscretePOM({{0.0, HermitianOperator(half)}}),
                    std::invalid_argument);  // does not sum to identity
    Matrix big = 1.5 * Matrix::Identity(d, d);
    CHECK_THROWS_AS(DiscretePOM({{0.0, HermitianOperator(big)},
                                 {1.0, HermitianOperator(Matrix(-0.5 * Matrix::Identity(d, d)))}}),
                    std::invalid_argument);  // not effects
}

TEST_CASE("moment operators of a symmetric three-outcome measurement") {
    int d = 4;
    DiscretePOM e = three_outcome(d);
    CHECK(max_abs(pom_moment(e, 0).entries - Matrix::Identity(d, d)) < 1e-15);
    CHECK(max_abs(pom_moment(e, 1).entries) < 1e-15);  // odd moments vanish
    CHECK(max_abs(pom_moment(e, 2).entries - 0.5 * Matrix::Identity(d, d)) < 1e-15);
    CHECK(max_abs(noise_operator(e).entries - 0.5 * Matrix::Identity(d, d)) < 1e-15);
}

TEST_CASE("noise operator of a two-valued POM is A - A^2 and is positive") {
    int d = 6;
    Matrix a = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) a(i, i) = 0.1 + 0.12 * i;
    DiscretePOM e = quantize_question(HermitianOperator(a));
    Matrix n = noise_operator(e).entries;
    CHECK(max_abs(n - (a - a * a)) < 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(n, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-14);
}

TEST_CASE("spectral questions are noiseless, smeared ones are not") {
    TruncationConfig cfg{16, 1e-9, 1e-8};
    auto proj = spectral_measure(build_position(cfg), BorelSet1D::half_line_geq(0.0));
    CHECK(is_noiseless(quantize_question(proj)));
    Matrix a = 0.5 * Matrix::Identity(cfg.dim, cfg.dim);
    a(0, 0) = 0.3;
    CHECK_FALSE(is_noiseless(quantize_question(HermitianOperator(a))));
}

TEST_CASE("variance decomposition: total = sharp + noise on random states") {
    int d = 8;
    DiscretePOM e = three_outcome(d);
    for (uint64_t s = 1; s <= 10; ++s) {
        FockState phi = random_state(d, s);
        auto v = variance_decomposition(e, phi);
        CHECK(std::abs(v.total - v.sharp - v.noise) < 1e-12);
        CHECK(v.noise >= -1e-12);
        CHECK(v.total >= -1e-12);
    }
}

TEST_CASE("coarsening a sharp measurement introduces noise") {
    TruncationConfig cfg{16, 1e-9, 1e-8};
    auto q = build_position(cfg);
    auto pleft = spectral_measure(q, BorelSet1D::interval(
                                         -std::numeric_limits<double>::infinity(), -1.0,
                                         false, true));
    auto pmid = spectral_measure(q, BorelSet1D::interval(-1.0, 1.0, false, true));
    auto pright = spectral_measure(q, BorelSet1D::interval(
                                          1.0, std::numeric_limits<double>::infinity(),
                                          false, false));
    DiscretePOM sharp({{-2.0, pleft}, {0.0, pmid}, {2.0, pright}});
    CHECK(is_noiseless(sharp, 1e-10));
    // mixing the outcome effects (a classical post-processing blur) adds noise
    HermitianOperator blur_l(Matrix(0.8 * pleft.entries + 0.2 * pmid.entries));
    HermitianOperator blur_m(Matrix(0.2 * pleft.entries + 0.6 * pmid.entries +
                                    0.2 * pright.entries));
    HermitianOperator blur_r(Matrix(0.2 * pmid.entries + 0.8 * pright.entries));
    DiscretePOM fuzzy({{-2.0, blur_l}, {0.0, blur_m}, {2.0, blur_r}});
    CHECK_FALSE(is_noiseless(fuzzy, 1e-6));
    FockState phi = random_state(cfg.dim, 42);
    CHECK(variance_decomposition(fuzzy, phi).noise >
          variance_decomposition(sharp, phi).noise);
}
