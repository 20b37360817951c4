#ifndef POMQ_CORE_HPP
#define POMQ_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pomq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Basis size and numerical tolerances of the truncated oscillator space.
struct TruncationConfig {
    int dim = 64;
    double tail_tol = 1e-9;  // max weight allowed near the top basis levels
    double eig_tol = 1e-8;   // Hermiticity / orthonormality tolerance

    TruncationConfig() = default;
    TruncationConfig(int d, double tail, double eig)
        : dim(d), tail_tol(tail), eig_tol(eig) {
        validate();
    }
    void validate() const {
        if (dim < 2) throw std::invalid_argument("TruncationConfig: dim must be >= 2");
        if (tail_tol < 0.0 || tail_tol >= 1.0)
            throw std::invalid_argument("TruncationConfig: tail_tol must be in [0,1)");
        if (eig_tol < 0.0 || eig_tol >= 1.0)
            throw std::invalid_argument("TruncationConfig: eig_tol must be in [0,1)");
    }
    // Operator identities are asserted on the lower-left block only; ladder
    // truncation corrupts the top levels.
    int block() const { return std::max(1, dim / 4); }
};

struct TailMassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumOutsideUnitInterval : std::runtime_error {
    double min_eig;
    double max_eig;
    SpectrumOutsideUnitInterval(double lo, double hi)
        : std::runtime_error("operator spectrum [" + std::to_string(lo) + ", " +
                             std::to_string(hi) +
                             "] is not contained in [0,1]: the constant moment "
                             "problem has no solution"),
          min_eig(lo), max_eig(hi) {}
};

// Dense operator with a Hermiticity assertion flag.
struct HermitianOperator {
    Matrix entries;
    bool hermitian = true;

    HermitianOperator() = default;
    explicit HermitianOperator(Matrix m, bool herm = true, double tol = 1e-8)
        : entries(std::move(m)), hermitian(herm) {
        if (hermitian) {
            double defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
            if (defect > tol)
                throw std::invalid_argument(
                    "HermitianOperator: hermiticity defect " + std::to_string(defect));
            entries = 0.5 * (entries + entries.adjoint().eval());
        }
    }
    int dim() const { return static_cast<int>(entries.rows()); }
    Matrix block(int k) const { return entries.topLeftCorner(k, k); }
};

// Unit vector in the truncated Hermite basis.
struct FockState {
    Vector coeffs;

    FockState() = default;
    explicit FockState(Vector c, double tol = 1e-8) : coeffs(std::move(c)) {
        double n = coeffs.norm();
        if (std::abs(n - 1.0) > tol)
            throw std::invalid_argument("FockState: norm " + std::to_string(n) +
                                        " is not 1");
    }
    static FockState basis(int dim, int n) {
        if (n < 0 || n >= dim) throw std::invalid_argument("FockState::basis: level out of range");
        Vector c = Vector::Zero(dim);
        c[n] = 1.0;
        return FockState(std::move(c));
    }
    int dim() const { return static_cast<int>(coeffs.size()); }
};

// Positive trace-one operator defining a type-(a) phase-space map.
struct GeneratingOperator {
    Matrix matrix;

    GeneratingOperator() = default;
    explicit GeneratingOperator(Matrix m, double tol = 1e-8) : matrix(std::move(m)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix + matrix.adjoint().eval()));
        if (es.eigenvalues().minCoeff() < -tol)
            throw std::invalid_argument("GeneratingOperator: not positive semidefinite");
        double tr = matrix.trace().real();
        if (std::abs(tr - 1.0) > tol)
            throw std::invalid_argument("GeneratingOperator: trace " + std::to_string(tr) +
                                        " is not 1");
    }
    static GeneratingOperator fock_projector(int dim, int n) {
        Matrix m = Matrix::Zero(dim, dim);
        m(n, n) = 1.0;
        return GeneratingOperator(std::move(m));
    }
    // Fock-diagonal mixture sum_n w_n |h_n><h_n|, weights normalized to 1.
    static GeneratingOperator fock_diagonal(int dim, const std::vector<double>& weights) {
        if (weights.empty() || static_cast<int>(weights.size()) > dim)
            throw std::invalid_argument("GeneratingOperator: bad weight count");
        double s = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("GeneratingOperator: negative weight");
            s += w;
        }
        if (s <= 0.0) throw std::invalid_argument("GeneratingOperator: zero weights");
        Matrix m = Matrix::Zero(dim, dim);
        for (size_t n = 0; n < weights.size(); ++n) m(n, n) = weights[n] / s;
        return GeneratingOperator(std::move(m));
    }
    int dim() const { return static_cast<int>(matrix.rows()); }
};

}  // namespace pomq

#endif
