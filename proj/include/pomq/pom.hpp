#ifndef POMQ_POM_HPP
#define POMQ_POM_HPP

#include <cmath>
#include <set>
#include <vector>

#include "core.hpp"

namespace pomq {

// Finitely supported normalized positive operator measure: outcome labels with
// effects summing to the identity. Validity is checked at construction.
struct DiscretePOM {
    struct Outcome {
        double label;
        HermitianOperator effect;
    };
    std::vector<Outcome> outcomes;

    DiscretePOM() = default;
    explicit DiscretePOM(std::vector<Outcome> out, double tol = 1e-8)
        : outcomes(std::move(out)) {
        if (outcomes.empty()) throw std::invalid_argument("DiscretePOM: no outcomes");
        int d = outcomes.front().effect.dim();
        std::set<double> labels;
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& o : outcomes) {
            if (!labels.insert(o.label).second)
                throw std::invalid_argument("DiscretePOM: duplicate outcome label");
            Eigen::SelfAdjointEigenSolver<Matrix> es(o.effect.entries,
                                                     Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -tol ||
                es.eigenvalues().maxCoeff() > 1.0 + tol)
                throw std::invalid_argument("DiscretePOM: outcome is not an effect");
            sum += o.effect.entries;
        }
        double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (defect > tol)
            throw std::invalid_argument("DiscretePOM: effects sum defect " +
                                        std::to_string(defect));
    }
    int dim() const { return outcomes.front().effect.dim(); }
};

// Moment operator E[k] = sum label^k effect; E[0] = I.
inline HermitianOperator pom_moment(const DiscretePOM& e, int k) {
    if (k < 0) throw std::invalid_argument("pom_moment: k must be >= 0");
    int d = e.dim();
    if (k == 0) return HermitianOperator(Matrix::Identity(d, d));
    Matrix m = Matrix::Zero(d, d);
    for (const auto& o : e.outcomes) m += std::pow(o.label, k) * o.effect.entries;
    return HermitianOperator(std::move(m), true, 1e-6);
}

// N(E) = E[2] - E[1]^2; positive semidefinite for any POM.
inline HermitianOperator noise_operator(const DiscretePOM& e) {
    Matrix e1 = pom_moment(e, 1).entries;
    Matrix n = pom_moment(e, 2).entries - e1 * e1;
    return HermitianOperator(std::move(n), true, 1e-6);
}

inline std::vector<double> probabilities(const DiscretePOM& e, const FockState& phi) {
    if (phi.dim() != e.dim())
        throw std::invalid_argument("probabilities: dimension mismatch");
    std::vector<double> p;
    p.reserve(e.outcomes.size());
    for (const auto& o : e.outcomes)
        p.push_back(phi.coeffs.dot(o.effect.entries * phi.coeffs).real());
    return p;
}

struct VarianceDecomposition {
    double total;  // Var(E, phi), from the outcome distribution
    double sharp;  // Var(E[1], phi)
    double noise;  // <phi| N(E) phi>
};

// Var(E,phi) = Var(E[1],phi) + <phi|N(E)phi>.
inline VarianceDecomposition variance_decomposition(const DiscretePOM& e,
                                                    const FockState& phi) {
    auto probs = probabilities(e, phi);
    double mean = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) mean += e.outcomes[i].label * probs[i];
    double total = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        double d = e.outcomes[i].label - mean;
        total += d * d * probs[i];
    }
    Matrix e1 = pom_moment(e, 1).entries;
    double m1 = phi.coeffs.dot(e1 * phi.coeffs).real();
    double m1sq = phi.coeffs.dot(e1 * (e1 * phi.coeffs)).real();
    double sharp = m1sq - m1 * m1;
    double noise = phi.coeffs.dot(noise_operator(e).entries * phi.coeffs).real();
    return {total, sharp, noise};
}

// A measurement is noiseless iff its noise operator vanishes; then every
// effect must be (nearly) idempotent.
inline bool is_noiseless(const DiscretePOM& e, double tol = 1e-8) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(noise_operator(e).entries,
                                             Eigen::EigenvaluesOnly);
    double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                           std::abs(es.eigenvalues().maxCoeff()));
    return norm <= tol;
}

}  // namespace pomq

#endif
