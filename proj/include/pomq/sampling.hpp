#ifndef POMQ_SAMPLING_HPP
#define POMQ_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "phase_space.hpp"
#include "pom.hpp"
#include "quantizer.hpp"

namespace pomq {

// Counter-based generator: draw i is a pure function of (seed, i), so streams
// are reproducible across platforms and trivially splittable.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double uniform01(uint64_t seed, uint64_t counter) {
    uint64_t z = splitmix64(seed ^ splitmix64(counter));
    return (z >> 11) * 0x1.0p-53;  // 53-bit mantissa in [0,1)
}

struct SampleReport {
    std::map<double, uint64_t> counts;
    std::vector<double> empirical_moments;  // k = 1..k_max
    std::vector<double> predicted_moments;  // <phi| E[k] phi>
    std::vector<double> std_errors;
    int64_t seed = 0;
    uint64_t n = 0;
};

inline SampleReport sample_outcomes(const DiscretePOM& e, const FockState& phi,
                                    uint64_t n, int64_t seed, int k_max = 3) {
    if (n < 1) throw std::invalid_argument("sample_outcomes: n must be >= 1");
    auto probs = probabilities(e, phi);
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += std::max(0.0, probs[i]);
        cum[i] = acc;
    }
    SampleReport rep;
    rep.seed = seed;
    rep.n = n;
    for (const auto& o : e.outcomes) rep.counts[o.label] = 0;
    std::vector<double> moment_sums(k_max, 0.0), moment_sq(k_max, 0.0);
    for (uint64_t i = 0; i < n; ++i) {
        double u = uniform01(static_cast<uint64_t>(seed), i) * acc;
        size_t idx = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        if (idx >= probs.size()) idx = probs.size() - 1;
        double label = e.outcomes[idx].label;
        ++rep.counts[label];
        double pw = 1.0;
        for (int k = 0; k < k_max; ++k) {
            pw *= label;
            moment_sums[k] += pw;
            moment_sq[k] += pw * pw;
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        double mean = moment_sums[k - 1] / n;
        double var = moment_sq[k - 1] / n - mean * mean;
        rep.empirical_moments.push_back(mean);
        rep.std_errors.push_back(std::sqrt(std::max(0.0, var) / n));
        rep.predicted_moments.push_back(
            phi.coeffs.dot(pom_moment(e, k).entries * phi.coeffs).real());
    }
    return rep;
}

// f(q,p)^k: the k-th moment of the classical point-measure outcome
// distribution of f in the state (q,p).
inline double classical_moment(const PhaseSpaceFunction& f, const PhasePoint& pt, int k) {
    if (k < 0) throw std::invalid_argument("classical_moment: k must be >= 0");
    return std::pow(f.evaluate(pt.q, pt.p), k);
}

struct MomentTransferReport {
    SampleReport sample;
    std::vector<double> quantizer_moments;  // <phi| Gamma(f^k) phi>, k = 1..k_max
    double max_deviation_sigmas = 0.0;      // max_k |empirical_k - predicted| / stderr
};

// Empirical check of the moment-transfer identity Gamma(f^k) = E^f[k] for a
// question f: quantize, build the two-valued POM, sample, and compare moments.
template <class Quantizer>
MomentTransferReport moment_transfer_check(const Quantizer& g, const PhaseSpaceFunction& f,
                                           const FockState& phi, int k_max, uint64_t n,
                                           int64_t seed) {
    if (!f.is_indicator())
        throw std::invalid_argument("moment_transfer_check: f must be a question");
    HermitianOperator a = g.quantize(f);
    DiscretePOM pom = quantize_question(a);
    MomentTransferReport rep;
    rep.sample = sample_outcomes(pom, phi, n, seed, k_max);
    for (int k = 1; k <= k_max; ++k) {
        // chi^k = chi: the quantized moment sequence is constant
        double pred = phi.coeffs.dot(a.entries * phi.coeffs).real();
        rep.quantizer_moments.push_back(pred);
        double se = rep.sample.std_errors[k - 1];
        double dev = std::abs(rep.sample.empirical_moments[k - 1] - pred);
        rep.max_deviation_sigmas =
            std::max(rep.max_deviation_sigmas, se > 0.0 ? dev / se : (dev > 0 ? 1e9 : 0.0));
    }
    return rep;
}

}  // namespace pomq

#endif
