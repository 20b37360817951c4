#ifndef POMQ_BOREL_HPP
#define POMQ_BOREL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pomq {

// Finite union of disjoint intervals; enough for every set the calculations
// use (half-lines, bounded intervals, finite unions).
struct BorelSet1D {
    struct Interval {
        double lo = 0.0;
        double hi = 0.0;
        bool lo_closed = true;
        bool hi_closed = true;
    };
    std::vector<Interval> intervals;

    BorelSet1D() = default;

    static BorelSet1D empty() { return BorelSet1D{}; }

    static BorelSet1D interval(double lo, double hi, bool lo_closed = true,
                               bool hi_closed = true) {
        if (!(lo < hi) && !(lo == hi && lo_closed && hi_closed))
            throw std::invalid_argument("BorelSet1D: empty or reversed interval");
        BorelSet1D b;
        b.intervals.push_back({lo, hi, lo_closed, hi_closed});
        return b;
    }
    static BorelSet1D half_line_geq(double lo) {
        return interval(lo, std::numeric_limits<double>::infinity(), true, true);
    }
    static BorelSet1D half_line_leq(double hi) {
        return interval(-std::numeric_limits<double>::infinity(), hi, true, true);
    }
    static BorelSet1D real_line() {
        return interval(-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), true, true);
    }

    // Union with another set; overlapping/touching pieces are merged so the
    // canonical form stays sorted and pairwise disjoint.
    BorelSet1D unite(const BorelSet1D& other) const {
        std::vector<Interval> all = intervals;
        all.insert(all.end(), other.intervals.begin(), other.intervals.end());
        std::sort(all.begin(), all.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        BorelSet1D out;
        for (const auto& iv : all) {
            if (!out.intervals.empty()) {
                Interval& last = out.intervals.back();
                bool touches = iv.lo < last.hi ||
                               (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
                if (touches) {
                    if (iv.hi > last.hi) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    } else if (iv.hi == last.hi) {
                        last.hi_closed = last.hi_closed || iv.hi_closed;
                    }
                    continue;
                }
            }
            out.intervals.push_back(iv);
        }
        return out;
    }

    BorelSet1D complement() const {
        const double inf = std::numeric_limits<double>::infinity();
        BorelSet1D out;
        double cur = -inf;
        bool cur_closed = true;
        for (const auto& iv : intervals) {
            if (iv.lo > cur || (iv.lo == cur && !iv.lo_closed && !(cur == -inf))) {
                Interval gap{cur, iv.lo, cur_closed, !iv.lo_closed};
                if (gap.lo < gap.hi || (gap.lo == gap.hi && gap.lo_closed && gap.hi_closed))
                    out.intervals.push_back(gap);
            }
            cur = iv.hi;
            cur_closed = !iv.hi_closed;
        }
        if (cur < inf) out.intervals.push_back({cur, inf, cur_closed, true});
        return out;
    }

    bool contains(double x) const {
        for (const auto& iv : intervals) {
            if (x < iv.lo || x > iv.hi) continue;
            if (x == iv.lo && !iv.lo_closed) continue;
            if (x == iv.hi && !iv.hi_closed) continue;
            return true;
        }
        return false;
    }

    bool is_real_line() const {
        return intervals.size() == 1 &&
               intervals[0].lo == -std::numeric_limits<double>::infinity() &&
               intervals[0].hi == std::numeric_limits<double>::infinity();
    }

    // Finite endpoints, used as quadrature breakpoints.
    std::vector<double> finite_endpoints() const {
        std::vector<double> ep;
        for (const auto& iv : intervals) {
            if (std::isfinite(iv.lo)) ep.push_back(iv.lo);
            if (std::isfinite(iv.hi)) ep.push_back(iv.hi);
        }
        return ep;
    }
};

}  // namespace pomq

#endif
