#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mfdmolso/ranking.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

struct MetricReport {
    double gd = 0.0;
    double delta = 0.0;
    double er = 0.0;
    std::size_t n_known = 0;
    std::size_t reference_size = 0;
};

namespace detail {

inline double nearest_distance(const Vector& point, const std::vector<Vector>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& q : set) best = std::min(best, l2_dist(point, q));
    return best;
}

} // namespace detail

// (sum d_i^p)^(1/p) / n against the reference front.
inline double generational_distance(const std::vector<Vector>& known,
                                    const std::vector<Vector>& true_pf, double p = 2.0) {
    if (known.empty() || true_pf.empty())
        throw std::invalid_argument("generational_distance: empty input set");
    double acc = 0.0;
    for (const Vector& s : known) acc += std::pow(detail::nearest_distance(s, true_pf), p);
    return std::pow(acc, 1.0 / p) / static_cast<double>(known.size());
}

// Standard deviation of the nearest-neighbour L1 gaps within the set.
inline double spread_delta(const std::vector<Vector>& known) {
    const std::size_t n = known.size();
    if (n < 2) throw std::invalid_argument("spread_delta: need at least two points");
    std::vector<double> gaps(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) gaps[i] = std::min(gaps[i], l1_dist(known[i], known[j]));
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(n);
    double acc = 0.0;
    for (double g : gaps) acc += (mean - g) * (mean - g);
    return std::sqrt(acc / static_cast<double>(n - 1));
}

// Share of known solutions farther than the threshold from the sampled
// true front.
inline double error_rate(const std::vector<Vector>& known, const std::vector<Vector>& true_pf,
                         double threshold = 0.01) {
    if (known.empty() || true_pf.empty())
        throw std::invalid_argument("error_rate: empty input set");
    std::size_t errors = 0;
    for (const Vector& s : known)
        if (detail::nearest_distance(s, true_pf) > threshold) ++errors;
    return static_cast<double>(errors) / static_cast<double>(known.size());
}

// C(A,B): share of B dominated by at least one member of A.
inline double set_coverage(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (b.empty()) throw std::invalid_argument("set_coverage: empty B");
    std::size_t covered = 0;
    for (const Vector& q : b) {
        for (const Vector& p : a) {
            if (dominates(p, q)) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / static_cast<double>(b.size());
}

inline MetricReport evaluate_metrics(const std::vector<Vector>& known,
                                     const std::vector<Vector>& true_pf,
                                     double er_threshold = 0.01, double gd_exponent = 2.0) {
    MetricReport r;
    r.n_known = known.size();
    r.reference_size = true_pf.size();
    r.gd = generational_distance(known, true_pf, gd_exponent);
    r.delta = known.size() >= 2 ? spread_delta(known) : 0.0;
    r.er = error_rate(known, true_pf, er_threshold);
    return r;
}

} // namespace mfdmolso
