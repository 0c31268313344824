#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfdmolso/vec.hpp"

namespace mfdmolso {

// Pareto dominance, minimization: a is no worse everywhere and strictly
// better somewhere.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: length mismatch");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

// Feasibility-first variant: any feasible point beats any infeasible one,
// smaller violation beats larger, Pareto dominance settles the rest.
// With both violations zero this is plain dominance.
inline bool dominates_constrained(std::span<const double> a, double viol_a,
                                  std::span<const double> b, double viol_b) {
    if (viol_a <= 0.0 && viol_b > 0.0) return true;
    if (viol_a > 0.0 && viol_b <= 0.0) return false;
    if (viol_a > 0.0 && viol_b > 0.0) return viol_a < viol_b;
    return dominates(a, b);
}

// Fast non-dominated sort (domination counts). Produces the same level
// partition as the peel-off loop: rank 1 is the maximal non-dominated
// subset of the input, rank 2 of the remainder, and so on.
// Returns fronts as index lists, best front first.
inline std::vector<std::vector<std::size_t>>
non_dominated_sort(const std::vector<Vector>& objectives,
                   const std::vector<double>* violations = nullptr) {
    const std::size_t n = objectives.size();
    if (n == 0) throw std::invalid_argument("non_dominated_sort: empty input");

    auto dom = [&](std::size_t i, std::size_t j) {
        if (violations)
            return dominates_constrained(objectives[i], (*violations)[i],
                                         objectives[j], (*violations)[j]);
        return dominates(objectives[i], objectives[j]);
    };

    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dom(i, j)) {
                dominated_by[i].push_back(j);
                ++count[j];
            } else if (dom(j, i)) {
                dominated_by[j].push_back(i);
                ++count[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by[i]) {
                if (--count[j] == 0) next.push_back(j);
            }
        }
        fronts.push_back(std::move(current));
        std::sort(fronts.back().begin(), fronts.back().end());
        current = std::move(next);
    }
    return fronts;
}

// Ranks aligned with the input order, 1 = best.
inline std::vector<int> ranks_from_fronts(const std::vector<std::vector<std::size_t>>& fronts,
                                          std::size_t n) {
    std::vector<int> rank(n, 0);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t i : fronts[f]) rank[i] = static_cast<int>(f) + 1;
    return rank;
}

enum class CrowdingSpace { Decision, Objective };

struct CrowdingResult {
    std::vector<double> value;              // per member, input order
    std::vector<std::size_t> sorted_order;  // member indices sorted by the chosen objective
};

// Crowding degree of each member: distance between its two neighbours in
// the order sorted by one objective. Small C means a crowded member.
// Boundary members get +infinity; fewer than 3 members means everything
// is a boundary.
inline CrowdingResult crowding_degree(const std::vector<Vector>& positions,
                                      const std::vector<Vector>& objectives,
                                      int sort_objective = 0,
                                      CrowdingSpace space = CrowdingSpace::Decision) {
    const std::size_t n = positions.size();
    if (objectives.size() != n)
        throw std::invalid_argument("crowding_degree: positions/objectives size mismatch");

    CrowdingResult out;
    out.value.assign(n, std::numeric_limits<double>::infinity());
    out.sorted_order.resize(n);
    std::iota(out.sorted_order.begin(), out.sorted_order.end(), std::size_t{0});
    std::stable_sort(out.sorted_order.begin(), out.sorted_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return objectives[a][static_cast<std::size_t>(sort_objective)] <
                                objectives[b][static_cast<std::size_t>(sort_objective)];
                     });
    if (n < 3) return out;

    const auto& coords = (space == CrowdingSpace::Decision) ? positions : objectives;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const std::size_t prev = out.sorted_order[k - 1];
        const std::size_t next = out.sorted_order[k + 1];
        out.value[out.sorted_order[k]] = l2_dist(coords[next], coords[prev]);
    }
    return out;
}

// Mean of the finite crowding values; members strictly below it count as
// crowded. All-infinite input leaves nothing crowded.
inline double crowding_threshold(const std::vector<double>& crowding) {
    double sum = 0.0;
    std::size_t finite = 0;
    for (double c : crowding) {
        if (std::isfinite(c)) {
            sum += c;
            ++finite;
        }
    }
    if (finite == 0) return std::numeric_limits<double>::infinity();
    return sum / static_cast<double>(finite);
}

} // namespace mfdmolso
