#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfdmolso/linalg.hpp"
#include "mfdmolso/ranking.hpp"
#include "mfdmolso/rng.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

// Simplex-lattice weight directions: all M-dimensional points with
// coordinates k/H that sum to 1. Count is C(H+M-1, M-1).
struct ReferencePointSet {
    std::vector<Vector> directions;
    int divisions = 0;
    std::vector<int> niche_count; // working state for selection rounds

    std::size_t size() const { return directions.size(); }
};

inline ReferencePointSet generate_reference_points(int objectives, int divisions) {
    if (objectives < 2) throw std::invalid_argument("generate_reference_points: M >= 2 required");
    if (divisions < 1) throw std::invalid_argument("generate_reference_points: H >= 1 required");

    ReferencePointSet set;
    set.divisions = divisions;
    Vector current(static_cast<std::size_t>(objectives), 0.0);
    // enumerate compositions of `divisions` into `objectives` parts
    auto recurse = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == objectives - 1) {
            current[static_cast<std::size_t>(axis)] =
                static_cast<double>(remaining) / divisions;
            set.directions.push_back(current);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            current[static_cast<std::size_t>(axis)] = static_cast<double>(k) / divisions;
            self(self, axis + 1, remaining - k);
        }
    };
    recurse(recurse, 0, divisions);
    set.niche_count.assign(set.directions.size(), 0);
    return set;
}

// Adaptive normalization state. The ideal point is the running minimum
// over every population seen so far; intercepts live in the original
// objective space (strictly above the ideal point).
struct NormalizationState {
    Vector ideal;
    Vector intercepts;
    std::vector<Vector> extreme_points; // in translated space

    void reset() {
        ideal.clear();
        intercepts.clear();
        extreme_points.clear();
    }
};

// Translate by the ideal point, locate extreme points with the axis ASF,
// and divide by the hyperplane intercepts. Falls back to per-axis maxima
// when the hyperplane is degenerate.
inline std::vector<Vector> normalize_objectives(const std::vector<Vector>& objectives,
                                                NormalizationState& state) {
    if (objectives.empty()) throw std::invalid_argument("normalize_objectives: empty population");
    const std::size_t m = objectives.front().size();

    if (state.ideal.size() != m)
        state.ideal.assign(m, std::numeric_limits<double>::infinity());
    for (const auto& f : objectives)
        for (std::size_t i = 0; i < m; ++i) state.ideal[i] = std::min(state.ideal[i], f[i]);

    std::vector<Vector> translated(objectives.size(), Vector(m));
    for (std::size_t k = 0; k < objectives.size(); ++k)
        for (std::size_t i = 0; i < m; ++i) translated[k][i] = objectives[k][i] - state.ideal[i];

    // extreme point per axis: minimizer of ASF(x, w_axis), w_i = 1 on the
    // axis and 1e-6 elsewhere
    constexpr double kAxisEps = 1e-6;
    std::vector<std::size_t> extreme_idx(m, 0);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < translated.size(); ++k) {
            double asf = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double w = (i == axis) ? 1.0 : kAxisEps;
                asf = std::max(asf, translated[k][i] / w);
            }
            if (asf < best) {
                best = asf;
                extreme_idx[axis] = k;
            }
        }
    }
    state.extreme_points.assign(m, Vector(m));
    for (std::size_t axis = 0; axis < m; ++axis)
        state.extreme_points[axis] = translated[extreme_idx[axis]];

    // hyperplane through the extreme points: E * b = 1, intercept_i = 1/b_i
    Vector axis_intercepts(m, -1.0);
    SquareMatrix e(m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) e(r, c) = state.extreme_points[r][c];
    LuSolver lu(std::move(e));
    bool degenerate = lu.fail();
    if (!degenerate) {
        const std::vector<double> b = lu.solve(std::vector<double>(m, 1.0));
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] <= 1e-12 || !std::isfinite(b[i])) {
                degenerate = true;
                break;
            }
            axis_intercepts[i] = 1.0 / b[i];
        }
    }
    if (degenerate) {
        for (std::size_t i = 0; i < m; ++i) {
            double mx = 0.0;
            for (const auto& f : translated) mx = std::max(mx, f[i]);
            axis_intercepts[i] = (mx > 1e-12) ? mx : 1.0;
        }
    }

    state.intercepts.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) state.intercepts[i] = state.ideal[i] + axis_intercepts[i];

    std::vector<Vector> normalized(translated.size(), Vector(m));
    for (std::size_t k = 0; k < translated.size(); ++k)
        for (std::size_t i = 0; i < m; ++i)
            normalized[k][i] = translated[k][i] / axis_intercepts[i];
    return normalized;
}

struct Association {
    std::size_t direction = 0;
    double distance = 0.0;
};

// Perpendicular distance from a normalized objective vector to the line
// through the origin along `w`.
inline double line_distance(std::span<const double> point, std::span<const double> w) {
    const double wnorm2 = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
    const double dot = std::inner_product(point.begin(), point.end(), w.begin(), 0.0);
    const double scale = dot / wnorm2;
    double d2 = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double r = point[i] - scale * w[i];
        d2 += r * r;
    }
    return std::sqrt(d2);
}

// Nearest reference line; ties go to the lowest direction index.
inline Association associate(std::span<const double> normalized, const ReferencePointSet& refs) {
    if (refs.directions.empty()) throw std::invalid_argument("associate: empty reference set");
    Association best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < refs.directions.size(); ++j) {
        const double d = line_distance(normalized, refs.directions[j]);
        if (d < best.distance) {
            best.direction = j;
            best.distance = d;
        }
    }
    return best;
}

// Niche-preserving choice of K members from the partial front. `admitted`
// holds the indices already taken from better fronts; niche counts are
// computed over them and updated as members are chosen.
inline std::vector<std::size_t> niche_select(const std::vector<Vector>& normalized,
                                             const std::vector<std::size_t>& admitted,
                                             const std::vector<std::size_t>& last_front,
                                             const ReferencePointSet& refs, std::size_t k,
                                             RngStream& rng) {
    if (k > last_front.size())
        throw std::invalid_argument("niche_select: K exceeds the last front size");

    std::vector<Association> assoc(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) assoc[i] = associate(normalized[i], refs);

    std::vector<int> rho(refs.size(), 0);
    for (std::size_t i : admitted) ++rho[assoc[i].direction];

    std::vector<bool> direction_live(refs.size(), true);
    std::vector<bool> taken(last_front.size(), false);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);

    while (chosen.size() < k) {
        int min_rho = std::numeric_limits<int>::max();
        for (std::size_t j = 0; j < refs.size(); ++j)
            if (direction_live[j]) min_rho = std::min(min_rho, rho[j]);
        std::vector<std::size_t> ties;
        for (std::size_t j = 0; j < refs.size(); ++j)
            if (direction_live[j] && rho[j] == min_rho) ties.push_back(j);
        const std::size_t j = ties[rng.index(ties.size())];

        std::vector<std::size_t> candidates; // positions within last_front
        for (std::size_t c = 0; c < last_front.size(); ++c)
            if (!taken[c] && assoc[last_front[c]].direction == j) candidates.push_back(c);

        if (candidates.empty()) {
            direction_live[j] = false;
            continue;
        }
        std::size_t pick;
        if (rho[j] == 0) {
            pick = candidates.front();
            for (std::size_t c : candidates)
                if (assoc[last_front[c]].distance < assoc[last_front[pick]].distance) pick = c;
        } else {
            pick = candidates[rng.index(candidates.size())];
        }
        taken[pick] = true;
        chosen.push_back(last_front[pick]);
        ++rho[j];
    }
    return chosen;
}

// Global guide for three or more objectives: among the solutions hanging
// off the least-populated reference lines, take the one closest to the
// origin of the normalized space.
inline std::size_t select_global_best_multi(const std::vector<Vector>& normalized_front,
                                            const ReferencePointSet& refs) {
    if (normalized_front.empty())
        throw std::invalid_argument("select_global_best_multi: empty front");

    std::vector<Association> assoc(normalized_front.size());
    std::vector<int> phi(refs.size(), 0);
    for (std::size_t i = 0; i < normalized_front.size(); ++i) {
        assoc[i] = associate(normalized_front[i], refs);
        ++phi[assoc[i].direction];
    }
    int min_phi = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < refs.size(); ++j)
        if (phi[j] > 0) min_phi = std::min(min_phi, phi[j]);

    std::size_t best = normalized_front.size();
    double best_sigma = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < normalized_front.size(); ++i) {
        if (phi[assoc[i].direction] != min_phi) continue;
        const double sigma = l2_norm(normalized_front[i]);
        if (sigma < best_sigma) {
            best_sigma = sigma;
            best = i;
        }
    }
    return best;
}

} // namespace mfdmolso
