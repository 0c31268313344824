#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfdmolso/ranking.hpp"
#include "mfdmolso/rng.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

struct LevyConfig {
    double beta = 1.5;
    double clamp_product = 1.99; // keeps 0 < lambda|L| < 2, the convergence window

    // Worse Pareto ranks fly with larger step ratios.
    double lambda_for_rank(int rank) const {
        return std::min(0.5 * (1.0 + 0.25 * (rank - 1)), 1.5);
    }

    void validate() const {
        if (!(beta > 1.0) || beta > 2.0)
            throw std::invalid_argument("LevyConfig: beta must be in (1, 2]");
        if (!(clamp_product > 0.0) || clamp_product >= 2.0)
            throw std::invalid_argument("LevyConfig: clamp must lie in (0, 2)");
    }
};

inline double levy_sigma(double beta) {
    const double num = std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0);
    const double den =
        std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

// Heavy-tailed flight length L = mu / |v|^(1/beta).
inline double levy_step(double beta, RngStream& rng) {
    const double mu = rng.gauss(0.0, levy_sigma(beta));
    double v = rng.gauss();
    if (std::abs(v) < 1e-300) v = 1e-300;
    return mu / std::pow(std::abs(v), 1.0 / beta);
}

// Members in crowded regions are sent on Levy flights, but never those
// that dominate the global guide or any archive first-front solution,
// and only every second one in the objective-sorted order.
inline std::vector<std::size_t> select_mutants(const std::vector<Vector>& objectives,
                                               const std::vector<double>& crowding,
                                               const std::vector<std::size_t>& sorted_order,
                                               double threshold,
                                               std::span<const double> guide_objectives,
                                               const std::vector<Vector>& archive_front) {
    std::vector<std::size_t> eligible;
    for (std::size_t idx : sorted_order) {
        if (!(crowding[idx] < threshold)) continue;
        if (!guide_objectives.empty() && dominates(objectives[idx], guide_objectives)) continue;
        bool dominates_front = false;
        for (const Vector& a : archive_front) {
            if (dominates(objectives[idx], a)) {
                dominates_front = true;
                break;
            }
        }
        if (dominates_front) continue;
        eligible.push_back(idx);
    }
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < eligible.size(); k += 2) chosen.push_back(eligible[k]);
    return chosen;
}

// Elite-learning flight: toward the global guide with probability 0.7,
// otherwise toward a random archive first-front solution. The step
// product lambda|L| is clamped below 2 so iterated flights contract.
inline Vector levy_mutate(std::span<const double> position, std::span<const double> guide,
                          const std::vector<Vector>& archive_front, int rank,
                          const LevyConfig& config, std::span<const double> lower,
                          std::span<const double> upper, RngStream& rng) {
    const double r = rng.uniform();
    std::span<const double> target = guide;
    if (r > 0.7 && !archive_front.empty())
        target = archive_front[rng.index(archive_front.size())];

    const double lambda = config.lambda_for_rank(rank);
    double scale = lambda * std::abs(levy_step(config.beta, rng));
    scale = std::min(scale, config.clamp_product);

    Vector next(position.begin(), position.end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += scale * (target[i] - position[i]);
    clamp_to(next, lower, upper);
    return next;
}

} // namespace mfdmolso
