#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfdmolso/problem.hpp"
#include "mfdmolso/ranking.hpp"
#include "mfdmolso/rng.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

enum class Role { King, Lioness, Cub };

struct Lion {
    Vector position;
    Vector objectives;
    double violation = 0.0;

    Vector best_position;
    Vector best_objectives;
    double best_violation = 0.0;

    Role role = Role::Cub;
};

struct SwarmConfig {
    std::size_t population_size = 120;
    double adult_ratio = 0.2; // beta, (0, 0.5]
    double step_ratio = 0.1;  // step = step_ratio * (upper - lower)
    double tent_alpha = 0.7;  // (0,1) \ {0.5}

    void validate() const {
        if (population_size < 4)
            throw std::invalid_argument("SwarmConfig: population size must be >= 4");
        if (!(adult_ratio > 0.0) || adult_ratio > 0.5)
            throw std::invalid_argument("SwarmConfig: adult ratio must be in (0, 0.5]");
        if (adults(population_size) < 2)
            throw std::invalid_argument("SwarmConfig: need at least a king and one lioness");
        if (adults(population_size) >= population_size)
            throw std::invalid_argument("SwarmConfig: no cubs left");
        if (!(tent_alpha > 0.0) || !(tent_alpha < 1.0) || tent_alpha == 0.5)
            throw std::invalid_argument("SwarmConfig: tent alpha must be in (0,1), != 0.5");
        if (!(step_ratio > 0.0))
            throw std::invalid_argument("SwarmConfig: step ratio must be positive");
    }

    std::size_t adults(std::size_t n) const {
        return static_cast<std::size_t>(std::ceil(adult_ratio * static_cast<double>(n)));
    }
};

// Skew tent map. Ergodic with uniform invariant density for any
// alpha in (0,1) other than 0.5.
inline double tent_next(double x, double alpha) {
    const double y = (x < alpha) ? x / alpha : (1.0 - x) / (1.0 - alpha);
    // endpoints are absorbing in floating point; re-inject instead
    if (y <= 0.0 || y >= 1.0) return 0.2137652341; // arbitrary interior restart point
    return y;
}

// One chaotic sequence per dimension, mapped affinely onto the bounds.
// Personal bests start at the initial positions.
inline std::vector<Lion> init_population(const Problem& problem, const SwarmConfig& config,
                                         RngStream& rng) {
    config.validate();
    const std::size_t n = config.population_size;
    const std::size_t d = static_cast<std::size_t>(problem.decision_dim);

    std::vector<Lion> pop(n);
    for (Lion& lion : pop) lion.position.assign(d, 0.0);

    for (std::size_t dim = 0; dim < d; ++dim) {
        double x = rng.uniform();
        while (x == 0.0 || x == 0.5 || x == config.tent_alpha) x = rng.uniform();
        for (std::size_t i = 0; i < n; ++i) {
            x = tent_next(x, config.tent_alpha);
            pop[i].position[dim] =
                problem.lower[dim] + x * (problem.upper[dim] - problem.lower[dim]);
        }
    }
    for (Lion& lion : pop) lion.best_position = lion.position;
    return pop;
}

// Exactly one king carrying the global guide, ceil(beta*N)-1 lionesses,
// cubs for the rest. `quality_order` ranks members best first.
inline void partition_roles(std::vector<Lion>& population,
                            const std::vector<std::size_t>& quality_order, double adult_ratio) {
    const std::size_t n = population.size();
    if (quality_order.size() != n)
        throw std::invalid_argument("partition_roles: order/population size mismatch");
    if (!(adult_ratio > 0.0))
        throw std::invalid_argument("partition_roles: adult ratio must be positive");
    const std::size_t adults =
        static_cast<std::size_t>(std::ceil(adult_ratio * static_cast<double>(n)));
    if (adults < 2 || adults >= n)
        throw std::invalid_argument("partition_roles: population too small for the partition");

    for (std::size_t k = 0; k < n; ++k) {
        Lion& lion = population[quality_order[k]];
        if (k == 0) lion.role = Role::King;
        else if (k < adults) lion.role = Role::Lioness;
        else lion.role = Role::Cub;
    }
}

// King: small exploitation move around the global guide, scaled by the
// distance to its own historical best.
inline Vector update_king(std::span<const double> guide, std::span<const double> own_best,
                          std::span<const double> lower, std::span<const double> upper,
                          RngStream& rng) {
    const double gamma = rng.gauss();
    const double radius = l2_dist(own_best, guide);
    Vector next(guide.begin(), guide.end());
    for (double& v : next) v *= 1.0 + gamma * radius;
    clamp_to(next, lower, upper);
    return next;
}

// Lioness: cooperative move to the disturbed midpoint of two personal bests.
inline Vector update_lioness(std::span<const double> own_best,
                             std::span<const double> partner_best, double alpha_f,
                             std::span<const double> lower, std::span<const double> upper,
                             RngStream& rng) {
    const double gamma = rng.gauss();
    Vector next(own_best.size());
    for (std::size_t i = 0; i < next.size(); ++i)
        next[i] = (own_best[i] + partner_best[i]) * (1.0 + alpha_f * gamma) / 2.0;
    clamp_to(next, lower, upper);
    return next;
}

// Reflection of the guide through the per-dimension extent of the
// population: the elite reverse learning target.
inline Vector elite_reverse_point(std::span<const double> dim_low,
                                  std::span<const double> dim_high,
                                  std::span<const double> guide) {
    Vector out(guide.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dim_low[i] + dim_high[i] - guide[i];
    return out;
}

// Cub: move toward the king, a lioness, or the reverse-learning point.
// The regulatory factor eta = (2t+T)/(3T) shifts cubs from reverse
// learning early on toward the adults late in the run.
inline Vector update_cub(std::span<const double> own_best, std::span<const double> guide,
                         std::span<const double> lioness_best,
                         std::span<const double> reverse_point, double alpha_c, std::size_t t,
                         std::size_t t_max, std::span<const double> lower,
                         std::span<const double> upper, RngStream& rng) {
    const double eta = (2.0 * static_cast<double>(t) + static_cast<double>(t_max)) /
                       (3.0 * static_cast<double>(t_max));
    const double q = rng.uniform();
    const double gamma = rng.gauss();
    std::span<const double> anchor = guide;
    if (q > eta) anchor = reverse_point;
    else if (q > eta / 2.0) anchor = lioness_best;

    Vector next(own_best.size());
    for (std::size_t i = 0; i < next.size(); ++i)
        next[i] = (anchor[i] + own_best[i]) * (1.0 + alpha_c * gamma) / 2.0;
    clamp_to(next, lower, upper);
    return next;
}

struct StepFactors {
    double alpha_f = 0.0;
    double alpha_c = 0.0;
};

// Lioness disturbance decays as exp(-30 (t/T)^10); cubs keep the linear
// decay with probability 0.7 and borrow the lioness schedule otherwise.
inline StepFactors step_factors(std::size_t t, std::size_t t_max, double step, RngStream& rng) {
    if (t > t_max) throw std::invalid_argument("step_factors: t beyond t_max");
    const double ratio = static_cast<double>(t) / static_cast<double>(t_max);
    const double lioness = step * std::exp(-30.0 * std::pow(ratio, 10.0));
    const double linear = step * (static_cast<double>(t_max - t) / static_cast<double>(t_max));
    StepFactors out;
    out.alpha_f = lioness;
    out.alpha_c = (rng.uniform() <= 0.7) ? linear : lioness;
    return out;
}

// Dominance decides; mutually non-dominated proposals replace the
// personal best with probability one half. Returns true on replacement.
inline bool update_personal_best(Lion& lion, RngStream& rng) {
    if (lion.best_objectives.empty()) {
        lion.best_position = lion.position;
        lion.best_objectives = lion.objectives;
        lion.best_violation = lion.violation;
        return true;
    }
    if (dominates_constrained(lion.objectives, lion.violation, lion.best_objectives,
                              lion.best_violation)) {
        lion.best_position = lion.position;
        lion.best_objectives = lion.objectives;
        lion.best_violation = lion.violation;
        return true;
    }
    if (dominates_constrained(lion.best_objectives, lion.best_violation, lion.objectives,
                              lion.violation))
        return false;
    if (rng.uniform() < 0.5) {
        lion.best_position = lion.position;
        lion.best_objectives = lion.objectives;
        lion.best_violation = lion.violation;
        return true;
    }
    return false;
}

} // namespace mfdmolso
