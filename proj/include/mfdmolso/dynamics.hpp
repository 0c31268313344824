#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mfdmolso/archive.hpp"
#include "mfdmolso/problem.hpp"
#include "mfdmolso/ranking.hpp"
#include "mfdmolso/rng.hpp"
#include "mfdmolso/swarm.hpp"

namespace mfdmolso {

struct RestartConfig {
    double sentinel_fraction = 0.1; // share of the archive re-evaluated per probe
    double change_epsilon = 1e-10;
    double cold_fraction = 0.5;       // share of the restart population started cold
    double cauchy_scale_ratio = 0.1;  // scale = ratio * (upper - lower)

    void validate() const {
        if (!(sentinel_fraction > 0.0) || sentinel_fraction > 1.0)
            throw std::invalid_argument("RestartConfig: sentinel fraction in (0,1] required");
        if (cold_fraction < 0.0 || cold_fraction > 1.0)
            throw std::invalid_argument("RestartConfig: cold fraction in [0,1] required");
    }
};

// Re-evaluate a sample of stored solutions; any drift beyond epsilon
// means the environment moved. An empty archive reports no change.
inline bool detect_change(const Problem& problem, const EnvironmentClock& clock,
                          const Archive& archive, const RestartConfig& config,
                          RngStream& rng) {
    if (archive.empty()) return false;
    const std::size_t n = archive.size();
    const std::size_t probes = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(config.sentinel_fraction * n)));
    for (std::size_t k = 0; k < probes; ++k) {
        const Solution& s = archive.solutions()[rng.index(n)];
        const Vector fresh = problem.evaluate(s.position, clock);
        for (std::size_t i = 0; i < fresh.size(); ++i)
            if (std::abs(fresh[i] - s.objectives[i]) > config.change_epsilon) return true;
    }
    return false;
}

// Fresh chaotic initialization over the full bounds; independent of any
// previous population.
inline std::vector<Lion> cold_start(const Problem& problem, std::size_t n,
                                    const SwarmConfig& swarm, RngStream& rng) {
    if (n == 0) return {};
    SwarmConfig cfg = swarm;
    cfg.population_size = std::max<std::size_t>(n, 4);
    std::vector<Lion> lions = init_population(problem, cfg, rng);
    lions.resize(n);
    return lions;
}

// Resample the previous archive and shake each coordinate with a Cauchy
// step; falls back to a cold start when there is nothing to resample.
inline std::vector<Lion> hot_start(const Problem& problem, const Archive& previous,
                                   std::size_t n, const RestartConfig& config,
                                   const SwarmConfig& swarm, RngStream& rng) {
    if (previous.empty()) return cold_start(problem, n, swarm, rng);
    std::vector<Lion> lions(n);
    const std::size_t m = previous.size();
    for (Lion& lion : lions) {
        const Solution& src = previous.solutions()[rng.index(m)];
        lion.position = src.position;
        for (int d = 0; d < problem.decision_dim; ++d)
            lion.position[static_cast<std::size_t>(d)] +=
                config.cauchy_scale_ratio * problem.range(d) * rng.cauchy();
        clamp_to(lion.position, problem.lower, problem.upper);
        lion.best_position = lion.position;
    }
    return lions;
}

// Cold and hot halves are generated, evaluated under the new
// environment, merged, and ranked; the best N become the new population.
inline std::vector<Lion> adaptive_restart(const Problem& problem, const Archive& previous,
                                          std::size_t n, const RestartConfig& config,
                                          const SwarmConfig& swarm, CountingEvaluator& evaluate,
                                          CrowdingSpace space, int sort_objective,
                                          RngStream& rng) {
    config.validate();
    const std::size_t n_cold =
        static_cast<std::size_t>(std::lround(config.cold_fraction * static_cast<double>(n)));
    std::vector<Lion> merged = cold_start(problem, n_cold, swarm, rng);
    std::vector<Lion> hot = hot_start(problem, previous, n - n_cold, config, swarm, rng);
    merged.insert(merged.end(), hot.begin(), hot.end());

    for (Lion& lion : merged) {
        lion.objectives = evaluate(lion.position);
        lion.violation = evaluate.violation(lion.position);
        lion.best_objectives = lion.objectives;
        lion.best_violation = lion.violation;
    }

    std::vector<Vector> objs(merged.size());
    std::vector<double> viol(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        objs[i] = merged[i].objectives;
        viol[i] = merged[i].violation;
    }
    const auto fronts = non_dominated_sort(objs, &viol);

    std::vector<Lion> next;
    next.reserve(n);
    for (const auto& front : fronts) {
        if (next.size() == n) break;
        if (next.size() + front.size() <= n) {
            for (std::size_t i : front) next.push_back(merged[i]);
            continue;
        }
        std::vector<Vector> fpos, fobj;
        for (std::size_t i : front) {
            fpos.push_back(merged[i].position);
            fobj.push_back(merged[i].objectives);
        }
        const CrowdingResult cr = crowding_degree(fpos, fobj, sort_objective, space);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return cr.value[a] > cr.value[b]; });
        for (std::size_t k = 0; next.size() < n; ++k) next.push_back(merged[front[order[k]]]);
        break;
    }
    return next;
}

} // namespace mfdmolso
