#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mfdmolso/ranking.hpp"
#include "mfdmolso/refpoints.hpp"
#include "mfdmolso/rng.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

struct Solution {
    Vector position;
    Vector objectives;
    double violation = 0.0;
};

namespace detail {

inline std::vector<double> violations_of(const std::vector<Solution>& s) {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i].violation;
    return v;
}

} // namespace detail

// Capacity-bounded store of the best solutions found so far. On update
// the incoming generation is merged with the old content, Pareto sorted,
// and trimmed from the worst layer, most crowded member first.
class Archive {
public:
    Archive() = default;
    explicit Archive(std::size_t capacity, CrowdingSpace space = CrowdingSpace::Decision,
                     int sort_objective = 0)
        : capacity_(capacity), space_(space), sort_objective_(sort_objective) {
        if (capacity == 0) throw std::invalid_argument("Archive: capacity must be positive");
    }

    std::size_t capacity() const { return capacity_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<Solution>& solutions() const { return members_; }
    const std::vector<int>& ranks() const { return ranks_; }

    std::vector<Solution> first_front() const {
        std::vector<Solution> front;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (ranks_[i] == 1) front.push_back(members_[i]);
        return front;
    }

    std::vector<Vector> first_front_objectives() const {
        std::vector<Vector> objs;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (ranks_[i] == 1) objs.push_back(members_[i].objectives);
        return objs;
    }

    template <typename Member>
    void update(const std::vector<Member>& new_population) {
        std::vector<Solution> merged;
        merged.reserve(new_population.size() + members_.size());
        for (const Member& m : new_population)
            merged.push_back(Solution{m.position, m.objectives, m.violation});
        for (Solution& s : members_) merged.push_back(std::move(s));
        members_ = dedupe_positions(std::move(merged));
        sort_and_trim();
    }

    // Wholesale replacement, used after re-evaluating the stored
    // solutions when the environment moved.
    void replace(std::vector<Solution> solutions) {
        members_ = dedupe_positions(std::move(solutions));
        if (members_.empty()) {
            ranks_.clear();
            return;
        }
        sort_and_trim();
    }

private:
    static std::vector<Solution> dedupe_positions(std::vector<Solution> merged) {
        std::vector<Solution> kept;
        kept.reserve(merged.size());
        for (Solution& s : merged) {
            bool duplicate = false;
            for (const Solution& k : kept) {
                if (k.position == s.position) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) kept.push_back(std::move(s));
        }
        return kept;
    }

    void sort_and_trim() {
        while (true) {
            const std::vector<double> viol = detail::violations_of(members_);
            std::vector<Vector> objs(members_.size());
            for (std::size_t i = 0; i < members_.size(); ++i) objs[i] = members_[i].objectives;
            auto fronts = non_dominated_sort(objs, &viol);
            ranks_ = ranks_from_fronts(fronts, members_.size());
            if (members_.size() <= capacity_) return;

            // delete from the worst front until capacity fits or the
            // front is exhausted; ranks of other fronts are unaffected
            std::vector<std::size_t>& worst = fronts.back();
            std::size_t excess = members_.size() - capacity_;
            std::vector<bool> doomed(members_.size(), false);
            while (excess > 0 && !worst.empty()) {
                if (worst.size() == 1) {
                    doomed[worst.front()] = true;
                    worst.pop_back();
                    --excess;
                    continue;
                }
                std::vector<Vector> fpos, fobj;
                fpos.reserve(worst.size());
                for (std::size_t i : worst) {
                    fpos.push_back(members_[i].position);
                    fobj.push_back(members_[i].objectives);
                }
                const CrowdingResult cr =
                    crowding_degree(fpos, fobj, sort_objective_, space_);
                std::size_t victim = worst.size(); // position within `worst`
                double smallest = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < worst.size(); ++k) {
                    if (cr.value[k] < smallest) {
                        smallest = cr.value[k];
                        victim = k;
                    }
                }
                if (victim == worst.size()) // all boundary: drop the sorted tail
                    victim = cr.sorted_order.back();
                doomed[worst[victim]] = true;
                worst.erase(worst.begin() + static_cast<std::ptrdiff_t>(victim));
                --excess;
            }
            std::vector<Solution> kept;
            kept.reserve(members_.size() - std::count(doomed.begin(), doomed.end(), true));
            for (std::size_t i = 0; i < members_.size(); ++i)
                if (!doomed[i]) kept.push_back(std::move(members_[i]));
            members_ = std::move(kept);
            if (members_.size() <= capacity_) {
                // final rank refresh over the kept members
                const std::vector<double> v2 = detail::violations_of(members_);
                std::vector<Vector> o2(members_.size());
                for (std::size_t i = 0; i < members_.size(); ++i)
                    o2[i] = members_[i].objectives;
                ranks_ = ranks_from_fronts(non_dominated_sort(o2, &v2), members_.size());
                return;
            }
        }
    }

    std::size_t capacity_ = 0;
    CrowdingSpace space_ = CrowdingSpace::Decision;
    int sort_objective_ = 0;
    std::vector<Solution> members_;
    std::vector<int> ranks_;
};

// Two-objective global guide: the least crowded first-front member;
// when every member is a boundary (three or fewer), a uniform pick.
inline Solution select_global_best_2d(const Archive& archive, RngStream& rng) {
    if (archive.empty()) throw std::invalid_argument("select_global_best_2d: empty archive");
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < archive.size(); ++i)
        if (archive.ranks()[i] == 1) front.push_back(i);

    std::vector<Vector> fpos, fobj;
    for (std::size_t i : front) {
        fpos.push_back(archive.solutions()[i].position);
        fobj.push_back(archive.solutions()[i].objectives);
    }
    const CrowdingResult cr = crowding_degree(fpos, fobj, 0, CrowdingSpace::Decision);
    std::size_t best = front.size();
    double largest = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < front.size(); ++k) {
        if (std::isfinite(cr.value[k]) && cr.value[k] > largest) {
            largest = cr.value[k];
            best = k;
        }
    }
    if (best == front.size()) best = rng.index(front.size());
    return archive.solutions()[front[best]];
}

// Next generation from the 2N parent/offspring union: whole fronts while
// they fit, then the partial front resolved by crowding (two objectives)
// or reference-point niching (three and more).
template <typename Member>
std::vector<Member> environmental_selection(const std::vector<Member>& parents,
                                            const std::vector<Member>& offspring,
                                            std::size_t n, const ReferencePointSet* refs,
                                            NormalizationState* norm_state,
                                            CrowdingSpace space, int sort_objective,
                                            RngStream& rng) {
    std::vector<Member> pool;
    pool.reserve(parents.size() + offspring.size());
    pool.insert(pool.end(), parents.begin(), parents.end());
    pool.insert(pool.end(), offspring.begin(), offspring.end());
    if (pool.size() < n)
        throw std::invalid_argument("environmental_selection: union smaller than N");

    std::vector<Vector> objs(pool.size());
    std::vector<double> viol(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        objs[i] = pool[i].objectives;
        viol[i] = pool[i].violation;
    }
    const auto fronts = non_dominated_sort(objs, &viol);

    std::vector<std::size_t> admitted;
    admitted.reserve(n);
    std::size_t f = 0;
    while (f < fronts.size() && admitted.size() + fronts[f].size() <= n) {
        admitted.insert(admitted.end(), fronts[f].begin(), fronts[f].end());
        ++f;
    }
    if (admitted.size() < n) {
        const std::vector<std::size_t>& last = fronts[f];
        const std::size_t k = n - admitted.size();
        if (refs != nullptr && norm_state != nullptr) {
            const std::vector<Vector> normalized = normalize_objectives(objs, *norm_state);
            const auto chosen = niche_select(normalized, admitted, last, *refs, k, rng);
            admitted.insert(admitted.end(), chosen.begin(), chosen.end());
        } else {
            std::vector<Vector> fpos, fobj;
            for (std::size_t i : last) {
                fpos.push_back(pool[i].position);
                fobj.push_back(pool[i].objectives);
            }
            const CrowdingResult cr = crowding_degree(fpos, fobj, sort_objective, space);
            std::vector<std::size_t> order(last.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            // least crowded first; boundary members lead
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return cr.value[a] > cr.value[b];
            });
            for (std::size_t j = 0; j < k; ++j) admitted.push_back(last[order[j]]);
        }
    }

    std::vector<Member> next;
    next.reserve(n);
    for (std::size_t i : admitted) next.push_back(pool[i]);
    return next;
}

} // namespace mfdmolso
