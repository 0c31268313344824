#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mfdmolso/refpoints.hpp"
#include "mfdmolso/robot.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

// Time is driven by an explicit schedule from evaluation count to T so
// that dynamic experiments are reproducible without hidden state. Static
// problems ignore T entirely.
class EnvironmentClock {
public:
    EnvironmentClock() : schedule_{{0, 0.0}} {}

    static EnvironmentClock fixed(double t) {
        EnvironmentClock c;
        c.schedule_ = {{0, t}};
        return c;
    }

    // One environment of `evals_per_environment` evaluations per entry of
    // `times`, in order.
    static EnvironmentClock stepped(std::vector<double> times,
                                    std::uint64_t evals_per_environment) {
        if (times.empty()) throw std::invalid_argument("EnvironmentClock: empty schedule");
        if (evals_per_environment == 0)
            throw std::invalid_argument("EnvironmentClock: zero budget per environment");
        EnvironmentClock c;
        c.schedule_.clear();
        for (std::size_t i = 0; i < times.size(); ++i)
            c.schedule_.push_back({i * evals_per_environment, times[i]});
        c.budget_ = times.size() * evals_per_environment;
        return c;
    }

    double time() const { return current_time(evaluations_); }
    std::uint64_t evaluations() const { return evaluations_; }

    // The runner owns counting; evaluate() itself never advances the clock.
    void count(std::uint64_t n = 1) { evaluations_ += n; }

    bool scheduled() const { return schedule_.size() > 1; }
    std::uint64_t total_budget() const { return budget_; }
    bool budget_exhausted() const { return budget_ != 0 && evaluations_ >= budget_; }

private:
    double current_time(std::uint64_t evals) const {
        double t = schedule_.front().second;
        for (const auto& [start, value] : schedule_) {
            if (evals >= start) t = value;
        }
        return t;
    }

    std::vector<std::pair<std::uint64_t, double>> schedule_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t budget_ = 0;
};

struct Problem {
    std::string name;
    int decision_dim = 0;
    int objective_dim = 0;
    Vector lower, upper;
    bool time_dependent = false;

    std::function<Vector(std::span<const double>, double)> objective_fn;
    std::function<double(std::span<const double>, double)> violation_fn;
    std::function<std::vector<Vector>(double, std::size_t)> true_pf_fn;

    // Pure; bounds and dimension are checked on every call.
    Vector evaluate_at(std::span<const double> x, double t) const {
        if (static_cast<int>(x.size()) != decision_dim)
            throw std::invalid_argument(name + ": dimension mismatch");
        for (int i = 0; i < decision_dim; ++i)
            if (x[i] < lower[i] || x[i] > upper[i])
                throw std::invalid_argument(name + ": point out of bounds");
        return objective_fn(x, t);
    }

    Vector evaluate(std::span<const double> x, const EnvironmentClock& clock) const {
        return evaluate_at(x, clock.time());
    }

    double violation(std::span<const double> x, double t) const {
        return violation_fn ? violation_fn(x, t) : 0.0;
    }

    bool has_true_pf() const { return static_cast<bool>(true_pf_fn); }

    double range(int dim) const { return upper[dim] - lower[dim]; }
    double mean_range() const {
        double s = 0.0;
        for (int i = 0; i < decision_dim; ++i) s += range(i);
        return s / decision_dim;
    }
};

// Evaluates through the clock and counts each call, so that schedule
// transitions fire at exact evaluation counts.
class CountingEvaluator {
public:
    CountingEvaluator(const Problem& problem, EnvironmentClock& clock)
        : problem_(&problem), clock_(&clock) {}

    Vector operator()(std::span<const double> x) {
        const Vector f = problem_->evaluate(x, *clock_);
        clock_->count();
        return f;
    }

    double violation(std::span<const double> x) const {
        return problem_->violation(x, clock_->time());
    }

    const Problem& problem() const { return *problem_; }
    EnvironmentClock& clock() { return *clock_; }

private:
    const Problem* problem_;
    EnvironmentClock* clock_;
};

namespace detail {

inline std::vector<Vector> linspace_front(std::size_t n,
                                          const std::function<double(double)>& f2_of_f1) {
    if (n < 2) throw std::invalid_argument("sample_true_pf: n >= 2 required");
    std::vector<Vector> pf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f1 = static_cast<double>(i) / static_cast<double>(n - 1);
        pf[i] = {f1, f2_of_f1(f1)};
    }
    return pf;
}

// ZDT3's curve is only partially non-dominated; filter a dense sweep by
// the running minimum of f2 and thin the survivors to n points.
inline std::vector<Vector> zdt3_front(std::size_t n) {
    const std::size_t dense = std::max<std::size_t>(10 * n, 20000);
    std::vector<Vector> kept;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dense; ++i) {
        const double f1 = static_cast<double>(i) / static_cast<double>(dense - 1);
        const double f2 = 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1);
        if (f2 < best_f2) {
            best_f2 = f2;
            kept.push_back({f1, f2});
        }
    }
    std::vector<Vector> pf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = i * (kept.size() - 1) / (n - 1);
        pf[i] = kept[k];
    }
    return pf;
}

// Smallest simplex lattice with at least n points; keeps the sampled
// surface gap-free, which matters for the 0.01 error-point threshold.
inline std::vector<Vector> simplex_front(std::size_t n, bool on_sphere) {
    int h = 1;
    auto count = [](int hh) { return static_cast<std::size_t>(hh + 2) * (hh + 1) / 2; };
    while (count(h) < n) ++h;
    const ReferencePointSet lattice = generate_reference_points(3, h);
    std::vector<Vector> pf;
    pf.reserve(lattice.size());
    for (const Vector& w : lattice.directions) {
        if (on_sphere) {
            const double norm = l2_norm(w);
            pf.push_back({w[0] / norm, w[1] / norm, w[2] / norm});
        } else {
            pf.push_back({0.5 * w[0], 0.5 * w[1], 0.5 * w[2]});
        }
    }
    return pf;
}

inline double dmop1_shape(double t) { return 0.75 * std::sin(0.5 * kPi * t) + 1.25; }
inline double g2_optimum(double t) { return std::sin(0.5 * kPi * t); }

} // namespace detail

// The eight benchmarks plus the trajectory-planning problem, selected by
// name. ZDT/DTLZ bodies follow the standard definitions; the two dynamic
// problems follow the usual convex/concave-shifting form (dmop1, shape
// exponent H(T) = 0.75 sin(piT/2) + 1.25 over g = 1 + 9 sum x_i^2) and a
// moving-optimum form (g2, g = 1 + 9/(D-1) sum (x_i - sin(piT/2))^2 under
// the square-root shape). Golden tests pin both variants.
inline Problem make_problem(const std::string& name, int decision_dim) {
    Problem p;
    p.name = name;
    p.decision_dim = decision_dim;

    auto unit_box = [&](int m) {
        p.objective_dim = m;
        p.lower.assign(static_cast<std::size_t>(decision_dim), 0.0);
        p.upper.assign(static_cast<std::size_t>(decision_dim), 1.0);
    };

    auto require_dim = [&](int min_dim) {
        if (decision_dim < min_dim)
            throw std::invalid_argument(name + ": decision dimension must be >= " +
                                        std::to_string(min_dim));
    };

    if (name == "zdt1" || name == "zdt2" || name == "zdt3") {
        require_dim(2);
        unit_box(2);
        const int variant = name[3] - '0';
        const int d = decision_dim;
        p.objective_fn = [variant, d](std::span<const double> x, double) {
            const double f1 = x[0];
            double s = 0.0;
            for (int i = 1; i < d; ++i) s += x[i];
            const double g = 1.0 + 9.0 * s / (d - 1);
            double h = 0.0;
            if (variant == 1) h = 1.0 - std::sqrt(f1 / g);
            else if (variant == 2) h = 1.0 - (f1 / g) * (f1 / g);
            else h = 1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * kPi * f1);
            return Vector{f1, g * h};
        };
        if (variant == 1)
            p.true_pf_fn = [](double, std::size_t n) {
                return detail::linspace_front(n, [](double f1) { return 1.0 - std::sqrt(f1); });
            };
        else if (variant == 2)
            p.true_pf_fn = [](double, std::size_t n) {
                return detail::linspace_front(n, [](double f1) { return 1.0 - f1 * f1; });
            };
        else
            p.true_pf_fn = [](double, std::size_t n) { return detail::zdt3_front(n); };
        return p;
    }

    if (name == "dtlz1" || name == "dtlz2" || name == "dtlz3") {
        require_dim(2); // D >= M - 1
        unit_box(3);
        const int variant = name[4] - '0';
        const int d = decision_dim;
        p.objective_fn = [variant, d](std::span<const double> x, double) {
            double g = 0.0;
            const int k = d - 2; // distance variables
            if (variant == 2) {
                for (int i = 2; i < d; ++i) g += (x[i] - 0.5) * (x[i] - 0.5);
            } else {
                double s = 0.0;
                for (int i = 2; i < d; ++i)
                    s += (x[i] - 0.5) * (x[i] - 0.5) - std::cos(20.0 * kPi * (x[i] - 0.5));
                g = 100.0 * (k + s);
            }
            if (variant == 1) {
                const double c = 0.5 * (1.0 + g);
                return Vector{c * x[0] * x[1], c * x[0] * (1.0 - x[1]), c * (1.0 - x[0])};
            }
            const double c = 1.0 + g;
            const double a0 = x[0] * kPi / 2.0, a1 = x[1] * kPi / 2.0;
            return Vector{c * std::cos(a0) * std::cos(a1), c * std::cos(a0) * std::sin(a1),
                          c * std::sin(a0)};
        };
        p.true_pf_fn = [variant](double, std::size_t n) {
            return detail::simplex_front(n, variant != 1);
        };
        return p;
    }

    if (name == "dmop1") {
        require_dim(2);
        unit_box(2);
        const int d = decision_dim;
        p.time_dependent = true;
        p.objective_fn = [d](std::span<const double> x, double t) {
            const double f1 = x[0];
            double g = 1.0;
            for (int i = 1; i < d; ++i) g += 9.0 * x[i] * x[i];
            const double h = 1.0 - std::pow(f1 / g, detail::dmop1_shape(t));
            return Vector{f1, g * h};
        };
        p.true_pf_fn = [](double t, std::size_t n) {
            const double shape = detail::dmop1_shape(t);
            return detail::linspace_front(n, [shape](double f1) {
                return 1.0 - std::pow(f1, shape);
            });
        };
        return p;
    }

    if (name == "g2") {
        require_dim(2);
        unit_box(2);
        const int d = decision_dim;
        p.time_dependent = true;
        p.objective_fn = [d](std::span<const double> x, double t) {
            const double f1 = x[0];
            const double opt = detail::g2_optimum(t);
            double s = 0.0;
            for (int i = 1; i < d; ++i) s += (x[i] - opt) * (x[i] - opt);
            const double g = 1.0 + 9.0 * s / (d - 1);
            return Vector{f1, g * (1.0 - std::sqrt(f1 / g))};
        };
        p.true_pf_fn = [](double, std::size_t n) {
            return detail::linspace_front(n, [](double f1) { return 1.0 - std::sqrt(f1); });
        };
        return p;
    }

    if (name == "robot353") {
        if (decision_dim != 3)
            throw std::invalid_argument("robot353: decision dimension must be 3");
        p.objective_dim = 2;
        // durations live in (0, 3.5]; the lower bound stays strictly
        // positive so the constraint system remains solvable
        p.lower.assign(3, 1e-3);
        p.upper.assign(3, kMaxSegmentDuration);
        const WaypointSet waypoints = WaypointSet::default_case();
        p.objective_fn = [waypoints](std::span<const double> x, double) {
            const RobotFitness fit =
                robot_fitness(waypoints, SegmentDurations{x[0], x[1], x[2]});
            return Vector{fit.total_time, fit.max_acceleration};
        };
        p.violation_fn = [waypoints](std::span<const double> x, double) {
            return robot_fitness(waypoints, SegmentDurations{x[0], x[1], x[2]}).violation;
        };
        return p;
    }

    throw std::invalid_argument("unknown problem: " + name);
}

inline std::vector<Vector> sample_true_pf(const Problem& problem, const EnvironmentClock& clock,
                                          std::size_t n) {
    if (n < 2) throw std::invalid_argument("sample_true_pf: n >= 2 required");
    if (!problem.has_true_pf())
        throw std::invalid_argument(problem.name + ": no analytic Pareto front");
    return problem.true_pf_fn(clock.time(), n);
}

} // namespace mfdmolso
