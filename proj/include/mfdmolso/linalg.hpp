#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mfdmolso {

// Dense row-major square matrix, just large enough for the hyperplane
// intercept systems (MxM) and the trajectory constraint system (14x14).
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

// LU factorization with partial pivoting; factor once, solve many
// right-hand sides. fail() reports a numerically singular pivot.
class LuSolver {
public:
    explicit LuSolver(SquareMatrix a) : lu_(std::move(a)), pivot_(lu_.size()) {
        const std::size_t n = lu_.size();
        for (std::size_t i = 0; i < n; ++i) pivot_[i] = i;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t best = col;
            double best_abs = std::abs(lu_(col, col));
            for (std::size_t r = col + 1; r < n; ++r) {
                if (std::abs(lu_(r, col)) > best_abs) {
                    best = r;
                    best_abs = std::abs(lu_(r, col));
                }
            }
            if (best_abs < 1e-300) {
                failed_ = true;
                return;
            }
            if (best != col) {
                std::swap(pivot_[best], pivot_[col]);
                for (std::size_t c = 0; c < n; ++c) {
                    const double tmp = lu_(best, c);
                    lu_(best, c) = lu_(col, c);
                    lu_(col, c) = tmp;
                }
            }
            for (std::size_t r = col + 1; r < n; ++r) {
                const double f = lu_(r, col) / lu_(col, col);
                lu_(r, col) = f;
                for (std::size_t c = col + 1; c < n; ++c) lu_(r, c) -= f * lu_(col, c);
            }
        }
    }

    bool fail() const { return failed_; }

    std::vector<double> solve(const std::vector<double>& b) const {
        const std::size_t n = lu_.size();
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[pivot_[i]];
        for (std::size_t i = 1; i < n; ++i) {
            double s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
            x[ii] = s / lu_(ii, ii);
        }
        return x;
    }

private:
    SquareMatrix lu_;
    std::vector<std::size_t> pivot_;
    bool failed_ = false;
};

// Real roots of c3 t^3 + c2 t^2 + c1 t + c0, degenerate degrees included.
inline std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
    constexpr double eps = 1e-12;
    std::vector<double> roots;
    if (std::abs(c3) < eps) {
        if (std::abs(c2) < eps) {
            if (std::abs(c1) >= eps) roots.push_back(-c0 / c1);
            return roots;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-c1 + s) / (2.0 * c2));
            roots.push_back((-c1 - s) / (2.0 * c2));
        }
        return roots;
    }
    // depressed cubic t = y - b/3 with monic coefficients
    const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > eps) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        roots.push_back(u + v + shift);
    } else if (disc < -eps) {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
        const double m = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos((phi + 2.0 * k * 3.14159265358979323846) / 3.0) + shift);
    } else {
        if (std::abs(q) < eps && std::abs(p) < eps) {
            roots.push_back(shift);
        } else {
            roots.push_back(3.0 * q / p + shift);
            roots.push_back(-1.5 * q / p + shift);
        }
    }
    return roots;
}

} // namespace mfdmolso
