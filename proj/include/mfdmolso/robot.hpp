#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfdmolso/linalg.hpp"
#include "mfdmolso/vec.hpp"

namespace mfdmolso {

// 6R robot application: forward kinematics from a D-H table and the
// three-segment cubic-quintic-cubic joint trajectory the durations of
// which are the optimization variables.

inline constexpr double kDegToRad = kPi / 180.0;

struct DHRow {
    double a = 0.0;     // link length, mm
    double alpha = 0.0; // link twist, degrees
    double d = 0.0;     // link offset, mm
};

struct DHTable {
    std::array<DHRow, 6> rows;

    // STEP SR-1400. The waypoint angles below are controller values; the
    // joint-2 home offset is already folded into them, so the rows carry
    // no extra theta offset.
    static DHTable step_sr1400() {
        return DHTable{{{{180.0, -90.0, 415.0},
                         {590.0, 0.0, 0.0},
                         {115.0, -90.0, 0.0},
                         {0.0, 90.0, 625.0},
                         {0.0, -90.0, 0.0},
                         {0.0, 0.0, 98.0}}}};
    }
};

struct Pose {
    std::array<double, 3> position{};                 // mm
    std::array<std::array<double, 3>, 3> rotation{};  // row-major
};

namespace detail {

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 mat4_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

// One joint transform: RotZ(theta) * TransZ(d) * TransX(a) * RotX(alpha).
inline Mat4 dh_transform(const DHRow& row, double theta_rad) {
    const double ct = std::cos(theta_rad), st = std::sin(theta_rad);
    const double ca = std::cos(row.alpha * kDegToRad), sa = std::sin(row.alpha * kDegToRad);
    return Mat4{{{ct, -st * ca, st * sa, row.a * ct},
                 {st, ct * ca, -ct * sa, row.a * st},
                 {0.0, sa, ca, row.d},
                 {0.0, 0.0, 0.0, 1.0}}};
}

} // namespace detail

inline Pose forward_kinematics(const DHTable& table, std::span<const double, 6> joint_deg) {
    detail::Mat4 t = detail::mat4_identity();
    for (std::size_t i = 0; i < 6; ++i)
        t = detail::mat4_mul(t, detail::dh_transform(table.rows[i], joint_deg[i] * kDegToRad));
    Pose pose;
    for (int r = 0; r < 3; ++r) {
        pose.position[r] = t[r][3];
        for (int c = 0; c < 3; ++c) pose.rotation[r][c] = t[r][c];
    }
    return pose;
}

// Joint angles (degrees) at the four target points P1..P4.
struct WaypointSet {
    std::array<std::array<double, 6>, 4> joint_deg;

    static WaypointSet default_case() {
        return WaypointSet{{{{{36.0, -45.0, 27.0, -45.0, 36.0, 45.0}},
                            {{18.0, -36.0, -12.0, -25.0, 25.0, 45.0}},
                            {{4.0, -36.0, -12.0, 15.0, 25.0, -78.0}},
                            {{-15.0, -36.0, 15.0, 21.0, 21.0, -81.0}}}}};
    }
};

struct SegmentDurations {
    double t1 = 1.0, t2 = 1.0, t3 = 1.0;
};

inline constexpr double kMaxSegmentDuration = 3.5;

// Per-joint polynomial coefficients, constant term first.
struct JointCoefficients {
    std::array<double, 4> cubic1{};  // a10..a13
    std::array<double, 6> quintic{}; // a20..a25
    std::array<double, 4> cubic3{};  // a30..a33
};

struct TrajectoryCoefficients {
    std::array<JointCoefficients, 6> joints{};
    SegmentDurations durations{};
    double max_residual = 0.0; // worst constraint residual over all joints
};

namespace detail {

inline double polyval(std::span<const double> c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

// coefficients of the derivative, constant term first
inline std::vector<double> polyder(std::span<const double> c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    if (d.empty()) d.push_back(0.0);
    return d;
}

// The 14 constraints: six positions, four velocities, four accelerations.
// Unknown order: a10..a13, a20..a25, a30..a33.
inline SquareMatrix constraint_matrix(const SegmentDurations& t) {
    SquareMatrix a(14);
    const double t1 = t.t1, t2 = t.t2, t3 = t.t3;
    // positions
    a(0, 0) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = t1; a(1, 2) = t1 * t1; a(1, 3) = t1 * t1 * t1;
    a(2, 4) = 1.0;
    for (int p = 0; p < 6; ++p) a(3, 4 + p) = std::pow(t2, p);
    a(4, 10) = 1.0;
    a(5, 10) = 1.0; a(5, 11) = t3; a(5, 12) = t3 * t3; a(5, 13) = t3 * t3 * t3;
    // velocities
    a(6, 1) = 1.0;
    a(7, 1) = 1.0; a(7, 2) = 2.0 * t1; a(7, 3) = 3.0 * t1 * t1; a(7, 5) = -1.0;
    for (int p = 1; p < 6; ++p) a(8, 4 + p) = p * std::pow(t2, p - 1);
    a(8, 11) = -1.0;
    a(9, 11) = 1.0; a(9, 12) = 2.0 * t3; a(9, 13) = 3.0 * t3 * t3;
    // accelerations
    a(10, 2) = 2.0;
    a(11, 2) = 2.0; a(11, 3) = 6.0 * t1; a(11, 6) = -2.0;
    for (int p = 2; p < 6; ++p) a(12, 4 + p) = p * (p - 1) * std::pow(t2, p - 2);
    a(12, 12) = -2.0;
    a(13, 12) = 2.0; a(13, 13) = 6.0 * t3;
    return a;
}

inline std::vector<double> constraint_rhs(double p1, double p2, double p3, double p4) {
    std::vector<double> b(14, 0.0);
    b[0] = p1;
    b[1] = p2;
    b[2] = p2;
    b[3] = p3;
    b[4] = p3;
    b[5] = p4;
    return b;
}

} // namespace detail

inline void check_durations(const SegmentDurations& t) {
    for (double d : {t.t1, t.t2, t.t3})
        if (!(d > 0.0) || d > kMaxSegmentDuration)
            throw std::invalid_argument("segment duration out of (0, 3.5]");
}

// One factorization of the 14x14 constraint system serves all six joints.
inline TrajectoryCoefficients solve_353(const WaypointSet& waypoints,
                                        const SegmentDurations& durations) {
    check_durations(durations);
    LuSolver lu(detail::constraint_matrix(durations));
    if (lu.fail()) throw std::runtime_error("solve_353: singular constraint system");

    TrajectoryCoefficients coeffs;
    coeffs.durations = durations;
    const SquareMatrix a = detail::constraint_matrix(durations);
    for (std::size_t joint = 0; joint < 6; ++joint) {
        const std::vector<double> rhs = detail::constraint_rhs(
            waypoints.joint_deg[0][joint], waypoints.joint_deg[1][joint],
            waypoints.joint_deg[2][joint], waypoints.joint_deg[3][joint]);
        const std::vector<double> x = lu.solve(rhs);
        JointCoefficients& jc = coeffs.joints[joint];
        for (int i = 0; i < 4; ++i) jc.cubic1[i] = x[i];
        for (int i = 0; i < 6; ++i) jc.quintic[i] = x[4 + i];
        for (int i = 0; i < 4; ++i) jc.cubic3[i] = x[10 + i];
        for (std::size_t r = 0; r < 14; ++r) {
            double lhs = 0.0;
            for (std::size_t c = 0; c < 14; ++c) lhs += a(r, c) * x[c];
            coeffs.max_residual = std::max(coeffs.max_residual, std::abs(lhs - rhs[r]));
        }
    }
    return coeffs;
}

struct TrajectorySample {
    double time = 0.0; // global trajectory time, seconds
    int joint = 0;
    double position = 0.0;     // degrees
    double velocity = 0.0;     // deg/s
    double acceleration = 0.0; // deg/s^2
};

struct TrajectoryProfile {
    std::vector<TrajectorySample> samples;
    double total_time = 0.0;
    double max_abs_velocity = 0.0;     // deg/s, analytic per-segment extrema
    double max_abs_acceleration = 0.0; // deg/s^2, analytic per-segment extrema
    double max_junction_residual = 0.0;
    double max_endpoint_rate = 0.0;    // worst |velocity| or |acceleration| at the ends
};

namespace detail {

struct SegmentView {
    std::span<const double> coeffs;
    double duration;
};

inline std::array<SegmentView, 3> segments(const JointCoefficients& jc,
                                           const SegmentDurations& t) {
    return {SegmentView{std::span<const double>(jc.cubic1), t.t1},
            SegmentView{std::span<const double>(jc.quintic), t.t2},
            SegmentView{std::span<const double>(jc.cubic3), t.t3}};
}

// max |poly| over [0, T]: endpoints plus interior roots of the derivative
inline double poly_abs_max(std::span<const double> c, double duration) {
    double best = std::max(std::abs(polyval(c, 0.0)), std::abs(polyval(c, duration)));
    const std::vector<double> d = polyder(c);
    std::array<double, 4> padded{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d.size() && i < 4; ++i) padded[i] = d[i];
    for (double r : real_cubic_roots(padded[3], padded[2], padded[1], padded[0]))
        if (r > 0.0 && r < duration) best = std::max(best, std::abs(polyval(c, r)));
    return best;
}

} // namespace detail

inline TrajectoryProfile profile(const TrajectoryCoefficients& coeffs, double sample_dt) {
    if (!(sample_dt > 0.0)) throw std::invalid_argument("profile: sample_dt must be positive");

    TrajectoryProfile out;
    out.total_time = coeffs.durations.t1 + coeffs.durations.t2 + coeffs.durations.t3;

    for (int joint = 0; joint < 6; ++joint) {
        const JointCoefficients& jc = coeffs.joints[static_cast<std::size_t>(joint)];
        const auto segs = detail::segments(jc, coeffs.durations);

        double offset = 0.0;
        for (const auto& seg : segs) {
            const std::vector<double> vel = detail::polyder(seg.coeffs);
            const std::vector<double> acc = detail::polyder(vel);
            out.max_abs_velocity = std::max(out.max_abs_velocity,
                                            detail::poly_abs_max(vel, seg.duration));
            out.max_abs_acceleration = std::max(out.max_abs_acceleration,
                                                detail::poly_abs_max(acc, seg.duration));
            for (double t = 0.0; t < seg.duration; t += sample_dt) {
                out.samples.push_back({offset + t, joint, detail::polyval(seg.coeffs, t),
                                       detail::polyval(vel, t), detail::polyval(acc, t)});
            }
            out.samples.push_back({offset + seg.duration, joint,
                                   detail::polyval(seg.coeffs, seg.duration),
                                   detail::polyval(vel, seg.duration),
                                   detail::polyval(acc, seg.duration)});
            offset += seg.duration;
        }

        // junction continuity and zero boundary rates
        for (int j = 0; j < 2; ++j) {
            const auto& left = segs[static_cast<std::size_t>(j)];
            const auto& right = segs[static_cast<std::size_t>(j) + 1];
            const std::vector<double> lv = detail::polyder(left.coeffs);
            const std::vector<double> la = detail::polyder(lv);
            const std::vector<double> rv = detail::polyder(right.coeffs);
            const std::vector<double> ra = detail::polyder(rv);
            const double dp = std::abs(detail::polyval(left.coeffs, left.duration) -
                                       detail::polyval(right.coeffs, 0.0));
            const double dv = std::abs(detail::polyval(lv, left.duration) -
                                       detail::polyval(rv, 0.0));
            const double da = std::abs(detail::polyval(la, left.duration) -
                                       detail::polyval(ra, 0.0));
            out.max_junction_residual = std::max({out.max_junction_residual, dp, dv, da});
        }
        const std::vector<double> v1 = detail::polyder(segs[0].coeffs);
        const std::vector<double> a1 = detail::polyder(v1);
        const std::vector<double> v3 = detail::polyder(segs[2].coeffs);
        const std::vector<double> a3 = detail::polyder(v3);
        out.max_endpoint_rate = std::max({out.max_endpoint_rate,
                                          std::abs(detail::polyval(v1, 0.0)),
                                          std::abs(detail::polyval(a1, 0.0)),
                                          std::abs(detail::polyval(v3, segs[2].duration)),
                                          std::abs(detail::polyval(a3, segs[2].duration))});
    }
    return out;
}

inline constexpr double kVelocityLimit = 100.0;    // deg/s
inline constexpr double kAccelerationLimit = 60.0; // deg/s^2

struct RobotFitness {
    double total_time = 0.0;       // seconds
    double max_acceleration = 0.0; // deg/s^2
    double max_velocity = 0.0;     // deg/s
    double violation = 0.0;        // normalized constraint excess
    bool feasible = false;
};

inline RobotFitness robot_fitness(const WaypointSet& waypoints, const SegmentDurations& t) {
    check_durations(t);
    const TrajectoryCoefficients coeffs = solve_353(waypoints, t);

    RobotFitness fit;
    fit.total_time = t.t1 + t.t2 + t.t3;
    for (const JointCoefficients& jc : coeffs.joints) {
        for (const auto& seg : detail::segments(jc, t)) {
            const std::vector<double> vel = detail::polyder(seg.coeffs);
            const std::vector<double> acc = detail::polyder(vel);
            fit.max_velocity = std::max(fit.max_velocity,
                                        detail::poly_abs_max(vel, seg.duration));
            fit.max_acceleration = std::max(fit.max_acceleration,
                                            detail::poly_abs_max(acc, seg.duration));
        }
    }
    fit.violation = std::max(0.0, (fit.max_velocity - kVelocityLimit) / kVelocityLimit) +
                    std::max(0.0, (fit.max_acceleration - kAccelerationLimit) / kAccelerationLimit);
    fit.feasible = fit.violation == 0.0;
    return fit;
}

} // namespace mfdmolso
