#pragma once

#include <cstdint>
#include <random>

namespace mfdmolso {

// One master seed spawns named, indexed substreams so that the order in
// which workers draw numbers can never change the trajectory of a run.
// Substream seeds are derived with splitmix64 over (master, tag, a, b).

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

enum class Stream : std::uint64_t {
    Init = 1,
    Update = 2,
    Levy = 3,
    Restart = 4,
    Selection = 5,
    Leader = 6,
    Sentinel = 7,
};

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

    double gauss(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    double cauchy() { return std::cauchy_distribution<double>(0.0, 1.0)(engine_); }

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

class RngFactory {
public:
    explicit RngFactory(std::uint64_t master_seed) : master_(master_seed) {}

    // Substreams are indexed by (tag, a, b); e.g. (Update, generation, lion).
    RngStream stream(Stream tag, std::uint64_t a = 0, std::uint64_t b = 0) const {
        std::uint64_t s = master_;
        detail::splitmix64(s);
        s ^= static_cast<std::uint64_t>(tag) * 0x9e3779b97f4a7c15ULL;
        detail::splitmix64(s);
        s ^= a * 0xbf58476d1ce4e5b9ULL;
        detail::splitmix64(s);
        s ^= b * 0x94d049bb133111ebULL;
        return RngStream(detail::splitmix64(s));
    }

    std::uint64_t master_seed() const { return master_; }

private:
    std::uint64_t master_;
};

} // namespace mfdmolso
