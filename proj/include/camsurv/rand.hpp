#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace camsurv {

// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with an explicit child-stream mechanism so that separate
// concerns (target motion vs. controller noise) draw from independent streams
// and stay reproducible regardless of how often the other stream is consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)), seed_(seed) {}

    // Independent stream derived from this seed and a short tag.
    Rng child(std::string_view tag) const {
        std::uint64_t h = seed_;
        for (char c : tag) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
        return Rng(h);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be >= 1.
    int uniform_int(int n) {
        return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
    }

    // Standard normal via Box-Muller; one value per call, no caching, so the
    // draw count is position-independent.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace camsurv
