#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace shotasm {

// Seeded generator for a single run. The distributions are implemented here
// rather than taken from <random> so draws replay identically across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    double normal();

    // Independent child stream; consumes one draw from this generator.
    Rng split() { return Rng(next()); }

    // Seed for stream `stream` of a master seed, stable across runs.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);
    static std::uint64_t mix(std::uint64_t x);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

}  // namespace shotasm
