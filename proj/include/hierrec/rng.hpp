#pragma once

#include <cstdint>
#include <string_view>

namespace hierrec {

// xoshiro256++ with splitmix64 seeding. The standard <random> engines are
// portable but the distributions are not; all sampling here is implemented
// directly so that a seed pins the byte-exact output everywhere.
//
// Sub-streams: fork() derives an independent generator from the original
// construction seed and a label, not from the current state, so the layout
// of draws in one stream never shifts another.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    // Standard normal via Box-Muller (no cached twin, so the draw count
    // per call is fixed).
    double normal();
    double normal(double mean, double stddev);

    // Uniform integer in [0, n), unbiased (rejection sampling). n > 0.
    std::uint64_t uniform_index(std::uint64_t n);

    Rng fork(std::string_view name) const;
    Rng fork(std::uint64_t index) const;

  private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

}  // namespace hierrec
