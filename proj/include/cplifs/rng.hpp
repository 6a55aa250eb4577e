#pragma once
#include <cstdint>
#include <random>

namespace cplifs {

// Deterministic uniform draws across platforms: mt19937_64 raw words mapped to
// [0,1) by hand instead of std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{seed, stream, std::uint64_t{0x9e3779b97f4a7c15ULL}};
        eng_.seed(seq);
    }

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }
    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace cplifs
