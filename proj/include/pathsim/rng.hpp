// Seeded random numbers with a platform-stable sequence.
//
// std::mt19937_64's output stream is pinned by the standard, but the
// standard distributions are not; the 53-bit mapping below replaces
// std::uniform_real_distribution so the draw sequence is part of the
// reproducibility contract.

#pragma once

#include <cstdint>
#include <random>

namespace pathsim {

class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace pathsim
