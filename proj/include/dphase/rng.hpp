#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dphase {

// Seeded random source with a fixed mapping to doubles. std::mt19937_64 is
// fully specified by the standard and the bit-to-double mapping below is ours,
// so streams are identical across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform on [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  std::uint64_t integer() { return gen_(); }

  // n independent samples from [-amp, amp).
  std::vector<double> symmetric_vector(std::size_t n, double amp = 1.0) {
    std::vector<double> out(n);
    for (auto& v : out) v = amp * symmetric();
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dphase
