#ifndef PLASTCONE_RANDOM_GEN_HPP
#define PLASTCONE_RANDOM_GEN_HPP

#include <cstdint>
#include <random>

#include "plastcone/tensor.hpp"

namespace plastcone {

/// Deterministic sample source for the randomized suites. Draws come straight
/// from mt19937_64 bits so sequences are reproducible across standard library
/// implementations (std::normal_distribution is not).
class RandomGen {
public:
  explicit RandomGen(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  static const char* name() { return "mt19937_64"; }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal();

  Vec3 unit_vector();

  /// Gaussian entries on all six slots, scaled.
  SymTensor3 sym_tensor(double scale = 1.0);

  /// Uniformly random rotation applied to diag(a, b, c).
  SymTensor3 with_eigenvalues(double a, double b, double c);

private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace plastcone

#endif
