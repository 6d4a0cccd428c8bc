#pragma once

#include <cstdint>

#include "nmetric/linalg.hpp"

namespace nmetric {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream number `index` derived from `seed`.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// Counter-based generator: output k is a pure function of (key, k), so a
/// stream is reproducible on every platform and cheap to split.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), key_(mix64(seed ^ 0x5851F42D4C957F2DULL)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal deviate by Box-Muller.
  double normal() noexcept;

  /// Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const noexcept { return Rng(substream_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

VectorXd sample_normal_vector(Rng& rng, Index dim);
MatrixXd sample_normal_matrix(Rng& rng, Index rows, Index cols);

/// Uniformly distributed point of the unit sphere in R^dim.
VectorXd sample_unit_vector(Rng& rng, Index dim);

/// m x k matrix with orthonormal columns (Gram-Schmidt with a second pass).
MatrixXd sample_stiefel(Rng& rng, Index k, Index m);

/// k x k orthogonal matrix.
inline MatrixXd sample_orthogonal(Rng& rng, Index k) { return sample_stiefel(rng, k, k); }

}  // namespace nmetric
