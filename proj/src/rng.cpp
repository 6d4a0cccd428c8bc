#include "nmetric/rng.hpp"

#include <cmath>
#include <numbers>

namespace nmetric {

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  // Lemire-style rejection keeps the result unbiased.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= limit) return r % bound;
  }
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

VectorXd sample_normal_vector(Rng& rng, Index dim) {
  VectorXd v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.normal();
  return v;
}

MatrixXd sample_normal_matrix(Rng& rng, Index rows, Index cols) {
  MatrixXd a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.normal();
  }
  return a;
}

VectorXd sample_unit_vector(Rng& rng, Index dim) {
  if (dim < 1) throw UsageError("sample_unit_vector: dim must be >= 1");
  for (;;) {
    VectorXd v = sample_normal_vector(rng, dim);
    const double norm = v.norm();
    if (norm > 1e-150) return v / norm;
  }
}

MatrixXd sample_stiefel(Rng& rng, Index k, Index m) {
  if (k < 1 || k > m) throw UsageError("sample_stiefel: need 1 <= k <= m");
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    MatrixXd a = sample_normal_matrix(rng, m, k);
    bool ok = true;
    for (Index j = 0; j < k && ok; ++j) {
      const double original = a.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (Index i = 0; i < j; ++i) a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
      }
      const double norm = a.col(j).norm();
      if (!(norm > 1e-8 * original)) {
        ok = false;
      } else {
        a.col(j) /= norm;
      }
    }
    if (ok) return a;
  }
  throw NumericalFailure("sample_stiefel: repeated rank deficiency");
}

}  // namespace nmetric
