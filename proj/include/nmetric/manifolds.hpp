#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nmetric/axioms.hpp"
#include "nmetric/exterior.hpp"
#include "nmetric/linalg.hpp"

namespace nmetric {

inline constexpr double kUnitNormTolerance = 1e-10;
inline constexpr double kFrameTolerance = 1e-10;

/// Columns scaled to unit length; zero columns are rejected.
MatrixXd renormalize_columns(const MatrixXd& tuple);

/// sqrt(det(<x_i, x_j>)) for unit vectors x_i (the columns of `unit_tuple`).
/// Columns off the unit sphere by more than 1e-10 are rejected.
double d_sphere(const MatrixXd& unit_tuple);

MetricEvaluator<VectorXd> sphere_metric(int n);

/// ||x_1 ^ ... ^ x_n|| / prod ||x_i||.
double polar_sine(const MatrixXd& tuple);

/// ||x_1 ^ ... ^ x_n||^(n-1) / prod_i ||wedge of all x except x_i||.
double n_sine(const MatrixXd& tuple);

/// (1/k) trace(A^T B).
double hs_inner(const MatrixXd& a, const MatrixXd& b, double k);

/// An m x k matrix with orthonormal columns, k <= m.
class StiefelFrame {
 public:
  /// Validates ||A^T A - I||_max <= 1e-10.
  explicit StiefelFrame(MatrixXd a);

  Index k() const { return a_.cols(); }
  Index m() const { return a_.rows(); }
  const MatrixXd& matrix() const { return a_; }

  /// The frame A Q for an orthogonal k x k matrix Q.
  StiefelFrame rotated(const MatrixXd& q) const;

  bool operator==(const StiefelFrame& other) const {
    return a_.rows() == other.a_.rows() && a_.cols() == other.a_.cols() && a_ == other.a_;
  }

 private:
  MatrixXd a_;
};

/// Orthogonal projection of rank k onto the range of a frame.
class ProjectionMatrix {
 public:
  ProjectionMatrix(MatrixXd p, Index rank) : p_(std::move(p)), rank_(rank) {}

  Index m() const { return p_.rows(); }
  Index rank() const { return rank_; }
  const MatrixXd& matrix() const { return p_; }

  /// <P, B>_{k,H} = (1/k) trace(P^T B).
  double inner(const ProjectionMatrix& other) const;
  /// Largest deviation from symmetry, idempotency and trace = k.
  double symmetry_defect() const;
  double idempotency_defect() const;
  double trace_defect() const;

 private:
  MatrixXd p_;
  Index rank_;
};

/// sqrt(det(<A_i, A_j>_H)) with the (1/k)-scaled Hilbert-Schmidt product.
double d_stiefel(std::span<const StiefelFrame> frames);

ProjectionMatrix projection_from_frame(const StiefelFrame& frame);

/// sqrt(det(<P_i, P_j>_{k,H})) for the projections onto the frames' ranges.
double d_grassmann_proj(std::span<const StiefelFrame> frames);

struct PrincipalAngles {
  VectorXd sigmas;  // nonincreasing cosines
  VectorXd thetas;  // nondecreasing angles in [0, pi/2]
};

PrincipalAngles principal_angles(const StiefelFrame& a1, const StiefelFrame& a2);

/// min over Q in O(k) of d_stiefel(A1, A2 Q) = sqrt(1 - (sum sigma_j / k)^2).
double d_grassmann_quotient(const StiefelFrame& a1, const StiefelFrame& a2);

/// Q in O(k) attaining the minimum in d_grassmann_quotient.
MatrixXd optimal_alignment(const StiefelFrame& a1, const StiefelFrame& a2);

/// sin of the largest principal angle (spectral norm of P1 - P2).
double d_classical_grassmann_2(const StiefelFrame& a1, const StiefelFrame& a2);

MetricEvaluator<StiefelFrame> stiefel_metric(int n);
MetricEvaluator<StiefelFrame> grassmann_proj_metric(int n);
MetricEvaluator<StiefelFrame> grassmann_quotient_metric();
MetricEvaluator<StiefelFrame> classical_grassmann_metric();

/// Element of O(2): rotation by `angle`, or the reflection whose matrix is
/// [[cos, sin], [sin, -cos]].
MatrixXd o2_element(bool reflection, double angle);

// Experimental quantities. Neither is known to satisfy the simplicial
// inequality; they exist so the CLI can search for violations.

struct AlignmentSearch {
  int o2_steps = 36;          // grid points per O(2) component when k = 2
  int random_candidates = 64; // per frame and round when k >= 3
  int rounds = 3;
  std::uint64_t seed = 0x6A09E667F3BCC909ULL;
};

/// Approximate min over Q_2..Q_n in O(k) of d_stiefel(A_1, A_2 Q_2, ..., A_n Q_n).
/// Exhaustive for k = 1, grid over O(2) for k = 2, randomized descent otherwise.
double grassmann_quotient_search(std::span<const StiefelFrame> frames, const AlignmentSearch& search = {});

MetricEvaluator<StiefelFrame> grassmann_quotient_search_metric(int n, AlignmentSearch search = {});

enum class WedgeDualNorm { spectral, nuclear };

/// Sampled lower bound of max |det(<F_i, P_j>)| / prod ||F_i||_* over
/// nonzero m x m matrices F_i.
double spectral_wedge_estimate(std::span<const StiefelFrame> frames, WedgeDualNorm norm, int samples,
                               std::uint64_t seed);

MetricEvaluator<StiefelFrame> spectral_wedge_metric(int n, WedgeDualNorm norm, int samples = 256);

}  // namespace nmetric
