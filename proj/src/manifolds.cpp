#include "nmetric/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nmetric/rng.hpp"

namespace nmetric {

namespace {

void require_common_shape(std::span<const StiefelFrame> frames, const char* what) {
  if (frames.empty()) throw UsageError(std::string(what) + ": no frames");
  for (const auto& f : frames) {
    if (f.k() != frames.front().k() || f.m() != frames.front().m()) {
      throw UsageError(std::string(what) + ": frames have different (k, m)");
    }
  }
}

template <typename Inner>
MatrixXd symmetric_gram(std::size_t n, Inner inner) {
  MatrixXd g(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = inner(i, j);
      g(static_cast<Index>(i), static_cast<Index>(j)) = v;
      g(static_cast<Index>(j), static_cast<Index>(i)) = v;
    }
  }
  return g;
}

}  // namespace

MatrixXd renormalize_columns(const MatrixXd& tuple) {
  MatrixXd out = tuple;
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (!(norm > 0.0)) throw UsageError("renormalize_columns: zero vector");
    out.col(j) /= norm;
  }
  return out;
}

double d_sphere(const MatrixXd& unit_tuple) {
  if (unit_tuple.cols() < 1) throw UsageError("d_sphere: empty tuple");
  for (Index j = 0; j < unit_tuple.cols(); ++j) {
    if (std::abs(unit_tuple.col(j).norm() - 1.0) > kUnitNormTolerance) {
      throw UsageError("d_sphere: vector " + std::to_string(j) + " is not a unit vector");
    }
  }
  if (unit_tuple.cols() > unit_tuple.rows()) return 0.0;
  return gram_det_sqrt(gram_matrix(unit_tuple));
}

MetricEvaluator<VectorXd> sphere_metric(int n) {
  if (n < 2) throw UsageError("sphere_metric: n must be >= 2");
  return {n, [](std::span<const VectorXd> x) { return d_sphere(columns_of<double>(x)); }, "sphere"};
}

double polar_sine(const MatrixXd& tuple) {
  double denominator = 1.0;
  for (Index j = 0; j < tuple.cols(); ++j) {
    const double norm = tuple.col(j).norm();
    if (!(norm > 0.0)) throw UsageError("polar_sine: zero vector");
    denominator *= norm;
  }
  return wedge_norm(tuple) / denominator;
}

double n_sine(const MatrixXd& tuple) {
  const Index n = tuple.cols();
  if (n < 2) throw UsageError("n_sine: need at least two vectors");
  double denominator = 1.0;
  for (Index i = 0; i < n; ++i) {
    MatrixXd rest(tuple.rows(), n - 1);
    rest << tuple.leftCols(i), tuple.rightCols(n - 1 - i);
    const double w = wedge_norm(rest);
    if (!(w > 0.0)) throw DegenerateInput("n_sine: an (n-1)-subtuple is linearly dependent");
    denominator *= w;
  }
  return std::pow(wedge_norm(tuple), static_cast<double>(n - 1)) / denominator;
}

double hs_inner(const MatrixXd& a, const MatrixXd& b, double k) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("hs_inner: shape mismatch");
  if (!(k > 0.0)) throw UsageError("hs_inner: scale must be positive");
  return a.cwiseProduct(b).sum() / k;
}

StiefelFrame::StiefelFrame(MatrixXd a) : a_(std::move(a)) {
  if (a_.cols() < 1 || a_.cols() > a_.rows()) throw UsageError("StiefelFrame: need 1 <= k <= m");
  if (!a_.allFinite()) throw UsageError("StiefelFrame: non-finite entries");
  if (orthonormality_defect(a_) > kFrameTolerance) {
    throw UsageError("StiefelFrame: columns are not orthonormal within 1e-10");
  }
}

StiefelFrame StiefelFrame::rotated(const MatrixXd& q) const {
  if (q.rows() != k() || q.cols() != k()) throw UsageError("StiefelFrame::rotated: Q must be k x k");
  return StiefelFrame(a_ * q);
}

double ProjectionMatrix::inner(const ProjectionMatrix& other) const {
  if (other.m() != m()) throw UsageError("ProjectionMatrix::inner: size mismatch");
  return hs_inner(p_, other.p_, static_cast<double>(rank_));
}

double ProjectionMatrix::symmetry_defect() const { return (p_ - p_.transpose()).cwiseAbs().maxCoeff(); }

double ProjectionMatrix::idempotency_defect() const { return (p_ * p_ - p_).cwiseAbs().maxCoeff(); }

double ProjectionMatrix::trace_defect() const { return std::abs(p_.trace() - static_cast<double>(rank_)); }

double d_stiefel(std::span<const StiefelFrame> frames) {
  require_common_shape(frames, "d_stiefel");
  const double k = static_cast<double>(frames.front().k());
  return gram_det_sqrt(symmetric_gram(frames.size(), [&](std::size_t i, std::size_t j) {
    return hs_inner(frames[i].matrix(), frames[j].matrix(), k);
  }));
}

ProjectionMatrix projection_from_frame(const StiefelFrame& frame) {
  MatrixXd p = frame.matrix() * frame.matrix().transpose();
  p.triangularView<Eigen::StrictlyLower>() = p.transpose();
  return ProjectionMatrix(std::move(p), frame.k());
}

double d_grassmann_proj(std::span<const StiefelFrame> frames) {
  require_common_shape(frames, "d_grassmann_proj");
  std::vector<ProjectionMatrix> projections;
  projections.reserve(frames.size());
  for (const auto& f : frames) projections.push_back(projection_from_frame(f));
  return gram_det_sqrt(symmetric_gram(
      frames.size(), [&](std::size_t i, std::size_t j) { return projections[i].inner(projections[j]); }));
}

PrincipalAngles principal_angles(const StiefelFrame& a1, const StiefelFrame& a2) {
  const StiefelFrame pair[2] = {a1, a2};
  require_common_shape(pair, "principal_angles");
  const MatrixXd cross = a1.matrix().transpose() * a2.matrix();
  const SvdResult<double> svd = svd_small(cross);
  PrincipalAngles out;
  out.sigmas = svd.singular_values;
  out.thetas.resize(out.sigmas.size());
  for (Index j = 0; j < out.sigmas.size(); ++j) {
    if (out.sigmas(j) > 1.0 + 1e-8) throw NumericalFailure("principal_angles: singular value exceeds 1");
    out.thetas(j) = std::acos(std::clamp(out.sigmas(j), 0.0, 1.0));
  }
  return out;
}

double d_grassmann_quotient(const StiefelFrame& a1, const StiefelFrame& a2) {
  const PrincipalAngles angles = principal_angles(a1, a2);
  const double mean = angles.sigmas.sum() / static_cast<double>(a1.k());
  return std::sqrt(std::max(0.0, 1.0 - mean * mean));
}

MatrixXd optimal_alignment(const StiefelFrame& a1, const StiefelFrame& a2) {
  const StiefelFrame pair[2] = {a1, a2};
  require_common_shape(pair, "optimal_alignment");
  // A1^T A2 = Y S Z^T, and trace(A1^T A2 Q) is maximal for Q = Z Y^T.
  const SvdResult<double> svd = svd_small(MatrixXd(a1.matrix().transpose() * a2.matrix()));
  return svd.right_factors * svd.left_factors.transpose();
}

double d_classical_grassmann_2(const StiefelFrame& a1, const StiefelFrame& a2) {
  const PrincipalAngles angles = principal_angles(a1, a2);
  return std::sin(angles.thetas(angles.thetas.size() - 1));
}

MetricEvaluator<StiefelFrame> stiefel_metric(int n) {
  if (n < 2) throw UsageError("stiefel_metric: n must be >= 2");
  return {n, [](std::span<const StiefelFrame> f) { return d_stiefel(f); }, "stiefel"};
}

MetricEvaluator<StiefelFrame> grassmann_proj_metric(int n) {
  if (n < 2) throw UsageError("grassmann_proj_metric: n must be >= 2");
  return {n, [](std::span<const StiefelFrame> f) { return d_grassmann_proj(f); }, "grassmann-proj"};
}

MetricEvaluator<StiefelFrame> grassmann_quotient_metric() {
  return {2, [](std::span<const StiefelFrame> f) { return d_grassmann_quotient(f[0], f[1]); },
          "grassmann-quotient"};
}

MetricEvaluator<StiefelFrame> classical_grassmann_metric() {
  return {2, [](std::span<const StiefelFrame> f) { return d_classical_grassmann_2(f[0], f[1]); },
          "classical-grassmann"};
}

MatrixXd o2_element(bool reflection, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  MatrixXd q(2, 2);
  if (reflection) {
    q << c, s, s, -c;
  } else {
    q << c, -s, s, c;
  }
  return q;
}

namespace {

double aligned_stiefel(std::span<const StiefelFrame> frames, const std::vector<MatrixXd>& qs) {
  const double k = static_cast<double>(frames.front().k());
  std::vector<MatrixXd> rotated;
  rotated.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) rotated.push_back(frames[i].matrix() * qs[i]);
  return gram_det_sqrt(
      symmetric_gram(frames.size(), [&](std::size_t i, std::size_t j) { return hs_inner(rotated[i], rotated[j], k); }));
}

// Nearest orthogonal matrix (polar factor).
MatrixXd orthogonal_polar(const MatrixXd& m) {
  const SvdResult<double> svd = svd_small(m);
  return svd.left_factors * svd.right_factors.transpose();
}

}  // namespace

double grassmann_quotient_search(std::span<const StiefelFrame> frames, const AlignmentSearch& search) {
  require_common_shape(frames, "grassmann_quotient_search");
  const std::size_t n = frames.size();
  const Index k = frames.front().k();
  // d_stiefel is invariant under a common right factor, so Q_1 = I.
  std::vector<MatrixXd> qs(n, MatrixXd::Identity(k, k));

  if (k == 1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      for (std::size_t i = 1; i < n; ++i) qs[i](0, 0) = ((mask >> (i - 1)) & 1U) ? -1.0 : 1.0;
      best = std::min(best, aligned_stiefel(frames, qs));
    }
    return best;
  }

  const auto grid_size = static_cast<std::uint64_t>(2 * search.o2_steps);
  const double combos = std::pow(static_cast<double>(grid_size), static_cast<double>(n - 1));
  if (k == 2 && combos <= 2e6) {
    std::vector<MatrixXd> grid;
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < search.o2_steps; ++s) {
        grid.push_back(o2_element(r == 1, 2.0 * std::numbers::pi * s / search.o2_steps));
      }
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(n - 1, 0);
    for (;;) {
      for (std::size_t i = 1; i < n; ++i) qs[i] = grid[idx[i - 1]];
      best = std::min(best, aligned_stiefel(frames, qs));
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == grid.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
    return best;
  }

  Rng rng(search.seed);
  for (std::size_t i = 1; i < n; ++i) qs[i] = optimal_alignment(frames[0], frames[i]);
  double best = aligned_stiefel(frames, qs);
  double step = 0.5;
  for (int round = 0; round < search.rounds; ++round, step *= 0.2) {
    for (std::size_t i = 1; i < n; ++i) {
      for (int c = 0; c < search.random_candidates; ++c) {
        std::vector<MatrixXd> trial = qs;
        trial[i] = (c % 4 == 0) ? sample_orthogonal(rng, k)
                                : orthogonal_polar(qs[i] + step * sample_normal_matrix(rng, k, k));
        const double value = aligned_stiefel(frames, trial);
        if (value < best) {
          best = value;
          qs = std::move(trial);
        }
      }
    }
  }
  return best;
}

MetricEvaluator<StiefelFrame> grassmann_quotient_search_metric(int n, AlignmentSearch search) {
  if (n < 2) throw UsageError("grassmann_quotient_search_metric: n must be >= 2");
  return {n, [search](std::span<const StiefelFrame> f) { return grassmann_quotient_search(f, search); },
          "grassmann-quotient-n"};
}

double spectral_wedge_estimate(std::span<const StiefelFrame> frames, WedgeDualNorm norm, int samples,
                               std::uint64_t seed) {
  require_common_shape(frames, "spectral_wedge_estimate");
  if (samples < 1) throw UsageError("spectral_wedge_estimate: samples must be >= 1");
  const std::size_t n = frames.size();
  const Index m = frames.front().m();
  std::vector<MatrixXd> projections;
  for (const auto& f : frames) projections.push_back(projection_from_frame(f).matrix());

  const auto matrix_norm = [norm](const MatrixXd& f) {
    const VectorXd s = svd_small(f).singular_values;
    return norm == WedgeDualNorm::spectral ? s(0) : s.sum();
  };
  const auto ratio = [&](const std::vector<MatrixXd>& fs) {
    MatrixXd pairing(static_cast<Index>(n), static_cast<Index>(n));
    double denominator = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      denominator *= matrix_norm(fs[i]);
      for (std::size_t j = 0; j < n; ++j) {
        pairing(static_cast<Index>(i), static_cast<Index>(j)) = fs[i].cwiseProduct(projections[j]).sum();
      }
    }
    return denominator > 0.0 ? std::abs(det(pairing)) / denominator : 0.0;
  };

  double best = ratio(projections);
  Rng rng(seed);
  std::vector<MatrixXd> fs(n);
  for (int s = 0; s < samples; ++s) {
    for (auto& f : fs) f = sample_normal_matrix(rng, m, m);
    best = std::max(best, ratio(fs));
  }
  return best;
}

MetricEvaluator<StiefelFrame> spectral_wedge_metric(int n, WedgeDualNorm norm, int samples) {
  if (n < 2) throw UsageError("spectral_wedge_metric: n must be >= 2");
  return {n,
          [norm, samples](std::span<const StiefelFrame> f) {
            return spectral_wedge_estimate(f, norm, samples, 0xBB67AE8584CAA73BULL);
          },
          norm == WedgeDualNorm::spectral ? "grassmann-spectral-wedge" : "grassmann-nuclear-wedge"};
}

}  // namespace nmetric
