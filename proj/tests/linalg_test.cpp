#include <doctest.h>

#include "nmetric/error.hpp"
#include "nmetric/linalg.hpp"
#include "nmetric/rng.hpp"
#include "oracles.hpp"

using namespace nmetric;

namespace {

MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("det on small examples") {
  CHECK(det(MatrixXd::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(det(mat({{1, 1}, {1, 2}})) == doctest::Approx(1.0));
  CHECK(std::abs(det(mat({{1, 2}, {2, 4}}))) <= 1e-12);
  CHECK(det(mat({{0, 1}, {1, 0}})) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(det(MatrixXd::Ones(2, 3)), UsageError);
}

TEST_CASE("det agrees with cofactor expansion and is multiplicative") {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<Index>(1 + rng.below(6));
    const MatrixXd a = sample_normal_matrix(rng, n, n);
    const MatrixXd b = sample_normal_matrix(rng, n, n);
    const double ref = oracle::cofactor_det(a);
    CHECK(std::abs(det(a) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    const double ab = det(MatrixXd(a * b));
    const double prod = det(a) * det(b);
    CHECK(std::abs(ab - prod) <= 1e-9 * std::max(1.0, std::abs(prod)));
  }
}

TEST_CASE("gram_det_sqrt examples") {
  CHECK(gram_det_sqrt(MatrixXd::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(gram_det_sqrt(mat({{1, 1}, {1, 2}})) == doctest::Approx(1.0));
  CHECK(gram_det_sqrt(mat({{1, 1}, {1, 1}})) == 0.0);
  CHECK(gram_det_sqrt(MatrixXd(0, 0)) == 1.0);
  CHECK_THROWS_AS(gram_det_sqrt(mat({{1, 2}, {2, 1}})), InvalidGram);
  CHECK_THROWS_AS(gram_det_sqrt(mat({{1, 0.5}, {0.4, 1}})), UsageError);
}

TEST_CASE("gram_det_sqrt matches sqrt(det) on well-conditioned Gram matrices") {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const auto k = static_cast<Index>(1 + rng.below(5));
    const MatrixXd x = sample_normal_matrix(rng, k + 2, k);
    MatrixXd g = x.transpose() * x;
    g.triangularView<Eigen::StrictlyLower>() = g.transpose();
    const double ref = std::sqrt(std::max(0.0, oracle::lu_det(g)));
    CHECK(std::abs(gram_det_sqrt(g) - ref) <= 1e-9 * std::max(1.0, ref));
  }
}

TEST_CASE("svd_small examples") {
  CHECK(svd_small(mat({{1, 0}, {0, 0}})).singular_values.isApprox(Eigen::Vector2d(1, 0)));
  CHECK(svd_small(mat({{0, 1}, {1, 0}})).singular_values.isApprox(Eigen::Vector2d(1, 1)));
  CHECK(svd_small(mat({{3, 0}, {0, 2}})).singular_values.isApprox(Eigen::Vector2d(3, 2)));
  CHECK_THROWS_AS(svd_small(MatrixXd::Zero(65, 65)), CapacityError);
  MatrixXd bad = MatrixXd::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd_small(bad), UsageError);
}

TEST_CASE("svd_small reconstructs, is orthogonal and matches Eigen") {
  Rng rng(13);
  for (int t = 0; t < 1000; ++t) {
    const auto r = static_cast<Index>(1 + rng.below(8));
    const auto c = static_cast<Index>(1 + rng.below(8));
    MatrixXd m = sample_normal_matrix(rng, r, c);
    if (t % 7 == 0 && c > 1) m.col(c - 1) = m.col(0);  // planted rank deficiency
    const SvdResult<double> s = svd_small(m);
    const MatrixXd rebuilt = s.left_factors * s.singular_values.asDiagonal() * s.right_factors.transpose();
    const double norm = std::max(1.0, m.norm());
    CHECK((rebuilt - m).cwiseAbs().maxCoeff() <= 1e-12 * norm);
    CHECK(orthonormality_defect(s.left_factors) <= 1e-12);
    CHECK(orthonormality_defect(s.right_factors) <= 1e-12);
    for (Index i = 1; i < s.singular_values.size(); ++i) CHECK(s.singular_values(i) <= s.singular_values(i - 1));
    CHECK((s.singular_values - oracle::singular_values(m)).cwiseAbs().maxCoeff() <= 1e-12 * norm);
  }
}
