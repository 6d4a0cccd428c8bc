#include <doctest.h>

#include <numbers>

#include "nmetric/vandermonde.hpp"
#include "oracles.hpp"

using namespace nmetric;

namespace {

std::vector<VectorXd> reals(std::initializer_list<double> xs) {
  std::vector<VectorXd> out;
  for (double x : xs) out.push_back(VectorXd::Constant(1, x));
  return out;
}

ComplexTuple random_complex(Rng& rng, int n) {
  ComplexTuple z;
  for (int i = 0; i < n; ++i) {
    const double re = rng.normal();
    z.emplace_back(re, rng.normal());
  }
  return z;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("vandermonde_value examples") {
  const ComplexTuple a{0.0, 1.0};
  CHECK(vandermonde_value(a) == Complex(-1.0, 0.0));
  const ComplexTuple b{0.0, 1.0, 3.0};
  CHECK(vandermonde_value(b) == Complex(-6.0, 0.0));
  const ComplexTuple c{2.0, Complex(0, 1), 2.0};
  CHECK(vandermonde_value(c) == Complex(0.0, 0.0));
}

TEST_CASE("vandermonde_value equals the Vandermonde matrix determinant") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const ComplexTuple z = random_complex(rng, n);
    const Complex sign = (n * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const Complex ref = sign * oracle::vandermonde_matrix_det(z);
    CHECK(std::abs(vandermonde_value(z) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("d_vandermonde examples") {
  const ComplexTuple a{0.0, 1.0, Complex(0, 1)};
  CHECK(d_vandermonde(a) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const double pi = std::numbers::pi;
  const ComplexTuple roots{1.0, std::polar(1.0, 2 * pi / 3), std::polar(1.0, 4 * pi / 3)};
  CHECK(d_vandermonde(roots) == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-14));
  const ComplexTuple rep{5.0, 5.0, 7.0};
  CHECK(d_vandermonde(rep) == 0.0);
}

TEST_CASE("d_vandermonde is definite and its square is the product over ordered pairs") {
  Rng rng(22);
  int checked = 0;
  while (checked < 10000) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const ComplexTuple z = random_complex(rng, n);
    double min_sep = std::numeric_limits<double>::infinity();
    double ordered = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        min_sep = std::min(min_sep, std::abs(z[i] - z[j]));
        ordered *= std::abs(z[i] - z[j]);
      }
    }
    if (min_sep < 1e-3) continue;
    ++checked;
    const double d = d_vandermonde(z);
    CHECK(d > 0.0);
    CHECK(rel(d * d, ordered) <= 1e-12);
  }
}

TEST_CASE("equality family") {
  const auto roots = equality_family({1.0, 2.0});
  CHECK(std::abs(roots.z2 - Complex(-0.5, std::sqrt(3.0) / 2)) <= 1e-15);
  CHECK(std::abs(roots.z3 - Complex(-0.5, -std::sqrt(3.0) / 2)) <= 1e-15);
  CHECK(roots.y == Complex(0.0));
  CHECK(roots.z1 == Complex(1.0));

  const auto q1s1 = equality_family({1.0, 1.0});
  CHECK(std::abs(q1s1.z2 - Complex(-1.0, std::sqrt(2.0))) <= 1e-15);
  CHECK(std::abs(q1s1.z3 - Complex(-1.0, -std::sqrt(2.0))) <= 1e-15);
  const auto q2s1 = equality_family({2.0, 1.0});
  CHECK(std::abs(q2s1.z2 - Complex(-1.0, 2.0)) <= 1e-15);
  CHECK(std::abs(q2s1.z3 - Complex(-1.0, -1.0)) <= 1e-15);

  for (double q : {0.5, 1.0, 2.0}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const auto quad = equality_family({q, s});
      CHECK(equality_residual(quad) <= 1e-12);
      // Independent substitution: each replaced term straight from the product formula.
      const auto side = [](Complex a, Complex b, Complex c) { return std::abs((a - b) * (a - c) * (b - c)); };
      const double lhs = side(quad.z1, quad.z2, quad.z3);
      const double rhs = side(quad.y, quad.z2, quad.z3) + side(quad.z1, quad.y, quad.z3) + side(quad.z1, quad.z2, quad.y);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    }
  }
  CHECK_THROWS_AS(equality_family({0.0, 1.0}), UsageError);
  CHECK_THROWS_AS(equality_family({1.0, -1.0}), UsageError);
}

TEST_CASE("weighted simplicial inequality") {
  const ComplexTuple a{1.0, 2.0, 3.0};
  CHECK(weighted_simplicial_margin(a, 0.0, 2) >= 0.0);
  const ComplexTuple b{1.0, Complex(0, 1), -1.0};
  CHECK(weighted_simplicial_margin(b, 2.0, 1) >= 0.0);
  CHECK(weighted_simplicial_margin(b, 2.0, 0) ==
        doctest::Approx(d_vandermonde(ComplexTuple{2.0, Complex(0, 1), -1.0}) +
                        d_vandermonde(ComplexTuple{1.0, 2.0, -1.0}) +
                        d_vandermonde(ComplexTuple{1.0, Complex(0, 1), 2.0}) - d_vandermonde(b)));
  CHECK_THROWS_AS(weighted_simplicial_margin(b, 2.0, 3), UsageError);
  CHECK_THROWS_AS(weighted_simplicial_margin(b, 2.0, -1), UsageError);

  Rng rng(23);
  for (int t = 0; t < 2000; ++t) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const ComplexTuple z = random_complex(rng, n);
    const double re = rng.normal();
    const Complex y(re, rng.normal());
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    double scale = std::pow(std::abs(y), k) * d_vandermonde(z);
    CHECK(weighted_simplicial_margin(z, y, k) >= -1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("triangles in the unit circle: product of sides <= sum of sides") {
  Rng rng(24);
  for (int t = 0; t < 1000; ++t) {
    const Complex a = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
    const Complex b = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
    const Complex c = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
    const double x = std::abs(a - b);
    const double y = std::abs(b - c);
    const double z = std::abs(a - c);
    CHECK(x * y * z <= x + y + z + 1e-12);
  }
}

TEST_CASE("componentwise lift") {
  std::vector<VectorXd> pts(3, VectorXd(2));
  pts[0] << 0, 0;
  pts[1] << 1, 1;
  pts[2] << 2, 3;
  const auto lift_inf = lift_componentwise(3, 2, std::numeric_limits<double>::infinity());
  CHECK(lift_inf(pts) == doctest::Approx(6.0));
  const auto lift_1 = lift_componentwise(3, 2, 1.0);
  CHECK(lift_1(pts) == doctest::Approx(8.0));

  const auto single = lift_componentwise(3, 1, 2.0);
  const auto r = reals({0.5, -1.0, 2.0});
  CHECK(single(r) == doctest::Approx(d_vandermonde(ComplexTuple{0.5, -1.0, 2.0})));
  pts[2] = pts[0];
  CHECK(lift_inf(pts) == 0.0);
  CHECK_THROWS_AS(lift_componentwise(3, 2, 0.5), UsageError);
}

TEST_CASE("discrete L^p") {
  const DiscreteMeasureSpace two{{1.0, 1.0}};
  std::vector<VectorXd> fg(2, VectorXd(2));
  fg[0] << 0, 0;
  fg[1] << 1, 2;
  CHECK(d_lp_discrete(fg, two, 1.0) == doctest::Approx(3.0));
  fg[1] = fg[0];
  CHECK(d_lp_discrete(fg, two, 1.0) == 0.0);

  const DiscreteMeasureSpace one{{1.0}};
  const auto r = reals({0.0, 1.0, 3.0});
  CHECK(d_lp_discrete(r, one, 1.0) == doctest::Approx(6.0));
  CHECK(d_lp_discrete(r, one, 3.0) == doctest::Approx(6.0));

  std::vector<VectorXd> mismatch{VectorXd::Zero(2), VectorXd::Zero(3)};
  CHECK_THROWS_AS(d_lp_discrete(mismatch, two, 1.0), UsageError);
  const DiscreteMeasureSpace zero_weight{{1.0, 0.0}};
  CHECK_THROWS_AS(zero_weight.validate(), UsageError);
}

TEST_CASE("tensor_apply") {
  const auto prod = SymmetricTensorMap::real_product(3);
  CHECK(prod.order() == 3);
  const auto args = reals({2.0, 3.0, 5.0});
  CHECK(tensor_apply(prod, args)(0) == doctest::Approx(30.0));

  Rng rng(25);
  const auto a = SymmetricTensorMap::random(3, 2, 2, rng);
  std::vector<VectorXd> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(sample_normal_vector(rng, 2));
  const VectorXd base = tensor_apply(a, xs);
  CHECK((base - oracle::tensor_apply_bruteforce(a, xs)).norm() <= 1e-12 * std::max(1.0, base.norm()));
  std::swap(xs[0], xs[2]);
  CHECK((tensor_apply(a, xs) - base).norm() <= 1e-12 * std::max(1.0, base.norm()));
  xs[1].setZero();
  CHECK(tensor_apply(a, xs).norm() == 0.0);
  xs.pop_back();
  CHECK_THROWS_AS(tensor_apply(a, xs), UsageError);
}

TEST_CASE("tensor_apply agrees with brute-force multilinear sums") {
  Rng rng(26);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int dx = 1 + static_cast<int>(rng.below(3));
    const int dy = 1 + static_cast<int>(rng.below(2));
    const auto a = SymmetricTensorMap::random(n, dx, dy, rng);
    std::vector<VectorXd> args;
    for (int i = 0; i < a.order(); ++i) args.push_back(sample_normal_vector(rng, dx));
    const VectorXd got = tensor_apply(a, args);
    const VectorXd ref = oracle::tensor_apply_bruteforce(a, args);
    CHECK((got - ref).norm() <= 1e-10 * std::max(1.0, ref.norm()));
  }
}

TEST_CASE("generalized Vandermonde examples") {
  const auto prod = SymmetricTensorMap::real_product(3);
  const auto x = reals({0.0, 1.0, 3.0});
  CHECK(generalized_vandermonde(prod, x)(0) == doctest::Approx(6.0));
  CHECK(expansion_rhs(prod, x)(0) == doctest::Approx(6.0));
  CHECK(d_generalized(prod, 2.0, x) == doctest::Approx(6.0));
  const VectorXd xi = VectorXd::Constant(1, 2.0);
  CHECK(sum_equality_margin(prod, x, xi) <= 1e-12);
  CHECK(sum_equality_margin(prod, x, x[0]) <= 1e-12);
  const auto rep = reals({0.0, 1.0, 0.0});
  CHECK(generalized_vandermonde(prod, rep).norm() == 0.0);

  SymmetricTensorMap identity(2, 3, 3);
  for (int i = 0; i < 3; ++i) identity.set_coefficient(i, std::vector<int>{i}, 1.0);
  Rng rng(27);
  std::vector<VectorXd> pair{sample_normal_vector(rng, 3), sample_normal_vector(rng, 3)};
  CHECK((generalized_vandermonde(identity, pair) - (pair[1] - pair[0])).norm() <= 1e-15);
  CHECK((expansion_rhs(identity, pair) - (pair[1] - pair[0])).norm() <= 1e-15);

  std::vector<VectorXd> nine(9, VectorXd::Zero(1));
  CHECK_THROWS_AS(expansion_rhs(SymmetricTensorMap::real_product(9), nine), CapacityError);
}

TEST_CASE("complex-product tensor reproduces d_vandermonde") {
  Rng rng(28);
  for (int n = 2; n <= 4; ++n) {
    const auto a = SymmetricTensorMap::complex_product(n);
    for (int t = 0; t < 100; ++t) {
      const ComplexTuple z = random_complex(rng, n);
      std::vector<VectorXd> x;
      for (const auto& c : z) x.push_back(Eigen::Vector2d(c.real(), c.imag()));
      const double ref = d_vandermonde(z);
      CHECK(rel(d_generalized(a, 2.0, x), ref) <= 1e-12);
    }
  }
}

TEST_CASE("expansion and sum identities on random tensors") {
  Rng rng(29);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 100; ++t) {
      const int dx = 1 + static_cast<int>(rng.below(3));
      const int dy = 1 + static_cast<int>(rng.below(2));
      const auto a = SymmetricTensorMap::random(n, dx, dy, rng);
      std::vector<VectorXd> x;
      for (int i = 0; i < n; ++i) x.push_back(sample_normal_vector(rng, dx));
      const VectorXd v = generalized_vandermonde(a, x);
      const VectorXd e = expansion_rhs(a, x);
      CHECK((v - e).norm() <= 1e-10 * std::max(1.0, v.norm()));
      const VectorXd xi = sample_normal_vector(rng, dx);
      CHECK(sum_equality_margin(a, x, xi) <= 1e-10 * std::max(1.0, v.norm()));
    }
  }
}

TEST_CASE("norm product and tetrahedron") {
  const auto x = regular_tetrahedron();
  for (const auto& v : x) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) CHECK((x[i] - x[j]).squaredNorm() == doctest::Approx(8.0 / 3.0));
  }
  CHECK(d_norm_product(x) == doctest::Approx(std::pow(8.0 / 3.0, 3)).epsilon(1e-14));
}
