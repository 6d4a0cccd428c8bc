#include <doctest.h>

#include <numbers>

#include "nmetric/axioms.hpp"
#include "nmetric/exterior.hpp"
#include "nmetric/hypergraph.hpp"
#include "nmetric/manifolds.hpp"
#include "nmetric/registry.hpp"
#include "nmetric/vandermonde.hpp"

using namespace nmetric;

namespace {

PointSampler<Complex> complex_sampler() {
  return {[](std::uint64_t seed, std::size_t i) {
            Rng rng(substream_seed(seed, i));
            const double re = rng.normal();
            return Complex(re, rng.normal());
          },
          "complex normal"};
}

PointSampler<VectorXd> unit_sampler(int dim) {
  return {[dim](std::uint64_t seed, std::size_t i) {
            Rng rng(substream_seed(seed, i));
            return sample_unit_vector(rng, dim);
          },
          "unit"};
}

}  // namespace

TEST_CASE("semidefinite check") {
  const auto v = vandermonde_metric(3);
  const std::vector<Complex> z{1.0, 1.0, Complex(0, 1)};
  const auto r = check_semidefinite(v, std::span<const Complex>(z), 1e-9);
  CHECK(r.passed);
  CHECK(r.lhs == 0.0);

  const auto s = sphere_metric(2);
  const std::vector<VectorXd> uu{VectorXd::Unit(3, 0), VectorXd::Unit(3, 0)};
  CHECK(check_semidefinite(s, std::span<const VectorXd>(uu), 1e-9).passed);

  Hypergraph h(3, 4);
  h.add_edge({0, 1, 3});
  h.add_edge({1, 2, 3});
  h.add_edge({0, 2, 3});
  const auto hm = hyper_metric(h);
  const std::vector<int> vvw{0, 0, 2};
  CHECK(check_semidefinite(hm, std::span<const int>(vvw), 0.0).passed);

  const std::vector<Complex> distinct{0.0, 1.0, Complex(0, 1)};
  CHECK_THROWS_AS(check_semidefinite(v, std::span<const Complex>(distinct), 1e-9), UsageError);
  const std::vector<Complex> short_tuple{0.0, 0.0};
  CHECK_THROWS_AS(check_semidefinite(v, std::span<const Complex>(short_tuple), 1e-9), UsageError);
}

TEST_CASE("symmetry check") {
  const auto v = vandermonde_metric(3);
  const std::vector<Complex> z{0.0, 1.0, Complex(0, 1)};
  const std::vector<int> swap{1, 0, 2};
  CHECK(check_symmetry(v, std::span<const Complex>(z), std::span<const int>(swap), 1e-9).passed);
  const std::vector<int> identity{0, 1, 2};
  CHECK(check_symmetry(v, std::span<const Complex>(z), std::span<const int>(identity), 1e-9).margin == 0.0);

  const auto simplex = simplex_metric(3);
  std::vector<VectorXd> tri(3, VectorXd::Zero(2));
  tri[1] << 1, 0;
  tri[2] << 0, 1;
  const std::vector<int> cycle{1, 2, 0};
  const auto r = check_symmetry(simplex, std::span<const VectorXd>(tri), std::span<const int>(cycle), 1e-9);
  CHECK(r.passed);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.0));

  const std::vector<int> not_perm{0, 0, 1};
  CHECK_THROWS_AS(check_symmetry(v, std::span<const Complex>(z), std::span<const int>(not_perm), 1e-9), UsageError);
}

TEST_CASE("simplicial check at the equilateral equality case") {
  const auto v = vandermonde_metric(3);
  const double pi = std::numbers::pi;
  const std::vector<Complex> z{1.0, std::polar(1.0, 2 * pi / 3), std::polar(1.0, 4 * pi / 3)};
  const auto r = check_simplicial(v, std::span<const Complex>(z), Complex(0.0), 1e-9);
  CHECK(r.passed);
  CHECK(r.lhs == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::abs(r.margin) <= 1e-12);
}

TEST_CASE("simplicial check catches the tetrahedron") {
  const auto d = norm_product_metric(4);
  const auto x = regular_tetrahedron();
  const auto r = check_simplicial(d, std::span<const VectorXd>(x), VectorXd(VectorXd::Zero(3)), 1e-9);
  CHECK_FALSE(r.passed);
  CHECK(r.lhs == doctest::Approx(std::pow(8.0 / 3.0, 3)).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(4 * std::pow(8.0 / 3.0, 1.5)).epsilon(1e-12));
  REQUIRE(r.y.has_value());
  CHECK(r.tuple.size() == 4);
}

TEST_CASE("y equal to a tuple entry leaves exactly one nonzero term") {
  const auto v = vandermonde_metric(4);
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> z;
    for (int i = 0; i < 4; ++i) {
      const double re = rng.normal();
      z.emplace_back(re, rng.normal());
    }
    const auto r = check_simplicial(v, std::span<const Complex>(z), z[rng.below(4)], 0.0);
    CHECK(r.passed);
    CHECK(r.rhs == doctest::Approx(r.lhs).epsilon(1e-12));
  }
}

TEST_CASE("fuzz_metric finds nothing on the sphere and something for norm-product") {
  const auto report = fuzz_metric(sphere_metric(3), unit_sampler(4), 1000, 42, 1e-7);
  CHECK(report.violations.empty());
  CHECK(report.checks == 3000);
  CHECK(report.trials == 1000);

  const auto bad = fuzz_metric(norm_product_metric(4), norm_product_sampler(4, 3), 1000, 1, 1e-9);
  CHECK_FALSE(bad.violations.empty());
  for (const auto& v : bad.violations) {
    CHECK(v.axiom == Axiom::simplicial);
    CHECK(v.margin < 0.0);
    CHECK(v.y.has_value());
  }
  CHECK_THROWS_AS(fuzz_metric(sphere_metric(3), unit_sampler(4), 0, 42, 1e-7), UsageError);
}

TEST_CASE("violations are exactly the checks below -tol * scale") {
  const auto bad = fuzz_metric(norm_product_metric(4), norm_product_sampler(4, 3), 2000, 9, 1e-9);
  for (const auto& v : bad.violations) CHECK(v.margin < -1e-9 * v.scale);
  CHECK(bad.worst_margin <= bad.violations.front().relative_margin());
}

TEST_CASE("fuzz reports do not depend on thread count") {
  const auto one = fuzz_metric(vandermonde_metric(3), complex_sampler(), 500, 7, 1e-9);
  const auto four = fuzz_metric(vandermonde_metric(3), complex_sampler(), 500, 7, 1e-9, {4});
  CHECK(one.worst_margin == four.worst_margin);
  CHECK(one.checks == four.checks);
  const auto bad1 = fuzz_metric(norm_product_metric(4), norm_product_sampler(4, 3), 1000, 3, 1e-9);
  const auto bad3 = fuzz_metric(norm_product_metric(4), norm_product_sampler(4, 3), 1000, 3, 1e-9, {3});
  REQUIRE(bad1.violations.size() == bad3.violations.size());
  for (std::size_t i = 0; i < bad1.violations.size(); ++i) {
    CHECK(bad1.violations[i].trial == bad3.violations[i].trial);
    CHECK(bad1.violations[i].margin == bad3.violations[i].margin);
  }
}
