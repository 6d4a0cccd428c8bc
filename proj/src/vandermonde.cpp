#include "nmetric/vandermonde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace nmetric {

namespace {

void require_arity_at_least_two(std::size_t n, const char* what) {
  if (n < 2) throw UsageError(std::string(what) + ": need at least two points");
}

double real_vandermonde_abs(std::span<const VectorXd> points, Index component) {
  double product = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      product *= std::abs(points[i](component) - points[j](component));
    }
  }
  return product;
}

// Coefficients of prod_r (sum_i v_r[i] t_i) keyed by the sorted multiset of
// variable indices. The coefficient of t^S is the symmetrized product
// sum over arrangements of S of prod_r v_r[S_r].
using Polynomial = std::map<std::vector<int>, double>;

void multiply_linear_form(Polynomial& poly, const VectorXd& v) {
  Polynomial next;
  for (const auto& [monomial, c] : poly) {
    for (Index i = 0; i < v.size(); ++i) {
      if (v(i) == 0.0) continue;
      std::vector<int> grown = monomial;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), static_cast<int>(i)), static_cast<int>(i));
      next[grown] += c * v(i);
    }
  }
  poly = std::move(next);
}

// Next permutation in lexicographic order; flips `sign` by the parity of the
// transpositions performed. Returns false after the last permutation.
bool next_permutation_with_sign(std::vector<int>& perm, int& sign) {
  const std::size_t n = perm.size();
  if (n < 2) return false;
  std::size_t i = n - 1;
  while (i > 0 && perm[i - 1] >= perm[i]) --i;
  if (i == 0) return false;
  std::size_t j = n - 1;
  while (perm[j] <= perm[i - 1]) --j;
  std::swap(perm[i - 1], perm[j]);
  std::reverse(perm.begin() + static_cast<std::ptrdiff_t>(i), perm.end());
  const std::size_t reversed_swaps = (n - i) / 2;
  if ((1 + reversed_swaps) % 2 == 1) sign = -sign;
  return true;
}

}  // namespace

Complex vandermonde_value(std::span<const Complex> z) {
  require_arity_at_least_two(z.size(), "vandermonde_value");
  Complex product(1.0, 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) product *= z[i] - z[j];
  }
  return product;
}

double d_vandermonde(std::span<const Complex> z) {
  require_arity_at_least_two(z.size(), "d_vandermonde");
  double product = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) product *= std::abs(z[i] - z[j]);
  }
  return product;
}

MetricEvaluator<Complex> vandermonde_metric(int n) {
  if (n < 2) throw UsageError("vandermonde_metric: n must be >= 2");
  return {n, [](std::span<const Complex> z) { return d_vandermonde(z); }, "vandermonde"};
}

EqualityQuadruple equality_family(EqualityFamilyParams params) {
  const double q = params.q;
  const double s = params.s;
  if (!(q > 0.0) || !(s > 0.0) || !std::isfinite(q) || !std::isfinite(s)) {
    throw UsageError("equality_family: q and s must be positive and finite");
  }
  EqualityQuadruple quad;
  quad.y = Complex(0.0, 0.0);
  quad.z1 = Complex(1.0, 0.0);
  quad.z2 = Complex(-1.0, std::sqrt(q * (1.0 + s))) / s;
  quad.z3 = Complex(-1.0, -std::sqrt((1.0 + s) / q)) / s;
  return quad;
}

double equality_residual(const EqualityQuadruple& quad) {
  const Complex full[3] = {quad.z1, quad.z2, quad.z3};
  const Complex at1[3] = {quad.y, quad.z2, quad.z3};
  const Complex at2[3] = {quad.z1, quad.y, quad.z3};
  const Complex at3[3] = {quad.z1, quad.z2, quad.y};
  const double lhs = d_vandermonde(full);
  const double rhs = d_vandermonde(at1) + d_vandermonde(at2) + d_vandermonde(at3);
  return std::abs(lhs - rhs) / std::max(lhs, rhs);
}

double weighted_simplicial_margin(std::span<const Complex> z, Complex y, int k) {
  require_arity_at_least_two(z.size(), "weighted_simplicial_margin");
  if (k < 0 || k > static_cast<int>(z.size()) - 1) {
    throw UsageError("weighted_simplicial_margin: k must lie in [0, n-1]");
  }
  const double lhs = std::pow(std::abs(y), k) * d_vandermonde(z);
  std::vector<Complex> replaced(z.begin(), z.end());
  double rhs = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    replaced[i] = y;
    rhs += std::pow(std::abs(z[i]), k) * d_vandermonde(replaced);
    replaced[i] = z[i];
  }
  return rhs - lhs;
}

double p_norm(const VectorXd& v, double p) {
  if (!(p >= 1.0)) throw UsageError("p_norm: exponent must be >= 1");
  if (std::isinf(p)) return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  double sum = 0.0;
  for (Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v(i)), p);
  return std::pow(sum, 1.0 / p);
}

MetricEvaluator<VectorXd> lift_componentwise(int n, int k, double p) {
  if (n < 2) throw UsageError("lift_componentwise: n must be >= 2");
  if (k < 1) throw UsageError("lift_componentwise: k must be >= 1");
  if (!(p >= 1.0)) throw UsageError("lift_componentwise: p < 1 is not a monotone norm");
  return {n,
          [k, p](std::span<const VectorXd> x) {
            VectorXd parts(k);
            for (const auto& point : x) {
              if (point.size() != k) throw UsageError("lift_componentwise: point dimension mismatch");
            }
            for (Index c = 0; c < k; ++c) parts(c) = real_vandermonde_abs(x, c);
            return p_norm(parts, p);
          },
          "lift"};
}

void DiscreteMeasureSpace::validate() const {
  if (weights.empty()) throw UsageError("DiscreteMeasureSpace: no atoms");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("DiscreteMeasureSpace: weights must be positive");
  }
}

double d_lp_discrete(std::span<const VectorXd> samples, const DiscreteMeasureSpace& space, double p) {
  require_arity_at_least_two(samples.size(), "d_lp_discrete");
  space.validate();
  if (!(p >= 1.0) || std::isinf(p)) throw UsageError("d_lp_discrete: p must be finite and >= 1");
  const auto atoms = static_cast<Index>(space.atoms());
  for (const auto& f : samples) {
    if (f.size() != atoms) throw UsageError("d_lp_discrete: sample length differs from atom count");
  }
  double sum = 0.0;
  for (Index j = 0; j < atoms; ++j) {
    sum += space.weights[static_cast<std::size_t>(j)] * std::pow(real_vandermonde_abs(samples, j), p);
  }
  return std::pow(sum, 1.0 / p);
}

MetricEvaluator<VectorXd> lp_discrete_metric(int n, DiscreteMeasureSpace space, double p) {
  if (n < 2) throw UsageError("lp_discrete_metric: n must be >= 2");
  space.validate();
  if (!(p >= 1.0) || std::isinf(p)) throw UsageError("lp_discrete_metric: p must be finite and >= 1");
  return {n, [space = std::move(space), p](std::span<const VectorXd> f) { return d_lp_discrete(f, space, p); },
          "lp-discrete"};
}

// ---------------------------------------------------------------------------

SymmetricTensorMap::SymmetricTensorMap(int n, int dim_in, int dim_out)
    : n_(n), order_(n * (n - 1) / 2), dim_in_(dim_in), dim_out_(dim_out) {
  if (n < 2) throw UsageError("SymmetricTensorMap: n must be >= 2");
  if (dim_in < 1 || dim_out < 1) throw UsageError("SymmetricTensorMap: dimensions must be >= 1");
}

SymmetricTensorMap SymmetricTensorMap::real_product(int n) {
  SymmetricTensorMap a(n, 1, 1);
  a.set_coefficient(0, std::vector<int>(static_cast<std::size_t>(a.order()), 0), 1.0);
  return a;
}

SymmetricTensorMap SymmetricTensorMap::complex_product(int n) {
  // With q arguments contributing their imaginary part the symmetrized
  // product is the elementary symmetric term e_q, weighted by i^q.
  SymmetricTensorMap a(n, 2, 2);
  const int m = a.order();
  for (int q = 0; q <= m; ++q) {
    Multiset s(static_cast<std::size_t>(m - q), 0);
    s.insert(s.end(), static_cast<std::size_t>(q), 1);
    static constexpr double kRe[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kIm[4] = {0.0, 1.0, 0.0, -1.0};
    if (kRe[q % 4] != 0.0) a.set_coefficient(0, s, kRe[q % 4]);
    if (kIm[q % 4] != 0.0) a.set_coefficient(1, s, kIm[q % 4]);
  }
  return a;
}

SymmetricTensorMap SymmetricTensorMap::random(int n, int dim_in, int dim_out, Rng& rng) {
  SymmetricTensorMap a(n, dim_in, dim_out);
  // Enumerate sorted multisets of size M over {0..dx-1} in lexicographic order.
  Multiset s(static_cast<std::size_t>(a.order()), 0);
  for (;;) {
    for (int out = 0; out < dim_out; ++out) a.set_coefficient(out, s, rng.normal());
    int pos = a.order() - 1;
    while (pos >= 0 && s[static_cast<std::size_t>(pos)] == dim_in - 1) --pos;
    if (pos < 0) break;
    const int next = s[static_cast<std::size_t>(pos)] + 1;
    std::fill(s.begin() + pos, s.end(), next);
  }
  return a;
}

SymmetricTensorMap::Multiset SymmetricTensorMap::canonical(std::span<const int> multiset) const {
  if (static_cast<int>(multiset.size()) != order_) {
    throw UsageError("SymmetricTensorMap: multiset must have M = n(n-1)/2 entries");
  }
  Multiset s(multiset.begin(), multiset.end());
  for (int i : s) {
    if (i < 0 || i >= dim_in_) throw UsageError("SymmetricTensorMap: multiset index out of range");
  }
  std::sort(s.begin(), s.end());
  return s;
}

double SymmetricTensorMap::coefficient(int out, std::span<const int> multiset) const {
  if (out < 0 || out >= dim_out_) throw UsageError("SymmetricTensorMap: output index out of range");
  const auto it = coefficients_.find(canonical(multiset));
  return it == coefficients_.end() ? 0.0 : it->second(out);
}

void SymmetricTensorMap::set_coefficient(int out, std::span<const int> multiset, double value) {
  if (out < 0 || out >= dim_out_) throw UsageError("SymmetricTensorMap: output index out of range");
  if (!std::isfinite(value)) throw UsageError("SymmetricTensorMap: coefficient must be finite");
  auto [it, inserted] = coefficients_.try_emplace(canonical(multiset), VectorXd::Zero(dim_out_));
  it->second(out) = value;
}

std::vector<SymmetricTensorMap::Multiset> SymmetricTensorMap::support() const {
  std::vector<Multiset> out;
  for (const auto& [s, c] : coefficients_) {
    if (!c.isZero(0.0)) out.push_back(s);
  }
  return out;
}

VectorXd SymmetricTensorMap::apply(std::span<const VectorXd> args) const {
  std::vector<int> powers(args.size(), 1);
  return apply_powers(args, powers);
}

VectorXd SymmetricTensorMap::apply_powers(std::span<const VectorXd> bases, std::span<const int> powers) const {
  if (bases.size() != powers.size()) throw UsageError("SymmetricTensorMap: bases/powers length mismatch");
  int total = 0;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    if (powers[j] < 0) throw UsageError("SymmetricTensorMap: negative power");
    if (bases[j].size() != dim_in_) throw UsageError("SymmetricTensorMap: argument dimension mismatch");
    total += powers[j];
  }
  if (total != order_) {
    throw UsageError("SymmetricTensorMap: expected " + std::to_string(order_) + " arguments, got " +
                     std::to_string(total));
  }
  Polynomial poly{{{}, 1.0}};
  for (std::size_t j = 0; j < bases.size(); ++j) {
    for (int r = 0; r < powers[j]; ++r) multiply_linear_form(poly, bases[j]);
  }
  VectorXd out = VectorXd::Zero(dim_out_);
  for (const auto& [s, c] : coefficients_) {
    const auto it = poly.find(s);
    if (it != poly.end()) out += it->second * c;
  }
  return out;
}

VectorXd tensor_apply(const SymmetricTensorMap& a, std::span<const VectorXd> args) { return a.apply(args); }

VectorXd generalized_vandermonde(const SymmetricTensorMap& a, std::span<const VectorXd> x) {
  if (static_cast<int>(x.size()) != a.arity()) throw UsageError("generalized_vandermonde: arity mismatch");
  std::vector<VectorXd> differences;
  differences.reserve(static_cast<std::size_t>(a.order()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) differences.push_back(x[i] - x[j]);
  }
  return a.apply(differences);
}

VectorXd expansion_rhs(const SymmetricTensorMap& a, std::span<const VectorXd> x) {
  const auto n = static_cast<int>(x.size());
  if (n != a.arity()) throw UsageError("expansion_rhs: arity mismatch");
  if (n > 8) throw CapacityError("expansion_rhs: n > 8 (factorial cost)");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  VectorXd sum = VectorXd::Zero(a.dim_out());
  do {
    // perm[j] = pi(j) - 1 is the repetition count of x_j.
    sum += static_cast<double>(sign) * a.apply_powers(x, perm);
  } while (next_permutation_with_sign(perm, sign));
  return sum;
}

double sum_equality_margin(const SymmetricTensorMap& a, std::span<const VectorXd> x, const VectorXd& xi) {
  const VectorXd v = generalized_vandermonde(a, x);
  std::vector<VectorXd> replaced(x.begin(), x.end());
  VectorXd sum = VectorXd::Zero(a.dim_out());
  for (std::size_t i = 0; i < x.size(); ++i) {
    replaced[i] = xi;
    sum += generalized_vandermonde(a, replaced);
    replaced[i] = x[i];
  }
  return (v - sum).norm();
}

double d_generalized(const SymmetricTensorMap& a, double p, std::span<const VectorXd> x) {
  return p_norm(generalized_vandermonde(a, x), p);
}

MetricEvaluator<VectorXd> generalized_metric(SymmetricTensorMap a, double p) {
  if (!(p >= 1.0)) throw UsageError("generalized_metric: p must be >= 1");
  const int n = a.arity();
  return {n, [a = std::move(a), p](std::span<const VectorXd> x) { return d_generalized(a, p, x); },
          "gen-vandermonde"};
}

double d_norm_product(std::span<const VectorXd> x) {
  require_arity_at_least_two(x.size(), "d_norm_product");
  double product = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i].size() != x[j].size()) throw UsageError("d_norm_product: dimension mismatch");
      product *= (x[i] - x[j]).norm();
    }
  }
  return product;
}

MetricEvaluator<VectorXd> norm_product_metric(int n) {
  if (n < 2) throw UsageError("norm_product_metric: n must be >= 2");
  return {n, [](std::span<const VectorXd> x) { return d_norm_product(x); }, "norm-product"};
}

std::vector<VectorXd> regular_tetrahedron() {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  std::vector<VectorXd> v(4, VectorXd(3));
  v[0] << 1.0, 0.0, 0.0;
  v[1] << -1.0 / 3.0, 2.0 * r2 / 3.0, 0.0;
  v[2] << -1.0 / 3.0, -r2 / 3.0, r6 / 3.0;
  v[3] << -1.0 / 3.0, -r2 / 3.0, -r6 / 3.0;
  return v;
}

}  // namespace nmetric
