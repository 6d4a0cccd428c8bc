#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "nmetric/axioms.hpp"
#include "nmetric/linalg.hpp"
#include "nmetric/rng.hpp"

namespace nmetric {

using Complex = std::complex<double>;
using ComplexTuple = std::vector<Complex>;

/// prod_{i<j} (z_i - z_j), the Vandermonde determinant.
Complex vandermonde_value(std::span<const Complex> z);

/// |prod_{i<j} (z_i - z_j)|: a definite n-metric on C.
double d_vandermonde(std::span<const Complex> z);

MetricEvaluator<Complex> vandermonde_metric(int n);

struct EqualityFamilyParams {
  double q = 1.0;
  double s = 1.0;
};

struct EqualityQuadruple {
  Complex y, z1, z2, z3;
};

/// Normalized quadruples (y = 0, z1 = 1) for which the n = 3 simplicial
/// inequality of d_vandermonde is an equality.
EqualityQuadruple equality_family(EqualityFamilyParams params);

/// |lhs - rhs| / max(lhs, rhs) of the simplicial inequality at `quad`.
double equality_residual(const EqualityQuadruple& quad);

/// rhs - lhs of |y|^k d_V(z) <= sum_i |z_i|^k d_V(z with y at slot i).
double weighted_simplicial_margin(std::span<const Complex> z, Complex y, int k);

/// Monotone p-norm of a nonnegative vector, p in [1, inf].
double p_norm(const VectorXd& v, double p);

/// p-norm of the componentwise Vandermonde distances of points of R^k.
MetricEvaluator<VectorXd> lift_componentwise(int n, int k, double p);

struct DiscreteMeasureSpace {
  std::vector<double> weights;  // mu_1..mu_J, all > 0

  std::size_t atoms() const { return weights.size(); }
  void validate() const;
};

/// (sum_j mu_j prod_{i<l} |f_i(j) - f_l(j)|^p)^{1/p}; each sample holds the
/// values of one function on the J atoms.
double d_lp_discrete(std::span<const VectorXd> samples, const DiscreteMeasureSpace& space, double p);

MetricEvaluator<VectorXd> lp_discrete_metric(int n, DiscreteMeasureSpace space, double p);

/// Symmetric M-linear map (R^dx)^M -> R^dy with M = n(n-1)/2, stored as one
/// coefficient per (output, multiset of input coordinates). Coordinates are
/// 0-based here; multisets are kept sorted.
class SymmetricTensorMap {
 public:
  using Multiset = std::vector<int>;

  SymmetricTensorMap(int n, int dim_in, int dim_out);

  /// dx = dy = 1 with coefficient 1: A(a_1, ..., a_M) = a_1 * ... * a_M.
  static SymmetricTensorMap real_product(int n);
  /// dx = dy = 2, R^2 read as C: A(v_1, ..., v_M) = v_1 * ... * v_M in C.
  static SymmetricTensorMap complex_product(int n);
  /// Independent standard normal coefficients.
  static SymmetricTensorMap random(int n, int dim_in, int dim_out, Rng& rng);

  int arity() const { return n_; }
  int order() const { return order_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }

  double coefficient(int out, std::span<const int> multiset) const;
  void set_coefficient(int out, std::span<const int> multiset, double value);

  /// Multisets with at least one nonzero coefficient, in lexicographic order.
  std::vector<Multiset> support() const;

  /// Evaluation on M explicit arguments.
  VectorXd apply(std::span<const VectorXd> args) const;

  /// Evaluation on bases[j] repeated powers[j] times (sum of powers = M).
  VectorXd apply_powers(std::span<const VectorXd> bases, std::span<const int> powers) const;

 private:
  Multiset canonical(std::span<const int> multiset) const;

  int n_;
  int order_;
  int dim_in_;
  int dim_out_;
  // multiset -> coefficients for each output coordinate
  std::map<Multiset, VectorXd> coefficients_;
};

VectorXd tensor_apply(const SymmetricTensorMap& a, std::span<const VectorXd> args);

/// A(prod_{j<i} (x_i - x_j)).
VectorXd generalized_vandermonde(const SymmetricTensorMap& a, std::span<const VectorXd> x);

/// sum over permutations pi of sign(pi) A(prod_j x_j^{pi(j)-1}); n <= 8.
VectorXd expansion_rhs(const SymmetricTensorMap& a, std::span<const VectorXd> x);

/// || V(x) - sum_i V(x with xi at slot i) ||_2.
double sum_equality_margin(const SymmetricTensorMap& a, std::span<const VectorXd> x, const VectorXd& xi);

double d_generalized(const SymmetricTensorMap& a, double p, std::span<const VectorXd> x);

MetricEvaluator<VectorXd> generalized_metric(SymmetricTensorMap a, double p);

/// prod_{i<j} ||x_i - x_j||_2. Not a pseudo n-metric in dimension >= 3.
double d_norm_product(std::span<const VectorXd> x);

MetricEvaluator<VectorXd> norm_product_metric(int n);

/// Vertices of the regular tetrahedron inscribed in the unit sphere of R^3.
std::vector<VectorXd> regular_tetrahedron();

}  // namespace nmetric
