#pragma once

// JSON encodings of points, tuples, inputs and fuzz reports.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmetric/axioms.hpp"
#include "nmetric/hypergraph.hpp"
#include "nmetric/manifolds.hpp"
#include "nmetric/sets.hpp"
#include "nmetric/vandermonde.hpp"

namespace nmetric {

using Json = nlohmann::ordered_json;

/// "%.17g"; non-finite values print as inf, -inf or nan.
std::string format_double(double v);

/// Integral values within 2^53 become JSON integers; non-finite values
/// become the strings "inf", "-inf" and "nan".
Json number_json(double v);
double number_from_json(const Json& j);

Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

template <typename Point>
struct PointCodec;

/// [re, im]
template <>
struct PointCodec<Complex> {
  static Json encode(const Complex& z);
  static Complex decode(const Json& j);
};

/// [x_1, ..., x_m]
template <>
struct PointCodec<VectorXd> {
  static Json encode(const VectorXd& v);
  static VectorXd decode(const Json& j);
};

/// List of columns.
template <>
struct PointCodec<MatrixXd> {
  static Json encode(const MatrixXd& m);
  static MatrixXd decode(const Json& j);
};

/// {"k", "m", "columns"}; a bare list of columns is accepted on input.
template <>
struct PointCodec<StiefelFrame> {
  static Json encode(const StiefelFrame& f);
  static StiefelFrame decode(const Json& j);
};

/// Dense vertex index.
template <>
struct PointCodec<int> {
  static Json encode(int v) { return v; }
  static int decode(const Json& j) { return j.get<int>(); }
};

/// Either a bare list of points or an object with a "points" list. For
/// frames the list key is "frames". Returns an empty list if absent.
template <typename Point>
std::vector<Point> tuple_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    const char* key = std::is_same_v<Point, StiefelFrame> ? "frames" : "points";
    if (!j.contains(key)) return {};
    list = &j.at(key);
  }
  if (!list->is_array()) throw UsageError("expected a JSON list of points");
  std::vector<Point> out;
  for (const auto& item : *list) out.push_back(PointCodec<Point>::decode(item));
  if constexpr (std::is_same_v<Point, VectorXd>) {
    if (j.is_object() && j.contains("dim")) {
      for (const auto& p : out) {
        if (p.size() != j.at("dim").get<Index>()) throw UsageError("point dimension differs from \"dim\"");
      }
    }
  }
  return out;
}

template <typename Point>
Json tuple_to_json(const std::vector<Point>& tuple) {
  Json out = Json::array();
  for (const auto& p : tuple) out.push_back(PointCodec<Point>::encode(p));
  return out;
}

/// {"n", "dx", "dy", "coeffs": [{"out", "multiset", "value"}]} with 1-based
/// output and input coordinates.
Json tensor_to_json(const SymmetricTensorMap& a);
SymmetricTensorMap tensor_from_json(const Json& j);

/// {"n", "vertices": [labels], "edges": [[labels]]}
Json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

struct TableInput {
  FiniteMetricTable table;
  std::vector<Subset> subsets;
};

/// {"n", "points": [labels], "values": [{"tuple": [labels], "value"}],
///  "subsets": [[labels]]}; unlisted tuples are 0.
Json table_to_json(const FiniteMetricTable& table, const std::vector<Subset>& subsets);
TableInput table_from_json(const Json& j);

template <typename Point>
Json check_to_json(const CheckResult<Point>& r) {
  Json out = {{"axiom", to_string(r.axiom)},
              {"passed", r.passed},
              {"lhs", number_json(r.lhs)},
              {"rhs", number_json(r.rhs)},
              {"margin", number_json(r.margin)},
              {"scale", number_json(r.scale)},
              {"trial", r.trial}};
  if (!r.tuple.empty()) out["tuple"] = tuple_to_json(r.tuple);
  if (r.y) out["y"] = PointCodec<Point>::encode(*r.y);
  if (!r.permutation.empty()) out["permutation"] = r.permutation;
  return out;
}

template <typename Point>
CheckResult<Point> check_from_json(const Json& j) {
  CheckResult<Point> r;
  const auto axiom = j.at("axiom").get<std::string>();
  if (axiom == "semidefinite") {
    r.axiom = Axiom::semidefinite;
  } else if (axiom == "symmetry") {
    r.axiom = Axiom::symmetry;
  } else if (axiom == "simplicial") {
    r.axiom = Axiom::simplicial;
  } else {
    throw UsageError("unknown axiom '" + axiom + "'");
  }
  r.passed = j.at("passed").get<bool>();
  r.lhs = number_from_json(j.at("lhs"));
  r.rhs = number_from_json(j.at("rhs"));
  r.margin = number_from_json(j.at("margin"));
  r.scale = number_from_json(j.at("scale"));
  r.trial = j.at("trial").get<std::size_t>();
  if (j.contains("tuple")) r.tuple = tuple_from_json<Point>(j.at("tuple"));
  if (j.contains("y")) r.y = PointCodec<Point>::decode(j.at("y"));
  if (j.contains("permutation")) r.permutation = j.at("permutation").get<std::vector<int>>();
  return r;
}

template <typename Point>
Json report_to_json(const FuzzReport<Point>& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(check_to_json(v));
  return {{"metric", report.metric_label},
          {"sampler", report.sampler},
          {"seed", report.seed},
          {"tol", number_json(report.tol)},
          {"trials", report.trials},
          {"checks", report.checks},
          {"violation_count", report.violations.size()},
          {"worst_margin", number_json(report.worst_margin)},
          {"violations", violations}};
}

template <typename Point>
FuzzReport<Point> report_from_json(const Json& j) {
  FuzzReport<Point> report;
  report.metric_label = j.at("metric").get<std::string>();
  report.sampler = j.at("sampler").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.tol = number_from_json(j.at("tol"));
  report.trials = j.at("trials").get<std::size_t>();
  report.checks = j.at("checks").get<std::size_t>();
  report.worst_margin = number_from_json(j.at("worst_margin"));
  for (const auto& v : j.at("violations")) report.violations.push_back(check_from_json<Point>(v));
  return report;
}

/// One "key: value" line per scalar, nested keys joined with '.', numbers
/// as format_double; field order follows the JSON object.
std::string render_text(const Json& j);

}  // namespace nmetric
