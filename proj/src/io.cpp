#include "nmetric/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nmetric {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_json(double v) {
  if (!std::isfinite(v)) return format_double(v);
  if (v == std::trunc(v) && std::abs(v) <= 9007199254740992.0) return static_cast<std::int64_t>(v);
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw UsageError("expected a number, got " + j.dump());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

Json PointCodec<Complex>::encode(const Complex& z) { return Json::array({number_json(z.real()), number_json(z.imag())}); }

Complex PointCodec<Complex>::decode(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw UsageError("complex point must be [re, im]");
  return {number_from_json(j[0]), number_from_json(j[1])};
}

Json PointCodec<VectorXd>::encode(const VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number_json(v(i)));
  return out;
}

VectorXd PointCodec<VectorXd>::decode(const Json& j) {
  if (!j.is_array() || j.empty()) throw UsageError("vector point must be a nonempty list of numbers");
  VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number_from_json(j[i]);
  return v;
}

Json PointCodec<MatrixXd>::encode(const MatrixXd& m) {
  Json out = Json::array();
  for (Index c = 0; c < m.cols(); ++c) out.push_back(PointCodec<VectorXd>::encode(m.col(c)));
  return out;
}

MatrixXd PointCodec<MatrixXd>::decode(const Json& j) {
  if (!j.is_array() || j.empty()) throw UsageError("matrix must be a nonempty list of columns");
  const VectorXd first = PointCodec<VectorXd>::decode(j[0]);
  MatrixXd m(first.size(), static_cast<Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const VectorXd col = PointCodec<VectorXd>::decode(j[c]);
    if (col.size() != m.rows()) throw UsageError("matrix columns have different lengths");
    m.col(static_cast<Index>(c)) = col;
  }
  return m;
}

Json PointCodec<StiefelFrame>::encode(const StiefelFrame& f) {
  return {{"k", f.k()}, {"m", f.m()}, {"columns", PointCodec<MatrixXd>::encode(f.matrix())}};
}

StiefelFrame PointCodec<StiefelFrame>::decode(const Json& j) {
  if (!j.is_object()) return StiefelFrame(PointCodec<MatrixXd>::decode(j));
  StiefelFrame f(PointCodec<MatrixXd>::decode(j.at("columns")));
  if ((j.contains("k") && j.at("k").get<Index>() != f.k()) || (j.contains("m") && j.at("m").get<Index>() != f.m())) {
    throw UsageError("frame shape differs from its \"k\" and \"m\" fields");
  }
  return f;
}

Json tensor_to_json(const SymmetricTensorMap& a) {
  Json coeffs = Json::array();
  for (const auto& multiset : a.support()) {
    std::vector<int> one_based(multiset);
    for (int& c : one_based) ++c;
    for (int out = 0; out < a.dim_out(); ++out) {
      const double v = a.coefficient(out, multiset);
      if (v != 0.0) coeffs.push_back({{"out", out + 1}, {"multiset", one_based}, {"value", number_json(v)}});
    }
  }
  return {{"n", a.arity()}, {"dx", a.dim_in()}, {"dy", a.dim_out()}, {"coeffs", coeffs}};
}

SymmetricTensorMap tensor_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  if (j.contains("kind")) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "real-product") return SymmetricTensorMap::real_product(n);
    if (kind == "complex-product") return SymmetricTensorMap::complex_product(n);
    throw UsageError("unknown tensor kind '" + kind + "'");
  }
  SymmetricTensorMap a(n, j.at("dx").get<int>(), j.at("dy").get<int>());
  for (const auto& c : j.at("coeffs")) {
    std::vector<int> multiset = c.at("multiset").get<std::vector<int>>();
    for (int& v : multiset) --v;
    a.set_coefficient(c.at("out").get<int>() - 1, multiset, number_from_json(c.at("value")));
  }
  return a;
}

namespace {

std::string label_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw UsageError("vertex labels must be strings or integers");
}

std::vector<std::string> labels_of(const Json& j) {
  if (!j.is_array()) throw UsageError("expected a list of labels");
  std::vector<std::string> out;
  for (const auto& item : j) out.push_back(label_of(item));
  return out;
}

}  // namespace

Json hypergraph_to_json(const Hypergraph& h) {
  Json edges = Json::array();
  for (const auto& e : h.edges()) {
    Json edge = Json::array();
    for (int v : e) edge.push_back(h.label(v));
    edges.push_back(edge);
  }
  return {{"n", h.arity()}, {"vertices", h.labels()}, {"edges", edges}};
}

Hypergraph hypergraph_from_json(const Json& j) {
  std::vector<std::vector<std::string>> edges;
  for (const auto& e : j.at("edges")) edges.push_back(labels_of(e));
  return Hypergraph::from_labels(j.at("n").get<int>(), labels_of(j.at("vertices")), edges);
}

Json table_to_json(const FiniteMetricTable& table, const std::vector<Subset>& subsets) {
  Json values = Json::array();
  for (const auto& t : table.canonical_tuples()) {
    const double v = table.value(t);
    if (v == 0.0) continue;
    Json tuple = Json::array();
    for (int i : t) tuple.push_back(table.labels()[static_cast<std::size_t>(i)]);
    values.push_back({{"tuple", tuple}, {"value", number_json(v)}});
  }
  Json sets = Json::array();
  for (const auto& s : subsets) {
    Json members = Json::array();
    for (int i : s) members.push_back(table.labels()[static_cast<std::size_t>(i)]);
    sets.push_back(members);
  }
  return {{"n", table.arity()}, {"points", table.labels()}, {"values", values}, {"subsets", sets}};
}

TableInput table_from_json(const Json& j) {
  TableInput in{FiniteMetricTable(j.at("n").get<int>(), labels_of(j.at("points"))), {}};
  for (const auto& entry : j.at("values")) {
    std::vector<int> tuple;
    for (const auto& label : labels_of(entry.at("tuple"))) tuple.push_back(in.table.index_of(label));
    in.table.set_value(tuple, number_from_json(entry.at("value")));
  }
  if (j.contains("subsets")) {
    for (const auto& s : j.at("subsets")) {
      Subset subset;
      for (const auto& label : labels_of(s)) subset.push_back(in.table.index_of(label));
      in.subsets.push_back(std::move(subset));
    }
  }
  return in;
}

namespace {

bool is_inline(const Json& j) {
  if (j.is_object()) return false;
  if (j.is_array()) {
    for (const auto& item : j) {
      if (!is_inline(item)) return false;
    }
  }
  return true;
}

std::string inline_text(const Json& j) {
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_text(j[i]);
    return out + "]";
  }
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const Json& j, const std::string& prefix, std::string& out) {
  if (is_inline(j)) {
    out += prefix + ": " + inline_text(j) + "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "." + std::to_string(i), out);
}

}  // namespace

std::string render_text(const Json& j) {
  std::string out;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, key, out);
  } else {
    render(j, "value", out);
  }
  return out;
}

}  // namespace nmetric
