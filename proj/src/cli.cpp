#include "nmetric/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nmetric/registry.hpp"

namespace nmetric::cli {

namespace {

struct Options {
  MetricConfig config;
  std::string input;
  std::string output;
  std::string format = "json";
  std::string tuple;
  std::string which;
  int N = 2;
  double q = 1.0;
  double s = 1.0;
};

void emit(const Json& report, const Options& o, std::ostream& out) {
  const std::string text = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write '" + o.output + "'");
  file << text;
}

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) throw UsageError("--tuple has an empty entry");
    out.push_back(item);
  }
  return out;
}

Json require_input(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  return read_json_file(o.input);
}

int cmd_eval(Options& o, std::ostream& out) {
  Json input = require_input(o);
  if (!o.tuple.empty()) input["tuples"] = Json::array({split_labels(o.tuple)});
  if (o.config.metric == "hyper" && input.contains("n")) o.config.n = input.at("n").get<int>();
  if (o.config.metric == "gen-vandermonde" && input.contains("tensor")) o.config.n = input.at("tensor").at("n").get<int>();
  o.config.input = input;
  emit(run_eval(o.config, input), o, out);
  return kOk;
}

int cmd_check(Options& o, std::ostream& out) {
  if (!o.input.empty()) {
    o.config.input = read_json_file(o.input);
    if (o.config.metric == "hyper" && o.config.input->contains("n")) o.config.n = o.config.input->at("n").get<int>();
  }
  const CheckOutcome outcome = run_check(o.config);
  emit(outcome.report, o, out);
  return outcome.violations == 0 ? kOk : kViolation;
}

int cmd_tetrahedron(const Options& o, std::ostream& out) {
  const std::vector<VectorXd> x = regular_tetrahedron();
  const VectorXd y = VectorXd::Zero(3);
  const double lhs = d_norm_product(x);
  double rhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<VectorXd> replaced = x;
    replaced[i] = y;
    rhs += d_norm_product(replaced);
  }
  const double margin = rhs - lhs;
  const bool violated = margin < 0.0;
  Json report = {{"which", "tetrahedron"},
                 {"metric", "norm-product"},
                 {"n", 4},
                 {"dim", 3},
                 {"lhs", number_json(lhs)},
                 {"rhs", number_json(rhs)},
                 {"margin", number_json(margin)},
                 {"lhs_closed_form", "(8/3)^3"},
                 {"rhs_closed_form", "4 (8/3)^(3/2)"},
                 {"integer_form", "2^5 = 32 > 27 = 3^3"},
                 {"violated", violated}};
  emit(report, o, out);
  return violated ? kViolation : kViolationAbsent;
}

int cmd_hausdorff(const Options& o, std::ostream& out) {
  const CounterexampleReport r = verify_counterexample(o.N);
  const bool violated = r.margin < 0.0;
  Json report = {{"which", "hausdorff"},
                 {"N", r.N},
                 {"points", r.points},
                 {"semidefinite_checks", r.axioms.semidefinite_checks},
                 {"symmetry_checks", r.axioms.symmetry_checks},
                 {"simplicial_checks", r.axioms.simplicial_checks},
                 {"axiom_violations", r.axioms.violations},
                 {"d_h", number_json(r.d_h)},
                 {"substituted", Json::array({number_json(r.substituted[0]), number_json(r.substituted[1]),
                                              number_json(r.substituted[2])})},
                 {"margin", number_json(r.margin)},
                 {"violated", violated},
                 {"summary", "3-metric verified; d_H violation margin " + format_double(r.margin)}};
  emit(report, o, out);
  return violated ? kViolation : kViolationAbsent;
}

int cmd_hyper(const Options& o, std::ostream& out) {
  const Json input = require_input(o);
  const Hypergraph h = hypergraph_from_json(input);
  const bool connected = is_connected(h);
  Json report = hypergraph_to_json(h);
  report["connected"] = connected;

  std::vector<std::vector<int>> tuples;
  if (!o.tuple.empty()) {
    std::vector<int> t;
    for (const auto& label : split_labels(o.tuple)) t.push_back(h.index_of(label));
    tuples.push_back(t);
  } else if (input.contains("tuples")) {
    for (const auto& labels : input.at("tuples")) {
      std::vector<int> t;
      for (const auto& label : labels) {
        t.push_back(h.index_of(label.is_string() ? label.get<std::string>() : std::to_string(label.get<long long>())));
      }
      tuples.push_back(t);
    }
  } else if (connected) {
    // Every set of n distinct vertices.
    FiniteMetricTable shape(h.arity(), h.labels());
    tuples = shape.canonical_tuples();
  }
  if (!tuples.empty() && !connected) throw DisconnectedHypergraph("hypergraph is not connected");

  Json distances = Json::array();
  for (const auto& t : tuples) {
    Json labels = Json::array();
    for (int v : t) labels.push_back(h.label(v));
    distances.push_back({{"tuple", labels}, {"value", d_hyper(h, t, o.config.force)}});
  }
  report["distances"] = distances;
  emit(report, o, out);
  return kOk;
}

int cmd_family(const Options& o, std::ostream& out) {
  const EqualityQuadruple quad = equality_family({o.q, o.s});
  const double residual = equality_residual(quad);
  Json report = {{"q", number_json(o.q)},
                 {"s", number_json(o.s)},
                 {"y", PointCodec<Complex>::encode(quad.y)},
                 {"z1", PointCodec<Complex>::encode(quad.z1)},
                 {"z2", PointCodec<Complex>::encode(quad.z2)},
                 {"z3", PointCodec<Complex>::encode(quad.z3)},
                 {"residual", number_json(residual)}};
  emit(report, o, out);
  return kOk;
}

int cmd_list(const Options& o, std::ostream& out) {
  Json metrics = Json::array();
  for (const auto& info : metric_catalog()) {
    metrics.push_back({{"name", info.name},
                       {"point", info.point},
                       {"default_tol", number_json(info.default_tol)},
                       {"experimental", info.experimental},
                       {"summary", info.summary}});
  }
  emit(Json{{"metrics", metrics}}, o, out);
  return kOk;
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Write the report to PATH");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

void add_metric_options(CLI::App* cmd, Options& o) {
  auto& c = o.config;
  cmd->add_option("--metric", c.metric, "Metric name (see `nmetric list`)")->required();
  cmd->add_option("--n", c.n, "Arity");
  cmd->add_option("--dim", c.dim, "Point dimension (atoms for lp-discrete, dx for gen-vandermonde)");
  cmd->add_option("--k", c.k, "Frame width");
  cmd->add_option("--m", c.m, "Ambient dimension of frames");
  cmd->add_option("--dy", c.dy, "Output dimension of the gen-vandermonde tensor");
  cmd->add_option("--p", c.p, "Exponent of the p-norm (inf allowed)");
  cmd->add_option("--input", o.input, "JSON input");
  cmd->add_flag("--force", c.force, "Override capacity limits");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and property-check pseudo n-metrics", "nmetric"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate a metric on tuples from --input");
  add_metric_options(eval, o);
  eval->add_option("--tuple", o.tuple, "Comma-separated vertex labels (hyper)");
  add_output_options(eval, o);

  auto* check = app.add_subcommand("check", "Fuzz the three axioms on random tuples");
  add_metric_options(check, o);
  check->add_option("--trials", o.config.trials, "Number of trials")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.config.seed, "Base seed");
  check->add_option("--tol", o.config.tol, "Relative tolerance");
  check->add_option("--threads", o.config.threads, "Worker threads (output does not depend on it)");
  add_output_options(check, o);

  auto* counter = app.add_subcommand("counterexample", "Reproduce a known simplicial violation");
  counter->add_option("which", o.which, "tetrahedron or hausdorff")
      ->required()
      ->check(CLI::IsMember({"tetrahedron", "hausdorff"}));
  counter->add_option("--N", o.N, "Points per block of the Hausdorff construction");
  add_output_options(counter, o);

  auto* hyper = app.add_subcommand("hyper", "Connectivity and distances of a hypergraph");
  hyper->add_option("--input", o.input, "Hypergraph JSON")->required();
  hyper->add_option("--tuple", o.tuple, "Comma-separated vertex labels");
  hyper->add_flag("--force", o.config.force, "Override the edge-count limit");
  add_output_options(hyper, o);

  auto* family = app.add_subcommand("family", "Equality quadruple of the Vandermonde 3-metric");
  family->add_option("--q", o.q, "Parameter q > 0");
  family->add_option("--s", o.s, "Parameter s > 0");
  add_output_options(family, o);

  auto* list = app.add_subcommand("list", "Known metric names");
  add_output_options(list, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (counter->parsed()) return o.which == "tetrahedron" ? cmd_tetrahedron(o, out) : cmd_hausdorff(o, out);
    if (hyper->parsed()) return cmd_hyper(o, out);
    if (family->parsed()) return cmd_family(o, out);
    return cmd_list(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const ConstructionBug& e) {
    err << "construction failed verification: " << e.what() << "\n";
    return kViolationAbsent;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace nmetric::cli
