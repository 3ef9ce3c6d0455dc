#include "dagwish/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dagwish/errors.hpp"
#include "dagwish/experiments.hpp"
#include "dagwish/io.hpp"

namespace dagwish {

using io::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream ss;
  for (unsigned int k = 0; k < len; ++k)
    ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return ss.str();
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Canonical argv and resolved configuration of one run.
class Recorder {
 public:
  explicit Recorder(std::string command) : command_(std::move(command)) {
    argv_.push_back(command_);
  }

  void add(const std::string& key, const std::string& v) {
    argv_.push_back("--" + key);
    argv_.push_back(v);
    config_[key] = v;
  }
  void add(const std::string& key, double v) {
    argv_.push_back("--" + key);
    argv_.push_back(io::format_double(v));
    config_[key] = v;
  }
  void add(const std::string& key, int v) {
    argv_.push_back("--" + key);
    argv_.push_back(std::to_string(v));
    config_[key] = v;
  }
  void add(const std::string& key, std::uint64_t v) {
    argv_.push_back("--" + key);
    argv_.push_back(std::to_string(v));
    config_[key] = v;
  }
  void add(const std::string& key, const std::vector<int>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    argv_.push_back("--" + key);
    argv_.push_back(s);
    config_[key] = v;
  }
  void flag(const std::string& key, bool on) {
    if (on) argv_.push_back("--" + key);
    config_[key] = on;
  }
  void input(const std::string& key, const std::string& path) {
    add(key, path);
    inputs_.push_back({{"flag", "--" + key}, {"path", path}, {"sha256", sha256_hex(io::read_file(path))}});
  }
  void output(const std::string& path, const std::string& content) {
    io::write_file(path, content);
    outputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
  }
  void write_manifest(const std::string& path, std::uint64_t seed) {
    json m = {{"tool", "dagwish"},
              {"version", kVersion},
              {"command", command_},
              {"argv", argv_},
              {"config", config_},
              {"seed", seed},
              {"inputs", inputs_},
              {"outputs", outputs_}};
    io::write_file(path, io::dump(m));
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  json config_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
};

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

// ---- option bundles ----

struct GenerateOpts {
  int p = 0;
  double edge_prob = 0.01;
  double weight_lo = 0.2, weight_hi = 0.8;
  std::uint64_t seed = 0;
  std::string out = "generated";
};

struct SampleOpts {
  std::string theta, graph, params, theta_out, out;
  int n = 0;
  std::uint64_t seed = 0;
};

struct FitOpts {
  std::string data, graph, estimator = "mle", truth, out;
  double c = 3.0, b = 3.0, u = 3.0;
  bool center = false;
  std::uint64_t seed = 0;
};

struct SelectOpts {
  std::string data, method = "dagw", out;
  double kappa = 0.1;
  int restarts = 16, steps = 100, neighborhood = 30;
  double gamma = 0.5, b = 3.0, c = 1.0, u = 1.0;
  bool accumulated = false;
  std::uint64_t seed = 0;
};

struct EvaluateOpts {
  std::string truth, estimate, data, out;
  bool losses = false;
  std::uint64_t seed = 0;
};

struct Table1Opts {
  int p = 50, n = 100, reps = 20;
  double edge_prob = 0.01, lasso_kappa = 0.1;
  int restarts = 16, steps = 100, neighborhood = 30;
  double gamma = 0.5, b = 3.0, c = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct Table2Opts {
  int p = 50, reps = 50;
  std::vector<int> n = {30, 50, 100};
  double edge_prob = 0.01, c = 3.0, b = 3.0, u = 3.0;
  std::uint64_t seed = 0;
  std::string out;
};

// ---- commands ----

int cmd_generate(const GenerateOpts& o) {
  Recorder rec("generate");
  rec.add("p", o.p);
  rec.add("edge-prob", o.edge_prob);
  rec.add("weight-lo", o.weight_lo);
  rec.add("weight-hi", o.weight_hi);
  rec.add("seed", o.seed);
  rec.add("out", o.out);
  Rng rng = make_rng(o.seed, "generate");
  auto [dag, theta] = random_dag(o.p, o.edge_prob, o.weight_lo, o.weight_hi, rng);
  rec.output(o.out + ".graph.json", io::dump(io::graph_to_json(dag)));
  rec.output(o.out + ".theta.json", io::dump(io::theta_to_json(theta)));
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_sample(const SampleOpts& o) {
  Recorder rec("sample");
  CholeskyFactor theta;
  if (!o.theta.empty()) {
    if (!o.params.empty()) throw UsageError("sample: give either --theta or --params");
    rec.input("theta", o.theta);
    theta = io::theta_from_json(io::read_json_file(o.theta));
  } else {
    if (o.params.empty()) throw UsageError("sample: one of --theta or --params is required");
    std::optional<Dag> graph;
    if (!o.graph.empty()) {
      rec.input("graph", o.graph);
      graph = io::graph_from_json(io::read_json_file(o.graph));
    }
    rec.input("params", o.params);
    io::ParamsSpec spec = io::params_spec_from_json(io::read_json_file(o.params));
    DagWishartParams params = io::resolve(spec, graph ? &*graph : nullptr);
    Rng theta_rng = make_rng(o.seed, "sample/theta");
    theta = sample_prior(params, theta_rng);
  }
  rec.add("n", o.n);
  rec.add("seed", o.seed);
  if (!o.theta_out.empty()) rec.add("theta-out", o.theta_out);
  rec.add("out", o.out);
  Rng data_rng = make_rng(o.seed, "sample/data");
  Matrix X = sample_data(theta, o.n, data_rng);
  std::ostringstream csv;
  io::write_csv(csv, X);
  rec.output(o.out, csv.str());
  if (!o.theta_out.empty()) rec.output(o.theta_out, io::dump(io::theta_to_json(theta)));
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_fit(const FitOpts& o) {
  Recorder rec("fit");
  rec.input("data", o.data);
  rec.input("graph", o.graph);
  rec.add("estimator", o.estimator);
  rec.add("c", o.c);
  rec.add("b", o.b);
  rec.add("u", o.u);
  rec.flag("center", o.center);
  std::optional<CholeskyFactor> truth;
  if (!o.truth.empty()) {
    rec.input("truth", o.truth);
    truth = io::theta_from_json(io::read_json_file(o.truth));
  }
  rec.add("seed", o.seed);
  rec.add("out", o.out);

  Matrix X = io::read_csv_file(o.data);
  if (o.center) X = X.rowwise() - X.colwise().mean();
  Dag d = io::graph_from_json(io::read_json_file(o.graph));
  if (X.cols() != d.p()) throw std::invalid_argument("fit: data has " + std::to_string(X.cols()) +
                                                     " columns but the graph has p = " +
                                                     std::to_string(d.p()));
  SuffStats stats = suff_stats(X);
  DagWishartParams params{d, o.u * Matrix::Identity(d.p(), d.p()), alpha_rule(d, o.b, o.c)};

  EstimatorReport rep;
  rep.estimator = o.estimator;
  rep.b = o.b;
  rep.c = o.c;
  rep.u = o.u;
  if (o.estimator == "mle") {
    rep.target = Target::sigma;
    rep.estimate = mle(stats, d);
  } else if (o.estimator == "map") {
    rep.target = Target::sigma;
    rep.estimate = map_estimate(stats, params);
  } else if (o.estimator == "bayes-sigma") {
    rep.target = Target::sigma;
    rep.estimate = bayes_sigma(stats, params);
  } else {
    rep.target = Target::omega;
    rep.estimate = bayes_omega(stats, params);
  }
  if (truth) {
    if (truth->dag.p() != d.p()) throw std::invalid_argument("fit: truth dimension mismatch");
    Matrix omega = precision_from_cholesky(*truth);
    Matrix m = rep.target == Target::omega ? omega : inverse_spd(omega);
    rep.losses = Losses{loss_stein(rep.estimate, m), loss_l2(m, rep.estimate, d)};
  }
  rec.output(o.out, io::dump(io::report_to_json(rep)));
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_select(SelectOpts o, const CLI::App& sub) {
  Recorder rec("select");
  rec.input("data", o.data);
  Matrix X = io::read_csv_file(o.data);
  const int p = static_cast<int>(X.cols());
  if (p >= 500) {
    if (sub.count("--restarts") == 0) o.restarts = 9;
    if (sub.count("--steps") == 0) o.steps = 50;
  }
  rec.add("method", o.method);
  rec.add("kappa", o.kappa);
  rec.add("restarts", o.restarts);
  rec.add("steps", o.steps);
  rec.add("neighborhood", o.neighborhood);
  rec.add("gamma", o.gamma);
  rec.add("b", o.b);
  rec.add("c", o.c);
  rec.add("u", o.u);
  rec.flag("accumulated", o.accumulated);
  rec.add("seed", o.seed);
  rec.add("out", o.out);

  ScoreHyper hyper{o.b, o.c, o.u};
  SearchResult res;
  if (o.method == "lasso") {
    Dag g = lasso_dag(X, o.kappa);
    const double s = graph_score(g, suff_stats(standardize(X)), hyper);
    res.best = {g, s};
    res.visited.push_back(res.best);
    res.per_restart.push_back({o.kappa, s});
  } else {
    SearchConfig cfg;
    cfg.restarts = o.restarts;
    cfg.steps = o.steps;
    cfg.neighborhood = o.neighborhood;
    cfg.gamma = o.gamma;
    cfg.hyper = hyper;
    cfg.sample_from_accumulated = o.accumulated;
    cfg.seed = o.seed;
    res = shotgun_search(X, cfg);
  }
  rec.output(o.out, io::dump(io::search_result_to_json(res)));
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

enum class Kind { graph, theta, report, search };

Kind detect(const json& j) {
  if (j.contains("estimate")) return Kind::report;
  if (j.contains("best")) return Kind::search;
  if (j.contains("D")) return Kind::theta;
  if (j.contains("edges")) return Kind::graph;
  throw std::invalid_argument("evaluate: unrecognized JSON input");
}

Dag graph_of(const json& j, Kind k) {
  switch (k) {
    case Kind::graph: return io::graph_from_json(j);
    case Kind::theta: return io::graph_from_json(j.at("graph"));
    case Kind::search: return io::graph_from_json(j.at("best").at("graph"));
    case Kind::report: break;
  }
  throw std::invalid_argument("evaluate: estimate carries no graph");
}

int cmd_evaluate(const EvaluateOpts& o) {
  Recorder rec("evaluate");
  rec.input("truth", o.truth);
  rec.input("estimate", o.estimate);
  if (!o.data.empty()) rec.input("data", o.data);
  rec.flag("losses", o.losses);
  rec.add("seed", o.seed);
  rec.add("out", o.out);

  json tj = io::read_json_file(o.truth), ej = io::read_json_file(o.estimate);
  Kind tk = detect(tj), ek = detect(ej);
  std::ostringstream csv;
  if (o.losses || ek == Kind::report) {
    if (tk != Kind::theta) throw UsageError("evaluate: losses need a CholeskyFactor truth");
    CholeskyFactor truth = io::theta_from_json(tj);
    Matrix omega = precision_from_cholesky(truth);
    Matrix sigma = inverse_spd(omega);
    std::string name;
    Target target;
    Matrix est;
    if (ek == Kind::report) {
      name = ej.at("estimator").get<std::string>();
      target = ej.at("target").get<std::string>() == "omega" ? Target::omega : Target::sigma;
      est = io::matrix_from_json(ej.at("estimate"));
    } else {
      if (o.data.empty()) throw UsageError("evaluate: --losses on a graph estimate needs --data");
      Dag g = graph_of(ej, ek);
      name = "mle";
      target = Target::sigma;
      est = mle(suff_stats(io::read_csv_file(o.data)), g);
    }
    const Matrix& m = target == Target::omega ? omega : sigma;
    csv << "estimator,target,stein,l2\n"
        << name << "," << to_string(target) << "," << io::format_double(loss_stein(est, m)) << ","
        << io::format_double(loss_l2(m, est, truth.dag)) << "\n";
  } else {
    Confusion c = confusion(graph_of(tj, tk), graph_of(ej, ek));
    csv << "tp,fp,tn,fn,sensitivity,specificity,sensitivity_undefined,specificity_undefined\n"
        << c.tp << "," << c.fp << "," << c.tn << "," << c.fn << ","
        << io::format_double(c.sensitivity) << "," << io::format_double(c.specificity) << ","
        << (c.sensitivity_undefined ? "true" : "false") << ","
        << (c.specificity_undefined ? "true" : "false") << "\n";
  }
  rec.output(o.out, csv.str());
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_table1(const Table1Opts& o) {
  Recorder rec("table1");
  rec.add("p", o.p);
  rec.add("n", o.n);
  rec.add("edge-prob", o.edge_prob);
  rec.add("reps", o.reps);
  rec.add("lasso-kappa", o.lasso_kappa);
  rec.add("restarts", o.restarts);
  rec.add("steps", o.steps);
  rec.add("neighborhood", o.neighborhood);
  rec.add("gamma", o.gamma);
  rec.add("b", o.b);
  rec.add("c", o.c);
  rec.add("seed", o.seed);
  rec.add("out", o.out);
  Table1Config cfg;
  cfg.p = o.p;
  cfg.n = o.n;
  cfg.edge_prob = o.edge_prob;
  cfg.replications = o.reps;
  cfg.lasso_kappa = o.lasso_kappa;
  cfg.search.restarts = o.restarts;
  cfg.search.steps = o.steps;
  cfg.search.neighborhood = o.neighborhood;
  cfg.search.gamma = o.gamma;
  cfg.search.hyper = {o.b, o.c, 1.0};
  cfg.seed = o.seed;
  Table1Result res = run_table1(cfg);
  std::ostringstream csv;
  csv << "method,rep,sensitivity,specificity,tp,fp,tn,fn\n";
  auto row = [&](const char* method, int r, const Confusion& c) {
    csv << method << "," << r << "," << io::format_double(c.sensitivity) << ","
        << io::format_double(c.specificity) << "," << c.tp << "," << c.fp << "," << c.tn << ","
        << c.fn << "\n";
  };
  for (std::size_t r = 0; r < res.reps.size(); ++r) {
    row("LassoDAG", static_cast<int>(r), res.reps[r].lasso);
    row("DAG-W", static_cast<int>(r), res.reps[r].dagw);
  }
  csv << "LassoDAG,mean," << io::format_double(res.lasso_sensitivity) << ","
      << io::format_double(res.lasso_specificity) << ",,,,\n";
  csv << "DAG-W,mean," << io::format_double(res.dagw_sensitivity) << ","
      << io::format_double(res.dagw_specificity) << ",,,,\n";
  rec.output(o.out, csv.str());
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_table2(const Table2Opts& o) {
  Recorder rec("table2");
  rec.add("p", o.p);
  rec.add("n", o.n);
  rec.add("edge-prob", o.edge_prob);
  rec.add("reps", o.reps);
  rec.add("c", o.c);
  rec.add("b", o.b);
  rec.add("u", o.u);
  rec.add("seed", o.seed);
  rec.add("out", o.out);
  Table2Config cfg;
  cfg.p = o.p;
  cfg.edge_prob = o.edge_prob;
  cfg.ns = o.n;
  cfg.replications = o.reps;
  cfg.configs = {{o.c, o.u, o.b}};
  cfg.seed = o.seed;
  Table2Result res = run_table2(cfg);
  std::ostringstream csv;
  csv << "estimator,target,n,loss,improvement_pct,mc_se\n";
  for (const auto& r : res.rows)
    csv << r.estimator << "," << to_string(r.target) << "," << r.n << "," << r.loss << ","
        << io::format_double(r.improvement_pct) << "," << io::format_double(r.mc_se) << "\n";
  rec.output(o.out, csv.str());
  rec.write_manifest(manifest_path(o.out), o.seed);
  return 0;
}

int cmd_replay(const std::string& manifest, std::ostream& out, std::ostream& err) {
  json m = io::read_json_file(manifest);
  for (const auto& in : m.at("inputs")) {
    const std::string path = in.at("path").get<std::string>();
    if (sha256_hex(io::read_file(path)) != in.at("sha256").get<std::string>())
      throw std::runtime_error("replay: input " + path + " changed since the manifest was written");
  }
  return run_cli(m.at("argv").get<std::vector<std::string>>(), out, err);
}

void write_error(std::ostream& err, const std::string& kind, const std::string& msg) {
  err << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DAG-Wishart priors: sampling, estimation and structure search", "dagwish"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Random DAG and Cholesky parameters");
  g->add_option("--p", gen.p, "Vertex count")->required()->check(CLI::PositiveNumber);
  g->add_option("--edge-prob", gen.edge_prob, "Edge probability")->check(CLI::Range(0.0, 1.0));
  g->add_option("--weight-lo", gen.weight_lo, "Smallest regression weight");
  g->add_option("--weight-hi", gen.weight_hi, "Largest regression weight");
  g->add_option("--seed", gen.seed, "Master seed");
  g->add_option("--out", gen.out, "Output prefix");

  SampleOpts smp;
  auto* s = app.add_subcommand("sample", "Gaussian data from a DAG model");
  s->add_option("--theta", smp.theta, "CholeskyFactor JSON (true parameters)");
  s->add_option("--graph", smp.graph, "Graph JSON for the prior");
  s->add_option("--params", smp.params, "Params JSON; theta is drawn from this prior");
  s->add_option("--theta-out", smp.theta_out, "Write the theta used here");
  s->add_option("--n", smp.n, "Sample size")->required()->check(CLI::PositiveNumber);
  s->add_option("--seed", smp.seed, "Master seed");
  s->add_option("--out", smp.out, "Data CSV")->required();

  FitOpts fit;
  auto* f = app.add_subcommand("fit", "Estimate Sigma or Omega under a known DAG");
  f->add_option("--data", fit.data, "Data CSV")->required();
  f->add_option("--graph", fit.graph, "Graph JSON")->required();
  f->add_option("--estimator", fit.estimator, "mle | map | bayes-sigma | bayes-omega")
      ->check(CLI::IsMember({"mle", "map", "bayes-sigma", "bayes-omega"}));
  f->add_option("--c", fit.c, "Shape slope: alpha_i = c pa_i + b");
  f->add_option("--b", fit.b, "Shape intercept");
  f->add_option("--u", fit.u, "Scale: U = u I")->check(CLI::PositiveNumber);
  f->add_option("--truth", fit.truth, "CholeskyFactor JSON for losses");
  f->add_flag("--center", fit.center, "Center columns before fitting");
  f->add_option("--seed", fit.seed, "Master seed (recorded only)");
  f->add_option("--out", fit.out, "Report JSON")->required();

  SelectOpts sel;
  auto* sl = app.add_subcommand("select", "Structure selection under the fixed ordering");
  sl->add_option("--data", sel.data, "Data CSV")->required();
  sl->add_option("--method", sel.method, "lasso | dagw")->check(CLI::IsMember({"lasso", "dagw"}));
  sl->add_option("--kappa", sel.kappa, "Lasso level")->check(CLI::PositiveNumber);
  sl->add_option("--restarts", sel.restarts, "N")->check(CLI::PositiveNumber);
  sl->add_option("--steps", sel.steps, "M")->check(CLI::PositiveNumber);
  sl->add_option("--neighborhood", sel.neighborhood, "N1")->check(CLI::PositiveNumber);
  sl->add_option("--gamma", sel.gamma, "Annealing exponent")->check(CLI::PositiveNumber);
  sl->add_option("--b", sel.b, "Shape intercept");
  sl->add_option("--c", sel.c, "Shape slope");
  sl->add_option("--u", sel.u, "Scale: U = u I")->check(CLI::PositiveNumber);
  sl->add_flag("--accumulated", sel.accumulated, "Sample next states from the whole restart list");
  sl->add_option("--seed", sel.seed, "Master seed");
  sl->add_option("--out", sel.out, "Search result JSON")->required();

  EvaluateOpts ev;
  auto* e = app.add_subcommand("evaluate", "Confusion counts or losses against a truth");
  e->add_option("--truth", ev.truth, "Graph or CholeskyFactor JSON")->required();
  e->add_option("--estimate", ev.estimate, "Graph, search result or report JSON")->required();
  e->add_flag("--losses", ev.losses, "Report Stein and L2 losses");
  e->add_option("--data", ev.data, "Data CSV (losses of the MLE under a graph estimate)");
  e->add_option("--seed", ev.seed, "Master seed (recorded only)");
  e->add_option("--out", ev.out, "CSV output")->required();

  Table1Opts t1;
  auto* a = app.add_subcommand("table1", "Structure recovery: LassoDAG vs DAG-W");
  a->add_option("--p", t1.p)->check(CLI::PositiveNumber);
  a->add_option("--n", t1.n)->check(CLI::PositiveNumber);
  a->add_option("--edge-prob", t1.edge_prob)->check(CLI::Range(0.0, 1.0));
  a->add_option("--reps", t1.reps)->check(CLI::PositiveNumber);
  a->add_option("--lasso-kappa", t1.lasso_kappa)->check(CLI::PositiveNumber);
  a->add_option("--restarts", t1.restarts)->check(CLI::PositiveNumber);
  a->add_option("--steps", t1.steps)->check(CLI::PositiveNumber);
  a->add_option("--neighborhood", t1.neighborhood)->check(CLI::PositiveNumber);
  a->add_option("--gamma", t1.gamma)->check(CLI::PositiveNumber);
  a->add_option("--b", t1.b);
  a->add_option("--c", t1.c);
  a->add_option("--seed", t1.seed);
  a->add_option("--out", t1.out)->required();

  Table2Opts t2;
  auto* b = app.add_subcommand("table2", "Relative risk improvement over the MLE");
  b->add_option("--p", t2.p)->check(CLI::PositiveNumber);
  b->add_option("--n", t2.n, "Sample sizes, comma separated")->delimiter(',');
  b->add_option("--edge-prob", t2.edge_prob)->check(CLI::Range(0.0, 1.0));
  b->add_option("--reps", t2.reps)->check(CLI::PositiveNumber);
  b->add_option("--c", t2.c);
  b->add_option("--b", t2.b);
  b->add_option("--u", t2.u)->check(CLI::PositiveNumber);
  b->add_option("--seed", t2.seed);
  b->add_option("--out", t2.out)->required();

  std::string manifest;
  auto* r = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  r->add_option("manifest", manifest, "Manifest JSON")->required();

  std::vector<const char*> argv{"dagwish"};
  for (const auto& x : args) argv.push_back(x.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_sample(smp);
    if (*f) return cmd_fit(fit);
    if (*sl) return cmd_select(sel, *sl);
    if (*e) return cmd_evaluate(ev);
    if (*a) return cmd_table1(t1);
    if (*b) return cmd_table2(t2);
    if (*r) return cmd_replay(manifest, out, err);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return 2;
  } catch (const ShapeError& ex) {
    write_error(err, "shape", ex.what());
    return 1;
  } catch (const CompletionError& ex) {
    write_error(err, "completion", ex.what());
    return 1;
  } catch (const NotPositiveDefinite& ex) {
    write_error(err, "not_positive_definite", ex.what());
    return 1;
  } catch (const std::exception& ex) {
    write_error(err, "error", ex.what());
    return 1;
  }
  return 2;
}

}  // namespace dagwish
