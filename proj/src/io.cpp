#include "dagwish/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dagwish::io {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json graph_to_json(const Dag& d) {
  json edges = json::array();
  for (const Edge& e : d.edges()) edges.push_back({e.from + 1, e.to + 1});
  return {{"p", d.p()}, {"edges", edges}};
}

Dag graph_from_json(const json& j) {
  const int p = j.at("p").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph JSON: each edge must be a pair [i, j]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Dag::from_one_based(p, edges);
}

json matrix_to_json(const Matrix& m) {
  json values = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) values.push_back(m(i, k));
  return {{"p", m.rows()}, {"values", values}};
}

Matrix matrix_from_json(const json& j) {
  const int p = j.at("p").get<int>();
  const auto& v = j.at("values");
  if (static_cast<long>(v.size()) != static_cast<long>(p) * p)
    throw std::invalid_argument("matrix JSON: expected p*p values");
  Matrix m(p, p);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) m(i, k) = v[static_cast<std::size_t>(i) * p + k].get<double>();
  return m;
}

namespace {

json edge_values(const Dag& d, const Vector& v) {
  json out = json::array();
  const auto& e = d.edges();
  for (std::size_t k = 0; k < e.size(); ++k)
    out.push_back({{"i", e[k].from + 1}, {"j", e[k].to + 1}, {"v", v(k)}});
  return out;
}

Vector edge_values_from_json(const Dag& d, const json& arr, const std::string& what) {
  Vector v(static_cast<Eigen::Index>(d.num_edges()));
  std::vector<bool> seen(d.num_edges(), false);
  for (const auto& x : arr) {
    const int i = x.at("i").get<int>(), j = x.at("j").get<int>();
    long k = d.edge_index(i - 1, j - 1);
    if (k < 0)
      throw std::invalid_argument(what + ": (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") is not an edge of the graph");
    v(k) = x.at("v").get<double>();
    seen[k] = true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument(what + ": missing edge value");
  return v;
}

Vector vector_from_json(const json& arr) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t k = 0; k < arr.size(); ++k) v(k) = arr[k].get<double>();
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

}  // namespace

json theta_to_json(const CholeskyFactor& theta) {
  return {{"graph", graph_to_json(theta.dag)},
          {"D", vector_to_json(theta.D)},
          {"L", edge_values(theta.dag, theta.L)}};
}

CholeskyFactor theta_from_json(const json& j) {
  Dag d = graph_from_json(j.at("graph"));
  CholeskyFactor theta{d, vector_from_json(j.at("D")), edge_values_from_json(d, j.at("L"), "L")};
  validate(theta);
  return theta;
}

json incomplete_to_json(const IncompleteMatrix& m) {
  return {{"graph", graph_to_json(m.dag)},
          {"diag", vector_to_json(m.diag)},
          {"off", edge_values(m.dag, m.off)}};
}

IncompleteMatrix incomplete_from_json(const json& j) {
  Dag d = graph_from_json(j.at("graph"));
  IncompleteMatrix m{d, vector_from_json(j.at("diag")), edge_values_from_json(d, j.at("off"), "off")};
  validate(m);
  return m;
}

ParamsSpec params_spec_from_json(const json& j) {
  ParamsSpec s;
  if (j.contains("graph")) s.graph = graph_from_json(j.at("graph"));
  const json& U = j.at("U");
  if (U.is_object()) {
    s.u = U.at("scaled_identity").get<double>();
  } else {
    const std::size_t total = U.size();
    int p = 0;
    while (static_cast<std::size_t>(p) * p < total) ++p;
    if (static_cast<std::size_t>(p) * p != total)
      throw std::invalid_argument("params JSON: U must have p*p values");
    s.U = matrix_from_json(json{{"p", p}, {"values", U}});
  }
  const json& a = j.at("alpha");
  if (a.is_object()) {
    const json& r = a.at("rule");
    s.rule = std::make_pair(r.at("b").get<double>(), r.at("c").get<double>());
  } else {
    s.alpha = vector_from_json(a);
  }
  return s;
}

json params_spec_to_json(const ParamsSpec& s) {
  json j = json::object();
  if (s.graph) j["graph"] = graph_to_json(*s.graph);
  if (s.u)
    j["U"] = {{"scaled_identity", *s.u}};
  else if (s.U)
    j["U"] = matrix_to_json(*s.U).at("values");
  if (s.rule)
    j["alpha"] = {{"rule", {{"b", s.rule->first}, {"c", s.rule->second}}}};
  else if (s.alpha)
    j["alpha"] = vector_to_json(*s.alpha);
  return j;
}

DagWishartParams resolve(const ParamsSpec& s, const Dag* d) {
  if (!d && !s.graph) throw std::invalid_argument("params: no graph to resolve against");
  const Dag& g = d ? *d : *s.graph;
  DagWishartParams params{g, Matrix(), Vector()};
  if (s.u)
    params.U = *s.u * Matrix::Identity(g.p(), g.p());
  else if (s.U)
    params.U = *s.U;
  else
    throw std::invalid_argument("params: missing U");
  if (s.rule)
    params.alpha = alpha_rule(g, s.rule->first, s.rule->second);
  else if (s.alpha)
    params.alpha = *s.alpha;
  else
    throw std::invalid_argument("params: missing alpha");
  validate(params);
  return params;
}

json params_to_json(const DagWishartParams& params) {
  return {{"graph", graph_to_json(params.dag)},
          {"U", matrix_to_json(params.U).at("values")},
          {"alpha", vector_to_json(params.alpha)}};
}

json search_result_to_json(const SearchResult& r) {
  json restarts = json::array();
  for (const auto& s : r.per_restart)
    restarts.push_back({{"kappa", s.kappa}, {"best_score", s.best_score}});
  return {{"best", {{"graph", graph_to_json(r.best.dag)}, {"score", r.best.score}}},
          {"visited_count", r.visited.size()},
          {"per_restart", restarts}};
}

json report_to_json(const EstimatorReport& r) {
  json j = {{"estimator", r.estimator},
            {"target", to_string(r.target)},
            {"estimate", matrix_to_json(r.estimate)},
            {"hyperparameters", {{"b", r.b}, {"c", r.c}, {"u", r.u}}}};
  if (r.losses) j["losses"] = {{"stein", r.losses->stein}, {"l2", r.losses->l2}};
  return j;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    auto b = cur.find_first_not_of(" \t\r");
    auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

Matrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t width = 0;
  bool first = true;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_fields(line);
    std::vector<double> vals(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size(); ++k)
      if (!parse_double(fields[k], vals[k])) numeric = false;
    if (!numeric) {
      if (first) {
        first = false;
        width = fields.size();
        continue;
      }
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": non-numeric field");
    }
    first = false;
    if (width == 0) width = vals.size();
    if (vals.size() != width)
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(width) + " fields");
    rows.push_back(std::move(vals));
  }
  Matrix X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) X(r, c) = rows[r][c];
  return X;
}

Matrix read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Matrix& X, bool header) {
  if (header) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) out << (c ? "," : "") << "x" << (c + 1);
    out << "\n";
  }
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) out << (c ? "," : "") << format_double(X(r, c));
    out << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) { return json::parse(read_file(path)); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dagwish::io
