#pragma once

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dagwish/estimators.hpp"
#include "dagwish/model_select.hpp"

namespace dagwish::io {

using json = nlohmann::ordered_json;

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

json graph_to_json(const Dag& d);
Dag graph_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json theta_to_json(const CholeskyFactor& theta);
CholeskyFactor theta_from_json(const json& j);

json incomplete_to_json(const IncompleteMatrix& m);
IncompleteMatrix incomplete_from_json(const json& j);

// Params JSON with either explicit or rule-based U and alpha.
struct ParamsSpec {
  std::optional<Dag> graph;
  std::optional<Matrix> U;
  std::optional<double> u;  // scaled identity
  std::optional<Vector> alpha;
  std::optional<std::pair<double, double>> rule;  // (b, c)
};
ParamsSpec params_spec_from_json(const json& j);
json params_spec_to_json(const ParamsSpec& s);
// Evaluates rule forms against d (or the spec's own graph when d is null).
DagWishartParams resolve(const ParamsSpec& s, const Dag* d = nullptr);
json params_to_json(const DagWishartParams& params);

json search_result_to_json(const SearchResult& r);
json report_to_json(const EstimatorReport& r);

// Data matrix CSV, optional header row.
Matrix read_csv(std::istream& in);
Matrix read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Matrix& X, bool header = true);

json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string dump(const json& j);

}  // namespace dagwish::io
