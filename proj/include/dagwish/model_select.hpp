#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "dagwish/dag_wishart.hpp"

namespace dagwish {

// ---- Lasso ----

struct LassoOptions {
  double tol = 1e-8;  // KKT residual target
  int max_sweeps = 100000;
  bool record_objective = false;
};

struct LassoResult {
  Vector beta;
  int sweeps = 0;
  bool converged = false;
  double kkt = 0.0;
  std::vector<double> objective;  // after each sweep, if requested
};

// Minimizes (1/2n)||y - X beta||^2 + tau ||beta||_1 by cyclic coordinate descent.
LassoResult lasso_node(const Vector& y, const Matrix& X, double tau,
                       const LassoOptions& opts = {});

double lasso_objective(const Vector& y, const Matrix& X, const Vector& beta, double tau);
// Largest violation of the subgradient optimality conditions.
double lasso_kkt_residual(const Vector& y, const Matrix& X, const Vector& beta, double tau);

// Columns centered and scaled to unit population variance. Constant columns
// are left at zero.
Matrix standardize(const Matrix& data);

// tau = 2 Z*_q / sqrt(n) with q = kappa / (2 p m) and m candidate parents.
// q >= 0.5 gives tau = 0.
double lasso_penalty(double kappa, int p, int num_candidates, int n);

// Node-wise lasso on standardized data: vertex i regresses on {i+1..p-1}
// minimizing (1/n)||y - X beta||^2 + tau_i ||beta||_1, i.e. lasso_node at tau_i / 2.
Dag lasso_dag(const Matrix& data, double kappa, const LassoOptions& opts = {});
Dag lasso_dag_standardized(const Matrix& z, double kappa, const LassoOptions& opts = {});

// ---- Scores ----

struct ScoreHyper {
  double b = 3.0;
  double c = 1.0;
  double u = 1.0;  // U = u I
};

// Per-vertex log marginal likelihood factors with alpha_i = c pa_i + b,
// memoized by (vertex, parent set). Lookups are shared-locked, inserts
// exclusive, so one scorer serves concurrent restarts.
class GraphScorer {
 public:
  GraphScorer(const SuffStats& stats, const ScoreHyper& hyper);

  double vertex_score(int i, std::span<const int> parents) const;
  std::vector<double> vertex_scores(const Dag& d) const;
  // Sum of vertex scores in vertex order, so equal graphs score bitwise equal.
  double score(const Dag& d) const;
  int p() const { return p_; }
  std::size_t cache_size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& k) const;
  };
  int p_;
  int n_;
  ScoreHyper hyper_;
  Matrix U_;
  Matrix U_post_;
  mutable std::vector<std::unordered_map<std::vector<int>, double, KeyHash>> cache_;
  mutable std::unique_ptr<std::shared_mutex[]> locks_;
};

double graph_score(const Dag& d, const SuffStats& stats, const ScoreHyper& hyper);

// ---- Search ----

struct SearchConfig {
  int restarts = 16;      // N
  int steps = 100;        // M
  int neighborhood = 30;  // N1
  double gamma = 0.5;
  ScoreHyper hyper;
  std::vector<double> kappa_grid;  // empty: default_kappa_grid(p, restarts)
  bool sample_from_accumulated = false;
  std::uint64_t seed = 0;
};

// {(k / (N-1))^4 p : k = 1..N-1} followed by 0.1.
std::vector<double> default_kappa_grid(int p, int restarts);

struct ScoredGraph {
  Dag dag;
  double score;
};

struct RestartSummary {
  double kappa;
  double best_score;
};

struct SearchResult {
  ScoredGraph best;
  std::vector<ScoredGraph> visited;  // deduplicated, first-visit order
  std::vector<RestartSummary> per_restart;
};

// Index drawn with probability proportional to exp(gamma * s_k).
std::size_t sample_annealed(std::span<const double> scores, double gamma, Rng& rng);
// Normalized probabilities via log-sum-exp.
std::vector<double> annealed_probabilities(std::span<const double> scores, double gamma);

SearchResult shotgun_search(const Matrix& data, const SearchConfig& config);

// ---- Recovery metrics ----

struct Confusion {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  double sensitivity = 1.0;
  double specificity = 1.0;
  bool sensitivity_undefined = false;  // truth has no edges
  bool specificity_undefined = false;  // truth is complete
};

Confusion confusion(const Dag& truth, const Dag& estimate);

}  // namespace dagwish
