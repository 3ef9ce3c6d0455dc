#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "dagwish/model_select.hpp"

namespace dagwish {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356;

}  // namespace

// ---- GraphScorer ----

std::size_t GraphScorer::KeyHash::operator()(const std::vector<int>& k) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : k) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
  return h;
}

GraphScorer::GraphScorer(const SuffStats& stats, const ScoreHyper& hyper)
    : p_(static_cast<int>(stats.S.rows())),
      n_(stats.n),
      hyper_(hyper),
      U_(hyper.u * Matrix::Identity(p_, p_)),
      U_post_(U_ + stats.n * stats.S),
      cache_(p_),
      locks_(new std::shared_mutex[p_]) {
  if (!(hyper.u > 0.0)) throw std::invalid_argument("GraphScorer: u must be positive");
  if (stats.S.cols() != p_) throw std::invalid_argument("GraphScorer: S is not square");
}

double GraphScorer::vertex_score(int i, std::span<const int> parents) const {
  std::vector<int> key(parents.begin(), parents.end());
  {
    std::shared_lock lock(locks_[i]);
    auto it = cache_[i].find(key);
    if (it != cache_[i].end()) return it->second;
  }
  const double npa = static_cast<double>(key.size());
  const double alpha = hyper_.c * npa + hyper_.b;
  if (!(alpha > npa + 2.0))
    throw ShapeError("graph_score: shape rule gives alpha_" + std::to_string(i + 1) +
                         " <= pa_" + std::to_string(i + 1) + " + 2",
                     {{i, alpha, npa + 2.0}});
  const double v = -0.5 * n_ * kLog2Pi + log_normalizer_term(U_post_, i, key, alpha + n_) -
                   log_normalizer_term(U_, i, key, alpha);
  std::unique_lock lock(locks_[i]);
  cache_[i].emplace(std::move(key), v);
  return v;
}

std::vector<double> GraphScorer::vertex_scores(const Dag& d) const {
  if (d.p() != p_) throw std::invalid_argument("GraphScorer: dimension mismatch");
  std::vector<double> out(p_);
  for (int i = 0; i < p_; ++i) out[i] = vertex_score(i, d.parents(i));
  return out;
}

double GraphScorer::score(const Dag& d) const {
  double s = 0.0;
  for (double v : vertex_scores(d)) s += v;
  return s;
}

std::size_t GraphScorer::cache_size() const {
  std::size_t s = 0;
  for (int i = 0; i < p_; ++i) {
    std::shared_lock lock(locks_[i]);
    s += cache_[i].size();
  }
  return s;
}

double graph_score(const Dag& d, const SuffStats& stats, const ScoreHyper& hyper) {
  return GraphScorer(stats, hyper).score(d);
}

// ---- Annealed selection ----

std::vector<double> annealed_probabilities(std::span<const double> scores, double gamma) {
  if (scores.empty()) throw std::invalid_argument("annealed_probabilities: empty list");
  const double top = gamma * *std::max_element(scores.begin(), scores.end());
  std::vector<double> w(scores.size());
  double total = 0.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    w[k] = std::exp(gamma * scores[k] - top);
    total += w[k];
  }
  for (double& x : w) x /= total;
  return w;
}

std::size_t sample_annealed(std::span<const double> scores, double gamma, Rng& rng) {
  std::vector<double> w = annealed_probabilities(scores, gamma);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (u < w[k]) return k;
    u -= w[k];
  }
  // Rounding left u above the total; take the last candidate with mass.
  for (std::size_t k = w.size(); k-- > 0;)
    if (w[k] > 0.0) return k;
  return w.size() - 1;
}

// ---- Search ----

std::vector<double> default_kappa_grid(int p, int restarts) {
  if (restarts < 1) throw std::invalid_argument("default_kappa_grid: restarts < 1");
  std::vector<double> grid;
  const int m = restarts - 1;
  for (int k = 1; k <= m; ++k) grid.push_back(std::pow(static_cast<double>(k) / m, 4) * p);
  grid.push_back(0.1);
  return grid;
}

namespace {

struct RestartTrace {
  std::vector<ScoredGraph> list;
  RestartSummary summary;
};

RestartTrace run_restart(const Matrix& z, const GraphScorer& scorer, const SearchConfig& cfg,
                         double kappa, std::size_t index) {
  Rng rng = make_rng(cfg.seed, "restart", index);
  const int p = static_cast<int>(z.cols());
  RestartTrace t;
  Dag cur = lasso_dag_standardized(z, kappa);
  t.list.push_back({cur, scorer.score(cur)});
  std::vector<double> latest_scores;
  std::vector<std::size_t> latest_index;
  for (int step = 0; step < cfg.steps; ++step) {
    latest_scores.clear();
    latest_index.clear();
    for (const Edge& e : sample_toggles(p, static_cast<std::size_t>(cfg.neighborhood), rng)) {
      Dag g = cur.toggled(e.from, e.to);
      double s;
      try {
        s = scorer.score(g);
      } catch (const std::exception& ex) {
        std::cerr << "warning: skipping candidate in restart " << index << ": " << ex.what()
                  << "\n";
        continue;
      }
      latest_scores.push_back(s);
      latest_index.push_back(t.list.size());
      t.list.push_back({std::move(g), s});
    }
    if (latest_scores.empty()) break;
    std::size_t next;
    if (cfg.sample_from_accumulated) {
      std::vector<double> all(t.list.size());
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = t.list[k].score;
      next = sample_annealed(all, cfg.gamma, rng);
    } else {
      next = latest_index[sample_annealed(latest_scores, cfg.gamma, rng)];
    }
    cur = t.list[next].dag;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : t.list) best = std::max(best, g.score);
  t.summary = {kappa, best};
  return t;
}

}  // namespace

SearchResult shotgun_search(const Matrix& data, const SearchConfig& config) {
  if (config.restarts < 1 || config.steps < 1 || config.neighborhood < 1 ||
      !(config.gamma > 0.0))
    throw std::invalid_argument("shotgun_search: invalid configuration");
  const int p = static_cast<int>(data.cols());
  std::vector<double> grid =
      config.kappa_grid.empty() ? default_kappa_grid(p, config.restarts) : config.kappa_grid;
  Matrix z = standardize(data);
  GraphScorer scorer(suff_stats(z), config.hyper);

  std::vector<RestartTrace> traces(grid.size());
  std::vector<std::string> errors(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < grid.size(); ++k) {
    try {
      traces[k] = run_restart(z, scorer, config, grid[k], k);
    } catch (const std::exception& ex) {
      errors[k] = ex.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("shotgun_search: " + e);

  SearchResult res{ScoredGraph{Dag(p), -std::numeric_limits<double>::infinity()}, {}, {}};
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  for (auto& t : traces) {
    res.per_restart.push_back(t.summary);
    for (auto& g : t.list) {
      auto& bucket = seen[g.dag.hash()];
      bool dup = false;
      for (std::size_t idx : bucket)
        if (res.visited[idx].dag == g.dag) {
          dup = true;
          break;
        }
      if (dup) continue;
      bucket.push_back(res.visited.size());
      if (g.score > res.best.score) res.best = g;
      res.visited.push_back(std::move(g));
    }
  }
  return res;
}

// ---- Recovery metrics ----

Confusion confusion(const Dag& truth, const Dag& estimate) {
  if (truth.p() != estimate.p()) throw std::invalid_argument("confusion: dimension mismatch");
  Confusion c;
  for (int j = 0; j < truth.p(); ++j)
    for (int i = j + 1; i < truth.p(); ++i) {
      const bool t = truth.has_edge(i, j), e = estimate.has_edge(i, j);
      if (t && e) ++c.tp;
      else if (t) ++c.fn;
      else if (e) ++c.fp;
      else ++c.tn;
    }
  c.sensitivity_undefined = c.tp + c.fn == 0;
  c.specificity_undefined = c.tn + c.fp == 0;
  c.sensitivity = c.sensitivity_undefined ? 1.0 : static_cast<double>(c.tp) / (c.tp + c.fn);
  c.specificity = c.specificity_undefined ? 1.0 : static_cast<double>(c.tn) / (c.tn + c.fp);
  return c;
}

}  // namespace dagwish
