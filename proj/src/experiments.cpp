#include "dagwish/experiments.hpp"

#include <stdexcept>

namespace dagwish {

Table1Result run_table1(const Table1Config& cfg) {
  if (cfg.replications < 1) throw std::invalid_argument("table1: replications < 1");
  Table1Result res;
  for (int r = 0; r < cfg.replications; ++r) {
    Rng truth_rng = make_rng(cfg.seed, "table1/truth", r);
    auto [dag, theta] = random_dag(cfg.p, cfg.edge_prob, cfg.weight_lo, cfg.weight_hi, truth_rng);
    Rng data_rng = make_rng(cfg.seed, "table1/data", r);
    Matrix X = sample_data(theta, cfg.n, data_rng);

    SearchConfig sc = cfg.search;
    sc.seed = substream_seed(cfg.seed, "table1/search", r);
    SearchResult found = shotgun_search(X, sc);
    Dag lasso = lasso_dag(X, cfg.lasso_kappa);

    res.reps.push_back({confusion(dag, lasso), confusion(dag, found.best.dag), found.best.score,
                        dag.num_edges()});
  }
  const double m = static_cast<double>(res.reps.size());
  for (const auto& rep : res.reps) {
    res.lasso_sensitivity += rep.lasso.sensitivity / m;
    res.lasso_specificity += rep.lasso.specificity / m;
    res.dagw_sensitivity += rep.dagw.sensitivity / m;
    res.dagw_specificity += rep.dagw.specificity / m;
  }
  return res;
}

Table2Result run_table2(const Table2Config& cfg) {
  Rng truth_rng = make_rng(cfg.seed, "table2/truth");
  auto [dag, theta] = random_dag(cfg.p, cfg.edge_prob, cfg.weight_lo, cfg.weight_hi, truth_rng);
  (void)dag;
  return {theta, improvement_table(theta, cfg.configs, cfg.ns, cfg.replications,
                                   substream_seed(cfg.seed, "table2/replications"))};
}

}  // namespace dagwish
