#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagwish/estimators.hpp"
#include "dagwish/model_select.hpp"

namespace dagwish {

struct Table1Config {
  int p = 50;
  int n = 100;
  double edge_prob = 0.01;
  int replications = 20;
  double weight_lo = 0.2, weight_hi = 0.8;
  double lasso_kappa = 0.1;
  SearchConfig search;  // seed is overridden per replication
  std::uint64_t seed = 0;
};

struct Table1Rep {
  Confusion lasso;
  Confusion dagw;
  double dagw_score;
  std::size_t true_edges;
};

struct Table1Result {
  std::vector<Table1Rep> reps;
  double lasso_sensitivity = 0.0, lasso_specificity = 0.0;
  double dagw_sensitivity = 0.0, dagw_specificity = 0.0;
};

// Replication r draws its truth, data and search seed from substreams
// "table1/truth", "table1/data" and "table1/search" at index r.
Table1Result run_table1(const Table1Config& cfg);

struct Table2Config {
  int p = 50;
  double edge_prob = 0.01;
  std::vector<int> ns = {30, 50, 100};
  int replications = 50;
  double weight_lo = 0.2, weight_hi = 0.8;
  std::vector<ImprovementConfig> configs = {{3.0, 3.0, 3.0}};
  std::uint64_t seed = 0;
};

struct Table2Result {
  CholeskyFactor truth;
  std::vector<ImprovementRow> rows;
};

Table2Result run_table2(const Table2Config& cfg);

}  // namespace dagwish
