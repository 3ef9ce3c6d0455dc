#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagwish/dag_wishart.hpp"

namespace dagwish {

enum class Target { sigma, omega };

struct Losses {
  double stein = 0.0;
  double l2 = 0.0;
};

struct EstimatorReport {
  std::string estimator;
  Target target = Target::sigma;
  Matrix estimate;
  std::optional<Losses> losses;
  double b = 0.0, c = 0.0, u = 0.0;  // alpha_i = c pa_i + b, U = u I
};

// Graph-constrained maximum likelihood estimate of Sigma.
Matrix mle(const SuffStats& stats, const Dag& d);

// Posterior mode of Sigma in Xi_D coordinates.
Matrix map_estimate(const SuffStats& stats, const DagWishartParams& params);

// Completed posterior means of Sigma^E and Omega^E.
Matrix bayes_sigma(const SuffStats& stats, const DagWishartParams& params);
Matrix bayes_omega(const SuffStats& stats, const DagWishartParams& params);

// Sum over directed edges of (M_ij - Mhat_ij)^2.
double loss_l2(const Matrix& M, const Matrix& Mhat, const Dag& d);
// tr(Mhat M^{-1}) - log det(Mhat M^{-1}) - p.
double loss_stein(const Matrix& Mhat, const Matrix& M);

struct ImprovementConfig {
  double c = 3.0;
  double u = 3.0;
  double b = 3.0;
};

struct ImprovementRow {
  std::string estimator;
  Target target;
  int n;
  std::string loss;  // "L1" (Stein) or "L2"
  double improvement_pct;
  double mc_se;
  double c, u;
  int replications;  // replications that produced both this estimate and the MLE
  int failures;
};

// Relative risk improvement over the MLE, 100 (R_ML - R_est) / R_ML with
// risks estimated by replication means; mc_se is the delta-method standard
// error of the ratio. Replication r at sample size n draws data from the
// substream ("improvement/n", r) of seed, so results do not depend on the
// thread count.
std::vector<ImprovementRow> improvement_table(const CholeskyFactor& truth,
                                              const std::vector<ImprovementConfig>& configs,
                                              const std::vector<int>& ns, int replications,
                                              std::uint64_t seed);

std::string to_string(Target t);

}  // namespace dagwish
