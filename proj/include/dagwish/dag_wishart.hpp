#pragma once

#include <stdexcept>
#include <vector>

#include "dagwish/chol_param.hpp"
#include "dagwish/completion.hpp"

namespace dagwish {

struct DagWishartParams {
  Dag dag;
  Matrix U;
  Vector alpha;
};

// n observations summarized by S = (1/n) sum y y^T.
struct SuffStats {
  int n = 0;
  Matrix S;
};

SuffStats suff_stats(const Matrix& X);

// alpha_i = c * pa_i + b.
Vector alpha_rule(const Dag& d, double b, double c);

struct ShapeViolation {
  int vertex;
  double alpha;
  double bound;  // alpha must exceed this
};

struct ShapeError : std::invalid_argument {
  ShapeError(const std::string& what, std::vector<ShapeViolation> v)
      : std::invalid_argument(what), violations(std::move(v)) {}
  std::vector<ShapeViolation> violations;
};

// Violations of alpha_i > pa_i + 2 (or pa_i + 4 when need_moments).
std::vector<ShapeViolation> check_shape(const DagWishartParams& params, bool need_moments);

// Shape check with an arbitrary offset: alpha_i > pa_i + offset.
void require_shape(const DagWishartParams& params, double offset, const std::string& what);

// Checks dimensions, symmetry and positive definiteness of U.
void validate(const DagWishartParams& params);

// Vertex i's factor of log z_D. Only U's family block of i is read.
double log_normalizer_term(const Matrix& U, int i, const std::vector<int>& pa, double alpha_i);

double log_normalizer(const DagWishartParams& params);

double log_density_theta(const CholeskyFactor& theta, const DagWishartParams& params);
// Density on Xi_D; the map (lambda, beta) -> (D, L) has unit Jacobian.
double log_density_xi(const XiPoint& xi, const DagWishartParams& params);
double log_density_precision(const IncompleteMatrix& upsilon, const DagWishartParams& params);
double log_density_covariance(const IncompleteMatrix& gamma, const DagWishartParams& params);

// Gaussian log likelihood of n observations with covariance L^{-T} D L^{-1}.
double log_likelihood(const CholeskyFactor& theta, const SuffStats& stats);

// Exact sampler with per-vertex factorizations computed once.
class PriorSampler {
 public:
  explicit PriorSampler(const DagWishartParams& params);
  CholeskyFactor operator()(Rng& rng) const;

 private:
  struct Block {
    double shape;  // of D_ii ~ IG(shape, scale)
    double scale;
    Vector mean;   // of L_<i| given D
    Matrix chol_inv_t;  // R^{-1} with U_<i> = R^T R
  };
  Dag dag_;
  std::vector<Block> blocks_;
};

CholeskyFactor sample_prior(const DagWishartParams& params, Rng& rng);

DagWishartParams posterior(const DagWishartParams& params, const SuffStats& stats);

double log_marginal_likelihood(const SuffStats& stats, const DagWishartParams& params);

struct CholeskyMoments {
  Vector mean_D;
  Vector mean_L;  // per-edge layout
};

// E(D) and E(L); requires alpha_i > pa_i + 4.
CholeskyMoments prior_moments_cholesky(const DagWishartParams& params);
// E(L) alone; requires alpha_i > pa_i + 3.
Vector prior_mean_L(const DagWishartParams& params);

IncompleteMatrix mean_incomplete_precision(const DagWishartParams& params);
// Full matrix of E(Sigma) entries built by the recursion; its projection is
// mean_incomplete_covariance. Requires alpha_i > pa_i + 4.
Matrix mean_covariance_table(const DagWishartParams& params);
IncompleteMatrix mean_incomplete_covariance(const DagWishartParams& params);

// Mode of the Xi_D density: lambda_i = U_{ii|<i>} / alpha_i,
// beta = U_<i>^{-1} U_<i| (so L = -U_<i>^{-1} U_<i|).
XiPoint mode_xi(const DagWishartParams& params);

double log_laplace_ratio(const IncompleteMatrix& K, const DagWishartParams& params);
double laplace_ratio(const IncompleteMatrix& K, const DagWishartParams& params);

}  // namespace dagwish
