#include "dagwish/dag_wishart.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "dagwish/errors.hpp"

namespace dagwish {

namespace {

constexpr double kLog2 = 0.69314718055994530942;
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kLog2Pi = 1.83787706640934548356;

// (1, L_<i|) on fa(i).
Vector family_column(const CholeskyFactor& theta, int i) {
  Vector v(theta.dag.num_parents(i) + 1);
  v(0) = 1.0;
  v.tail(v.size() - 1) = theta.column(i);
  return v;
}

}  // namespace

SuffStats suff_stats(const Matrix& X) {
  if (X.rows() < 1) throw std::invalid_argument("suff_stats: no observations");
  return {static_cast<int>(X.rows()), (X.transpose() * X) / static_cast<double>(X.rows())};
}

Vector alpha_rule(const Dag& d, double b, double c) {
  Vector a(d.p());
  for (int i = 0; i < d.p(); ++i) a(i) = c * d.num_parents(i) + b;
  return a;
}

std::vector<ShapeViolation> check_shape(const DagWishartParams& params, bool need_moments) {
  const double off = need_moments ? 4.0 : 2.0;
  std::vector<ShapeViolation> out;
  for (int i = 0; i < params.dag.p(); ++i) {
    const double bound = params.dag.num_parents(i) + off;
    if (!(params.alpha(i) > bound)) out.push_back({i, params.alpha(i), bound});
  }
  return out;
}

void require_shape(const DagWishartParams& params, double offset, const std::string& what) {
  std::vector<ShapeViolation> v;
  for (int i = 0; i < params.dag.p(); ++i) {
    const double bound = params.dag.num_parents(i) + offset;
    if (!(params.alpha(i) > bound)) v.push_back({i, params.alpha(i), bound});
  }
  if (!v.empty()) {
    std::string msg = what + ": shape condition alpha_i > pa_i + " + std::to_string(offset) +
                      " fails at vertex";
    for (const auto& s : v) msg += " " + std::to_string(s.vertex + 1);
    throw ShapeError(msg, std::move(v));
  }
}

void validate(const DagWishartParams& params) {
  const int p = params.dag.p();
  if (params.U.rows() != p || params.U.cols() != p)
    throw std::invalid_argument("DagWishartParams: U has wrong dimension");
  if (params.alpha.size() != p)
    throw std::invalid_argument("DagWishartParams: alpha has wrong length");
  require_symmetric(params.U, "DagWishartParams");
  require_spd(params.U, "DagWishartParams U");
}

double log_normalizer_term(const Matrix& U, int i, const std::vector<int>& pa, double alpha_i) {
  const double npa = static_cast<double>(pa.size());
  const double a = alpha_i / 2.0 - npa / 2.0 - 1.0;
  if (!(a > 0.0)) throw std::invalid_argument("log_normalizer_term: alpha_i <= pa_i + 2");
  std::vector<int> fa;
  fa.reserve(pa.size() + 1);
  fa.push_back(i);
  fa.insert(fa.end(), pa.begin(), pa.end());
  Eigen::LLT<Matrix> llt_fa;
  if (!try_cholesky(U(fa, fa), llt_fa))
    throw NotPositiveDefinite("log_normalizer: family block of U is not positive definite");
  const double ld_fa = log_det(llt_fa);
  double ld_pa = 0.0;
  if (!pa.empty()) {
    Eigen::LLT<Matrix> llt_pa;
    if (!try_cholesky(U(pa, pa), llt_pa))
      throw NotPositiveDefinite("log_normalizer: parent block of U is not positive definite");
    ld_pa = log_det(llt_pa);
  }
  return boost::math::lgamma(a) + (alpha_i / 2.0 - 1.0) * kLog2 + npa / 2.0 * kLogPi +
         (a - 0.5) * ld_pa - a * ld_fa;
}

double log_normalizer(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 2.0, "log_normalizer");
  double s = 0.0;
  for (int i = 0; i < params.dag.p(); ++i)
    s += log_normalizer_term(params.U, i, to_vector(params.dag.parents(i)), params.alpha(i));
  return s;
}

double log_density_theta(const CholeskyFactor& theta, const DagWishartParams& params) {
  validate(theta);
  if (!(theta.dag == params.dag))
    throw std::invalid_argument("log_density_theta: DAG mismatch");
  double s = -log_normalizer(params);
  for (int i = 0; i < theta.dag.p(); ++i) {
    Vector v = family_column(theta, i);
    std::vector<int> fa = theta.dag.family(i);
    const double q = v.dot(params.U(fa, fa) * v);
    s += -0.5 * q / theta.D(i) - params.alpha(i) / 2.0 * std::log(theta.D(i));
  }
  return s;
}

double log_density_xi(const XiPoint& xi, const DagWishartParams& params) {
  return log_density_theta(cholesky_from_xi(xi), params);
}

double log_density_precision(const IncompleteMatrix& upsilon, const DagWishartParams& params) {
  if (!(upsilon.dag == params.dag))
    throw std::invalid_argument("log_density_precision: DAG mismatch");
  PrecisionCompletion c = complete_precision(upsilon);
  double s = log_density_theta(c.theta, params);
  for (int i = 0; i < params.dag.p(); ++i)
    s += (params.dag.num_parents(i) + 2.0) * std::log(c.theta.D(i));
  return s;
}

double log_density_covariance(const IncompleteMatrix& gamma, const DagWishartParams& params) {
  if (!(gamma.dag == params.dag))
    throw std::invalid_argument("log_density_covariance: DAG mismatch");
  Matrix sigma = complete_covariance(gamma);
  double s = -log_normalizer(params);
  auto llt = require_spd(sigma, "log_density_covariance");
  s -= 0.5 * llt.solve(params.U).trace();
  for (int i = 0; i < params.dag.p(); ++i) {
    std::vector<int> fa = params.dag.family(i);
    std::vector<int> pa(fa.begin() + 1, fa.end());
    const double a = params.alpha(i);
    s -= a / 2.0 * log_det_spd(sigma(fa, fa));
    if (!pa.empty()) s += (a / 2.0 - 1.0) * log_det_spd(sigma(pa, pa));
  }
  return s;
}

double log_likelihood(const CholeskyFactor& theta, const SuffStats& stats) {
  validate(theta);
  const int p = theta.dag.p();
  double s = -0.5 * stats.n * p * kLog2Pi;
  for (int i = 0; i < p; ++i) {
    Vector v = family_column(theta, i);
    std::vector<int> fa = theta.dag.family(i);
    const double q = v.dot(stats.S(fa, fa) * v);
    s -= 0.5 * stats.n * (std::log(theta.D(i)) + q / theta.D(i));
  }
  return s;
}

PriorSampler::PriorSampler(const DagWishartParams& params) : dag_(params.dag) {
  validate(params);
  require_shape(params, 2.0, "sample_prior");
  for (int i = 0; i < dag_.p(); ++i) {
    std::vector<int> pa = to_vector(dag_.parents(i));
    Regression r = regress(params.U, i, pa);
    Block b;
    b.shape = params.alpha(i) / 2.0 - pa.size() / 2.0 - 1.0;
    b.scale = r.lambda / 2.0;
    b.mean = -r.beta;
    if (!pa.empty()) {
      Eigen::LLT<Matrix> llt(params.U(pa, pa));
      Matrix R = llt.matrixU();
      b.chol_inv_t = R.triangularView<Eigen::Upper>().solve(
          Matrix::Identity(static_cast<Eigen::Index>(pa.size()),
                           static_cast<Eigen::Index>(pa.size())));
    }
    blocks_.push_back(std::move(b));
  }
}

CholeskyFactor PriorSampler::operator()(Rng& rng) const {
  const int p = dag_.p();
  CholeskyFactor theta{dag_, Vector(p), Vector(static_cast<Eigen::Index>(dag_.num_edges()))};
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < p; ++i) {
    const Block& b = blocks_[i];
    std::gamma_distribution<double> gamma(b.shape, 1.0);
    const double d = b.scale / gamma(rng);
    theta.D(i) = d;
    const Eigen::Index m = b.mean.size();
    if (m == 0) continue;
    Vector z(m);
    for (Eigen::Index k = 0; k < m; ++k) z(k) = normal(rng);
    theta.L.segment(static_cast<Eigen::Index>(dag_.edge_offset(i)), m) =
        b.mean + std::sqrt(d) * (b.chol_inv_t * z);
  }
  return theta;
}

CholeskyFactor sample_prior(const DagWishartParams& params, Rng& rng) {
  return PriorSampler(params)(rng);
}

DagWishartParams posterior(const DagWishartParams& params, const SuffStats& stats) {
  if (stats.n < 0) throw std::invalid_argument("posterior: negative sample size");
  if (stats.n == 0) return params;
  if (stats.S.rows() != params.dag.p())
    throw std::invalid_argument("posterior: dimension mismatch");
  return {params.dag, params.U + stats.n * stats.S,
          params.alpha + Vector::Constant(params.dag.p(), stats.n)};
}

double log_marginal_likelihood(const SuffStats& stats, const DagWishartParams& params) {
  DagWishartParams post = posterior(params, stats);
  return -0.5 * stats.n * params.dag.p() * kLog2Pi + log_normalizer(post) -
         log_normalizer(params);
}

Vector prior_mean_L(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 3.0, "prior_mean_L");
  Vector out(static_cast<Eigen::Index>(params.dag.num_edges()));
  for (int i = 0; i < params.dag.p(); ++i) {
    Regression r = regress(params.U, i, to_vector(params.dag.parents(i)));
    out.segment(static_cast<Eigen::Index>(params.dag.edge_offset(i)), r.beta.size()) = -r.beta;
  }
  return out;
}

CholeskyMoments prior_moments_cholesky(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 4.0, "prior_moments_cholesky");
  CholeskyMoments m{Vector(params.dag.p()), prior_mean_L(params)};
  for (int i = 0; i < params.dag.p(); ++i) {
    const int npa = params.dag.num_parents(i);
    Regression r = regress(params.U, i, to_vector(params.dag.parents(i)));
    m.mean_D(i) = r.lambda / (params.alpha(i) - npa - 4.0);
  }
  return m;
}

IncompleteMatrix mean_incomplete_precision(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 2.0, "mean_incomplete_precision");
  const Dag& d = params.dag;
  Matrix M = Matrix::Zero(d.p(), d.p());
  for (int j = 0; j < d.p(); ++j) {
    std::vector<int> fa = d.family(j);
    std::vector<int> pa(fa.begin() + 1, fa.end());
    const double a = params.alpha(j);
    const double npa = static_cast<double>(pa.size());
    M(fa, fa) += (a - npa - 2.0) * inverse_spd(params.U(fa, fa), "mean_incomplete_precision");
    if (!pa.empty())
      M(pa, pa) -= (a - npa - 3.0) * inverse_spd(params.U(pa, pa), "mean_incomplete_precision");
  }
  return project(M, d);
}

Matrix mean_covariance_table(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 4.0, "mean_incomplete_covariance");
  const Dag& d = params.dag;
  const int p = d.p();
  Matrix E = Matrix::Zero(p, p);
  for (int i = p - 1; i >= 0; --i) {
    std::vector<int> pa = to_vector(d.parents(i));
    Regression r = regress(params.U, i, pa);
    const double mean_lambda = r.lambda / (params.alpha(i) - pa.size() - 4.0);
    if (pa.empty()) {
      E(i, i) = mean_lambda;
      continue;
    }
    // beta_<i| is independent of Sigma restricted to {i+1..p}, with mean
    // U_<i>^{-1} U_<i| and covariance E(lambda_i) U_<i>^{-1}.
    const int m = p - i - 1;
    std::vector<int> later(m);
    for (int k = 0; k < m; ++k) later[k] = i + 1 + k;
    Vector col = E(later, pa) * r.beta;
    E.col(i).tail(m) = col;
    E.row(i).tail(m) = col.transpose();
    Matrix second = mean_lambda * inverse_spd(params.U(pa, pa), "mean_incomplete_covariance") +
                    r.beta * r.beta.transpose();
    E(i, i) = mean_lambda + (E(pa, pa).cwiseProduct(second)).sum();
  }
  return E;
}

IncompleteMatrix mean_incomplete_covariance(const DagWishartParams& params) {
  return project(mean_covariance_table(params), params.dag);
}

XiPoint mode_xi(const DagWishartParams& params) {
  validate(params);
  require_shape(params, 2.0, "mode_xi");
  const Dag& d = params.dag;
  XiPoint xi{d, Vector(d.p()), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  for (int i = 0; i < d.p(); ++i) {
    Regression r = regress(params.U, i, to_vector(d.parents(i)));
    xi.lambda(i) = r.lambda / params.alpha(i);
    xi.beta.segment(static_cast<Eigen::Index>(d.edge_offset(i)), r.beta.size()) = r.beta;
  }
  return xi;
}

double log_laplace_ratio(const IncompleteMatrix& K, const DagWishartParams& params) {
  validate(K);
  if (!(K.dag == params.dag)) throw std::invalid_argument("laplace_ratio: DAG mismatch");
  DagWishartParams shifted{params.dag, params.U + 2.0 * K.zero_fill(), params.alpha};
  Eigen::LLT<Matrix> llt;
  if (!try_cholesky(shifted.U, llt))
    throw NotPositiveDefinite("laplace_ratio: 2K + U is not positive definite");
  return log_normalizer(shifted) - log_normalizer(params);
}

double laplace_ratio(const IncompleteMatrix& K, const DagWishartParams& params) {
  return std::exp(log_laplace_ratio(K, params));
}

}  // namespace dagwish
