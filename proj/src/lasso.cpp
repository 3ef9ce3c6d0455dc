#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

#include "dagwish/errors.hpp"
#include "dagwish/model_select.hpp"

namespace dagwish {

namespace {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

double lasso_objective(const Vector& y, const Matrix& X, const Vector& beta, double tau) {
  const double n = static_cast<double>(y.size());
  return (y - X * beta).squaredNorm() / (2.0 * n) + tau * beta.lpNorm<1>();
}

double lasso_kkt_residual(const Vector& y, const Matrix& X, const Vector& beta, double tau) {
  const double n = static_cast<double>(y.size());
  Vector g = X.transpose() * (y - X * beta) / n;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double v;
    if (beta(j) != 0.0)
      v = std::abs(g(j) - tau * (beta(j) > 0.0 ? 1.0 : -1.0));
    else
      v = std::max(0.0, std::abs(g(j)) - tau);
    worst = std::max(worst, v);
  }
  return worst;
}

LassoResult lasso_node(const Vector& y, const Matrix& X, double tau, const LassoOptions& opts) {
  if (!(tau >= 0.0)) throw std::invalid_argument("lasso_node: tau must be >= 0");
  if (X.rows() != y.size()) throw std::invalid_argument("lasso_node: dimension mismatch");
  const Eigen::Index n = X.rows(), k = X.cols();
  const double dn = static_cast<double>(n);
  LassoResult res;
  res.beta = Vector::Zero(k);
  if (k == 0) {
    res.converged = true;
    return res;
  }
  Vector v = X.colwise().squaredNorm().transpose() / dn;
  Vector r = y;
  for (res.sweeps = 1; res.sweeps <= opts.max_sweeps; ++res.sweeps) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (v(j) == 0.0) continue;
      const double old = res.beta(j);
      const double g = X.col(j).dot(r) / dn;
      const double upd = soft_threshold(g + v(j) * old, tau) / v(j);
      if (upd != old) {
        r.noalias() -= (upd - old) * X.col(j);
        res.beta(j) = upd;
      }
    }
    if (opts.record_objective) res.objective.push_back(lasso_objective(y, X, res.beta, tau));
    res.kkt = lasso_kkt_residual(y, X, res.beta, tau);
    if (res.kkt <= opts.tol) {
      res.converged = true;
      return res;
    }
  }
  res.sweeps = opts.max_sweeps;
  return res;
}

Matrix standardize(const Matrix& data) {
  Matrix z = data.rowwise() - data.colwise().mean();
  const double n = static_cast<double>(data.rows());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const double sd = std::sqrt(z.col(j).squaredNorm() / n);
    if (sd > 0.0)
      z.col(j) /= sd;
    else
      z.col(j).setZero();
  }
  return z;
}

double lasso_penalty(double kappa, int p, int num_candidates, int n) {
  if (!(kappa > 0.0)) throw std::invalid_argument("lasso_penalty: kappa must be positive");
  if (num_candidates < 1 || n < 1) throw std::invalid_argument("lasso_penalty: bad sizes");
  const double q = kappa / (2.0 * p * num_candidates);
  if (q >= 0.5) return 0.0;
  boost::math::normal_distribution<double> normal;
  return 2.0 * boost::math::quantile(boost::math::complement(normal, q)) /
         std::sqrt(static_cast<double>(n));
}

Dag lasso_dag_standardized(const Matrix& z, double kappa, const LassoOptions& opts) {
  const int n = static_cast<int>(z.rows());
  const int p = static_cast<int>(z.cols());
  if (n < 2) throw std::invalid_argument("lasso_dag: need at least two observations");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < p; ++i) {
    const int m = p - 1 - i;
    const double tau = lasso_penalty(kappa, p, m, n);
    LassoResult fit = lasso_node(z.col(i), z.rightCols(m), tau / 2, opts);
    if (!fit.converged)
      throw ConvergenceError("lasso_dag: coordinate descent for vertex " + std::to_string(i + 1) +
                             " did not converge (KKT residual " + std::to_string(fit.kkt) + ")");
    for (int a = 0; a < m; ++a)
      if (fit.beta(a) != 0.0) edges.push_back({i + 1 + a, i});
  }
  return Dag(p, std::move(edges));
}

Dag lasso_dag(const Matrix& data, double kappa, const LassoOptions& opts) {
  return lasso_dag_standardized(standardize(data), kappa, opts);
}

}  // namespace dagwish
