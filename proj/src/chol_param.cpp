#include "dagwish/chol_param.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dagwish/errors.hpp"

namespace dagwish {

void validate(const CholeskyFactor& theta) {
  const int p = theta.dag.p();
  if (theta.D.size() != p) throw std::invalid_argument("CholeskyFactor: D has wrong length");
  if (theta.L.size() != static_cast<Eigen::Index>(theta.dag.num_edges()))
    throw std::invalid_argument("CholeskyFactor: L has wrong length");
  for (int i = 0; i < p; ++i)
    if (!(theta.D(i) > 0.0) || !std::isfinite(theta.D(i)))
      throw std::invalid_argument("CholeskyFactor: D entries must be positive");
  if (!theta.L.allFinite()) throw std::invalid_argument("CholeskyFactor: non-finite L");
}

void validate(const XiPoint& xi) {
  const int p = xi.dag.p();
  if (xi.lambda.size() != p) throw std::invalid_argument("XiPoint: lambda has wrong length");
  if (xi.beta.size() != static_cast<Eigen::Index>(xi.dag.num_edges()))
    throw std::invalid_argument("XiPoint: beta has wrong length");
  for (int i = 0; i < p; ++i)
    if (!(xi.lambda(i) > 0.0) || !std::isfinite(xi.lambda(i)))
      throw std::invalid_argument("XiPoint: lambda entries must be positive");
  if (!xi.beta.allFinite()) throw std::invalid_argument("XiPoint: non-finite beta");
}

Matrix CholeskyFactor::dense_L() const {
  const int p = dag.p();
  Matrix out = Matrix::Identity(p, p);
  const auto& e = dag.edges();
  for (std::size_t k = 0; k < e.size(); ++k) out(e[k].from, e[k].to) = L(k);
  return out;
}

XiPoint xi_from_cholesky(const CholeskyFactor& theta) {
  return {theta.dag, theta.D, -theta.L};
}

CholeskyFactor cholesky_from_xi(const XiPoint& xi) { return {xi.dag, xi.lambda, -xi.beta}; }

Matrix precision_from_cholesky(const CholeskyFactor& theta) {
  validate(theta);
  const Dag& d = theta.dag;
  const int p = d.p();
  Matrix omega = Matrix::Zero(p, p);
  for (int k = 0; k < p; ++k) {
    std::vector<int> fa = d.family(k);
    Vector v(fa.size());
    v(0) = 1.0;
    v.tail(fa.size() - 1) = theta.column(k);
    omega(fa, fa) += (v * v.transpose()) / theta.D(k);
  }
  return omega;
}

CholeskyFactor cholesky_from_precision(const Matrix& omega, const Dag& d, double pattern_tol) {
  const int p = d.p();
  if (omega.rows() != p) throw std::invalid_argument("cholesky_from_precision: dimension mismatch");
  require_symmetric(omega, "cholesky_from_precision");
  require_spd(omega, "cholesky_from_precision");

  Matrix W = omega;
  CholeskyFactor theta{d, Vector(p), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  for (int j = 0; j < p; ++j) {
    const double piv = W(j, j);
    if (!(piv > 0.0)) throw NotPositiveDefinite("cholesky_from_precision: non-positive pivot");
    theta.D(j) = 1.0 / piv;
    const int m = p - j - 1;
    if (m == 0) continue;
    Vector l = W.col(j).tail(m) / piv;
    for (int k = j + 1; k < p; ++k) {
      if (d.has_edge(k, j)) continue;
      const double scale = std::sqrt(W(k, k) * piv);
      if (std::abs(W(k, j)) > pattern_tol * scale)
        throw PatternError("cholesky_from_precision: entry (" + std::to_string(k + 1) + ", " +
                           std::to_string(j + 1) + ") of L lies outside the DAG pattern");
      l(k - j - 1) = 0.0;
    }
    W.bottomRightCorner(m, m).noalias() -= piv * l * l.transpose();
    auto pa = d.parents(j);
    const std::size_t off = d.edge_offset(j);
    for (std::size_t a = 0; a < pa.size(); ++a) theta.L(off + a) = l(pa[a] - j - 1);
  }
  return theta;
}

Matrix sigma_from_xi(const XiPoint& xi) {
  validate(xi);
  const Dag& d = xi.dag;
  const int p = d.p();
  Matrix sigma = Matrix::Zero(p, p);
  for (int i = p - 1; i >= 0; --i) {
    const int m = p - i - 1;
    std::vector<int> pa = to_vector(d.parents(i));
    if (pa.empty()) {
      sigma(i, i) = xi.lambda(i);
      continue;
    }
    Vector b = xi.coef(i);
    // Sigma_{k,i} = Sigma_{k,pa} beta for every k > i.
    std::vector<int> later(m);
    for (int k = 0; k < m; ++k) later[k] = i + 1 + k;
    Vector col = sigma(later, pa) * b;
    sigma.col(i).tail(m) = col;
    sigma.row(i).tail(m) = col.transpose();
    Vector spb(pa.size());
    for (std::size_t a = 0; a < pa.size(); ++a) spb(a) = col(pa[a] - i - 1);
    sigma(i, i) = xi.lambda(i) + b.dot(spb);
  }
  return sigma;
}

XiPoint xi_from_family_blocks(const Matrix& A, const Dag& d, double rel_eps) {
  const int p = d.p();
  XiPoint xi{d, Vector(p), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  for (int i = 0; i < p; ++i) {
    Regression r = regress(A, i, to_vector(d.parents(i)), rel_eps);
    xi.lambda(i) = r.lambda;
    xi.beta.segment(static_cast<Eigen::Index>(d.edge_offset(i)), r.beta.size()) = r.beta;
  }
  return xi;
}

XiPoint xi_from_sigma(const Matrix& sigma, const Dag& d) {
  if (sigma.rows() != d.p()) throw std::invalid_argument("xi_from_sigma: dimension mismatch");
  require_symmetric(sigma, "xi_from_sigma");
  require_spd(sigma, "xi_from_sigma");
  return xi_from_family_blocks(sigma, d);
}

bool is_dag_markov(const Matrix& sigma, const Dag& d, double tol) {
  if (sigma.rows() != d.p()) throw std::invalid_argument("is_dag_markov: dimension mismatch");
  require_symmetric(sigma, "is_dag_markov");
  require_spd(sigma, "is_dag_markov");
  for (int i = 0; i < d.p(); ++i) {
    std::vector<int> pa = to_vector(d.parents(i));
    std::vector<int> rest = d.later_nonparents(i);
    if (rest.empty()) continue;
    Regression r = regress(sigma, i, pa);
    for (int k : rest) {
      double fitted = 0.0;
      for (std::size_t a = 0; a < pa.size(); ++a) fitted += sigma(k, pa[a]) * r.beta(a);
      const double resid = sigma(k, i) - fitted;
      if (std::abs(resid) > tol * std::sqrt(sigma(k, k) * sigma(i, i))) return false;
    }
  }
  return true;
}

Matrix sample_data(const CholeskyFactor& theta, int n, Rng& rng) {
  validate(theta);
  if (n < 1) throw std::invalid_argument("sample_data: n must be >= 1");
  const Dag& d = theta.dag;
  const int p = d.p();
  Vector sd = theta.D.cwiseSqrt();
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix X(n, p);
  for (int r = 0; r < n; ++r) {
    for (int i = p - 1; i >= 0; --i) {
      auto pa = d.parents(i);
      auto l = theta.column(i);
      double mean = 0.0;
      for (std::size_t a = 0; a < pa.size(); ++a) mean -= l(a) * X(r, pa[a]);
      X(r, i) = mean + sd(i) * normal(rng);
    }
  }
  return X;
}

std::pair<Dag, CholeskyFactor> random_dag(int p, double edge_prob, double weight_lo,
                                          double weight_hi, Rng& rng) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw std::invalid_argument("random_dag: edge_prob must lie in [0, 1]");
  if (!(weight_lo > 0.0 && weight_hi >= weight_lo))
    throw std::invalid_argument("random_dag: weight range must lie in (0, inf)");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  std::vector<double> weights;
  // Column-major candidate order matches Dag's edge order.
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i) {
      if (unif(rng) < edge_prob) {
        edges.push_back({i, j});
        weights.push_back(weight_lo + (weight_hi - weight_lo) * unif(rng));
      }
    }
  Dag d(p, std::move(edges));
  CholeskyFactor theta{d, Vector::Ones(p), Vector(static_cast<Eigen::Index>(weights.size()))};
  for (std::size_t k = 0; k < weights.size(); ++k) theta.L(k) = -weights[k];
  return {d, theta};
}

}  // namespace dagwish
