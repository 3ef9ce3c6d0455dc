#pragma once

#include <utility>

#include "dagwish/dag.hpp"
#include "dagwish/linalg.hpp"
#include "dagwish/rng.hpp"

namespace dagwish {

// (D, L) with Omega = L D^{-1} L^T. L has a unit diagonal; off-diagonal
// values are stored one per edge in dag.edges() order, so L(from, to) sits
// at index dag.edge_index(from, to) and column j is a contiguous segment.
struct CholeskyFactor {
  Dag dag;
  Vector D;
  Vector L;

  // L_{pa(j), j}, parents ascending.
  Eigen::Ref<const Vector> column(int j) const {
    return L.segment(static_cast<Eigen::Index>(dag.edge_offset(j)), dag.num_parents(j));
  }
  Matrix dense_L() const;
};

// Per-vertex (lambda_i, beta_<i|) with beta = Sigma_<i>^{-1} Sigma_<i| = -L_<i|.
// beta uses the same per-edge layout as CholeskyFactor::L.
struct XiPoint {
  Dag dag;
  Vector lambda;
  Vector beta;

  Eigen::Ref<const Vector> coef(int i) const {
    return beta.segment(static_cast<Eigen::Index>(dag.edge_offset(i)), dag.num_parents(i));
  }
};

void validate(const CholeskyFactor& theta);
void validate(const XiPoint& xi);

XiPoint xi_from_cholesky(const CholeskyFactor& theta);
CholeskyFactor cholesky_from_xi(const XiPoint& xi);

Matrix precision_from_cholesky(const CholeskyFactor& theta);
// pattern_tol: fill outside the DAG larger than this (relative to
// sqrt(W_ii W_jj) during elimination) raises PatternError.
CholeskyFactor cholesky_from_precision(const Matrix& omega, const Dag& d,
                                       double pattern_tol = 1e-9);

Matrix sigma_from_xi(const XiPoint& xi);
XiPoint xi_from_sigma(const Matrix& sigma, const Dag& d);
// Same regressions without the full positive-definiteness check; only the
// family blocks must be positive definite (relative pivot floor rel_eps).
XiPoint xi_from_family_blocks(const Matrix& A, const Dag& d, double rel_eps = 0.0);

bool is_dag_markov(const Matrix& sigma, const Dag& d, double tol = 1e-8);

// n x p matrix with i.i.d. rows from N(0, (L^T)^{-1} D L^{-1}).
Matrix sample_data(const CholeskyFactor& theta, int n, Rng& rng);

// Independent Bernoulli(edge_prob) edges; each edge weight w ~ U[lo, hi]
// with L = -w, so x_to = w * x_from + noise. D = I.
std::pair<Dag, CholeskyFactor> random_dag(int p, double edge_prob, double weight_lo,
                                          double weight_hi, Rng& rng);

}  // namespace dagwish
