#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dagwish/chol_param.hpp"
#include "dagwish/completion.hpp"
#include "dagwish/dag_wishart.hpp"

namespace testutil {

using dagwish::CholeskyFactor;
using dagwish::Dag;
using dagwish::Edge;
using dagwish::Matrix;
using dagwish::Rng;
using dagwish::Vector;

inline double unif(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int unif_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Dag random_graph(int p, double prob, Rng& rng) {
  std::vector<Edge> e;
  std::bernoulli_distribution keep(prob);
  for (int to = 0; to < p; ++to)
    for (int from = to + 1; from < p; ++from)
      if (keep(rng)) e.push_back({from, to});
  return Dag(p, e);
}

// Bit mask over pairs (from > to), enumerated to-major then from.
inline Dag graph_from_mask(int p, unsigned long mask) {
  std::vector<Edge> e;
  int bit = 0;
  for (int to = 0; to < p; ++to)
    for (int from = to + 1; from < p; ++from, ++bit)
      if (mask >> bit & 1UL) e.push_back({from, to});
  return Dag(p, e);
}

inline CholeskyFactor random_theta(const Dag& d, Rng& rng) {
  CholeskyFactor t{d, Vector(d.p()), Vector(d.num_edges())};
  for (int i = 0; i < d.p(); ++i) t.D(i) = unif(rng, 0.3, 2.0);
  for (Eigen::Index k = 0; k < t.L.size(); ++k) t.L(k) = unif(rng, -1.2, 1.2);
  return t;
}

inline Matrix random_spd(int p, Rng& rng, double ridge = 0.5) {
  std::normal_distribution<double> z;
  Matrix A(p, p + 2);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = z(rng);
  Matrix S = A * A.transpose() / (p + 2.0);
  S.diagonal().array() += ridge;
  return S;
}

inline dagwish::DagWishartParams random_params(const Dag& d, Rng& rng, double lo, double hi) {
  Vector alpha(d.p());
  for (int i = 0; i < d.p(); ++i) alpha(i) = d.num_parents(i) + unif(rng, lo, hi);
  return {d, random_spd(d.p(), rng), alpha};
}

// Directed 4-cycle 4 -> 2 -> 1, 4 -> 3 -> 1 (1-based labels).
inline Dag four_cycle() { return Dag::from_one_based(4, {{2, 1}, {3, 1}, {4, 2}, {4, 3}}); }

// pa(1) = {2, 3}, no other edges.
inline Dag v_structure() { return Dag::from_one_based(3, {{2, 1}, {3, 1}}); }

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

struct Moments {
  Vector mean;
  Vector se;
};

// Column means and standard errors of the rows of X.
inline Moments column_moments(const Matrix& X) {
  const double n = static_cast<double>(X.rows());
  Vector mean = X.colwise().mean();
  Matrix c = X.rowwise() - mean.transpose();
  Vector var = c.colwise().squaredNorm() / (n - 1.0);
  return {mean, (var / n).cwiseSqrt()};
}

}  // namespace testutil
