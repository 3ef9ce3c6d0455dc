#pragma once

#include "dagwish/chol_param.hpp"

namespace dagwish {

// Symmetric values on the diagonal and on the DAG's edge positions only.
// off is aligned with dag.edges().
struct IncompleteMatrix {
  Dag dag;
  Vector diag;
  Vector off;

  // Value at (i, j); throws std::out_of_range for unspecified positions.
  double at(int i, int j) const;
  bool specified(int i, int j) const { return i == j || dag.adjacent(i, j); }
  // Dense matrix with zeros at unspecified positions.
  Matrix zero_fill() const;
  // Number of free values: p + #edges.
  std::size_t dimension() const { return diag.size() + off.size(); }
};

void validate(const IncompleteMatrix& m);

IncompleteMatrix project(const Matrix& A, const Dag& d);

struct PrecisionCompletion {
  Matrix omega;
  CholeskyFactor theta;
};

// Unique completion in P_D via L Lambda L^T elimination. Throws
// CompletionError when some pivot is not positive.
PrecisionCompletion complete_precision(const IncompleteMatrix& upsilon);

// Unique completion in PD_D via the regression fill. Throws CompletionError
// naming the vertex whose family block fails to be positive definite.
Matrix complete_covariance(const IncompleteMatrix& gamma);

}  // namespace dagwish
