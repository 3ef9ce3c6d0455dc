#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace dagwish {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline std::vector<int> to_vector(std::span<const int> s) { return {s.begin(), s.end()}; }

// Throws std::invalid_argument unless A is square and symmetric to 1e-12 relative.
void require_symmetric(const Matrix& A, const std::string& what);

// Cholesky with a relative pivot floor: every squared pivot must exceed
// rel_eps * trace(A). Returns false on failure.
bool try_cholesky(const Matrix& A, Eigen::LLT<Matrix>& llt, double rel_eps = 0.0);

// Throws NotPositiveDefinite when try_cholesky fails.
Eigen::LLT<Matrix> require_spd(const Matrix& A, const std::string& what);

double log_det_spd(const Matrix& A);
Matrix inverse_spd(const Matrix& A, const std::string& what = "inverse_spd");
double log_det(const Eigen::LLT<Matrix>& llt);

// Regression of vertex i on index set pa within a symmetric matrix A:
// beta = A_pa^{-1} A_{pa,i}, lambda = A_ii - A_{i,pa} beta.
struct Regression {
  double lambda = 0.0;
  Vector beta;
};
// Throws NotPositiveDefinite if A_pa fails Cholesky (relative pivot floor
// rel_eps) or lambda <= 0.
Regression regress(const Matrix& A, int i, const std::vector<int>& pa, double rel_eps = 0.0);

}  // namespace dagwish
