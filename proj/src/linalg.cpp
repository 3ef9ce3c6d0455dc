#include "dagwish/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dagwish/errors.hpp"

namespace dagwish {

void require_symmetric(const Matrix& A, const std::string& what) {
  if (A.rows() != A.cols()) throw std::invalid_argument(what + ": matrix is not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (!(std::abs(A(i, j) - A(j, i)) <= 1e-12 * scale))
        throw std::invalid_argument(what + ": matrix is not symmetric");
}

bool try_cholesky(const Matrix& A, Eigen::LLT<Matrix>& llt, double rel_eps) {
  if (A.rows() == 0) {
    llt.compute(A);
    return true;
  }
  if (!A.allFinite()) return false;
  llt.compute(A);
  if (llt.info() != Eigen::Success) return false;
  const double floor = rel_eps * A.trace();
  const auto& L = llt.matrixLLT();
  for (Eigen::Index k = 0; k < A.rows(); ++k) {
    double piv = L(k, k) * L(k, k);
    if (!(piv > floor) || !(piv > 0.0)) return false;
  }
  return true;
}

Eigen::LLT<Matrix> require_spd(const Matrix& A, const std::string& what) {
  Eigen::LLT<Matrix> llt;
  if (!try_cholesky(A, llt)) throw NotPositiveDefinite(what + ": matrix is not positive definite");
  return llt;
}

double log_det(const Eigen::LLT<Matrix>& llt) {
  const auto& L = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index k = 0; k < L.rows(); ++k) s += std::log(L(k, k));
  return 2.0 * s;
}

double log_det_spd(const Matrix& A) { return log_det(require_spd(A, "log_det_spd")); }

Matrix inverse_spd(const Matrix& A, const std::string& what) {
  auto llt = require_spd(A, what);
  return llt.solve(Matrix::Identity(A.rows(), A.cols()));
}

Regression regress(const Matrix& A, int i, const std::vector<int>& pa, double rel_eps) {
  Regression r;
  if (pa.empty()) {
    r.lambda = A(i, i);
    r.beta.resize(0);
  } else {
    Eigen::LLT<Matrix> llt;
    Matrix block = A(pa, pa);
    if (!try_cholesky(block, llt, rel_eps))
      throw NotPositiveDefinite("parent block of vertex " + std::to_string(i + 1) +
                                " is not positive definite");
    Vector rhs = A(pa, std::vector<int>{i});
    r.beta = llt.solve(rhs);
    r.lambda = A(i, i) - rhs.dot(r.beta);
  }
  if (!(r.lambda > 0.0))
    throw NotPositiveDefinite("conditional variance of vertex " + std::to_string(i + 1) +
                              " is not positive");
  return r;
}

}  // namespace dagwish
