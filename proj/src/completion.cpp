#include "dagwish/completion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dagwish/errors.hpp"

namespace dagwish {

double IncompleteMatrix::at(int i, int j) const {
  if (i == j) return diag(i);
  long k = i > j ? dag.edge_index(i, j) : dag.edge_index(j, i);
  if (k < 0)
    throw std::out_of_range("IncompleteMatrix: position (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ") is unspecified");
  return off(k);
}

Matrix IncompleteMatrix::zero_fill() const {
  const int p = dag.p();
  Matrix out = Matrix::Zero(p, p);
  out.diagonal() = diag;
  const auto& e = dag.edges();
  for (std::size_t k = 0; k < e.size(); ++k) {
    out(e[k].from, e[k].to) = off(k);
    out(e[k].to, e[k].from) = off(k);
  }
  return out;
}

void validate(const IncompleteMatrix& m) {
  if (m.diag.size() != m.dag.p())
    throw std::invalid_argument("IncompleteMatrix: diag has wrong length");
  if (m.off.size() != static_cast<Eigen::Index>(m.dag.num_edges()))
    throw std::invalid_argument("IncompleteMatrix: off has wrong length");
  if (!m.diag.allFinite() || !m.off.allFinite())
    throw std::invalid_argument("IncompleteMatrix: non-finite value");
}

IncompleteMatrix project(const Matrix& A, const Dag& d) {
  if (A.rows() != d.p() || A.cols() != d.p())
    throw std::invalid_argument("project: dimension mismatch");
  IncompleteMatrix m{d, A.diagonal(), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  const auto& e = d.edges();
  for (std::size_t k = 0; k < e.size(); ++k) m.off(k) = A(e[k].from, e[k].to);
  return m;
}

PrecisionCompletion complete_precision(const IncompleteMatrix& upsilon) {
  validate(upsilon);
  const Dag& d = upsilon.dag;
  const int p = d.p();
  if (p == 0) return {Matrix(0, 0), CholeskyFactor{d, Vector(0), Vector(0)}};
  if (upsilon.diag(0) == 0.0)
    throw std::invalid_argument("complete_precision: Upsilon_11 must be nonzero");

  const double eps = 1e-12 * upsilon.diag.cwiseAbs().maxCoeff();
  Matrix W = upsilon.zero_fill();
  CholeskyFactor theta{d, Vector(p), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  for (int j = 0; j < p; ++j) {
    const double piv = W(j, j);
    if (!(piv > eps))
      throw CompletionError("no completion in P_D: pivot " + std::to_string(j + 1) +
                                " is not positive",
                            j);
    theta.D(j) = 1.0 / piv;
    std::vector<int> pa = to_vector(d.parents(j));
    if (pa.empty()) continue;
    Vector l = W(pa, std::vector<int>{j}) / piv;
    theta.L.segment(static_cast<Eigen::Index>(d.edge_offset(j)), l.size()) = l;
    W(pa, pa) -= piv * l * l.transpose();
  }
  return {precision_from_cholesky(theta), theta};
}

Matrix complete_covariance(const IncompleteMatrix& gamma) {
  validate(gamma);
  const Dag& d = gamma.dag;
  const int p = d.p();
  Matrix sigma = Matrix::Constant(p, p, std::numeric_limits<double>::quiet_NaN());
  sigma.diagonal() = gamma.diag;
  const auto& e = d.edges();
  for (std::size_t k = 0; k < e.size(); ++k) {
    sigma(e[k].from, e[k].to) = gamma.off(k);
    sigma(e[k].to, e[k].from) = gamma.off(k);
  }
  for (int j = p - 1; j >= 0; --j) {
    std::vector<int> fa = d.family(j);
    Eigen::LLT<Matrix> llt;
    if (!try_cholesky(sigma(fa, fa), llt))
      throw CompletionError("no completion in PD_D exists: family block of vertex " +
                                std::to_string(j + 1) + " is not positive definite",
                            j);
    std::vector<int> rest = d.later_nonparents(j);
    if (rest.empty()) continue;
    std::vector<int> pa(fa.begin() + 1, fa.end());
    Vector fill;
    if (pa.empty()) {
      fill = Vector::Zero(static_cast<Eigen::Index>(rest.size()));
    } else {
      Regression r = regress(sigma, j, pa);
      fill = sigma(rest, pa) * r.beta;
    }
    for (std::size_t a = 0; a < rest.size(); ++a) {
      sigma(rest[a], j) = fill(a);
      sigma(j, rest[a]) = fill(a);
    }
  }
  return sigma;
}

}  // namespace dagwish
