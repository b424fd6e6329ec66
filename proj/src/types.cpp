#include "lgt/types.hpp"

namespace lgt {

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs(const Eigen::MatrixXcd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const SparseMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  SparseMatrix d = a - SparseMatrix(a.adjoint());
  return max_abs(d) <= tol;
}

void require_hermitian(const SparseMatrix& a, const std::string& what,
                       double tol) {
  if (!is_hermitian(a, tol))
    throw internal_error(what + ": operator is not hermitian");
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
  return SparseMatrix(a * b) - SparseMatrix(b * a);
}

SparseMatrix sparse_identity(std::int64_t dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

}  // namespace lgt
