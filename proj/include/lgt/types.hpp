#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace lgt {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

// Error taxonomy, mapped to process exit codes by the CLI:
// config_error -> 1, convergence_error -> 2, internal_error -> 3.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

double max_abs(const SparseMatrix& a);
double max_abs(const Eigen::MatrixXcd& a);

bool is_hermitian(const SparseMatrix& a, double tol = 1e-13);

// Throws internal_error if a deviates from its adjoint by more than tol.
void require_hermitian(const SparseMatrix& a, const std::string& what,
                       double tol = 1e-13);

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_identity(std::int64_t dim);

}  // namespace lgt
