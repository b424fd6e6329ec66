#pragma once

#include "lgt/hamiltonian.hpp"

namespace lgt {

// Gauss-law-constrained subspace for a static charge assignment q(x).
// Abelian sectors are exact selections of computational basis states (the
// generators are diagonal); the SU(2) singlet sector is the numerical null
// space of sum_{x,a} G_a(x)^2.
struct GaugeSector {
  std::vector<int> charges;                     // per site, all zero for SU(2)
  std::vector<Eigen::SparseVector<cplx>> basis; // orthonormal
  std::int64_t dimension = 0;

  // Null-space diagnostics.  Abelian sectors are exact: kept_max = 0 and
  // spectral_gap is the smallest positive sum of squared residues outside
  // the sector.  SU(2): largest kept and smallest discarded eigenvalue of
  // sum G_a^2.
  double kept_max = 0.0;
  double spectral_gap = 0.0;

  // Orthogonal projection of v onto the sector (returned in the full space).
  Eigen::VectorXcd project(const Eigen::VectorXcd& v) const;

  // Dense matrix whose columns are the basis vectors.
  Eigen::MatrixXcd basis_matrix() const;

  // B^dag op B: the operator restricted to the sector.
  Eigen::MatrixXcd reduce(const SparseMatrix& op) const;

  // Coordinates of a full-space vector in the sector basis, and back.
  Eigen::VectorXcd to_sector(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd from_sector(const Eigen::VectorXcd& c) const;
};

// Builds the sector for the given charges (empty vector = all zero).
// Abelian: selects basis states with G(x) = q(x) at every site, where the
// Z_N comparison is mod N.  Periodic lattices require the charges to be
// globally consistent (sum zero; mod N for Z_N).  SU(2) supports only the
// zero-charge singlet sector.
GaugeSector project_sector(const StateSpace& space,
                           const HamiltonianBundle& bundle,
                           const std::vector<int>& charges);

// sum_{x,a} ||G_a(x) psi||^2 against the zero-charge constraint; zero iff
// psi lies in the q = 0 sector.  Z_N residues are reduced mod N.
double gauge_violation(const StateSpace& space, const Eigen::VectorXcd& state);

}  // namespace lgt
