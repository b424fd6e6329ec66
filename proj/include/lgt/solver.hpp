#pragma once

#include "lgt/gauss_sector.hpp"

namespace lgt {

struct GroundStateOptions {
  int restart = 64;          // Krylov dimension per restart cycle
  int max_matvecs = 2000;    // total operator applications before giving up
  double tolerance = 1e-8;   // absolute residual ||Hv - Ev||
  std::uint64_t seed = 42;   // start-vector RNG
};

struct EigenPairs {
  std::vector<double> energies;           // ascending
  std::vector<Eigen::VectorXcd> states;   // orthonormal
  std::vector<double> residuals;
  int matvecs = 0;
};

// Lowest k eigenpairs of Hermitian H by restarted Lanczos with full
// reorthogonalization and deflation.  With a sector, every operator
// application is projected back into it, so the pairs are those of the
// sector-restricted operator (states returned in the full space).
EigenPairs lowest_eigenpairs(const SparseMatrix& H, int k,
                             const GaugeSector* sector = nullptr,
                             const GroundStateOptions& opts = {});

struct GroundState {
  double energy;
  Eigen::VectorXcd state;
  double residual;
};

GroundState ground_state(const SparseMatrix& H,
                         const GaugeSector* sector = nullptr,
                         const GroundStateOptions& opts = {});

enum class EvolveMethod { exact_dense, trotter1, trotter2 };

struct EvolutionPlan {
  EvolveMethod method = EvolveMethod::trotter2;
  double dt = 0.1;
  double total_time = 1.0;
  std::int64_t dense_cap = 4096;  // exact_dense refuses larger spaces
  bool estimate_error = false;    // fill Trajectory::error_estimate
};

// States at t = 0, dt, 2 dt, ..., n dt with n = total_time / dt (which must
// be integral to 1e-6).  error_estimate is the accumulated Richardson
// step-doubling estimate of ||psi_method - psi_exact|| (zeros for
// exact_dense, and when estimation is off).
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> error_estimate;
};

Trajectory evolve(const HamiltonianBundle& bundle,
                  const Eigen::VectorXcd& psi0, const EvolutionPlan& plan);

// Exact unitary e^{-i theta T} for sparse Hermitian T, stored as dense
// blocks over the connected components of T's sparsity pattern.  Rows
// outside every component are untouched (identity).
struct ExpFactor {
  std::vector<std::vector<std::int64_t>> comp_index;
  std::vector<Eigen::MatrixXcd> comp_unitary;
  void apply(Eigen::VectorXcd& psi) const;
};

ExpFactor hermitian_exp_factor(const SparseMatrix& T, double theta);

}  // namespace lgt
