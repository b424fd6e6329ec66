#include "lgt/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lgt {

namespace {

// Uniform in [-1, 1); spelled out so streams are identical across standard
// libraries (mt19937_64 output is fully specified, distributions are not).
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

void orthogonalize(Eigen::VectorXcd& w,
                   const std::vector<Eigen::VectorXcd>& basis,
                   std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) w -= basis[i].dot(w) * basis[i];
}

struct ConstrainedOp {
  const SparseMatrix& H;
  const GaugeSector* sector;
  const std::vector<Eigen::VectorXcd>& deflated;
  int* matvecs;

  void constrain(Eigen::VectorXcd& v) const {
    if (sector) v = sector->project(v);
    orthogonalize(v, deflated, deflated.size());
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
    ++*matvecs;
    Eigen::VectorXcd w = H * v;
    constrain(w);
    return w;
  }
};

}  // namespace

EigenPairs lowest_eigenpairs(const SparseMatrix& H, int k,
                             const GaugeSector* sector,
                             const GroundStateOptions& opts) {
  if (H.rows() != H.cols()) throw config_error("operator not square");
  if (k < 1) throw config_error("need at least one eigenpair");
  std::int64_t dim = H.rows();
  std::int64_t avail = sector ? sector->dimension : dim;
  if (k > avail)
    throw config_error("more eigenpairs requested than the space holds");
  if (opts.restart < 2 || opts.max_matvecs < 1 || opts.tolerance <= 0)
    throw config_error("invalid solver options");

  EigenPairs out;
  std::mt19937_64 rng(opts.seed);
  ConstrainedOp op{H, sector, out.states, &out.matvecs};

  for (int which = 0; which < k; ++which) {
    // Constrained random start.
    Eigen::VectorXcd v0(dim);
    for (std::int64_t i = 0; i < dim; ++i)
      v0[i] = cplx(uniform_pm1(rng), uniform_pm1(rng));
    op.constrain(v0);
    double n0 = v0.norm();
    if (n0 < 1e-12)
      throw convergence_error("start vector vanished under constraints");
    v0 /= n0;

    int m_max = int(std::min<std::int64_t>(opts.restart, avail - which));
    bool converged = false;
    double theta = 0.0, resid = 0.0;
    Eigen::VectorXcd ritz;

    while (!converged) {
      std::vector<Eigen::VectorXcd> V{v0};
      std::vector<double> alpha, beta;
      bool breakdown = false;

      for (int j = 0; j < m_max; ++j) {
        if (out.matvecs >= opts.max_matvecs)
          throw convergence_error("eigensolver exceeded max iterations");
        Eigen::VectorXcd w = op.apply(V[j]);
        alpha.push_back(V[j].dot(w).real());
        // Full reorthogonalization, twice for stability.
        orthogonalize(w, V, V.size());
        orthogonalize(w, V, V.size());
        double b = w.norm();
        if (j + 1 == m_max) break;
        if (b < 1e-13 * std::max(1.0, std::abs(alpha[j]))) {
          breakdown = true;  // exact invariant subspace
          break;
        }
        beta.push_back(b);
        V.push_back(w / b);
      }

      int m = int(alpha.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      theta = es.eigenvalues()[0];
      Eigen::VectorXd y = es.eigenvectors().col(0);

      ritz = Eigen::VectorXcd::Zero(dim);
      for (int i = 0; i < m; ++i) ritz += y[i] * V[i];
      op.constrain(ritz);
      double rn = ritz.norm();
      if (rn < 1e-12)
        throw convergence_error("Ritz vector vanished under constraints");
      ritz /= rn;

      resid = (op.apply(ritz) - theta * ritz).norm();
      if (resid < opts.tolerance || breakdown) {
        converged = true;
      } else {
        v0 = ritz;
        if (out.matvecs >= opts.max_matvecs)
          throw convergence_error("eigensolver exceeded max iterations");
      }
    }

    if (resid >= opts.tolerance)
      throw convergence_error("eigensolver stalled above tolerance");
    out.energies.push_back(theta);
    out.states.push_back(ritz);
    out.residuals.push_back(resid);
  }
  return out;
}

GroundState ground_state(const SparseMatrix& H, const GaugeSector* sector,
                         const GroundStateOptions& opts) {
  EigenPairs p = lowest_eigenpairs(H, 1, sector, opts);
  return {p.energies[0], p.states[0], p.residuals[0]};
}

void ExpFactor::apply(Eigen::VectorXcd& psi) const {
  for (std::size_t c = 0; c < comp_index.size(); ++c) {
    const auto& idx = comp_index[c];
    Eigen::VectorXcd x(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) x[i] = psi[idx[i]];
    Eigen::VectorXcd y = comp_unitary[c] * x;
    for (std::size_t i = 0; i < idx.size(); ++i) psi[idx[i]] = y[i];
  }
}

ExpFactor hermitian_exp_factor(const SparseMatrix& T, double theta) {
  std::int64_t n = T.rows();
  std::vector<std::int64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> touched(n, 0);

  auto find = [&](std::int64_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  for (int col = 0; col < T.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(T, col); it; ++it) {
      if (it.value() == cplx(0, 0)) continue;
      touched[it.row()] = touched[it.col()] = 1;
      std::int64_t ra = find(it.row()), rb = find(it.col());
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

  std::vector<std::vector<std::int64_t>> groups(n);
  for (std::int64_t i = 0; i < n; ++i)
    if (touched[i]) groups[find(i)].push_back(i);

  ExpFactor out;
  std::vector<std::int64_t> pos(n, -1);
  for (std::int64_t r = 0; r < n; ++r) {
    auto& g = groups[r];
    if (g.empty()) continue;
    if (g.size() > 4096)
      throw config_error("Trotter factor support exceeds the dense block cap");
    for (std::size_t i = 0; i < g.size(); ++i) pos[g[i]] = std::int64_t(i);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(g.size(), g.size());
    for (std::int64_t member : g)
      for (SparseMatrix::InnerIterator it(T, member); it; ++it)
        block(pos[it.row()], pos[member]) = it.value();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    if (es.info() != Eigen::Success)
      throw convergence_error("factor eigendecomposition failed");
    Eigen::VectorXcd phases(g.size());
    for (std::int64_t i = 0; i < std::int64_t(g.size()); ++i)
      phases[i] = std::exp(cplx(0, -theta * es.eigenvalues()[i]));
    out.comp_unitary.push_back(es.eigenvectors() * phases.asDiagonal() *
                               es.eigenvectors().adjoint());
    out.comp_index.push_back(std::move(g));
  }
  return out;
}

namespace {

// One Trotter step over the fixed splitting: diagonal group (electric +
// mass + penalty) plus the listed off-diagonal terms in enumeration order.
struct Stepper {
  Eigen::VectorXd diag;
  std::vector<const SparseMatrix*> terms;
  EvolveMethod method;

  Eigen::VectorXcd diag_phase;             // full step
  Eigen::VectorXcd diag_phase_half;
  std::vector<ExpFactor> factors;          // full step
  std::vector<ExpFactor> factors_half;

  Stepper(const HamiltonianBundle& b, EvolveMethod m) : method(m) {
    SparseMatrix d(b.electric + b.mass);
    bool penalty_diagonal = true;
    for (int col = 0; col < b.penalty.outerSize() && penalty_diagonal; ++col)
      for (SparseMatrix::InnerIterator it(b.penalty, col); it; ++it)
        if (it.row() != it.col() && it.value() != cplx(0, 0)) {
          penalty_diagonal = false;  // SU(2): sum G_a^2 couples link indices
          break;
        }
    if (penalty_diagonal) d += b.penalty;
    diag = Eigen::VectorXd::Zero(d.rows());
    for (int col = 0; col < d.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(d, col); it; ++it) {
        if (it.row() != it.col())
          throw internal_error("diagonal Trotter group has off-diagonal entries");
        diag[it.row()] += it.value().real();
      }
    for (const auto& t : b.hopping_terms) terms.push_back(&t);
    for (const auto& t : b.plaquette_terms) terms.push_back(&t);
    if (!penalty_diagonal) terms.push_back(&b.penalty);
  }

  void prepare(double dt) {
    auto phase_of = [&](double step) {
      Eigen::VectorXcd p(diag.size());
      for (std::int64_t i = 0; i < diag.size(); ++i)
        p[i] = std::exp(cplx(0, -step * diag[i]));
      return p;
    };
    if (method == EvolveMethod::trotter1) {
      diag_phase = phase_of(dt);
      for (const auto* t : terms)
        factors.push_back(hermitian_exp_factor(*t, dt));
    } else {
      diag_phase_half = phase_of(dt / 2);
      for (const auto* t : terms)
        factors_half.push_back(hermitian_exp_factor(*t, dt / 2));
    }
  }

  void step(Eigen::VectorXcd& psi) const {
    if (method == EvolveMethod::trotter1) {
      psi.array() *= diag_phase.array();
      for (const auto& f : factors) f.apply(psi);
    } else {
      psi.array() *= diag_phase_half.array();
      for (const auto& f : factors_half) f.apply(psi);
      for (auto it = factors_half.rbegin(); it != factors_half.rend(); ++it)
        it->apply(psi);
      psi.array() *= diag_phase_half.array();
    }
  }
};

}  // namespace

Trajectory evolve(const HamiltonianBundle& bundle,
                  const Eigen::VectorXcd& psi0, const EvolutionPlan& plan) {
  std::int64_t dim = bundle.total.rows();
  if (psi0.size() != dim) throw config_error("state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw config_error("initial state not normalized");
  if (plan.dt <= 0) throw config_error("time step must be > 0");
  if (plan.total_time < 0) throw config_error("total time must be >= 0");

  double steps_real = plan.total_time / plan.dt;
  std::int64_t n = std::llround(steps_real);
  if (std::abs(steps_real - double(n)) > 1e-6)
    throw config_error("total_time must be an integer multiple of dt");

  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.error_estimate.assign(n + 1, 0.0);
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);

  if (plan.method == EvolveMethod::exact_dense) {
    if (dim > plan.dense_cap)
      throw config_error("space exceeds the dense evolution cap");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{
        Eigen::MatrixXcd(bundle.total)};
    if (es.info() != Eigen::Success)
      throw convergence_error("dense eigendecomposition failed");
    Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * psi0;
    for (std::int64_t k = 1; k <= n; ++k) {
      double t = double(k) * plan.dt;
      Eigen::VectorXcd rotated(coeff.size());
      for (std::int64_t i = 0; i < coeff.size(); ++i)
        rotated[i] = coeff[i] * std::exp(cplx(0, -t * es.eigenvalues()[i]));
      traj.times.push_back(t);
      traj.states.push_back(es.eigenvectors() * rotated);
    }
    return traj;
  }

  Stepper stepper(bundle, plan.method);
  stepper.prepare(plan.dt);
  Stepper refine(bundle, plan.method);
  if (plan.estimate_error) refine.prepare(plan.dt / 2);
  int order = plan.method == EvolveMethod::trotter1 ? 1 : 2;
  double richardson = 1.0 / (1.0 - std::pow(2.0, -order));
  double accumulated = 0.0;

  Eigen::VectorXcd psi = psi0;
  for (std::int64_t k = 1; k <= n; ++k) {
    Eigen::VectorXcd coarse = psi;
    stepper.step(coarse);
    if (plan.estimate_error) {
      Eigen::VectorXcd fine = psi;
      refine.step(fine);
      refine.step(fine);
      accumulated += richardson * (coarse - fine).norm();
    }
    psi = std::move(coarse);
    traj.times.push_back(double(k) * plan.dt);
    traj.states.push_back(psi);
    traj.error_estimate[k] = accumulated;
  }
  return traj;
}

}  // namespace lgt
