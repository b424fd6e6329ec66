#include "lgt/gauss_sector.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace lgt {

namespace {
constexpr double kNullThreshold = 1e-10;
}

Eigen::VectorXcd GaugeSector::project(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const auto& b : basis) {
    cplx amp = b.dot(v);  // conjugates b
    for (Eigen::SparseVector<cplx>::InnerIterator it(b); it; ++it)
      out[it.index()] += amp * it.value();
  }
  return out;
}

Eigen::MatrixXcd GaugeSector::basis_matrix() const {
  std::int64_t n = basis.empty() ? 0 : basis.front().size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, dimension);
  for (std::int64_t k = 0; k < dimension; ++k)
    for (Eigen::SparseVector<cplx>::InnerIterator it(basis[k]); it; ++it)
      out(it.index(), k) = it.value();
  return out;
}

Eigen::MatrixXcd GaugeSector::reduce(const SparseMatrix& op) const {
  Eigen::MatrixXcd b = basis_matrix();
  return b.adjoint() * (op * b);
}

Eigen::VectorXcd GaugeSector::to_sector(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd c(dimension);
  for (std::int64_t k = 0; k < dimension; ++k) c[k] = basis[k].dot(v);
  return c;
}

Eigen::VectorXcd GaugeSector::from_sector(const Eigen::VectorXcd& c) const {
  std::int64_t n = basis.empty() ? 0 : basis.front().size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (std::int64_t k = 0; k < dimension; ++k)
    for (Eigen::SparseVector<cplx>::InnerIterator it(basis[k]); it; ++it)
      out[it.index()] += c[k] * it.value();
  return out;
}

GaugeSector project_sector(const StateSpace& space,
                           const HamiltonianBundle& bundle,
                           const std::vector<int>& charges) {
  const GroupSpec& group = space.group();
  int sites = space.num_sites();

  std::vector<int> q = charges;
  if (q.empty()) q.assign(sites, 0);
  if (int(q.size()) != sites)
    throw config_error("charge assignment size does not match site count");

  GaugeSector sector;
  sector.charges = q;

  if (!group.abelian()) {
    for (int v : q)
      if (v != 0)
        throw config_error("static charges unsupported for SU(2) sectors");
    if (bundle.gauss_per_site != 3 ||
        int(bundle.gauss.size()) != 3 * sites)
      throw internal_error("bundle gauss generators inconsistent");

    std::int64_t dim = space.dimension();
    SparseMatrix sum(dim, dim);
    for (const auto& g : bundle.gauss) sum += SparseMatrix(g * g);
    Eigen::MatrixXcd dense(sum);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    if (es.info() != Eigen::Success)
      throw convergence_error("null-space eigendecomposition failed");

    sector.spectral_gap = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < dim; ++i) {
      double ev = es.eigenvalues()[i];
      if (ev < kNullThreshold) {
        Eigen::SparseVector<cplx> b(dim);
        for (std::int64_t r = 0; r < dim; ++r) {
          cplx v = es.eigenvectors()(r, i);
          if (std::abs(v) > 1e-15) b.insert(r) = v;
        }
        sector.basis.push_back(std::move(b));
        sector.kept_max = std::max(sector.kept_max, std::abs(ev));
      } else {
        sector.spectral_gap = std::min(sector.spectral_gap, ev);
      }
    }
    sector.dimension = std::int64_t(sector.basis.size());
    return sector;
  }

  // Abelian: global consistency on a torus.  Summing G(x) over all sites
  // cancels every link, so sum q must vanish (mod N for Z_N).
  if (space.lattice().geom().boundary == Boundary::periodic) {
    int total = 0;
    for (int v : q) total += v;
    bool ok = group.kind == GroupKind::cyclic_zn
                  ? symmetric_residue(total, group.n) == 0
                  : total == 0;
    if (!ok)
      throw config_error("static charges inconsistent with periodic lattice");
  }

  std::int64_t dim = space.dimension();
  bool zn = group.kind == GroupKind::cyclic_zn;
  sector.spectral_gap = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 0; s < dim; ++s) {
    double residue = 0.0;
    for (int x = 0; x < sites; ++x) {
      int g = abelian_gauss_eigenvalue(space, x, s) - q[x];
      if (zn) g = symmetric_residue(g, group.n);
      residue += double(g) * g;
    }
    if (residue == 0.0) {
      Eigen::SparseVector<cplx> b(dim);
      b.insert(s) = cplx(1, 0);
      sector.basis.push_back(std::move(b));
    } else {
      sector.spectral_gap = std::min(sector.spectral_gap, residue);
    }
  }
  sector.dimension = std::int64_t(sector.basis.size());
  return sector;
}

double gauge_violation(const StateSpace& space,
                       const Eigen::VectorXcd& state) {
  double norm2 = state.squaredNorm();
  if (norm2 < 1e-24) throw config_error("zero-norm state");

  const GroupSpec& group = space.group();
  std::int64_t dim = space.dimension();
  if (state.size() != dim) throw config_error("state dimension mismatch");

  if (group.abelian()) {
    bool zn = group.kind == GroupKind::cyclic_zn;
    double total = 0.0;
    for (std::int64_t s = 0; s < dim; ++s) {
      double w = std::norm(state[s]);
      if (w == 0.0) continue;
      double r2 = 0.0;
      for (int x = 0; x < space.num_sites(); ++x) {
        int g = abelian_gauss_eigenvalue(space, x, s);
        if (zn) g = symmetric_residue(g, group.n);
        r2 += double(g) * g;
      }
      total += w * r2;
    }
    return total;
  }

  double total = 0.0;
  for (int x = 0; x < space.num_sites(); ++x)
    for (int a = 0; a < 3; ++a) {
      SparseMatrix g = build_gauss_generator(space, x, a);
      total += (g * state).squaredNorm();
    }
  return total;
}

}  // namespace lgt
