#include "lgt/hamiltonian.hpp"

#include <cmath>
#include <numbers>

namespace lgt {

namespace {

// Electric eigenvalue of a link digit: Z_N j in 0..N-1, U(1) j in -L..L.
int electric_value(const GroupSpec& group, int digit) {
  return group.kind == GroupKind::truncated_u1 ? digit - group.cutoff : digit;
}

std::vector<double> spectral_table(const GroupSpec& group,
                                   const SpectralFn& f) {
  auto basis = rep_basis(group);
  std::vector<double> table(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    table[i] = f(basis[i].irrep);
    if (!std::isfinite(table[i]))
      throw config_error("spectral function undefined for a kept irrep");
  }
  return table;
}

SparseMatrix diagonal_sparse(std::int64_t dim,
                             const std::vector<double>& values) {
  std::vector<Triplet> trips;
  for (std::int64_t s = 0; s < dim; ++s)
    if (values[s] != 0.0) trips.emplace_back(s, s, values[s]);
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

// Operator-valued matrix product helper for the non-Abelian trace.
using OpMatrix = std::vector<std::vector<SparseMatrix>>;

OpMatrix embed_block(const StateSpace& space, int link,
                     const std::vector<std::vector<LinkOperator>>& u,
                     bool dagger) {
  std::size_t d = u.size();
  OpMatrix out(d, std::vector<SparseMatrix>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      // (U^dag)_{ab} = (U_{ba})^dag
      const Eigen::MatrixXcd& m = dagger ? u[b][a].mat : u[a][b].mat;
      out[a][b] = embed_link_op(space, link,
                                dagger ? Eigen::MatrixXcd(m.adjoint()) : m);
    }
  return out;
}

OpMatrix opmat_product(const OpMatrix& a, const OpMatrix& b) {
  std::size_t d = a.size();
  OpMatrix out(d, std::vector<SparseMatrix>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      SparseMatrix acc;
      bool first = true;
      for (std::size_t j = 0; j < d; ++j) {
        SparseMatrix term(a[i][j] * b[j][k]);
        if (first) {
          acc = term;
          first = false;
        } else {
          acc += term;
        }
      }
      out[i][k] = acc;
    }
  return out;
}

}  // namespace

bool operator==(const Couplings& a, const Couplings& b) {
  return a.g2 == b.g2 && a.mass == b.mass && a.hopping == b.hopping &&
         a.penalty_strength == b.penalty_strength &&
         a.term_electric == b.term_electric && a.term_mass == b.term_mass &&
         a.term_hopping == b.term_hopping &&
         a.term_plaquette == b.term_plaquette;
}

SparseMatrix build_HM(const StateSpace& space, double mass) {
  if (!space.has_matter())
    throw config_error("mass term requested without matter");
  std::int64_t dim = space.dimension();
  std::vector<double> diag(dim, 0.0);
  const Lattice& lat = space.lattice();
  for (std::int64_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int x = 0; x < space.num_sites(); ++x)
      if (space.fermion_bit(s, x))
        e += mass * lat.site_parity(lat.sites()[x]);
    diag[s] = e;
  }
  return diagonal_sparse(dim, diag);
}

SparseMatrix build_HE(const StateSpace& space, double g2) {
  return build_HE(space, g2, default_spectral_fn(space.group()));
}

SparseMatrix build_HE(const StateSpace& space, double g2,
                      const SpectralFn& f) {
  auto table = spectral_table(space.group(), f);
  std::int64_t dim = space.dimension();
  std::vector<double> diag(dim, 0.0);
  for (std::int64_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int l = 0; l < space.num_links(); ++l)
      e += table[space.link_digit(s, l)];
    diag[s] = 0.5 * g2 * e;
  }
  return diagonal_sparse(dim, diag);
}

std::vector<SparseMatrix> hopping_term_list(const StateSpace& space,
                                            double eps) {
  if (!space.has_matter())
    throw config_error("hopping term requested without matter");
  if (!space.group().abelian())
    throw config_error("non-Abelian dynamical matter is not supported");
  auto u = build_U(space.group());
  const Lattice& lat = space.lattice();
  std::vector<SparseMatrix> terms;
  for (int l = 0; l < space.num_links(); ++l) {
    const Link& link = lat.links()[l];
    // Staggered phase: direction 0 carries eps, direction 1 carries
    // eps * (-1)^(x_0).
    double phase = eps;
    if (link.dir == 1 && link.from.coord[0] % 2 == 1) phase = -eps;
    SparseMatrix hop = gauged_hopping(space, l, u);
    SparseMatrix term(phase * hop);
    term += SparseMatrix(term.adjoint());
    terms.push_back(term);
  }
  return terms;
}

SparseMatrix build_Hint(const StateSpace& space, double eps) {
  std::int64_t dim = space.dimension();
  SparseMatrix sum(dim, dim);
  for (const auto& t : hopping_term_list(space, eps)) sum += t;
  return sum;
}

SparseMatrix traced_link_product(
    const StateSpace& space, const std::vector<std::pair<int, bool>>& path) {
  if (path.empty()) throw config_error("empty link path");
  for (const auto& [l, dag] : path)
    if (l < 0 || l >= space.num_links())
      throw config_error("link index out of range");
  auto u = build_U(space.group());

  if (space.group().abelian()) {
    SparseMatrix acc = identity_op(space);
    for (const auto& [l, dag] : path) {
      Eigen::MatrixXcd m = u[0][0].mat;
      if (dag) m = m.adjoint().eval();
      acc = SparseMatrix(acc * embed_link_op(space, l, m));
    }
    return acc;
  }

  OpMatrix acc = embed_block(space, path[0].first, u, path[0].second);
  for (std::size_t leg = 1; leg < path.size(); ++leg)
    acc = opmat_product(acc,
                        embed_block(space, path[leg].first, u, path[leg].second));
  SparseMatrix tr(space.dimension(), space.dimension());
  for (std::size_t i = 0; i < acc.size(); ++i) tr += acc[i][i];
  return tr;
}

SparseMatrix plaquette_operator(const StateSpace& space, int plaquette) {
  const Lattice& lat = space.lattice();
  if (plaquette < 0 || plaquette >= lat.num_plaquettes())
    throw config_error("plaquette index out of range");
  const Plaquette& p = lat.plaquettes()[plaquette];
  std::vector<std::pair<int, bool>> path;
  for (int leg = 0; leg < 4; ++leg)
    path.emplace_back(p.links[leg], p.dagger[leg]);
  return traced_link_product(space, path);
}

std::vector<SparseMatrix> plaquette_term_list(const StateSpace& space,
                                              double g2) {
  if (space.lattice().geom().dims != 2)
    throw config_error("plaquette term undefined in one dimension");
  if (g2 <= 0.0) throw config_error("plaquette term requires g2 > 0");
  std::vector<SparseMatrix> terms;
  for (int p = 0; p < space.lattice().num_plaquettes(); ++p) {
    SparseMatrix tr = plaquette_operator(space, p);
    SparseMatrix term(-0.5 / g2 * tr);
    term += SparseMatrix(term.adjoint());
    terms.push_back(term);
  }
  return terms;
}

SparseMatrix build_HB(const StateSpace& space, double g2) {
  std::int64_t dim = space.dimension();
  SparseMatrix sum(dim, dim);
  for (const auto& t : plaquette_term_list(space, g2)) sum += t;
  return sum;
}

int abelian_gauss_eigenvalue(const StateSpace& space, int site,
                             std::int64_t state) {
  const Lattice& lat = space.lattice();
  auto inc = lat.incident_links(lat.sites()[site]);
  int g = 0;
  for (int l : inc.outgoing)
    g += electric_value(space.group(), space.link_digit(state, l));
  for (int l : inc.incoming)
    g -= electric_value(space.group(), space.link_digit(state, l));
  if (space.has_matter())
    g -= space.fermion_bit(state, site) - space.charge_offset(site);
  return g;
}

int symmetric_residue(int v, int n) {
  int r = ((v % n) + n) % n;
  if (2 * r > n) r -= n;
  return r;
}

SparseMatrix build_gauss_generator(const StateSpace& space, int site) {
  if (!space.group().abelian())
    throw config_error("component index required for SU(2) Gauss generator");
  if (site < 0 || site >= space.num_sites())
    throw config_error("site index out of range");
  std::int64_t dim = space.dimension();
  std::vector<double> diag(dim);
  for (std::int64_t s = 0; s < dim; ++s)
    diag[s] = abelian_gauss_eigenvalue(space, site, s);
  return diagonal_sparse(dim, diag);
}

SparseMatrix build_gauss_generator(const StateSpace& space, int site, int a) {
  if (space.group().kind != GroupKind::truncated_su2)
    throw config_error("component index only valid for SU(2)");
  if (a < 0 || a > 2) throw config_error("invalid generator component");
  if (site < 0 || site >= space.num_sites())
    throw config_error("site index out of range");
  if (space.has_matter())
    throw config_error("non-Abelian dynamical matter is not supported");
  auto gen = build_electric(space.group());  // R1 R2 R3 L1 L2 L3
  const Lattice& lat = space.lattice();
  auto inc = lat.incident_links(lat.sites()[site]);
  std::int64_t dim = space.dimension();
  SparseMatrix out(dim, dim);
  for (int l : inc.incoming)
    out += embed_link_op(space, l, gen[a].mat);
  for (int l : inc.outgoing)
    out -= embed_link_op(space, l, gen[3 + a].mat);
  return out;
}

SparseMatrix build_gauge_transformation(const StateSpace& space, int site,
                                        const GroupElement& g) {
  if (site < 0 || site >= space.num_sites())
    throw config_error("site index out of range");
  const GroupSpec& group = space.group();
  const Lattice& lat = space.lattice();
  auto inc = lat.incident_links(lat.sites()[site]);

  Eigen::MatrixXcd theta_left = build_theta(group, g, Side::left).mat;
  Eigen::MatrixXcd theta_right_dag =
      build_theta(group, g, Side::right).mat.adjoint();

  SparseMatrix acc = identity_op(space);
  for (int l : inc.outgoing)
    acc = SparseMatrix(acc * embed_link_op(space, l, theta_left));
  for (int l : inc.incoming)
    acc = SparseMatrix(acc * embed_link_op(space, l, theta_right_dag));

  if (space.has_matter()) {
    // theta_g^dag on the matter mode: conjugate fundamental phase per unit
    // of charge, consistent with the link irrep convention.
    cplx d1;
    switch (group.kind) {
      case GroupKind::cyclic_zn:
        d1 = std::exp(cplx(0, -2.0 * std::numbers::pi * g.k / group.n));
        break;
      case GroupKind::truncated_u1:
        d1 = std::exp(cplx(0, g.phi));
        break;
      default:
        throw config_error("non-Abelian dynamical matter is not supported");
    }
    std::int64_t dim = space.dimension();
    std::vector<Triplet> trips;
    trips.reserve(dim);
    for (std::int64_t s = 0; s < dim; ++s) {
      int q = space.fermion_bit(s, site) - space.charge_offset(site);
      trips.emplace_back(s, s, std::pow(std::conj(d1), q));
    }
    SparseMatrix phase(dim, dim);
    phase.setFromTriplets(trips.begin(), trips.end());
    acc = SparseMatrix(acc * phase);
  }
  return acc;
}

SparseMatrix build_penalty(const StateSpace& space, double lambda) {
  if (lambda < 0.0) throw config_error("penalty strength must be >= 0");
  std::int64_t dim = space.dimension();
  if (lambda == 0.0) return SparseMatrix(dim, dim);

  if (space.group().abelian()) {
    std::vector<double> diag(dim, 0.0);
    bool zn = space.group().kind == GroupKind::cyclic_zn;
    for (std::int64_t s = 0; s < dim; ++s) {
      double v = 0.0;
      for (int x = 0; x < space.num_sites(); ++x) {
        int gx = abelian_gauss_eigenvalue(space, x, s);
        if (zn) gx = symmetric_residue(gx, space.group().n);
        v += double(gx) * gx;
      }
      diag[s] = lambda * v;
    }
    return diagonal_sparse(dim, diag);
  }

  SparseMatrix sum(dim, dim);
  for (int x = 0; x < space.num_sites(); ++x)
    for (int a = 0; a < 3; ++a) {
      SparseMatrix g = build_gauss_generator(space, x, a);
      sum += SparseMatrix(g * g);
    }
  return SparseMatrix(lambda * sum);
}

HamiltonianBundle build_hamiltonian(const StateSpace& space,
                                    const Couplings& c) {
  return build_hamiltonian(space, c, default_spectral_fn(space.group()));
}

HamiltonianBundle build_hamiltonian(const StateSpace& space,
                                    const Couplings& c, const SpectralFn& f) {
  if ((c.term_electric || c.term_plaquette) && c.g2 <= 0.0)
    throw config_error("g2 must be > 0 when electric or plaquette enabled");
  if (c.penalty_strength < 0.0)
    throw config_error("penalty strength must be >= 0");

  std::int64_t dim = space.dimension();
  HamiltonianBundle b;
  b.couplings = c;
  b.spectral = spectral_table(space.group(), f);
  b.mass = c.term_mass ? build_HM(space, c.mass) : SparseMatrix(dim, dim);
  b.electric =
      c.term_electric ? build_HE(space, c.g2, f) : SparseMatrix(dim, dim);
  if (c.term_hopping) {
    b.hopping_terms = hopping_term_list(space, c.hopping);
    b.hopping = SparseMatrix(dim, dim);
    for (const auto& t : b.hopping_terms) b.hopping += t;
  } else {
    b.hopping = SparseMatrix(dim, dim);
  }
  if (c.term_plaquette) {
    b.plaquette_terms = plaquette_term_list(space, c.g2);
    b.plaquette = SparseMatrix(dim, dim);
    for (const auto& t : b.plaquette_terms) b.plaquette += t;
  } else {
    b.plaquette = SparseMatrix(dim, dim);
  }
  b.penalty = build_penalty(space, c.penalty_strength);
  b.total = SparseMatrix(b.mass + b.electric);
  b.total += b.hopping;
  b.total += b.plaquette;
  b.total += b.penalty;

  if (c.term_mass) require_hermitian(b.mass, "mass term");
  if (c.term_electric) require_hermitian(b.electric, "electric term");
  if (c.term_hopping) require_hermitian(b.hopping, "hopping term");
  if (c.term_plaquette) require_hermitian(b.plaquette, "plaquette term");
  require_hermitian(b.total, "total hamiltonian");

  b.gauss_per_site = space.group().abelian() ? 1 : 3;
  for (int x = 0; x < space.num_sites(); ++x) {
    if (space.group().abelian()) {
      b.gauss.push_back(build_gauss_generator(space, x));
    } else {
      for (int a = 0; a < 3; ++a)
        b.gauss.push_back(build_gauss_generator(space, x, a));
    }
  }
  return b;
}

}  // namespace lgt
