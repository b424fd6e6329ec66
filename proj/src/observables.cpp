#include "lgt/observables.hpp"

#include <cmath>

namespace lgt {

namespace {

double real_expectation(const SparseMatrix& op, const Eigen::VectorXcd& v,
                        const char* what) {
  cplx e = v.dot(op * v);
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
    throw internal_error(std::string("complex expectation for ") + what);
  return e.real();
}

}  // namespace

SparseMatrix wilson_loop_operator(const StateSpace& space, const Site& corner,
                                  int r1, int r2) {
  const Lattice& lat = space.lattice();
  if (lat.geom().dims != 2)
    throw config_error("Wilson loops need a two-dimensional lattice");
  if (r1 < 1 || r2 < 1) throw config_error("loop widths must be >= 1");
  if (r1 > lat.geom().extent[0] - 1 || r2 > lat.geom().extent[1] - 1)
    throw config_error("loop rectangle does not fit the lattice");

  auto advance = [&](const Site& s, int dir) {
    std::optional<Site> n = lat.neighbor(s, dir);
    if (!n) throw config_error("loop rectangle does not fit the lattice");
    return *n;
  };
  auto link_of = [&](const Site& s, int dir) {
    int l = lat.link_index(s, dir);
    if (l < 0) throw config_error("loop rectangle does not fit the lattice");
    return l;
  };

  // Walk the perimeter counterclockwise, recording each link with the
  // orientation it is traversed in.
  std::vector<std::pair<int, bool>> path;
  Site s = corner;
  for (int k = 0; k < r1; ++k) {
    path.emplace_back(link_of(s, 0), false);
    s = advance(s, 0);
  }
  for (int k = 0; k < r2; ++k) {
    path.emplace_back(link_of(s, 1), false);
    s = advance(s, 1);
  }
  // Leftward along the top: the rightward links of the top row, daggered,
  // in reverse order.
  std::vector<int> top_links;
  {
    Site u = corner;
    for (int k = 0; k < r2; ++k) u = advance(u, 1);
    for (int k = 0; k < r1; ++k) {
      top_links.push_back(link_of(u, 0));
      u = advance(u, 0);
    }
  }
  for (auto it = top_links.rbegin(); it != top_links.rend(); ++it)
    path.emplace_back(*it, true);
  // Downward along the left edge.
  std::vector<int> left_links;
  {
    Site u = corner;
    for (int k = 0; k < r2; ++k) {
      left_links.push_back(link_of(u, 1));
      u = advance(u, 1);
    }
  }
  for (auto it = left_links.rbegin(); it != left_links.rend(); ++it)
    path.emplace_back(*it, true);

  return traced_link_product(space, path);
}

cplx wilson_loop(const StateSpace& space, const Eigen::VectorXcd& state,
                 const Site& corner, int r1, int r2) {
  if (state.squaredNorm() < 1e-24) throw config_error("zero-norm state");
  SparseMatrix op = wilson_loop_operator(space, corner, r1, r2);
  return state.dot(op * state);
}

MeasurementContext make_measurement_context(const StateSpace& space,
                                            const HamiltonianBundle& bundle) {
  MeasurementContext ctx;
  ctx.space = &space;
  ctx.bundle = &bundle;
  const Lattice& lat = space.lattice();

  if (lat.geom().dims == 2) {
    for (int p = 0; p < lat.num_plaquettes(); ++p)
      ctx.plaquette_ops.push_back(plaquette_operator(space, p));

    for (int r1 = 1; r1 <= lat.geom().extent[0] - 1; ++r1)
      for (int r2 = 1; r2 <= lat.geom().extent[1] - 1; ++r2) {
        SparseMatrix sum(space.dimension(), space.dimension());
        int corners = 0;
        for (const Site& corner : lat.sites()) {
          bool fits = true;
          if (lat.geom().boundary == Boundary::open)
            fits = corner.coord[0] + r1 <= lat.geom().extent[0] - 1 &&
                   corner.coord[1] + r2 <= lat.geom().extent[1] - 1;
          if (!fits) continue;
          sum += wilson_loop_operator(space, corner, r1, r2);
          ++corners;
        }
        if (corners == 0) continue;
        ctx.wilson_sizes.push_back({r1, r2, cplx(0, 0)});
        ctx.wilson_ops.push_back(SparseMatrix(sum / double(corners)));
      }
  }

  if (space.group().abelian()) {
    std::int64_t dim = space.dimension();
    bool zn = space.group().kind == GroupKind::cyclic_zn;
    ctx.abelian_residue2.resize(dim);
    for (std::int64_t s = 0; s < dim; ++s) {
      double r2 = 0.0;
      for (int x = 0; x < space.num_sites(); ++x) {
        int g = abelian_gauss_eigenvalue(space, x, s);
        if (zn) g = symmetric_residue(g, space.group().n);
        r2 += double(g) * g;
      }
      ctx.abelian_residue2[s] = r2;
    }
  }
  return ctx;
}

ObservableReport measure(const MeasurementContext& ctx,
                         const Eigen::VectorXcd& state) {
  const StateSpace& space = *ctx.space;
  const HamiltonianBundle& b = *ctx.bundle;
  if (state.size() != space.dimension())
    throw config_error("state dimension mismatch");
  double norm = state.norm();
  if (norm < 1e-12) throw config_error("zero-norm state");

  ObservableReport r;
  r.norm = norm;
  r.energy_mass = real_expectation(b.mass, state, "mass energy");
  r.energy_electric = real_expectation(b.electric, state, "electric energy");
  r.energy_hopping = real_expectation(b.hopping, state, "hopping energy");
  r.energy_plaquette =
      real_expectation(b.plaquette, state, "plaquette energy");
  r.energy_penalty = real_expectation(b.penalty, state, "penalty energy");
  r.total_energy = real_expectation(b.total, state, "total energy");

  // Per-link electric decomposition with the same spectral weights as H_E.
  r.link_electric.assign(space.num_links(), 0.0);
  if (b.couplings.term_electric && !b.spectral.empty()) {
    for (int l = 0; l < space.num_links(); ++l) {
      double e = 0.0;
      for (std::int64_t s = 0; s < space.dimension(); ++s) {
        double w = std::norm(state[s]);
        if (w != 0.0) e += w * b.spectral[space.link_digit(s, l)];
      }
      r.link_electric[l] = 0.5 * b.couplings.g2 * e;
    }
  }

  for (const auto& op : ctx.plaquette_ops) {
    cplx e = state.dot(op * state);
    r.plaquette_re.push_back(e.real());
  }
  for (std::size_t i = 0; i < ctx.wilson_ops.size(); ++i) {
    WilsonLoopValue v = ctx.wilson_sizes[i];
    v.value = state.dot(ctx.wilson_ops[i] * state);
    r.wilson_loops.push_back(v);
  }

  if (space.has_matter()) {
    r.charge_density.assign(space.num_sites(), 0.0);
    for (std::int64_t s = 0; s < space.dimension(); ++s) {
      double w = std::norm(state[s]);
      if (w == 0.0) continue;
      for (int x = 0; x < space.num_sites(); ++x)
        r.charge_density[x] +=
            w * (space.fermion_bit(s, x) - space.charge_offset(x));
    }
  }

  if (space.group().abelian()) {
    double total = 0.0;
    for (std::int64_t s = 0; s < space.dimension(); ++s)
      total += std::norm(state[s]) * ctx.abelian_residue2[s];
    r.gauge_violation = total;
  } else {
    double total = 0.0;
    for (const auto& g : b.gauss) total += (g * state).squaredNorm();
    r.gauge_violation = total;
  }
  return r;
}

ObservableReport measure(const StateSpace& space,
                         const HamiltonianBundle& bundle,
                         const Eigen::VectorXcd& state) {
  return measure(make_measurement_context(space, bundle), state);
}

}  // namespace lgt
