#include "lgt/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lgt {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Minimal JSON object assembled field by field; insertion order preserved.
class JsonRecord {
 public:
  void add(const std::string& key, double v) { field(key, fmt(v)); }
  void add(const std::string& key, std::int64_t v) {
    field(key, std::to_string(v));
  }
  void add(const std::string& key, int v) { field(key, std::to_string(v)); }
  void add(const std::string& key, bool v) { field(key, v ? "true" : "false"); }
  void add(const std::string& key, const std::string& v) {
    field(key, "\"" + json_escape(v) + "\"");
  }
  void add_raw(const std::string& key, const std::string& v) { field(key, v); }

  std::string str() const { return "{" + body_ + "}"; }

 private:
  void field(const std::string& key, const std::string& value) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + json_escape(key) + "\":" + value;
  }
  std::string body_;
};

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string wilson_json(const std::vector<WilsonLoopValue>& loops) {
  std::string out = "[";
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (i) out += ",";
    JsonRecord r;
    r.add("r1", loops[i].r1);
    r.add("r2", loops[i].r2);
    r.add("re", loops[i].value.real());
    r.add("im", loops[i].value.imag());
    out += r.str();
  }
  return out + "]";
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw internal_error("cannot write " + path.string());
  out << body;
  if (!out) throw internal_error("write failed for " + path.string());
}

void report_record(JsonRecord& r, const ObservableReport& rep) {
  r.add("norm", rep.norm);
  r.add("total_energy", rep.total_energy);
  r.add("energy_mass", rep.energy_mass);
  r.add("energy_electric", rep.energy_electric);
  r.add("energy_hopping", rep.energy_hopping);
  r.add("energy_plaquette", rep.energy_plaquette);
  r.add("energy_penalty", rep.energy_penalty);
  r.add("gauge_violation", rep.gauge_violation);
  r.add_raw("link_electric", json_array(rep.link_electric));
  r.add_raw("plaquette_re", json_array(rep.plaquette_re));
  r.add_raw("charge_density", json_array(rep.charge_density));
  r.add_raw("wilson_loops", wilson_json(rep.wilson_loops));
}

Eigen::VectorXcd prepare_state(const RunConfig& cfg, const StateSpace& space,
                               const HamiltonianBundle& bundle) {
  if (cfg.initial_state == "vacuum") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.dimension());
    psi[space.electric_vacuum()] = cplx(1, 0);
    return psi;
  }
  GaugeSector sector = project_sector(space, bundle, cfg.charges);
  if (sector.dimension == 0)
    throw config_error("requested charge sector is empty");
  GroundStateOptions opts;
  opts.seed = cfg.seed;
  return ground_state(bundle.total, &sector, opts).state;
}

// Deterministic spanning samples of group elements for invariance checks.
std::vector<GroupElement> sample_elements(const GroupSpec& group) {
  std::vector<GroupElement> out;
  switch (group.kind) {
    case GroupKind::cyclic_zn:
      for (int k = 1; k < group.n && k <= 4; ++k)
        out.push_back(GroupElement::zn(k));
      break;
    case GroupKind::truncated_u1:
      out.push_back(GroupElement::u1(0.9));
      out.push_back(GroupElement::u1(2.31));
      out.push_back(GroupElement::u1(4.77));
      break;
    case GroupKind::truncated_su2:
      out.push_back(GroupElement::su2(0.7, 0.4, 1.2));
      out.push_back(GroupElement::su2(2.1, 2.8, 5.9));
      out.push_back(GroupElement::su2(5.0, 1.3, 9.4));
      break;
  }
  return out;
}

int spectrum_job(const RunConfig& cfg, const StateSpace& space,
                 const HamiltonianBundle& bundle,
                 const std::filesystem::path& dir) {
  GaugeSector sector = project_sector(space, bundle, cfg.charges);
  if (sector.dimension == 0)
    throw config_error("requested charge sector is empty");
  int k = int(std::min<std::int64_t>(cfg.spectrum_count, sector.dimension));
  GroundStateOptions opts;
  opts.seed = cfg.seed;
  EigenPairs pairs = lowest_eigenpairs(bundle.total, k, &sector, opts);

  std::string jsonl;
  std::string csv = "index,energy,residual,sector_dimension\n";
  for (int i = 0; i < k; ++i) {
    JsonRecord r;
    r.add("job", std::string("spectrum"));
    r.add("index", i);
    r.add("energy", pairs.energies[i]);
    r.add("residual", pairs.residuals[i]);
    r.add("sector_dimension", sector.dimension);
    r.add("space_dimension", space.dimension());
    jsonl += r.str() + "\n";
    csv += std::to_string(i) + "," + fmt(pairs.energies[i]) + "," +
           fmt(pairs.residuals[i]) + "," + std::to_string(sector.dimension) +
           "\n";
  }
  write_file(dir / "results.jsonl", jsonl);
  write_file(dir / "summary.csv", csv);
  return 0;
}

int evolve_job(const RunConfig& cfg, const StateSpace& space,
               const HamiltonianBundle& bundle,
               const std::filesystem::path& dir) {
  Eigen::VectorXcd psi0 = prepare_state(cfg, space, bundle);
  EvolutionPlan plan;
  plan.method = cfg.method;
  plan.dt = cfg.dt;
  plan.total_time = cfg.total_time;
  plan.dense_cap = cfg.dense_cap;
  plan.estimate_error = true;
  Trajectory traj = evolve(bundle, psi0, plan);
  MeasurementContext ctx = make_measurement_context(space, bundle);

  std::string jsonl;
  std::string csv =
      "step,time,norm,total_energy,energy_mass,energy_electric,"
      "energy_hopping,energy_plaquette,energy_penalty,gauge_violation,"
      "trotter_error_estimate\n";
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    ObservableReport rep = measure(ctx, traj.states[s]);
    JsonRecord r;
    r.add("job", std::string("evolve"));
    r.add("step", std::int64_t(s));
    r.add("time", traj.times[s]);
    r.add("trotter_error_estimate", traj.error_estimate[s]);
    report_record(r, rep);
    jsonl += r.str() + "\n";
    csv += std::to_string(s) + "," + fmt(traj.times[s]) + "," +
           fmt(rep.norm) + "," + fmt(rep.total_energy) + "," +
           fmt(rep.energy_mass) + "," + fmt(rep.energy_electric) + "," +
           fmt(rep.energy_hopping) + "," + fmt(rep.energy_plaquette) + "," +
           fmt(rep.energy_penalty) + "," + fmt(rep.gauge_violation) + "," +
           fmt(traj.error_estimate[s]) + "\n";
  }
  write_file(dir / "results.jsonl", jsonl);
  write_file(dir / "summary.csv", csv);
  return 0;
}

int observables_job(const RunConfig& cfg, const StateSpace& space,
                    const HamiltonianBundle& bundle,
                    const std::filesystem::path& dir) {
  Eigen::VectorXcd psi = prepare_state(cfg, space, bundle);
  ObservableReport rep = measure(space, bundle, psi);

  JsonRecord r;
  r.add("job", std::string("observables"));
  r.add("state", cfg.initial_state);
  report_record(r, rep);

  std::string csv = "field,value\n";
  auto row = [&](const std::string& name, double v) {
    csv += name + "," + fmt(v) + "\n";
  };
  row("norm", rep.norm);
  row("total_energy", rep.total_energy);
  row("energy_mass", rep.energy_mass);
  row("energy_electric", rep.energy_electric);
  row("energy_hopping", rep.energy_hopping);
  row("energy_plaquette", rep.energy_plaquette);
  row("energy_penalty", rep.energy_penalty);
  row("gauge_violation", rep.gauge_violation);
  for (std::size_t i = 0; i < rep.link_electric.size(); ++i)
    row("link_electric_" + std::to_string(i), rep.link_electric[i]);
  for (std::size_t i = 0; i < rep.plaquette_re.size(); ++i)
    row("plaquette_re_" + std::to_string(i), rep.plaquette_re[i]);
  for (std::size_t i = 0; i < rep.charge_density.size(); ++i)
    row("charge_density_" + std::to_string(i), rep.charge_density[i]);
  for (const auto& w : rep.wilson_loops) {
    std::string tag = std::to_string(w.r1) + "x" + std::to_string(w.r2);
    row("wilson_" + tag + "_re", w.value.real());
    row("wilson_" + tag + "_im", w.value.imag());
  }

  write_file(dir / "results.jsonl", r.str() + "\n");
  write_file(dir / "summary.csv", csv);
  return 0;
}

}  // namespace

std::vector<InvariantCheck> run_invariant_suite(const RunConfig& cfg) {
  StateSpace space(cfg.geom, cfg.group, cfg.matter);
  HamiltonianBundle bundle = build_hamiltonian(space, cfg.couplings);
  const GroupSpec& group = cfg.group;
  std::int64_t dim = space.dimension();

  std::vector<InvariantCheck> checks;
  auto at_most = [&](const std::string& name, double bound, double measured) {
    checks.push_back({name, bound, false, measured, measured <= bound});
  };
  auto at_least = [&](const std::string& name, double bound, double measured) {
    checks.push_back({name, bound, true, measured, measured >= bound});
  };

  // Round-trip of the configuration itself.
  {
    RunConfig back = parse_config(serialize_config(cfg));
    at_most("config_round_trip", 0.5, back == cfg ? 0.0 : 1.0);
  }

  // Hermiticity of every enabled term and the total.
  {
    double worst = 0.0;
    auto h = [&](const SparseMatrix& m) {
      worst = std::max(worst, max_abs(SparseMatrix(m - SparseMatrix(m.adjoint()))));
    };
    if (cfg.couplings.term_mass) h(bundle.mass);
    if (cfg.couplings.term_electric) h(bundle.electric);
    if (cfg.couplings.term_hopping) h(bundle.hopping);
    if (cfg.couplings.term_plaquette) h(bundle.plaquette);
    h(bundle.total);
    at_most("hermitian_hamiltonian", 1e-13, worst);
  }

  std::vector<GroupElement> samples = sample_elements(group);
  std::vector<std::vector<SparseMatrix>> theta_hat(space.num_sites());
  for (int x = 0; x < space.num_sites(); ++x)
    for (const auto& g : samples)
      theta_hat[x].push_back(build_gauge_transformation(space, x, g));

  {
    double worst = 0.0;
    SparseMatrix eye = identity_op(space);
    for (const auto& per_site : theta_hat)
      for (const auto& t : per_site)
        worst = std::max(
            worst, max_abs(SparseMatrix(SparseMatrix(t.adjoint() * t) - eye)));
    at_most("unitary_gauge_transformation", 1e-12, worst);
  }

  {
    double worst = 0.0;
    for (int x = 0; x < space.num_sites(); ++x)
      for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
          // Every link factor of the site operator composes contravariantly
          // (left translation transposes, the incoming factor is daggered),
          // so the product of two site rotations is the reversed product.
          GroupElement prod = compose(group, samples[j], samples[i]);
          SparseMatrix lhs(theta_hat[x][i] * theta_hat[x][j]);
          SparseMatrix rhs = build_gauge_transformation(space, x, prod);
          worst = std::max(worst, max_abs(SparseMatrix(lhs - rhs)));
        }
    at_most("gauge_transformation_composition", 1e-12, worst);
  }

  {
    double worst = 0.0;
    for (const auto& per_site : theta_hat)
      for (const auto& t : per_site)
        worst = std::max(worst, max_abs(commutator(bundle.total, t)));
    at_most("hamiltonian_gauge_invariance", 1e-11, worst);
  }

  {
    double worst = 0.0;
    if (group.abelian()) {
      for (std::size_t i = 0; i < bundle.gauss.size(); ++i)
        for (std::size_t j = i + 1; j < bundle.gauss.size(); ++j)
          worst = std::max(worst,
                           max_abs(commutator(bundle.gauss[i], bundle.gauss[j])));
    } else {
      for (int x = 0; x < space.num_sites(); ++x) {
        const SparseMatrix& g1 = bundle.gauss[3 * x + 0];
        const SparseMatrix& g2 = bundle.gauss[3 * x + 1];
        const SparseMatrix& g3 = bundle.gauss[3 * x + 2];
        worst = std::max(
            worst, max_abs(SparseMatrix(commutator(g1, g2) -
                                        SparseMatrix(cplx(0, 1) * g3))));
        worst = std::max(
            worst, max_abs(SparseMatrix(commutator(g2, g3) -
                                        SparseMatrix(cplx(0, 1) * g1))));
        worst = std::max(
            worst, max_abs(SparseMatrix(commutator(g3, g1) -
                                        SparseMatrix(cplx(0, 1) * g2))));
      }
    }
    at_most("gauss_generator_algebra", 1e-13, worst);
  }

  {
    // Z_N conserves the divergence mod N only: a plaquette flip can wrap a
    // digit and shift the raw integer eigenvalue by +-N, so the conserved
    // generator is the symmetric residue, matching the penalty and sector.
    double worst = 0.0;
    if (group.kind == GroupKind::cyclic_zn) {
      for (int x = 0; x < space.num_sites(); ++x) {
        std::vector<Triplet> trips;
        trips.reserve(dim);
        for (std::int64_t s = 0; s < dim; ++s)
          trips.emplace_back(
              s, s,
              double(symmetric_residue(abelian_gauss_eigenvalue(space, x, s),
                                       group.n)));
        SparseMatrix g(dim, dim);
        g.setFromTriplets(trips.begin(), trips.end());
        worst = std::max(worst, max_abs(commutator(g, bundle.total)));
      }
    } else {
      for (const auto& g : bundle.gauss)
        worst = std::max(worst, max_abs(commutator(g, bundle.total)));
    }
    at_most("gauss_commutes_with_hamiltonian", 1e-11, worst);
  }

  if (group.abelian()) {
    // Theta-hat equals the exponential of its generator: e^{-i phi_k G}
    // for Z_N (phi_k = 2 pi k / N), e^{+i phi G} for U(1).
    double worst = 0.0;
    for (int x = 0; x < space.num_sites(); ++x)
      for (std::size_t si = 0; si < samples.size(); ++si) {
        double phi = group.kind == GroupKind::cyclic_zn
                         ? -2.0 * std::numbers::pi * samples[si].k / group.n
                         : samples[si].phi;
        std::vector<Triplet> trips;
        for (std::int64_t s = 0; s < dim; ++s) {
          int gv = abelian_gauss_eigenvalue(space, x, s);
          trips.emplace_back(s, s, std::exp(cplx(0, phi * gv)));
        }
        SparseMatrix expg(dim, dim);
        expg.setFromTriplets(trips.begin(), trips.end());
        worst = std::max(worst,
                         max_abs(SparseMatrix(theta_hat[x][si] - expg)));
      }
    at_most("gauge_transformation_generator_exponential", 1e-12, worst);
  }

  {
    // (U^dag U)_{ a b } = sum_m U_{ m a }^dag U_{ m b } on the link space:
    // the identity exactly for Z_N, necessarily deficient after truncation.
    auto u = build_U(group);
    int d = int(u.size());
    int ld = group.link_dim();
    double dev = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(ld, ld);
        for (int m = 0; m < d; ++m)
          w += u[m][a].mat.adjoint() * u[m][b].mat;
        if (a == b) w -= Eigen::MatrixXcd::Identity(ld, ld);
        dev = std::max(dev, w.cwiseAbs().maxCoeff());
      }
    if (group.kind == GroupKind::cyclic_zn)
      at_most("transporter_unitarity", 1e-13, dev);
    else
      at_least("transporter_truncation_detected", 1e-6, dev);
  }

  if (group.abelian()) {
    // Ladder relation [E, U] = U away from the truncation wrap/edge.
    auto e_ops = build_electric(group);
    auto u = build_U(group);
    const Eigen::MatrixXcd& em = e_ops[0].mat;
    const Eigen::MatrixXcd& um = u[0][0].mat;
    Eigen::MatrixXcd c = em * um - um * em - um;
    int ld = group.link_dim();
    double worst = 0.0;
    for (int r = 0; r < ld; ++r)
      for (int col = 0; col < ld; ++col) {
        if (group.kind == GroupKind::cyclic_zn && r == 0 && col == ld - 1)
          continue;  // cyclic wrap entry, excluded from the ladder relation
        worst = std::max(worst, std::abs(c(r, col)));
      }
    at_most("electric_transporter_ladder", 1e-13, worst);
  }

  if (group.abelian() && space.lattice().geom().boundary == Boundary::periodic) {
    // Summing the divergence over a torus cancels every link, leaving the
    // total dynamical charge.
    double worst = 0.0;
    for (std::int64_t s = 0; s < dim; ++s) {
      long long total = 0;
      for (int x = 0; x < space.num_sites(); ++x) {
        total += abelian_gauss_eigenvalue(space, x, s);
        if (space.has_matter())
          total += space.fermion_bit(s, x) - space.charge_offset(x);
      }
      worst = std::max(worst, double(std::abs(total)));
    }
    at_most("torus_gauss_sum_rule", 1e-12, worst);
  }

  {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac[space.electric_vacuum()] = cplx(1, 0);
    at_most("vacuum_gauge_invariant", 1e-12, gauge_violation(space, vac));
  }

  GaugeSector sector = project_sector(space, bundle, cfg.charges);
  {
    double worst = 0.0;
    for (const auto& b : sector.basis) {
      Eigen::VectorXcd v(b);
      worst = std::max(worst, (sector.project(v) - v).norm());
    }
    at_most("sector_projector_idempotent", 1e-12, worst);
  }

  {
    // Constraint residual per basis vector: Abelian residues are exact by
    // construction; SU(2) vectors come from the numerical null space.
    double worst = 0.0;
    if (group.abelian()) {
      bool zn = group.kind == GroupKind::cyclic_zn;
      for (const auto& b : sector.basis)
        for (Eigen::SparseVector<cplx>::InnerIterator it(b); it; ++it)
          for (int x = 0; x < space.num_sites(); ++x) {
            int g = abelian_gauss_eigenvalue(space, x, it.index()) -
                    sector.charges[x];
            if (zn) g = symmetric_residue(g, group.n);
            worst = std::max(worst, std::abs(double(g)) * std::abs(it.value()));
          }
    } else {
      for (const auto& b : sector.basis) {
        Eigen::VectorXcd v(b);
        for (const auto& g : bundle.gauss)
          worst = std::max(worst, (g * v).norm());
      }
    }
    at_most("sector_basis_constraint", 1e-10, worst);
  }

  bool any_offdiag = cfg.couplings.term_hopping || cfg.couplings.term_plaquette;
  if (any_offdiag && dim <= 8192) {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac[space.electric_vacuum()] = cplx(1, 0);
    EvolutionPlan plan;
    plan.method = EvolveMethod::trotter2;
    plan.dt = 0.05;
    plan.total_time = 0.5;
    Trajectory traj = evolve(bundle, vac, plan);
    double worst_norm = 0.0, worst_gauge = 0.0;
    for (const auto& s : traj.states) {
      worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
      worst_gauge = std::max(worst_gauge, gauge_violation(space, s));
    }
    at_most("trotter_norm_preservation", 1e-9, worst_norm);
    at_most("trotter_gauge_preservation", 1e-9, worst_gauge);
  }

  if (space.lattice().geom().dims == 2 && space.lattice().num_plaquettes() > 0) {
    MeasurementContext ctx = make_measurement_context(space, bundle);
    if (!ctx.wilson_ops.empty()) {
      double worst = 0.0;
      for (int x = 0; x < space.num_sites(); ++x)
        worst = std::max(worst,
                         max_abs(commutator(ctx.wilson_ops[0], theta_hat[x][0])));
      at_most("wilson_loop_gauge_invariance", 1e-11, worst);
    }
  }

  {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac[space.electric_vacuum()] = cplx(1, 0);
    ObservableReport rep = measure(space, bundle, vac);
    double sum = rep.energy_mass + rep.energy_electric + rep.energy_hopping +
                 rep.energy_plaquette + rep.energy_penalty;
    at_most("observable_energy_consistency", 1e-10,
            std::abs(sum - rep.total_energy));
  }

  return checks;
}

namespace {

int validate_job(const RunConfig& cfg, const std::filesystem::path& dir) {
  std::vector<InvariantCheck> checks = run_invariant_suite(cfg);

  std::string jsonl, csv = "check,bound,comparison,measured,pass\n", txt;
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    JsonRecord r;
    r.add("job", std::string("validate"));
    r.add("check", c.name);
    r.add("bound", c.bound);
    r.add("comparison", std::string(c.at_least ? ">=" : "<="));
    r.add("measured", c.measured);
    r.add("pass", c.pass);
    jsonl += r.str() + "\n";
    csv += c.name + "," + fmt(c.bound) + "," + (c.at_least ? ">=" : "<=") +
           "," + fmt(c.measured) + "," + (c.pass ? "true" : "false") + "\n";
    txt += c.name + "  " + (c.at_least ? ">=" : "<=") + fmt(c.bound) + "  " +
           fmt(c.measured) + "  " + (c.pass ? "PASS" : "FAIL") + "\n";
  }
  write_file(dir / "results.jsonl", jsonl);
  write_file(dir / "summary.csv", csv);
  write_file(dir / "invariants.txt", txt);
  return all_pass ? 0 : 3;
}

}  // namespace

int run_job(const RunConfig& cfg) {
  validate_config(cfg);
  StateSpace space(cfg.geom, cfg.group, cfg.matter);
  HamiltonianBundle bundle = build_hamiltonian(space, cfg.couplings);

  std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  switch (cfg.job) {
    case Job::spectrum: return spectrum_job(cfg, space, bundle, dir);
    case Job::evolve: return evolve_job(cfg, space, bundle, dir);
    case Job::observables: return observables_job(cfg, space, bundle, dir);
    case Job::validate: return validate_job(cfg, dir);
  }
  throw internal_error("unreachable job");
}

}  // namespace lgt
