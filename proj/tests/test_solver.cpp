#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lgt/solver.hpp"
#include "oracles.hpp"

using namespace lgt;
using oracle::dense;
using oracle::max_abs_diff;

namespace {

StateSpace make_space(int dims, int e0, int e1, Boundary b,
                      const GroupSpec& g, bool matter) {
  return StateSpace({dims, {e0, e1}, b}, g, MatterSpec{matter});
}

HamiltonianBundle plaquette_system(const StateSpace& space, double g2) {
  Couplings c;
  c.g2 = g2;
  c.term_electric = true;
  c.term_plaquette = true;
  return build_hamiltonian(space, c);
}

Eigen::VectorXcd vacuum_state(const StateSpace& space) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dimension());
  v(space.electric_vacuum()) = 1.0;
  return v;
}

Eigen::VectorXcd random_state(std::int64_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v(i) = cplx{gauss(rng), gauss(rng)};
  v.normalize();
  return v;
}

double real_energy(const SparseMatrix& h, const Eigen::VectorXcd& psi) {
  return std::real(cplx(psi.dot(h * psi)));
}

}  // namespace

TEST_CASE("ground state of the electric term is the vacuum") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::periodic, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = build_hamiltonian(space, Couplings{});
  const GaugeSector sector = project_sector(space, bundle, {});
  const GroundState gs = ground_state(bundle.total, &sector);
  CHECK(std::abs(gs.energy) < 1e-9);
  CHECK(gs.residual < 1e-8);
  const Eigen::VectorXcd vac = vacuum_state(space);
  CHECK(std::abs(vac.dot(gs.state)) > 1.0 - 1e-9);
}

TEST_CASE("single plaquette against the dense solver") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.0);
  const auto eig = oracle::dense_eig(bundle.total);

  SUBCASE("full space") {
    const GroundState gs = ground_state(bundle.total);
    CHECK(gs.energy == doctest::Approx(eig.values(0)).epsilon(1e-10));
    CHECK(std::abs(eig.vectors.col(0).dot(gs.state)) > 1.0 - 1e-8);
  }
  SUBCASE("sector-restricted excited states") {
    const GaugeSector sector = project_sector(space, bundle, {});
    REQUIRE(sector.dimension == 2);
    const EigenPairs pairs = lowest_eigenpairs(bundle.total, 2, &sector);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> red(
        sector.reduce(bundle.total));
    for (int i = 0; i < 2; ++i) {
      CHECK(pairs.energies[i] ==
            doctest::Approx(red.eigenvalues()(i)).epsilon(1e-9));
      CHECK(pairs.residuals[i] < 1e-8);
      // States stay inside the sector.
      CHECK((sector.project(pairs.states[i]) - pairs.states[i]).norm() <
            1e-9);
    }
    CHECK(std::abs(pairs.states[0].dot(pairs.states[1])) < 1e-9);
  }
}

TEST_CASE("torus sector eigenpairs match the reduced dense problem") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::periodic, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.2);
  const GaugeSector sector = project_sector(space, bundle, {});
  REQUIRE(sector.dimension == 32);
  const EigenPairs pairs = lowest_eigenpairs(bundle.total, 3, &sector);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> red(
      sector.reduce(bundle.total));
  for (int i = 0; i < 3; ++i)
    CHECK(pairs.energies[i] ==
          doctest::Approx(red.eigenvalues()(i)).epsilon(1e-9));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(std::abs(pairs.states[i].dot(pairs.states[j])) < 1e-9);
}

TEST_CASE("solver control paths") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.0);
  SUBCASE("deterministic across repeated runs") {
    const GroundState a = ground_state(bundle.total);
    const GroundState b = ground_state(bundle.total);
    CHECK(a.energy == b.energy);
    CHECK((a.state - b.state).norm() == 0.0);
  }
  SUBCASE("matvec budget exhaustion reports non-convergence") {
    GroundStateOptions opts;
    opts.max_matvecs = 3;
    CHECK_THROWS_AS(ground_state(bundle.total, nullptr, opts),
                    convergence_error);
  }
  SUBCASE("more states than the sector holds") {
    const GaugeSector sector = project_sector(space, bundle, {});
    CHECK_THROWS_AS(lowest_eigenpairs(bundle.total, 5, &sector),
                    config_error);
  }
  SUBCASE("invalid request counts") {
    CHECK_THROWS_AS(lowest_eigenpairs(bundle.total, 0), config_error);
  }
}

TEST_CASE("evolution basics") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.0);
  const Eigen::VectorXcd vac = vacuum_state(space);

  SUBCASE("zero total time returns the initial state") {
    EvolutionPlan plan;
    plan.total_time = 0.0;
    const Trajectory traj = evolve(bundle, vac, plan);
    REQUIRE(traj.states.size() == 1);
    CHECK(traj.times[0] == 0.0);
    CHECK((traj.states[0] - vac).norm() < 1e-15);
  }
  SUBCASE("trajectory grid") {
    EvolutionPlan plan;
    plan.dt = 0.25;
    plan.total_time = 1.0;
    const Trajectory traj = evolve(bundle, vac, plan);
    REQUIRE(traj.states.size() == 5);
    for (int i = 0; i < 5; ++i)
      CHECK(traj.times[i] == doctest::Approx(0.25 * i).epsilon(1e-12));
  }
  SUBCASE("norm preserved by every method") {
    for (EvolveMethod m : {EvolveMethod::exact_dense, EvolveMethod::trotter1,
                           EvolveMethod::trotter2}) {
      EvolutionPlan plan;
      plan.method = m;
      plan.dt = 0.1;
      plan.total_time = 1.0;
      const Trajectory traj = evolve(bundle, vac, plan);
      for (const auto& psi : traj.states)
        CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
    }
  }
  SUBCASE("plan validation") {
    EvolutionPlan plan;
    plan.dt = 0.0;
    CHECK_THROWS_AS(evolve(bundle, vac, plan), config_error);
    plan.dt = 0.3;
    plan.total_time = 1.0;  // not an integral multiple
    CHECK_THROWS_AS(evolve(bundle, vac, plan), config_error);
    EvolutionPlan cap;
    cap.method = EvolveMethod::exact_dense;
    cap.dense_cap = 8;
    CHECK_THROWS_AS(evolve(bundle, vac, cap), config_error);
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(space.dimension());
    EvolutionPlan ok;
    CHECK_THROWS_AS(evolve(bundle, bad, ok), config_error);
  }
}

TEST_CASE("diagonal hamiltonians only rotate phases") {
  const StateSpace space =
      make_space(1, 3, 1, Boundary::open, GroupSpec::u1(1), false);
  const HamiltonianBundle bundle = build_hamiltonian(space, Couplings{});
  const Eigen::VectorXcd psi0 = random_state(space.dimension(), 5);
  for (EvolveMethod m : {EvolveMethod::exact_dense, EvolveMethod::trotter1,
                         EvolveMethod::trotter2}) {
    EvolutionPlan plan;
    plan.method = m;
    plan.dt = 0.2;
    plan.total_time = 1.0;
    const Trajectory traj = evolve(bundle, psi0, plan);
    for (const auto& psi : traj.states)
      for (std::int64_t s = 0; s < space.dimension(); ++s)
        CHECK(std::abs(std::abs(psi(s)) - std::abs(psi0(s))) < 1e-12);
  }
}

TEST_CASE("exact dense evolution against the spectral oracle") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 0.9);
  const Eigen::VectorXcd psi0 = vacuum_state(space);
  EvolutionPlan plan;
  plan.method = EvolveMethod::exact_dense;
  plan.dt = 0.2;
  plan.total_time = 1.0;
  const Trajectory traj = evolve(bundle, psi0, plan);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Eigen::VectorXcd expect =
        oracle::dense_evolve(bundle.total, psi0, traj.times[i]);
    CHECK((traj.states[i] - expect).norm() < 1e-10);
  }
  // Energy is conserved to solver precision.
  const double e0 = real_energy(bundle.total, traj.states.front());
  for (const auto& psi : traj.states)
    CHECK(std::abs(real_energy(bundle.total, psi) - e0) < 1e-8);
}

TEST_CASE("trotter error halves as expected under step refinement") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.0);
  const Eigen::VectorXcd psi0 = vacuum_state(space);
  const double T = 1.0;
  const Eigen::VectorXcd exact = oracle::dense_evolve(bundle.total, psi0, T);

  auto final_error = [&](EvolveMethod m, double dt) {
    EvolutionPlan plan;
    plan.method = m;
    plan.dt = dt;
    plan.total_time = T;
    const Trajectory traj = evolve(bundle, psi0, plan);
    return (traj.states.back() - exact).norm();
  };

  SUBCASE("second order gains a factor of four per halving") {
    const double e1 = final_error(EvolveMethod::trotter2, 0.1);
    const double e2 = final_error(EvolveMethod::trotter2, 0.05);
    CHECK(e1 / e2 > 4.0 * 0.7);
    CHECK(e1 / e2 < 4.0 * 1.3);
  }
  SUBCASE("order slopes across a decade of step sizes") {
    const int steps[] = {5, 9, 16, 28, 50};
    for (EvolveMethod m : {EvolveMethod::trotter1, EvolveMethod::trotter2}) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (int n : steps) {
        const double dt = T / n;
        const double err = final_error(m, dt);
        REQUIRE(err > 0.0);
        const double x = std::log(dt), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const int cnt = 5;
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      const double expect = m == EvolveMethod::trotter1 ? 1.0 : 2.0;
      CHECK(std::abs(slope - expect) < 0.15);
    }
  }
}

TEST_CASE("richardson error estimate tracks the true error") {
  const StateSpace space =
      make_space(2, 2, 2, Boundary::open, GroupSpec::cyclic(2), false);
  const HamiltonianBundle bundle = plaquette_system(space, 1.0);
  const Eigen::VectorXcd psi0 = vacuum_state(space);
  const double T = 1.0;
  const Eigen::VectorXcd exact = oracle::dense_evolve(bundle.total, psi0, T);
  for (EvolveMethod m : {EvolveMethod::trotter1, EvolveMethod::trotter2}) {
    EvolutionPlan plan;
    plan.method = m;
    plan.dt = 0.1;
    plan.total_time = T;
    plan.estimate_error = true;
    const Trajectory traj = evolve(bundle, psi0, plan);
    REQUIRE(traj.error_estimate.size() == traj.states.size());
    CHECK(traj.error_estimate.front() == 0.0);
    // Monotone accumulation.
    for (std::size_t i = 1; i < traj.error_estimate.size(); ++i)
      CHECK(traj.error_estimate[i] >= traj.error_estimate[i - 1]);
    const double actual = (traj.states.back() - exact).norm();
    const double estimate = traj.error_estimate.back();
    CHECK(estimate > 0.3 * actual);
    CHECK(estimate < 3.0 * actual + 1e-12);
  }
  // Estimation off: zeros.
  EvolutionPlan plain;
  plain.dt = 0.1;
  plain.total_time = T;
  const Trajectory traj = evolve(bundle, psi0, plain);
  for (double e : traj.error_estimate) CHECK(e == 0.0);
}

TEST_CASE("exact factor of a sparse hermitian term") {
  const StateSpace space =
      make_space(1, 2, 1, Boundary::open, GroupSpec::cyclic(2), true);
  Couplings c;
  c.term_hopping = true;
  c.term_electric = true;
  const HamiltonianBundle bundle = build_hamiltonian(space, c);
  REQUIRE(bundle.hopping_terms.size() == 1);
  const SparseMatrix& t = bundle.hopping_terms[0];
  const double theta = 0.37;
  const ExpFactor factor = hermitian_exp_factor(t, theta);
  const Eigen::MatrixXcd expect = oracle::herm_exp(dense(t), theta);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd v = random_state(space.dimension(), 50 + trial);
    const Eigen::VectorXcd before = v;
    factor.apply(v);
    CHECK((v - expect * before).norm() < 1e-12);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  // States outside the operator support are untouched.
  Eigen::VectorXcd empty = Eigen::VectorXcd::Zero(space.dimension());
  empty(0) = 1.0;  // no fermions: the hopping term annihilates it
  const Eigen::VectorXcd kept = empty;
  Eigen::VectorXcd applied = empty;
  factor.apply(applied);
  CHECK((applied - kept).norm() < 1e-15);
}
