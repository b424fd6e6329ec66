#pragma once

#include "lgt/gauss_sector.hpp"

namespace lgt {

struct WilsonLoopValue {
  int r1 = 1;
  int r2 = 1;
  cplx value{0, 0};  // averaged over all corners where the rectangle fits
};

struct ObservableReport {
  double norm = 0.0;
  double total_energy = 0.0;
  double energy_mass = 0.0;
  double energy_electric = 0.0;
  double energy_hopping = 0.0;
  double energy_plaquette = 0.0;
  double energy_penalty = 0.0;
  std::vector<double> link_electric;       // (g^2/2) <f(E_l)> per link
  std::vector<double> plaquette_re;        // Re <Tr U_p> per plaquette
  std::vector<WilsonLoopValue> wilson_loops;
  std::vector<double> charge_density;      // <Q(x)> per site, empty w/o matter
  double gauge_violation = 0.0;
};

// Precomputed operators for repeated measurements along a trajectory.
struct MeasurementContext {
  const StateSpace* space = nullptr;
  const HamiltonianBundle* bundle = nullptr;
  std::vector<SparseMatrix> plaquette_ops;
  std::vector<WilsonLoopValue> wilson_sizes;      // value unused here
  std::vector<SparseMatrix> wilson_ops;           // corner-averaged, per size
  std::vector<double> abelian_residue2;           // per basis state
};

MeasurementContext make_measurement_context(const StateSpace& space,
                                            const HamiltonianBundle& bundle);

ObservableReport measure(const MeasurementContext& ctx,
                         const Eigen::VectorXcd& state);
ObservableReport measure(const StateSpace& space,
                         const HamiltonianBundle& bundle,
                         const Eigen::VectorXcd& state);

// Traced ordered transporter product around the axis-aligned rectangle with
// the given corner and widths (r1 along axis 0, r2 along axis 1).
SparseMatrix wilson_loop_operator(const StateSpace& space, const Site& corner,
                                  int r1, int r2);

cplx wilson_loop(const StateSpace& space, const Eigen::VectorXcd& state,
                 const Site& corner, int r1, int r2);

}  // namespace lgt
