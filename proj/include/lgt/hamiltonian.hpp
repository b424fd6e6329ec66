#pragma once

#include "lgt/state_space.hpp"

namespace lgt {

// Couplings and per-term enable flags.  Disabled terms enter the bundle as
// zero operators so downstream code can treat the shape uniformly.
struct Couplings {
  double g2 = 1.0;                // electric / magnetic coupling
  double mass = 0.0;              // staggered mass M
  double hopping = 1.0;           // hopping scale
  double penalty_strength = 0.0;  // Gauss-penalty lambda

  bool term_electric = true;
  bool term_mass = false;
  bool term_hopping = false;
  bool term_plaquette = false;
};

bool operator==(const Couplings& a, const Couplings& b);

// Assembled Hamiltonian: the four physical terms, the penalty, their sum,
// the per-term decomposition used by the Trotter splitting, and the Gauss
// generators (one per site for Abelian groups, three per site for SU(2),
// stored as gauss[3*site + a]).
struct HamiltonianBundle {
  Couplings couplings;
  SparseMatrix mass;
  SparseMatrix electric;
  SparseMatrix hopping;
  SparseMatrix plaquette;
  SparseMatrix penalty;
  SparseMatrix total;
  std::vector<SparseMatrix> hopping_terms;    // per (x,i), Hermitian
  std::vector<SparseMatrix> plaquette_terms;  // per plaquette, Hermitian
  std::vector<SparseMatrix> gauss;
  int gauss_per_site = 1;
  // f(j) per rep-basis index, the weights inside the electric term; kept so
  // per-link energies decompose consistently with <H_E>.
  std::vector<double> spectral;
};

// Staggered mass term: M sum_x (-1)^(x_0+x_1) psi^dag psi(x).
SparseMatrix build_HM(const StateSpace& space, double mass);

// Electric term: (g^2/2) sum_links f(j) projected per irrep; diagonal.
SparseMatrix build_HE(const StateSpace& space, double g2);
SparseMatrix build_HE(const StateSpace& space, double g2, const SpectralFn& f);

// Gauged hopping sum_x,i eps_i(x) psi^dag(x) U(x,i) psi(x+e_i) + h.c. with
// staggered phases eps_0 = eps, eps_1(x) = eps (-1)^(x_0).
SparseMatrix build_Hint(const StateSpace& space, double eps);

// Magnetic term: -(1/2g^2) sum_plaquettes [Tr(U U U^dag U^dag) + h.c.].
SparseMatrix build_HB(const StateSpace& space, double g2);

// Per-term lists in enumeration order (the Trotter off-diagonal group).
std::vector<SparseMatrix> hopping_term_list(const StateSpace& space, double eps);
std::vector<SparseMatrix> plaquette_term_list(const StateSpace& space, double g2);

// Traced ordered product around one plaquette (no prefactor, no +h.c.).
SparseMatrix plaquette_operator(const StateSpace& space, int plaquette);

// Traced ordered product of transporters along a link path; each entry is
// (link id, daggered?).  Abelian groups reduce to a plain operator product;
// SU(2) contracts the fundamental indices along the path and traces.
SparseMatrix traced_link_product(
    const StateSpace& space, const std::vector<std::pair<int, bool>>& path);

// Gauss generator.  Abelian: G(x) = sum_out E - sum_in E - Q(x), diagonal;
// Q(x) = psi^dag psi(x) - offset(x) with the staggered half-filling offset.
// SU(2) (a = 0,1,2): G_a(x) = sum_in R_a - sum_out L_a, which closes as
// [G_a(x), G_b(y)] = i delta_xy eps_abc G_c(x).
SparseMatrix build_gauss_generator(const StateSpace& space, int site);
SparseMatrix build_gauss_generator(const StateSpace& space, int site, int a);

// Local gauge transformation at x: product of Theta~_g on outgoing links,
// Theta_g^dag on incoming links, and the matter phase theta_g^dag; unitary.
SparseMatrix build_gauge_transformation(const StateSpace& space, int site,
                                        const GroupElement& g);

// lambda sum_x G^2(x) (SU(2): sum_a G_a^2).  For Z_N the squared generator
// uses the symmetric residue mod N so the kernel is the mod-N Gauss sector.
SparseMatrix build_penalty(const StateSpace& space, double lambda);

HamiltonianBundle build_hamiltonian(const StateSpace& space,
                                    const Couplings& couplings);
HamiltonianBundle build_hamiltonian(const StateSpace& space,
                                    const Couplings& couplings,
                                    const SpectralFn& f);

// Abelian G(x) eigenvalue on one basis state (divergence minus dynamical
// charge, before any mod-N reduction).
int abelian_gauss_eigenvalue(const StateSpace& space, int site,
                             std::int64_t state);

// Symmetric residue of v mod n, in (-n/2, n/2].
int symmetric_residue(int v, int n);

}  // namespace lgt
