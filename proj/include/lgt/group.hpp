#pragma once

#include <functional>
#include <random>
#include <vector>

#include "lgt/types.hpp"

namespace lgt {

// Gauge-group variants carried on every link.
//
// Conventions used throughout (all matrices are written in the irrep basis
// |j m n> unless stated otherwise):
//
//  * CyclicZN(N):      irreps j = 0..N-1, one-dimensional.  Group elements are
//                      g_k = exp(2 pi i k / N), k = 0..N-1, and the irrep
//                      functions are D^j(g_k) = exp(-2 pi i j k / N).
//  * TruncatedU1(L):   irreps j = -L..L (electric-field eigenvalues), basis
//                      ordered by ascending j.  Elements are angles phi with
//                      D^j(phi) = exp(i j phi).
//  * TruncatedSU2(J):  irreps j = 0, 1/2, ..., J (J <= 3/2), each appearing
//                      with left/right magnetic indices m, n.  Half-integers
//                      are stored doubled (twice_j, twice_m, twice_n).  Basis
//                      order: ascending j; within a j-block m runs from +j
//                      down to -j (slow), n likewise (fast).  Elements are
//                      z-y-z Euler angles (alpha, beta, gamma) with
//                      alpha in [0, 2pi), beta in [0, pi], gamma in [0, 4pi),
//                      D^j(g) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz),
//                      rows/columns ordered by descending m.  Condon-Shortley
//                      phases everywhere.
enum class GroupKind { cyclic_zn, truncated_u1, truncated_su2 };

struct GroupSpec {
  GroupKind kind = GroupKind::cyclic_zn;
  int n = 2;           // CyclicZN: group order, >= 2
  int cutoff = 1;      // TruncatedU1: electric cutoff, >= 1
  int twice_jmax = 1;  // TruncatedSU2: doubled spin cutoff, in {1, 2, 3}

  static GroupSpec cyclic(int n);
  static GroupSpec u1(int cutoff);
  static GroupSpec su2(int twice_jmax);

  // Dimension of the truncated single-link Hilbert space.
  int link_dim() const;

  bool abelian() const { return kind != GroupKind::truncated_su2; }
  std::string name() const;
};

bool operator==(const GroupSpec& a, const GroupSpec& b);

// Irrep label.  For SU(2), j holds the doubled spin; dim = 2j+1.
// For the Abelian variants dim is always 1 and j is the integer label
// (Z_N: 0..N-1, U(1): -cutoff..cutoff).
struct IrrepLabel {
  int j = 0;
  int dim = 1;
};

bool operator==(const IrrepLabel& a, const IrrepLabel& b);

// Irreps kept by the truncation, in canonical basis order.
std::vector<IrrepLabel> irreps(const GroupSpec& spec);

// The irrep the matter field and Wilson lines transform in
// (Z_N and U(1): j = 1; SU(2): j = 1/2).
IrrepLabel fundamental_irrep(const GroupSpec& spec);

// One basis vector |j m n> of the link space; twice_m = twice_n = 0 for
// the Abelian variants.
struct RepBasisState {
  IrrepLabel irrep;
  int twice_m = 0;
  int twice_n = 0;
};

// Link-space basis in canonical order (see GroupKind comment above).
std::vector<RepBasisState> rep_basis(const GroupSpec& spec);

// Group element for any variant; only the fields of the matching variant are
// meaningful.  Construct through the factories so the kind tag is set.
struct GroupElement {
  GroupKind kind = GroupKind::cyclic_zn;
  int k = 0;                              // CyclicZN
  double phi = 0.0;                       // TruncatedU1
  double alpha = 0.0, beta = 0.0, gamma = 0.0;  // TruncatedSU2, z-y-z

  static GroupElement zn(int k);
  static GroupElement u1(double phi);
  static GroupElement su2(double alpha, double beta, double gamma);
};

GroupElement identity_element(const GroupSpec& spec);
GroupElement compose(const GroupSpec& spec, const GroupElement& a,
                     const GroupElement& b);
GroupElement inverse(const GroupSpec& spec, const GroupElement& g);

// Haar-distributed element (uniform k / phi; quaternion method for SU(2)).
GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng);

// Single-link operator with a coarse structure tag.  The tag propagates
// through sums, products, scalars and adjoints (diagonal is closed under all
// four; anything else degrades to generic).
struct LinkOperator {
  Eigen::MatrixXcd mat;
  bool diagonal = false;

  LinkOperator() = default;
  LinkOperator(Eigen::MatrixXcd m, bool diag);

  LinkOperator operator+(const LinkOperator& o) const;
  LinkOperator operator*(const LinkOperator& o) const;
  LinkOperator operator*(cplx s) const;
  LinkOperator adjoint() const;

  static LinkOperator identity(int dim);
  static LinkOperator from_diagonal(const Eigen::VectorXcd& d);
};

enum class Side { left, right };

// Left/right translation operator on the link space:
//   right:  Theta_g     |h> = |h g^{-1}>   ->  blocks 1 (x) D^j(g)
//   left :  Theta~_g    |h> = |g^{-1} h>   ->  blocks (D^j(g))^T (x) 1
// For the Abelian variants the two coincide.  Exactly unitary for every
// variant (the truncation keeps whole irreps).
LinkOperator build_theta(const GroupSpec& spec, const GroupElement& g, Side side);

// Electric generators.
//   CyclicZN:     {E} with E|j> = j|j>
//   TruncatedU1:  {E} with E|j> = j|j>, j = -cutoff..cutoff
//   TruncatedSU2: {R1, R2, R3, L1, L2, L3}; right algebra
//                 [R_a, R_b] = +i eps_abc R_c, left [L_a, L_b] = -i eps_abc L_c,
//                 [R_a, L_b] = 0; L3|jmn> = m|jmn>, R3|jmn> = n|jmn>.
std::vector<LinkOperator> build_electric(const GroupSpec& spec);

// Diagonal of the default electric energy density f(j):
//   Z_N: 1 - cos(2 pi j / N); U(1): j^2; SU(2): j(j+1)  (the quadratic
//   Casimir sum_a R_a^2 = sum_a L_a^2 on the SU(2) link space).
LinkOperator build_casimir(const GroupSpec& spec);

// Spectral weight assigned to each irrep by the electric term.
using SpectralFn = std::function<double(const IrrepLabel&)>;
SpectralFn default_spectral_fn(const GroupSpec& spec);

// Parallel-transporter components U^{irrep}_{mn} as a dim(irrep) x dim(irrep)
// matrix of link operators (1x1 for the Abelian variants).
//
//   Z_N:   U|j> = |j+r mod N> for irrep r; exactly unitary.
//   U(1):  U|j> = |j+r> with states beyond the cutoff annihilated.
//   SU(2): fundamental only; matrix elements from the Clebsch-Gordan series
//          <K M' N'|U^{1/2}_{mn}|J M N>
//             = sqrt(dim J / dim K) <K M'|J M; 1/2 m> <K N'|J N; 1/2 n>
//          restricted to kept irreps.
// The truncated U(1)/SU(2) transporters are not unitary, but they still obey
// the exact transformation law
//   Theta~_g U_{mn} Theta~_g^dag = sum_{m'} D^j_{m m'}(g) U_{m' n},
//   Theta_g  U_{mn} Theta_g^dag  = sum_{n'} U_{m n'} D^j_{n' n}(g).
std::vector<std::vector<LinkOperator>> build_U(const GroupSpec& spec);
std::vector<std::vector<LinkOperator>> build_U(const GroupSpec& spec,
                                               const IrrepLabel& irrep);

// Unitary change of basis from the group-element basis {|g_k>} to the irrep
// basis {|j>} for CyclicZN: W[k][j] = exp(-2 pi i j k / N)/sqrt(N).
// The continuous variants have no finite group-element basis; throws.
Eigen::MatrixXcd peter_weyl_transform(const GroupSpec& spec);

// Wigner D-matrix D^j(alpha, beta, gamma), dimension (2j+1), rows and columns
// ordered by descending m.  twice_j in {0, 1, 2, 3}.
Eigen::MatrixXcd wigner_D(int twice_j, const GroupElement& g);

// Irrep matrix of any variant: 1x1 phase for Z_N / U(1), wigner_D for SU(2).
Eigen::MatrixXcd irrep_matrix(const GroupSpec& spec, const IrrepLabel& irrep,
                              const GroupElement& g);

// <j1 m1; j2 m2 | J M> with Condon-Shortley phases; all spins doubled.
// Zero when M != m1+m2 or the triangle rule fails.
double clebsch_gordan(int twice_j1, int twice_m1, int twice_j2, int twice_m2,
                      int twice_J, int twice_M);

// Spin matrices {Jx, Jy, Jz} for doubled spin twice_j, descending-m basis.
std::array<Eigen::MatrixXcd, 3> spin_matrices(int twice_j);

}  // namespace lgt
