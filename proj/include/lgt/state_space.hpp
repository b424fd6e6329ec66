#pragma once

#include "lgt/group.hpp"
#include "lgt/lattice.hpp"

namespace lgt {

// Matter content.  One staggered (spinless) fermion mode per site when
// enabled; the group must then be Abelian (single-component matter).
struct MatterSpec {
  bool staggered = false;
};

// Product basis over links and matter modes.
//
// Packing: basis index s = sum_l digit_l * link_dim^l
//                        + link_dim^num_links * sum_x bit_x * 2^x,
// link 0 in the lowest digit, site-0 fermion bit just above the links.
// Link digits index the canonical representation basis of the group;
// fermion modes follow the lexicographic site order (used as the
// Jordan-Wigner ordering).
class StateSpace {
 public:
  StateSpace(const LatticeGeom& geom, const GroupSpec& group,
             const MatterSpec& matter);

  const Lattice& lattice() const { return lattice_; }
  const GroupSpec& group() const { return group_; }
  const MatterSpec& matter() const { return matter_; }

  bool has_matter() const { return matter_.staggered; }
  int link_dim() const { return link_dim_; }
  int num_links() const { return lattice_.num_links(); }
  int num_sites() const { return lattice_.num_sites(); }

  std::int64_t dimension() const { return dim_; }

  std::int64_t link_stride(int link) const { return link_stride_[link]; }
  std::int64_t matter_stride(int site) const;

  int link_digit(std::int64_t state, int link) const;
  int fermion_bit(std::int64_t state, int site) const;
  std::int64_t with_link_digit(std::int64_t state, int link, int digit) const;

  // Number of fermion bits set on modes strictly below `site`.
  int jw_string_count(std::int64_t state, int site) const;

  // Link digit of the trivial (zero-field) irrep: Z_N j=0, U(1) j=0
  // (the middle of the ladder), SU(2) |000>.
  int zero_irrep_digit() const;

  // All links in the zero irrep; with staggered matter, odd sites occupied
  // (the half-filled vacuum with zero staggered charge everywhere).
  std::int64_t electric_vacuum() const;

  // Staggered-charge offset: Q(x) = n(x) - offset(x), offset 1 on odd sites.
  int charge_offset(int site) const;

 private:
  Lattice lattice_;
  GroupSpec group_;
  MatterSpec matter_;
  int link_dim_;
  std::int64_t links_total_;
  std::int64_t dim_;
  std::vector<std::int64_t> link_stride_;
};

// Promote a single-link operator to the full space.
SparseMatrix embed_link_op(const StateSpace& space, int link,
                           const Eigen::MatrixXcd& op);

// psi^dag(x) psi(y) with Jordan-Wigner strings over the site order;
// x == y gives the number operator.
SparseMatrix fermion_bilinear(const StateSpace& space, int site_x, int site_y);

// psi^dag(x) U_l psi(y) for link l: x->y, with u_block the transporter
// component matrix from build_U (1x1 for Abelian groups).
SparseMatrix gauged_hopping(const StateSpace& space, int link,
                            const std::vector<std::vector<LinkOperator>>& u_block);

SparseMatrix identity_op(const StateSpace& space);

// Diagonal operator on one fermion mode: value `empty` on bit 0,
// `occupied` on bit 1.
SparseMatrix site_occupation_diag(const StateSpace& space, int site,
                                  double empty, double occupied);

}  // namespace lgt
