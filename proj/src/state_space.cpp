#include "lgt/state_space.hpp"

#include <bit>

namespace lgt {

namespace {

// Keep global dimensions comfortably inside 32-bit sparse index space.
constexpr std::int64_t kMaxDimension = std::int64_t(1) << 30;

}  // namespace

StateSpace::StateSpace(const LatticeGeom& geom, const GroupSpec& group,
                       const MatterSpec& matter)
    : lattice_(geom), group_(group), matter_(matter) {
  if (matter.staggered && !group.abelian())
    throw config_error("staggered matter requires an Abelian gauge group");
  link_dim_ = group.link_dim();
  links_total_ = 1;
  link_stride_.resize(lattice_.num_links());
  for (int l = 0; l < lattice_.num_links(); ++l) {
    link_stride_[l] = links_total_;
    links_total_ *= link_dim_;
    if (links_total_ > kMaxDimension)
      throw config_error("state space too large");
  }
  dim_ = links_total_;
  if (matter_.staggered) {
    for (int s = 0; s < lattice_.num_sites(); ++s) {
      dim_ *= 2;
      if (dim_ > kMaxDimension) throw config_error("state space too large");
    }
  }
}

std::int64_t StateSpace::matter_stride(int site) const {
  return links_total_ << site;
}

int StateSpace::link_digit(std::int64_t state, int link) const {
  return static_cast<int>((state / link_stride_[link]) % link_dim_);
}

int StateSpace::fermion_bit(std::int64_t state, int site) const {
  return static_cast<int>((state / links_total_) >> site) & 1;
}

std::int64_t StateSpace::with_link_digit(std::int64_t state, int link,
                                         int digit) const {
  int old = link_digit(state, link);
  return state + (std::int64_t(digit) - old) * link_stride_[link];
}

int StateSpace::jw_string_count(std::int64_t state, int site) const {
  std::uint64_t bits = static_cast<std::uint64_t>(state / links_total_);
  std::uint64_t below = bits & ((std::uint64_t(1) << site) - 1);
  return std::popcount(below);
}

int StateSpace::zero_irrep_digit() const {
  return group_.kind == GroupKind::truncated_u1 ? group_.cutoff : 0;
}

std::int64_t StateSpace::electric_vacuum() const {
  std::int64_t s = 0;
  int zero = zero_irrep_digit();
  for (int l = 0; l < num_links(); ++l) s += zero * link_stride_[l];
  if (matter_.staggered) {
    for (int x = 0; x < num_sites(); ++x)
      if (charge_offset(x) == 1) s += matter_stride(x);
  }
  return s;
}

int StateSpace::charge_offset(int site) const {
  if (!matter_.staggered) return 0;
  return lattice_.site_parity(lattice_.sites()[site]) == 1 ? 0 : 1;
}

SparseMatrix embed_link_op(const StateSpace& space, int link,
                           const Eigen::MatrixXcd& op) {
  if (link < 0 || link >= space.num_links())
    throw config_error("link index out of range");
  if (op.rows() != space.link_dim() || op.cols() != space.link_dim())
    throw config_error("operator dimension does not match link space");

  std::int64_t dim = space.dimension();
  std::int64_t stride = space.link_stride(link);
  int ld = space.link_dim();

  std::vector<Triplet> trips;
  for (std::int64_t s = 0; s < dim; ++s) {
    int j = space.link_digit(s, link);
    for (int i = 0; i < ld; ++i) {
      cplx v = op(i, j);
      if (v == cplx(0, 0)) continue;
      trips.emplace_back(s + (std::int64_t(i) - j) * stride, s, v);
    }
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix fermion_bilinear(const StateSpace& space, int site_x,
                              int site_y) {
  if (!space.has_matter())
    throw config_error("fermion operator requested without matter");
  if (site_x < 0 || site_x >= space.num_sites() || site_y < 0 ||
      site_y >= space.num_sites())
    throw config_error("site index out of range");

  std::int64_t dim = space.dimension();
  std::vector<Triplet> trips;
  for (std::int64_t s = 0; s < dim; ++s) {
    if (space.fermion_bit(s, site_y) == 0) continue;
    // Apply psi(y), then psi^dag(x); each picks up the parity of the
    // occupied modes below it in the intermediate state.
    int sign = space.jw_string_count(s, site_y) % 2 == 0 ? 1 : -1;
    std::int64_t t = s - space.matter_stride(site_y);
    if (space.fermion_bit(t, site_x) == 1) continue;
    if (space.jw_string_count(t, site_x) % 2 != 0) sign = -sign;
    t += space.matter_stride(site_x);
    trips.emplace_back(t, s, double(sign));
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix gauged_hopping(const StateSpace& space, int link,
                            const std::vector<std::vector<LinkOperator>>& u_block) {
  if (!space.has_matter())
    throw config_error("gauged hopping requested without matter");
  if (link < 0 || link >= space.num_links())
    throw config_error("link index out of range");
  if (u_block.size() != 1 || u_block[0].size() != 1)
    throw config_error("single-mode matter supports Abelian transporters only");

  const Lattice& lat = space.lattice();
  int from = lat.site_index(lat.links()[link].from);
  int to = lat.site_index(lat.link_target(link));
  SparseMatrix u = embed_link_op(space, link, u_block[0][0].mat);
  SparseMatrix hop = fermion_bilinear(space, from, to);
  return SparseMatrix(u * hop);
}

SparseMatrix identity_op(const StateSpace& space) {
  return sparse_identity(space.dimension());
}

SparseMatrix site_occupation_diag(const StateSpace& space, int site,
                                  double empty, double occupied) {
  if (!space.has_matter())
    throw config_error("fermion operator requested without matter");
  std::int64_t dim = space.dimension();
  std::vector<Triplet> trips;
  trips.reserve(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    double v = space.fermion_bit(s, site) ? occupied : empty;
    if (v != 0.0) trips.emplace_back(s, s, v);
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace lgt
