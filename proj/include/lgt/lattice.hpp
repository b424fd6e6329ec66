#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lgt/types.hpp"

namespace lgt {

enum class Boundary { open, periodic };

// Hypercubic lattice geometry, d = 1 or 2.  extent[1] is ignored for d = 1.
struct LatticeGeom {
  int dims = 1;
  std::array<int, 2> extent{2, 1};
  Boundary boundary = Boundary::open;
};

struct Site {
  std::array<int, 2> coord{0, 0};
};

bool operator==(const Site& a, const Site& b);

// Directed link leaving `from` in direction `dir` (0-based axis).
struct Link {
  Site from;
  int dir = 0;
};

// Elementary square with corner x: traversal
//   (x, 0), (x+e0, 1), (x+e1, 0) reversed, (x, 1) reversed.
struct Plaquette {
  Site corner;
  std::array<int, 4> links{};     // link ids in traversal order
  std::array<bool, 4> dagger{false, false, true, true};
};

// Site/link/plaquette enumeration with index maps.  Sites are ordered
// lexicographically with coord[0] fastest; links by (site index, direction);
// plaquettes by corner site index.
class Lattice {
 public:
  explicit Lattice(const LatticeGeom& geom);

  const LatticeGeom& geom() const { return geom_; }
  int num_sites() const { return static_cast<int>(sites_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }

  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  int site_index(const Site& s) const;

  // Neighbor in direction dir (+1 step), accounting for the boundary;
  // nullopt when the step leaves an open lattice.
  std::optional<Site> neighbor(const Site& s, int dir) const;

  // Link id for (site, dir), or -1 when that link does not exist.
  int link_index(const Site& s, int dir) const;

  // Site the link points to (always exists for an enumerated link).
  Site link_target(int link) const;

  // Links touching a site, split by orientation: outgoing = (x, i),
  // incoming = (x - e_i, i).
  struct IncidentLinks {
    std::vector<int> outgoing;
    std::vector<int> incoming;
  };
  IncidentLinks incident_links(const Site& s) const;

  // Parity (-1)^(sum of coordinates), returned as +1 / -1.
  int site_parity(const Site& s) const;

 private:
  LatticeGeom geom_;
  std::vector<Site> sites_;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
  std::vector<std::vector<int>> link_id_;  // [site][dir]
};

}  // namespace lgt
