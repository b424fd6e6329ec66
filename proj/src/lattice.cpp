#include "lgt/lattice.hpp"

namespace lgt {

bool operator==(const Site& a, const Site& b) { return a.coord == b.coord; }

Lattice::Lattice(const LatticeGeom& geom) : geom_(geom) {
  if (geom.dims != 1 && geom.dims != 2)
    throw config_error("lattice dimension must be 1 or 2");
  for (int d = 0; d < geom.dims; ++d)
    if (geom.extent[d] < 1) throw config_error("lattice extent must be >= 1");
  if (geom.boundary == Boundary::periodic)
    for (int d = 0; d < geom.dims; ++d)
      if (geom.extent[d] < 2)
        throw config_error("periodic boundary needs extent >= 2");

  int l0 = geom.extent[0];
  int l1 = geom.dims == 2 ? geom.extent[1] : 1;
  for (int x1 = 0; x1 < l1; ++x1)
    for (int x0 = 0; x0 < l0; ++x0) sites_.push_back({{x0, x1}});

  link_id_.assign(sites_.size(), std::vector<int>(geom.dims, -1));
  for (int s = 0; s < num_sites(); ++s) {
    for (int d = 0; d < geom.dims; ++d) {
      if (!neighbor(sites_[s], d)) continue;
      link_id_[s][d] = static_cast<int>(links_.size());
      links_.push_back({sites_[s], d});
    }
  }

  if (geom.dims == 2) {
    for (int s = 0; s < num_sites(); ++s) {
      const Site& x = sites_[s];
      auto xe0 = neighbor(x, 0);
      auto xe1 = neighbor(x, 1);
      if (!xe0 || !xe1) continue;
      int l_bottom = link_index(x, 0);
      int l_right = link_index(*xe0, 1);
      int l_top = link_index(*xe1, 0);
      int l_left = link_index(x, 1);
      if (l_bottom < 0 || l_right < 0 || l_top < 0 || l_left < 0) continue;
      Plaquette p;
      p.corner = x;
      p.links = {l_bottom, l_right, l_top, l_left};
      plaquettes_.push_back(p);
    }
  }
}

int Lattice::site_index(const Site& s) const {
  int l0 = geom_.extent[0];
  return s.coord[0] + l0 * s.coord[1];
}

std::optional<Site> Lattice::neighbor(const Site& s, int dir) const {
  if (dir < 0 || dir >= geom_.dims)
    throw config_error("direction outside lattice dimension");
  Site t = s;
  t.coord[dir] += 1;
  if (t.coord[dir] >= geom_.extent[dir]) {
    if (geom_.boundary == Boundary::open) return std::nullopt;
    t.coord[dir] = 0;
  }
  return t;
}

int Lattice::link_index(const Site& s, int dir) const {
  if (dir < 0 || dir >= geom_.dims) return -1;
  return link_id_[site_index(s)][dir];
}

Site Lattice::link_target(int link) const {
  const Link& l = links_.at(link);
  auto t = neighbor(l.from, l.dir);
  if (!t) throw internal_error("enumerated link has no target");
  return *t;
}

Lattice::IncidentLinks Lattice::incident_links(const Site& s) const {
  IncidentLinks inc;
  for (int d = 0; d < geom_.dims; ++d) {
    int out = link_index(s, d);
    if (out >= 0) inc.outgoing.push_back(out);
    // The incoming link along d starts at s - e_d (with wraparound).
    Site prev = s;
    prev.coord[d] -= 1;
    if (prev.coord[d] < 0) {
      if (geom_.boundary == Boundary::open) continue;
      prev.coord[d] = geom_.extent[d] - 1;
    }
    int in = link_index(prev, d);
    if (in >= 0) inc.incoming.push_back(in);
  }
  return inc;
}

int Lattice::site_parity(const Site& s) const {
  int sum = s.coord[0] + s.coord[1];
  return sum % 2 == 0 ? 1 : -1;
}

}  // namespace lgt
