#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "fk/geometry.hpp"

namespace fk {

// Finite simply connected sublattice with (optionally) two marked boundary
// points. The boundary cycle is stored counterclockwise; the free arc runs
// ccw from a to b inclusive, the wired arc ccw from b to a inclusive.
struct Domain {
  std::vector<Site> sites;                // sorted by (y,x)
  std::vector<std::pair<int, int>> bonds; // site indices; per bond i<j in (y,x) order
  std::vector<int> cycle;                 // site indices, ccw boundary walk
  int pos_a = -1, pos_b = -1;             // positions of marked points in cycle; -1 = unmarked

  enum Arc : uint8_t { none = 0, free_arc = 1, wired_arc = 2, both_arcs = 3 };
  std::vector<uint8_t> site_arc;          // per site
  uint64_t wired_bond_mask = 0;           // bonds joining cycle-consecutive wired-arc sites

  bool marked() const { return pos_a >= 0; }
  Site a() const { return sites[cycle[pos_a]]; }
  Site b() const { return sites[cycle[pos_b]]; }
  int index_of(Site s) const;             // -1 if absent
  bool contains(Site s) const { return index_of(s) >= 0; }
  int bond_index(Site u, Site v) const;   // -1 if absent
  int n_bonds() const { return (int)bonds.size(); }
};

// Generic constructor: validates connectivity, simple connectedness, a ccw
// self-avoiding boundary polygon, distinct marked points on it, and at least
// one outward lattice direction at each marked point.
Domain build_domain(std::vector<Site> sites, Site a, Site b);

// Same but unmarked (bulk boxes for the whole-plane observable).
Domain build_box_domain(Site lo, Site hi);

// Sites [0,w] x [0,h] (w*h unit squares, 2wh+w+h bonds); default marks
// a=(0,0), b=(w,0) put the free arc on the bottom row.
Domain build_rectangle_domain(int w, int h);
Domain build_rectangle_domain(int w, int h, Site a, Site b);

// Sites [-halfwidth, halfwidth] x [0, height] with a=(halfwidth,0) and
// b=(-halfwidth,0): wired bottom row, free elsewhere.
Domain build_strip_domain(int height, int halfwidth);

// Finite staircase corner domains used for the free-boundary stencil checks;
// see build_wedge_domain in stencil.hpp for the site layout.

}  // namespace fk
