#include "fk/domain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fk {

int Domain::index_of(Site s) const {
  auto it = std::lower_bound(sites.begin(), sites.end(), s,
                             [](Site u, Site v) { return site_less_yx(u, v); });
  if (it != sites.end() && *it == s) return int(it - sites.begin());
  return -1;
}

int Domain::bond_index(Site u, Site v) const {
  int i = index_of(u), j = index_of(v);
  if (i < 0 || j < 0) return -1;
  if (site_less_yx(sites[j], sites[i])) std::swap(i, j);
  auto key = std::make_pair(i, j);
  auto it = std::lower_bound(bonds.begin(), bonds.end(), key);
  if (it != bonds.end() && *it == key) return int(it - bonds.begin());
  return -1;
}

namespace {

// Right-hand-rule boundary walk, counterclockwise, exterior kept on the right.
std::vector<int> boundary_walk(const Domain& d) {
  const int n = (int)d.sites.size();
  if (n < 4) throw std::invalid_argument("domain too small");
  int start = 0;  // sites sorted (y,x): first one is the bottom-left boundary site
  Axis h = Axis::E;
  if (d.index_of(d.sites[start] + axis_step(Axis::E)) < 0) h = Axis::N;
  if (d.index_of(d.sites[start] + axis_step(h)) < 0)
    throw std::invalid_argument("degenerate domain");
  std::vector<int> cyc;
  std::vector<char> seen(n, 0);
  int cur = start;
  Axis heading = h;
  for (;;) {
    if (seen[cur]) throw std::invalid_argument("boundary polygon is not self-avoiding");
    seen[cur] = 1;
    cyc.push_back(cur);
    // prefer the rightmost available turn relative to the current heading
    Axis cand[4] = {axis_cw(heading), heading, axis_ccw(heading),
                    axis_ccw(axis_ccw(heading))};
    int next = -1;
    for (Axis c : cand) {
      int j = d.index_of(d.sites[cur] + axis_step(c));
      if (j >= 0) {
        next = j;
        heading = c;
        break;
      }
    }
    if (next < 0) throw std::invalid_argument("isolated boundary site");
    if (next == start) break;
    cur = next;
  }
  if (cyc.size() < 4) throw std::invalid_argument("boundary cycle too short");
  return cyc;
}

}  // namespace

Domain build_domain(std::vector<Site> raw, Site a, Site b) {
  Domain d;
  d.sites = std::move(raw);
  std::sort(d.sites.begin(), d.sites.end(),
            [](Site u, Site v) { return site_less_yx(u, v); });
  d.sites.erase(std::unique(d.sites.begin(), d.sites.end()), d.sites.end());
  const int n = (int)d.sites.size();
  if (n < 4) throw std::invalid_argument("need at least four sites");

  for (int i = 0; i < n; ++i) {
    Site s = d.sites[i];
    int je = d.index_of(s + Site{1, 0});
    int jn = d.index_of(s + Site{0, 1});
    if (je >= 0) d.bonds.push_back({i, je});
    if (jn >= 0) d.bonds.push_back({i, jn});
  }
  std::sort(d.bonds.begin(), d.bonds.end());
  if (d.bonds.size() > 62) throw std::invalid_argument("too many bonds for bitmask configs");

  // connectivity
  {
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (auto [i, j] : d.bonds) uf[find(i)] = find(j);
    for (int i = 0; i < n; ++i)
      if (find(i) != find(0)) throw std::invalid_argument("domain not connected");
  }

  // simple connectedness: sites - bonds + unit squares must equal 1
  {
    long faces = 0;
    for (Site s : d.sites)
      if (d.contains(s + Site{1, 0}) && d.contains(s + Site{0, 1}) &&
          d.contains(s + Site{1, 1}))
        ++faces;
    if (n - (long)d.bonds.size() + faces != 1)
      throw std::invalid_argument("domain has holes");
  }

  d.cycle = boundary_walk(d);
  const int m = (int)d.cycle.size();
  int ia = -1, ib = -1;
  for (int k = 0; k < m; ++k) {
    if (d.sites[d.cycle[k]] == a) ia = k;
    if (d.sites[d.cycle[k]] == b) ib = k;
  }
  if (ia < 0 || ib < 0 || ia == ib)
    throw std::invalid_argument("marked points must be distinct boundary-cycle sites");
  d.pos_a = ia;
  d.pos_b = ib;

  // each marked point needs an outward lattice direction for its half-edge
  for (Site s : {a, b}) {
    int out = 0;
    for (int k = 0; k < 4; ++k)
      if (!d.contains(s + axis_step(Axis(k)))) ++out;
    if (out == 0) throw std::invalid_argument("marked point has no outward direction");
  }

  d.site_arc.assign(n, Domain::none);
  for (int k = ia;; k = (k + 1) % m) {
    d.site_arc[d.cycle[k]] |= Domain::free_arc;
    if (k == ib) break;
  }
  for (int k = ib;; k = (k + 1) % m) {
    d.site_arc[d.cycle[k]] |= Domain::wired_arc;
    if (k == ia) break;
  }

  for (int k = ib; k != ia; k = (k + 1) % m) {
    int u = d.cycle[k], v = d.cycle[(k + 1) % m];
    if (site_less_yx(d.sites[v], d.sites[u])) std::swap(u, v);
    auto key = std::make_pair(u, v);
    auto it = std::lower_bound(d.bonds.begin(), d.bonds.end(), key);
    if (it == d.bonds.end() || *it != key)
      throw std::invalid_argument("wired arc sites not lattice-adjacent");
    d.wired_bond_mask |= 1ull << (it - d.bonds.begin());
  }
  // a bond joining wired-arc sites that are not adjacent on the cycle would
  // break the loop-count bookkeeping; reject such geometries outright
  {
    std::vector<int> pos(n, -1);
    for (int k = 0; k < m; ++k) pos[d.cycle[k]] = k;
    for (size_t bi = 0; bi < d.bonds.size(); ++bi) {
      auto [i, j] = d.bonds[bi];
      if (!(d.site_arc[i] & Domain::wired_arc) || !(d.site_arc[j] & Domain::wired_arc))
        continue;
      int pi = pos[i], pj = pos[j];
      bool adjacent = pi >= 0 && pj >= 0 &&
                      ((pi + 1) % m == pj || (pj + 1) % m == pi);
      if (!adjacent) throw std::invalid_argument("chord between wired-arc sites");
    }
  }
  return d;
}

Domain build_box_domain(Site lo, Site hi) {
  if (hi.x <= lo.x || hi.y <= lo.y) throw std::invalid_argument("empty box");
  std::vector<Site> s;
  for (int y = lo.y; y <= hi.y; ++y)
    for (int x = lo.x; x <= hi.x; ++x) s.push_back({x, y});
  // reuse the marked constructor for its validation, then drop the marks
  Domain d = build_domain(std::move(s), lo, {hi.x, lo.y});
  d.pos_a = d.pos_b = -1;
  d.site_arc.assign(d.sites.size(), Domain::none);
  d.wired_bond_mask = 0;
  return d;
}

Domain build_rectangle_domain(int w, int h, Site a, Site b) {
  if (w < 1 || h < 1) throw std::invalid_argument("rectangle needs positive extent");
  std::vector<Site> s;
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) s.push_back({x, y});
  return build_domain(std::move(s), a, b);
}

Domain build_rectangle_domain(int w, int h) {
  return build_rectangle_domain(w, h, {0, 0}, {w, 0});
}

Domain build_strip_domain(int height, int halfwidth) {
  if (height < 1 || halfwidth < 1) throw std::invalid_argument("strip needs positive extent");
  std::vector<Site> s;
  for (int y = 0; y <= height; ++y)
    for (int x = -halfwidth; x <= halfwidth; ++x) s.push_back({x, y});
  return build_domain(std::move(s), {halfwidth, 0}, {-halfwidth, 0});
}

}  // namespace fk
