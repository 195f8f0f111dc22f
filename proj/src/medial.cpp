#include "fk/medial.hpp"

#include <map>
#include <stdexcept>

namespace fk {

namespace {

constexpr P2 kDiag[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

P2 perp(P2 v) { return {-v.y, v.x}; }

// Endpoints of the diamond side between black center bc and white center f.
std::pair<P2, P2> side_endpoints(P2 bc, P2 f) {
  P2 s = bc + f, q = perp(f - bc);
  return {P2{(s.x - q.x) / 2, (s.y - q.y) / 2}, P2{(s.x + q.x) / 2, (s.y + q.y) / 2}};
}

MedialEdge make_side(P2 bc, P2 f, int black, bool outer) {
  auto [p, q] = side_endpoints(bc, f);
  if (cross(q - p, bc - p) <= 0) std::swap(p, q);  // black diamond on the left
  return MedialEdge{p, q, dir_of(q - p), black, f, outer};
}

struct Walls {
  std::map<P2, bool> faces;  // center -> outer flag
  P2 f_first{}, f_last{};    // wall faces carrying e_a / e_b
  Axis delta1{}, delta_last{};
};

void sweep_marked_walls(const Domain& d, Walls& w) {
  const int m = (int)d.cycle.size();
  for (int k = d.pos_a;; k = (k + 1) % m) {
    Site u = d.sites[d.cycle[k]];
    Site prev = d.sites[d.cycle[(k - 1 + m) % m]];
    Site next = d.sites[d.cycle[(k + 1) % m]];
    Axis ds = axis_of(prev - u), de = axis_of(next - u);
    std::vector<std::pair<Axis, P2>> fan;  // (first dir of the face, center)
    for (Axis a = ds; a != de; a = axis_ccw(a)) {
      Axis b = axis_ccw(a);
      Site sa = axis_step(a), sb = axis_step(b);
      fan.push_back({a, doubled(u) + P2{sa.x + sb.x, sa.y + sb.y}});
      if (b != de && d.contains(u + axis_step(b)))
        throw std::logic_error("wall sweep hit an inward direction");
    }
    if (k == d.pos_a) {
      fan.erase(fan.begin());
      if (fan.empty()) throw std::invalid_argument("no room for the emission half-edge");
      w.delta1 = fan.front().first;
      w.f_first = fan.front().second;
    }
    if (k == d.pos_b) {
      // the exit black square sits at the seam axis, on the skipped face
      w.delta_last = fan.back().first;
      fan.pop_back();
      if (fan.empty()) throw std::invalid_argument("no room for the absorption half-edge");
      w.f_last = fan.back().second;
    }
    for (auto& [a, f] : fan) w.faces.emplace(f, true);
    if (k == d.pos_b) break;
  }
}

void add_inner_faces(const Domain& d, std::map<P2, bool>& faces) {
  for (Site u : d.sites)
    for (P2 g : kDiag) {
      P2 f = doubled(u) + g;
      bool inner = true;
      for (P2 c : kDiag) {
        P2 corner = f + c;
        if (!d.contains({corner.x / 2, corner.y / 2})) {
          inner = false;
          break;
        }
      }
      if (inner) {
        auto [it, fresh] = faces.emplace(f, false);
        if (!fresh && it->second)
          throw std::logic_error("wall face coincides with an inner face");
      }
    }
}

Medial assemble(const Domain& d, const std::map<P2, bool>& faces, const Walls* w,
                Site origin) {
  Medial md;
  md.n_bonds = d.n_bonds();
  const int n = (int)d.sites.size();
  md.diamond.assign(4 * n, -1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 4; ++k) {
      P2 f = doubled(d.sites[i]) + kDiag[k];
      auto it = faces.find(f);
      if (it == faces.end()) continue;
      md.diamond[4 * i + k] = (int16_t)md.edges.size();
      md.edges.push_back(make_side(doubled(d.sites[i]), f, i, it->second));
    }
  const int n_dom = (int)md.edges.size();

  if (w) {
    Site a = d.a(), b = d.b();
    P2 bca = doubled(a + axis_step(w->delta1));
    P2 bcb = doubled(b + axis_step(w->delta_last));
    MedialEdge ea = make_side(bca, w->f_first, -1, true);
    MedialEdge eb = make_side(bcb, w->f_last, -1, true);
    Site s1 = axis_step(w->delta1), s2 = axis_step(w->delta_last);
    P2 va = doubled(a) + P2{s1.x, s1.y}, vb = doubled(b) + P2{s2.x, s2.y};
    if (ea.to != va) throw std::logic_error("emission half-edge must enter the domain");
    if (eb.from != vb) throw std::logic_error("absorption half-edge must leave the domain");
    md.e_a = (int)md.edges.size();
    md.edges.push_back(ea);
    md.e_b = (int)md.edges.size();
    md.edges.push_back(eb);
  }

  // vertex incidence over domain edges only
  std::map<P2, int> vidx;
  auto vertex_at = [&](P2 p) {
    auto [it, fresh] = vidx.emplace(p, (int)md.vertices.size());
    if (fresh) md.vertices.push_back(MedialVertex{p});
    return it->second;
  };
  for (int e = 0; e < n_dom; ++e) {
    MedialVertex& vf = md.vertices[vertex_at(md.edges[e].from)];
    if (vf.nout >= 2) throw std::logic_error("vertex out-degree exceeds 2");
    vf.eout[vf.nout++] = (int16_t)e;
    MedialVertex& vt = md.vertices[vertex_at(md.edges[e].to)];
    if (vt.nin >= 2) throw std::logic_error("vertex in-degree exceeds 2");
    vt.ein[vt.nin++] = (int16_t)e;
  }

  // pair vertices with crossing bonds; the doubled midpoint of bond (u,v) is u+v
  std::map<P2, int> bond_mid;
  for (int bi = 0; bi < md.n_bonds; ++bi) {
    auto [i, j] = d.bonds[bi];
    bond_mid[P2{d.sites[i].x + d.sites[j].x, d.sites[i].y + d.sites[j].y}] = bi;
  }
  for (auto& v : md.vertices) {
    int deg = v.nin + v.nout;
    auto bm = bond_mid.find(v.pos);
    if (deg == 4) {
      if (v.nin != 2 || bm == bond_mid.end())
        throw std::logic_error("degree-4 vertex without a crossing bond");
      v.bond = (int16_t)bm->second;
    } else if (deg == 2) {
      if (v.nin != 1) throw std::logic_error("unbalanced degree-2 vertex");
      if (bm != bond_mid.end() && !(d.wired_bond_mask >> bm->second & 1))
        throw std::logic_error("bond invisible to the tracing but not wired-collapsed");
    } else if (deg == 1) {
      if (!w) throw std::logic_error("dangling medial vertex");
      Site a = d.a(), b = d.b();
      Site s1 = axis_step(w->delta1), s2 = axis_step(w->delta_last);
      P2 va = doubled(a) + P2{s1.x, s1.y}, vb = doubled(b) + P2{s2.x, s2.y};
      if (v.pos != va && v.pos != vb) throw std::logic_error("dangling medial vertex");
    } else {
      throw std::logic_error("medial vertex of unexpected degree");
    }
  }
  // every bond is either crossed by a degree-4 vertex or wired-collapsed
  {
    std::vector<char> seen(md.n_bonds, 0);
    for (auto& v : md.vertices)
      if (v.bond >= 0) seen[v.bond] = 1;
    for (int bi = 0; bi < md.n_bonds; ++bi)
      if (!seen[bi] && !(d.wired_bond_mask >> bi & 1))
        throw std::logic_error("bond not represented in the medial graph");
  }

  // tracing tables
  const int ne = (int)md.edges.size();
  md.succ.assign(2 * ne, 0);
  md.turn.assign(2 * ne, 0);
  md.bond_at_head.assign(ne, (int16_t)md.n_bonds);
  auto set_forced = [&](int e, int nxt) {
    int t = dir_delta(md.edges[e].dir, md.edges[nxt].dir);
    if (t != 1 && t != -1) throw std::logic_error("forced turn must be a quarter turn");
    md.succ[2 * e] = md.succ[2 * e + 1] = (int16_t)nxt;
    md.turn[2 * e] = md.turn[2 * e + 1] = (int8_t)t;
  };
  int traceable = w ? n_dom : ne;
  for (int e = 0; e < traceable; ++e) {
    P2 head = md.edges[e].to;
    if (w && md.e_b >= 0 && head == md.edges[md.e_b].from) {
      set_forced(e, md.e_b);
      continue;
    }
    const MedialVertex& v = md.vertices[vidx.at(head)];
    if (v.nout == 1) {
      set_forced(e, v.eout[0]);
    } else {
      int right = -1, left = -1;
      for (int k = 0; k < 2; ++k) {
        Dir od = md.edges[v.eout[k]].dir;
        if (od == dir_cw(md.edges[e].dir)) right = v.eout[k];
        if (od == dir_ccw(md.edges[e].dir)) left = v.eout[k];
      }
      if (right < 0 || left < 0) throw std::logic_error("skew degree-4 vertex");
      md.bond_at_head[e] = v.bond;
      md.succ[2 * e + 0] = (int16_t)left;   // closed bond: left turn
      md.succ[2 * e + 1] = (int16_t)right;  // open bond: right turn
      md.turn[2 * e + 0] = 1;
      md.turn[2 * e + 1] = -1;
    }
  }
  if (w) {
    P2 va = md.edges[md.e_a].to;
    const MedialVertex& v = md.vertices[vidx.at(va)];
    if (v.nout != 1 || v.nin != 0) throw std::logic_error("emission vertex not degree 1");
    set_forced(md.e_a, v.eout[0]);
    md.succ[2 * md.e_b] = md.succ[2 * md.e_b + 1] = (int16_t)md.e_b;
  }

  if (!w) {
    md.origin_site = d.index_of(origin);
    if (md.origin_site < 0) throw std::invalid_argument("origin not in the box");
    md.e0 = md.side_pointing(md.origin_site, Dir::NW);
    if (md.e0 < 0) throw std::logic_error("origin diamond has no NW-pointing side");
  }
  return md;
}

}  // namespace

Medial build_medial(const Domain& d) {
  if (!d.marked()) throw std::invalid_argument("two-point medial needs marked points");
  Walls w;
  sweep_marked_walls(d, w);
  add_inner_faces(d, w.faces);
  return assemble(d, w.faces, &w, {});
}

Medial build_bulk_medial(const Domain& d, Site origin) {
  if (d.marked()) throw std::invalid_argument("bulk medial wants an unmarked box");
  std::map<P2, bool> faces;
  for (Site u : d.sites)
    for (P2 g : kDiag) faces.emplace(doubled(u) + g, true);
  // re-tag inner faces
  for (auto& [f, outer] : faces) {
    bool inner = true;
    for (P2 c : kDiag)
      if (!d.contains({(f.x + c.x) / 2, (f.y + c.y) / 2})) {
        inner = false;
        break;
      }
    if (inner) outer = false;
  }
  return assemble(d, faces, nullptr, origin);
}

}  // namespace fk
