#include "fk/stencil.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace fk {

namespace {

std::string loc_site(Site s) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "site (%d,%d)", s.x, s.y);
  return buf;
}

std::complex<double> g_at(const Domain& d, const Medial& m, const Observable& obs,
                          Site s) {
  int i = d.index_of(s);
  if (i < 0) throw std::logic_error("stencil neighbor outside the domain");
  int e = m.side_pointing(i, Dir::NW);
  if (e < 0) throw std::logic_error("stencil neighbor has no NW-pointing side");
  return obs.F[e];
}

// the six vertices whose relations combine into the interior averaging rule
void six_vertices(Site x, P2 v[6]) {
  auto mid = [](Site u, Site w) { return P2{u.x + w.x, u.y + w.y}; };
  v[0] = mid(x, x + Site{0, 1});
  v[1] = mid(x, x + Site{-1, 0});
  v[2] = mid(x, x + Site{0, -1});
  v[3] = mid(x, x + Site{1, 0});
  v[4] = mid(x + Site{1, 0}, x + Site{1, 1});
  v[5] = mid(x + Site{0, 1}, x + Site{1, 1});
}

bool interior_eligible(const Domain& d, const Medial& m, Site x, P2 avoid0, P2 avoid1) {
  static constexpr Site nb[5] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}, {1, 1}};
  for (Site s : nb)
    if (!d.contains(x + s)) return false;
  P2 v[6];
  six_vertices(x, v);
  for (const P2& p : v) {
    if (p == avoid0 || p == avoid1) return false;
    bool found = false;
    for (const MedialVertex& mv : m.vertices)
      if (mv.pos == p) {
        found = mv.nin == 2 && mv.nout == 2;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

const char* stencil_role_name(StencilRole r) {
  switch (r) {
    case StencilRole::interior: return "interior";
    case StencilRole::horizontal_free: return "horizontal_free_boundary";
    case StencilRole::vertical_free: return "vertical_free_boundary";
    case StencilRole::corner: return "corner_w";
    case StencilRole::wired: return "wired";
    case StencilRole::source: return "source";
    case StencilRole::skipped: return "skipped";
  }
  return "?";
}

StencilField bulk_stencil_field(const Domain& box, const Medial& m,
                                const Observable& obs) {
  StencilField out;
  out.report.check_name = "bulk_stencil";
  if (m.e0 < 0) throw std::invalid_argument("bulk stencil wants a bulk observable");
  const double quarter = obs.params.mass / 4.0;
  const P2 x0 = m.edges[m.e0].from, y0 = m.edges[m.e0].to;
  const Site origin = box.sites[m.origin_site];
  for (Site s : box.sites) {
    StencilEntry ent;
    ent.site = s;
    ent.value = g_at(box, m, obs, s);
    if (s == origin) {
      ent.role = StencilRole::source;
    } else if (interior_eligible(box, m, s, x0, y0)) {
      ent.role = StencilRole::interior;
      ent.predicted = quarter * (g_at(box, m, obs, s + Site{-1, 0}) +
                                 g_at(box, m, obs, s + Site{0, -1}) +
                                 g_at(box, m, obs, s + Site{1, 0}) +
                                 g_at(box, m, obs, s + Site{0, 1}));
      ent.residual = std::abs(ent.predicted - ent.value);
      out.report.consider(ent.residual, loc_site(s));
    }
    out.entries.push_back(ent);
  }
  return out;
}

StencilField interior_stencil_field(const Domain& d, const Medial& m,
                                    const Observable& obs) {
  StencilField out;
  out.report.check_name = "interior_stencil";
  const double quarter = obs.params.mass / 4.0;
  const P2 none{INT32_MIN, INT32_MIN};
  for (int i = 0; i < (int)d.sites.size(); ++i) {
    Site s = d.sites[i];
    StencilEntry ent;
    ent.site = s;
    if (d.site_arc[i] != Domain::none) {
      ent.role = d.site_arc[i] & Domain::wired_arc ? StencilRole::wired
                                                   : StencilRole::skipped;
      out.entries.push_back(ent);
      continue;
    }
    ent.value = g_at(d, m, obs, s);
    if (interior_eligible(d, m, s, none, none)) {
      ent.role = StencilRole::interior;
      ent.predicted = quarter * (g_at(d, m, obs, s + Site{-1, 0}) +
                                 g_at(d, m, obs, s + Site{0, -1}) +
                                 g_at(d, m, obs, s + Site{1, 0}) +
                                 g_at(d, m, obs, s + Site{0, 1}));
      ent.residual = std::abs(ent.predicted - ent.value);
      out.report.consider(ent.residual, loc_site(s));
    }
    out.entries.push_back(ent);
  }
  return out;
}

StencilField corner_stencil_field(const Domain& d, const Medial& m,
                                  const Observable& obs, Site w) {
  StencilField out;
  out.report.check_name = "corner_stencil";
  const double alpha = obs.params.alpha;
  const double cp = std::cos(std::numbers::pi / 4.0 + alpha);
  const double cm = std::cos(std::numbers::pi / 4.0 - alpha);
  const double mass = obs.params.mass;
  const double c1 = mass / (2.0 * (1.0 + cm));
  const double c2 = cp / (1.0 + cm);

  auto strictly_free = [&](Site s) {
    int i = d.index_of(s);
    return i >= 0 && d.site_arc[i] == Domain::free_arc;
  };

  for (int i = 0; i < (int)d.sites.size(); ++i) {
    Site s = d.sites[i];
    StencilEntry ent;
    ent.site = s;
    uint8_t arc = d.site_arc[i];
    if (arc == Domain::both_arcs || (arc & Domain::wired_arc)) {
      ent.role = arc == Domain::both_arcs ? StencilRole::skipped : StencilRole::wired;
      out.entries.push_back(ent);
      continue;
    }
    ent.value = g_at(d, m, obs, s);
    auto westsouth = [&] {
      return g_at(d, m, obs, s + Site{-1, 0}) + g_at(d, m, obs, s + Site{0, -1});
    };
    if (arc == Domain::free_arc && s == w) {
      if (strictly_free(s + Site{1, 0}) && strictly_free(s + Site{0, 1})) {
        ent.role = StencilRole::corner;
        ent.predicted = mass / 4.0 * westsouth() +
                        cp / 2.0 * (g_at(d, m, obs, s + Site{1, 0}) +
                                    g_at(d, m, obs, s + Site{0, 1}));
      }
    } else if (arc == Domain::free_arc && s.y == w.y && s.x > w.x) {
      if (strictly_free(s + Site{1, 0}) && s + Site{1, 0} != d.a()) {
        ent.role = StencilRole::horizontal_free;
        ent.predicted = c1 * westsouth() + c2 * g_at(d, m, obs, s + Site{1, 0});
      }
    } else if (arc == Domain::free_arc && s.x == w.x && s.y > w.y) {
      if (strictly_free(s + Site{0, 1}) && s + Site{0, 1} != d.b()) {
        ent.role = StencilRole::vertical_free;
        ent.predicted = c1 * westsouth() + c2 * g_at(d, m, obs, s + Site{0, 1});
      }
    } else if (arc == Domain::none) {
      const P2 none{INT32_MIN, INT32_MIN};
      if (interior_eligible(d, m, s, none, none)) {
        ent.role = StencilRole::interior;
        ent.predicted = mass / 4.0 * (westsouth() + g_at(d, m, obs, s + Site{1, 0}) +
                                      g_at(d, m, obs, s + Site{0, 1}));
      }
    }
    if (ent.role != StencilRole::skipped) {
      ent.residual = std::abs(ent.predicted - ent.value);
      out.report.consider(ent.residual,
                          std::string(stencil_role_name(ent.role)) + " " + loc_site(s));
    }
    out.entries.push_back(ent);
  }
  return out;
}

Domain build_wedge_domain(Site w, int radius) {
  if (w.x < 1 || w.y < 1) throw std::invalid_argument("corner not in the open quadrant");
  if (radius < std::max(w.x, w.y) + 2)
    throw std::invalid_argument("wedge radius leaves no free run");
  std::vector<Site> s;
  for (int y = 0; y <= radius; ++y)
    for (int x = 0; x <= radius; ++x)
      if (x <= w.x || y <= w.y) s.push_back({x, y});
  return build_domain(std::move(s), {radius, w.y - 1}, {w.x - 1, radius});
}

}  // namespace fk
