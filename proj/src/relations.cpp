#include "fk/relations.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace fk {

namespace {

std::string loc_point(P2 p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%g,%g)", p.x / 2.0, p.y / 2.0);
  return buf;
}

std::string loc_edge(const MedialEdge& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "edge (%g,%g) %s", (e.from.x + e.to.x) / 4.0,
                (e.from.y + e.to.y) / 4.0, dir_name(e.dir));
  return buf;
}

std::complex<double> zeta_pow(int q) {
  return std::polar(1.0, (q & 7) * std::numbers::pi / 4.0);
}

}  // namespace

ResidualReport check_vertex_relation(const Medial& m, const Observable& obs) {
  ResidualReport rep;
  rep.check_name = "vertex_relation";
  const std::complex<double> rot = std::polar(1.0, obs.params.alpha);
  for (const MedialVertex& v : m.vertices) {
    if (v.nin != 2 || v.nout != 2) continue;
    std::complex<double> in{0, 0}, out{0, 0};
    for (int k = 0; k < 2; ++k) {
      in += v.ein[k] == m.e0 ? 1.0 : obs.F[v.ein[k]];
      out += v.eout[k] == m.e0 ? -1.0 : obs.F[v.eout[k]];
    }
    rep.consider(std::abs(in - rot * out), "vertex " + loc_point(v.pos));
  }
  return rep;
}

ResidualReport check_forced_phase(const Medial& m, const Observable& obs) {
  ResidualReport rep;
  rep.check_name = "forced_phase";
  for (const MedialVertex& v : m.vertices) {
    if (v.nin != 1 || v.nout != 1) continue;
    int e = v.ein[0], f = v.eout[0];
    if (e == m.e0 || f == m.e0) continue;
    int t = dir_delta(m.edges[e].dir, m.edges[f].dir);
    rep.consider(std::abs(obs.F[e] - zeta_pow(t) * obs.F[f]),
                 "vertex " + loc_point(v.pos));
  }
  return rep;
}

ResidualReport check_argument_lines(const Medial& m, const Observable& obs) {
  ResidualReport rep;
  rep.check_name = "argument_lines";
  const int ref = m.e_b >= 0 ? (int)m.edges[m.e_b].dir : (int)m.edges[m.e0].dir;
  for (int e = 0; e < m.n_edges(); ++e) {
    int delta = (ref - (int)m.edges[e].dir) & 3;
    rep.consider(std::abs(std::imag(obs.F[e] * std::conj(zeta_pow(delta)))),
                 loc_edge(m.edges[e]));
  }
  return rep;
}

ResidualReport check_boundary_modulus(const Domain& d, const Medial& m,
                                      const Observable& obs, int cap) {
  return check_boundary_modulus(d, m, obs,
                                wired_connection_profile(d, obs.params, cap));
}

ResidualReport check_boundary_modulus(const Domain& d, const Medial& m,
                                      const Observable& obs,
                                      const std::vector<double>& prof) {
  ResidualReport rep;
  rep.check_name = "boundary_modulus";
  for (int i = 0; i < (int)d.sites.size(); ++i) {
    if (d.site_arc[i] != Domain::free_arc) continue;
    for (int k = 0; k < 4; ++k) {
      int e = m.diamond[4 * i + k];
      if (e < 0 || !m.edges[e].white_outer) continue;
      rep.consider(std::abs(std::abs(obs.F[e]) - prof[i]),
                   loc_edge(m.edges[e]));
    }
  }
  return rep;
}

double strip_contraction_factor(const Params& pr) {
  const double cp = std::cos(std::numbers::pi / 4.0 + pr.alpha);
  const double cm = std::cos(std::numbers::pi / 4.0 - pr.alpha);
  return (1.0 + cp) * cp / ((1.0 + cm) * cm);
}

ResidualReport check_strip_equations(const Domain& d, const Medial& m,
                                     const Observable& obs) {
  ResidualReport rep;
  rep.check_name = "strip_equations";
  (void)d;
  const double cp = std::cos(std::numbers::pi / 4.0 + obs.params.alpha);
  const double cm = std::cos(std::numbers::pi / 4.0 - obs.params.alpha);

  // signed amplitude on the edge's quarter-turn line
  auto amp = [&](int e) {
    switch (m.edges[e].dir) {
      case Dir::NW: return (obs.F[e] * zeta_pow(7)).real();
      case Dir::SW: return obs.F[e].real();
      case Dir::NE: return (obs.F[e] * zeta_pow(6)).real();
      default: return (obs.F[e] * zeta_pow(1)).real();
    }
  };

  for (const MedialVertex& v : m.vertices) {
    if (v.nin != 2 || v.nout != 2) continue;
    // locate the four incident sides by direction; orientation fixes which
    // are incoming (NW and SE arrive at a vertical-bond vertex, NE and SW at
    // a horizontal one)
    double n = 0, se = 0, sw = 0, ne = 0;
    for (int e : {(int)v.ein[0], (int)v.ein[1], (int)v.eout[0], (int)v.eout[1]}) {
      switch (m.edges[e].dir) {
        case Dir::NW: n = amp(e); break;
        case Dir::SE: se = amp(e); break;
        case Dir::SW: sw = amp(e); break;
        case Dir::NE: ne = amp(e); break;
      }
    }
    // projections of the vertex relation onto the two lines; the bond
    // orientation swaps the roles of the two cosines
    const bool horizontal = (v.pos.x & 1) != 0;
    const double c1 = horizontal ? cp : cm;
    const double c2 = horizontal ? cm : cp;
    char loc[64];
    std::snprintf(loc, sizeof loc, "vertex (%d,%d)", v.pos.x, v.pos.y);
    rep.consider(std::abs(sw - (c1 * n + c2 * se)), std::string("sw ") + loc);
    rep.consider(std::abs(ne - (c2 * n - c1 * se)), std::string("ne ") + loc);
  }
  return rep;
}

StripProfile strip_observable_profile(int height, int halfwidth, const Params& pr,
                                      int cap) {
  Domain d = build_strip_domain(height, halfwidth);
  Medial m = build_medial(d);
  Observable obs = observable_exact(d, m, pr, cap);
  StripProfile sp;
  sp.height = height;
  sp.halfwidth = halfwidth;
  sp.params = pr;
  for (int k = 0; k <= height; ++k) {
    int i = d.index_of({0, k});
    int e = m.side_pointing(i, Dir::NW);
    if (e < 0) throw std::logic_error("column side missing");
    sp.ek.push_back(obs.F[e]);
    sp.modulus.push_back(std::abs(obs.F[e]));
  }
  for (int k = 0; k < height; ++k) sp.ratio.push_back(sp.modulus[k + 1] / sp.modulus[k]);
  return sp;
}

double aitken_extrapolate(const std::vector<double>& v) {
  if (v.size() < 3) throw std::invalid_argument("need three terms to extrapolate");
  double best = v.back();
  for (size_t i = 0; i + 2 < v.size(); ++i) {
    double d1 = v[i + 1] - v[i], d2 = v[i + 2] - v[i + 1];
    double dd = d2 - d1;
    if (dd != 0.0) best = v[i + 2] - d2 * d2 / dd;
  }
  return best;
}

}  // namespace fk
