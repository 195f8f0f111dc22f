#include "fk/green.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "fk/kernels.hpp"

namespace fk {

namespace {

// Minimum sweep count so the walk-length tail m^k/(1-m) drops under tol.
long tail_sweeps(double mass, double tol) {
  const double k = std::log(tol * (1 - mass)) / std::log(mass);
  return k <= 0 ? 1 : (long)std::ceil(k) + 1;
}

// Max relative step between consecutive Jacobi iterates; cells still zero in
// both are skipped, a cell just reached counts as unconverged.
double max_rel_change(const std::vector<double>& prev,
                      const std::vector<double>& next) {
  double worst = 0;
  for (size_t i = 0; i < next.size(); ++i) {
    if (next[i] == 0.0 && prev[i] == 0.0) continue;
    if (next[i] == 0.0) return 1.0;
    const double rel = std::fabs((next[i] - prev[i]) / next[i]);
    if (rel > worst) worst = rel;
  }
  return worst;
}

constexpr long kMaxSweeps = 1000000;

}  // namespace

double GreenField::at_offset(int dx, int dy) const {
  const int r = truncation_radius;
  if (std::abs(dx) > r || std::abs(dy) > r) return 0.0;
  return values[(size_t)(dx + r) + (size_t)n() * (dy + r)];
}

double WalkField::at_offset(int dx, int dy) const {
  if (std::abs(dx) > radius || std::abs(dy) > radius) return 0.0;
  return values[(size_t)(dx + radius) + (size_t)n() * (dy + radius)];
}

int green_required_radius(double mass, double tol) {
  // smallest r with mass^r < tol, by the same pow the builder checks
  int r = std::max(1, (int)std::ceil(std::log(tol) / std::log(mass)));
  while (std::pow(mass, r) >= tol) ++r;
  while (r > 1 && std::pow(mass, r - 1) < tol) --r;
  return r;
}

GreenField green_function(double mass, Site source, int radius, double tol) {
  if (!(mass > 0) || mass >= 1)
    throw std::invalid_argument(
        "green_function: mass must lie in (0,1), the series diverges from "
        "mass = 1 on");
  if (radius < 1) throw std::invalid_argument("green_function: radius < 1");
  if (!(tol > 0)) throw std::invalid_argument("green_function: tol <= 0");
  if (std::pow(mass, radius) >= tol) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "green_function: radius %d too small for tol %g, need "
                  "radius >= %d",
                  radius, tol, green_required_radius(mass, tol));
    throw std::invalid_argument(msg);
  }

  GreenField g;
  g.mass = mass;
  g.source = source;
  g.truncation_radius = radius;
  g.tail_bound = std::pow(mass, radius) / (1 - mass);

  const int n = g.n();
  const size_t center = (size_t)radius + (size_t)n * radius;
  std::vector<double> cur((size_t)n * n, 0.0), nxt((size_t)n * n, 0.0);
  const SweepFn sweep = select_sweep();
  const double c = mass / 4;
  const long need = tail_sweeps(mass, tol);

  for (long k = 1; k <= kMaxSweeps; ++k) {
    sweep(cur.data(), nxt.data(), n, c);
    nxt[center] += 1.0;
    g.sweeps = k;
    if (k >= need && max_rel_change(cur, nxt) < 1e-9) {
      cur.swap(nxt);
      break;
    }
    cur.swap(nxt);
  }
  g.values = std::move(cur);
  return g;
}

double green_equation_residual(const GreenField& g) {
  const int r = g.truncation_radius;
  double worst = 0;
  for (int dy = -r + 1; dy < r; ++dy)
    for (int dx = -r + 1; dx < r; ++dx) {
      double s = g.at_offset(dx - 1, dy) + g.at_offset(dx + 1, dy) +
                 g.at_offset(dx, dy - 1) + g.at_offset(dx, dy + 1);
      double res = g.at_offset(dx, dy) - g.mass / 4 * s -
                   (dx == 0 && dy == 0 ? 1.0 : 0.0);
      if (std::fabs(res) > worst) worst = std::fabs(res);
    }
  return worst;
}

RateResult rate_function(const RateQuery& q) {
  if (q.a.x == 0 && q.a.y == 0)
    throw std::invalid_argument("rate_function: direction must be nonzero");
  if (!(q.beta > 0) || q.beta >= critical_beta())
    throw std::invalid_argument(
        "rate_function: needs 0 < beta < beta_c = ln(1+sqrt2)/2");
  const double sh = std::sinh(2 * q.beta);
  const double rhs = sh + 1 / sh;  // > 2 strictly below beta_c
  const double a1 = std::fabs((double)q.a.x);
  const double a2 = std::fabs((double)q.a.y);
  const auto lhs = [&](double s) {
    return std::sqrt(1 + s * s * a1 * a1) + std::sqrt(1 + s * s * a2 * a2);
  };
  double lo = 0, hi = 1;
  while (lhs(hi) < rhs) hi *= 2;
  while (hi - lo > 1e-14) {
    const double mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;
    (lhs(mid) < rhs ? lo : hi) = mid;
  }
  RateResult r;
  r.s = lo + (hi - lo) / 2;
  r.rate = a1 * std::asinh(r.s * a1) + a2 * std::asinh(r.s * a2);
  return r;
}

RateResult rate_from_p(double p, Site a) {
  if (!(p > 0) || !(p < 1))
    throw std::invalid_argument("rate_from_p: p must lie in (0,1)");
  return rate_function({params_from_p(p).beta, a});
}

WalkField walk_field(const Params& pr, int radius, double tol) {
  if (pr.mass >= 1)
    throw std::invalid_argument(
        "walk_field: mass >= 1, the absorbed-walk series diverges");
  if (!(pr.mass > 0)) throw std::invalid_argument("walk_field: mass <= 0");
  if (radius < 2) throw std::invalid_argument("walk_field: radius < 2");
  if (!(tol > 0)) throw std::invalid_argument("walk_field: tol <= 0");

  WalkField w;
  w.mass = pr.mass;
  w.radius = radius;

  const int n = w.n();
  const double c = pr.mass / 4;
  const auto idx = [&](int dx, int dy) {
    return (size_t)(dx + radius) + (size_t)n * (dy + radius);
  };
  std::vector<double> cur((size_t)n * n, 0.0), nxt((size_t)n * n, 0.0);
  const SweepFn sweep = select_sweep();
  const long need = tail_sweeps(pr.mass, tol);

  // Source weights at the two base sites of the terminal edge. The table is
  // fixed against the exactly enumerated observable: in the frame where that
  // edge points north-west from the origin, the walk pays cos(pi/4 + alpha)
  // per discounted visit of the east base site and -cos(pi/4 - alpha) per
  // visit of the origin. The whole field then carries the constant phase
  // e^{-i pi/4}.
  const double w_east = std::cos(std::numbers::pi / 4.0 + pr.alpha);
  const double w_origin = -std::cos(std::numbers::pi / 4.0 - pr.alpha);

  for (long k = 1; k <= kMaxSweeps; ++k) {
    sweep(cur.data(), nxt.data(), n, c);
    nxt[idx(1, 0)] += w_east;
    nxt[idx(0, 0)] += w_origin;
    w.sweeps = k;
    if (k >= need && max_rel_change(cur, nxt) < 1e-9) {
      cur.swap(nxt);
      break;
    }
    cur.swap(nxt);
  }
  w.values = std::move(cur);
  return w;
}

std::complex<double> walk_representation(int box_radius, const Params& pr,
                                         Site target, double tol) {
  if (target.x == 0 && target.y == 0)
    throw std::invalid_argument("walk_representation: target must not be 0");
  if (std::max(std::abs(target.x), std::abs(target.y)) >= box_radius)
    throw std::invalid_argument(
        "walk_representation: target needs margin inside the box");
  const WalkField w = walk_field(pr, box_radius, tol);
  const double h = w.at_offset(target.x, target.y);
  const double r = std::numbers::sqrt2 / 2.0;
  return {h * r, -h * r};
}

}  // namespace fk
