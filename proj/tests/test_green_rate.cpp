#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <initializer_list>

#include "doctest.h"
#include "fk/enumerate.hpp"
#include "fk/green.hpp"
#include "fk/kernels.hpp"
#include "fk/relations.hpp"
#include "fk/rng.hpp"

using namespace fk;

TEST_CASE("sweep kernels agree bit for bit") {
  SweepFn best = select_sweep();
  REQUIRE(best != nullptr);
  CHECK(sweep_kernel_name() != nullptr);
  CounterRng rng(123, 7);
  for (int n : {3, 4, 5, 16, 33, 64}) {
    std::vector<double> in((size_t)n * n);
    for (double& v : in) v = 2.0 * rng.unit() - 1.0;
    std::vector<double> out_a((size_t)n * n, -7.0), out_b((size_t)n * n, -7.0);
    sweep_scalar(in.data(), out_a.data(), n, 0.22);
    best(in.data(), out_b.data(), n, 0.22);
    CHECK(std::memcmp(out_a.data(), out_b.data(), sizeof(double) * in.size()) == 0);
    // the Dirichlet ring is never written
    for (int i = 0; i < n; ++i) {
      CHECK(out_b[(size_t)i] == -7.0);
      CHECK(out_b[(size_t)(n - 1) * n + i] == -7.0);
      CHECK(out_b[(size_t)i * n] == -7.0);
      CHECK(out_b[(size_t)i * n + n - 1] == -7.0);
    }
  }
}

TEST_CASE("green function solves its defining equation") {
  for (double m : {0.2, 0.5, 0.9}) {
    int radius = green_required_radius(m, 1e-10);
    GreenField g = green_function(m, {0, 0}, radius, 1e-10);
    CHECK(g.sweeps > 0);
    CHECK(g.truncation_radius == radius);
    CHECK(std::abs(g.tail_bound - std::pow(m, radius) / (1.0 - m)) <
          1e-12 * g.tail_bound);
    CHECK(green_equation_residual(g) < 1e-9);

    // dihedral symmetry is exact for the fixed-association sweeps
    for (int dx = 0; dx <= radius; ++dx)
      for (int dy = 0; dy <= dx; ++dy) {
        double v = g.at_offset(dx, dy);
        CHECK(g.at_offset(-dx, dy) == v);
        CHECK(g.at_offset(dx, -dy) == v);
        CHECK(g.at_offset(-dx, -dy) == v);
        CHECK(g.at_offset(dy, dx) == v);
      }

    // positive inside, zero on the rim, strictly decaying along the axis
    CHECK(g.at_offset(0, 0) > 1.0);
    CHECK(g.at_offset(radius, 0) == 0.0);
    CHECK(g.at_offset(radius + 5, 0) == 0.0);
    for (int k = 0; k < radius - 1; ++k) {
      CHECK(g.at_offset(k, 0) > 0.0);
      CHECK(g.at_offset(k + 1, 0) < g.at_offset(k, 0));
    }

    // total discounted mass: geometric series minus a truncation loss
    double sum = 0;
    for (double v : g.values) sum += v;
    double full = 1.0 / (1.0 - m);
    CHECK(sum <= full + 1e-12);
    CHECK(sum >= full - g.tail_bound / (1.0 - m) - 1e-12);
  }
}

TEST_CASE("green function frozen value and small-mass expansion") {
  GreenField g = green_function(0.5, {0, 0}, 34, 1e-10);
  CHECK(std::abs(g.at_offset(0, 0) - 1.07318200715) < 1e-9);

  double m = 1e-3;
  GreenField h = green_function(m, {0, 0}, green_required_radius(m, 1e-12), 1e-12);
  CHECK(std::abs(h.at_offset(0, 0) - 1.0 - m * m / 4.0) < m * m * m);
  CHECK(std::abs(h.at_offset(1, 0) - m / 4.0) < m * m * m);

  // sources away from the origin just relabel offsets
  GreenField s = green_function(0.5, {3, -2}, 34, 1e-10);
  CHECK(s.at(Site{3, -2}) == s.at_offset(0, 0));
  CHECK(s.at_offset(0, 0) == g.at_offset(0, 0));
}

TEST_CASE("green function refusals") {
  CHECK(green_required_radius(0.5, 1e-10) == 34);
  for (auto [m, tol] : {std::pair{0.9, 1e-10}, {0.2, 1e-8}, {0.99, 1e-6}}) {
    int r = green_required_radius(m, tol);
    CHECK(std::pow(m, r) < tol);
    CHECK(std::pow(m, r - 1) >= tol);
  }
  CHECK_THROWS_AS(green_function(0.5, {0, 0}, 33, 1e-10), std::invalid_argument);
  try {
    green_function(0.9, {0, 0}, 10, 1e-10);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("219") != std::string::npos);
  }
  for (double bad : {0.0, 1.0, 1.0000001, -0.1}) {
    CHECK_THROWS_AS(green_function(bad, {0, 0}, 50, 1e-6), std::invalid_argument);
  }
}

TEST_CASE("decay rate closed form and frozen values") {
  double beta = 0.4;
  double r = std::sinh(2 * beta) + 1.0 / std::sinh(2 * beta);
  RateResult axis = rate_function({beta, {1, 0}});
  double s_axis = std::sqrt((r - 1) * (r - 1) - 1);
  CHECK(std::abs(axis.s - s_axis) < 1e-13);
  CHECK(std::abs(axis.rate - std::asinh(s_axis)) < 1e-13);
  CHECK(std::abs(axis.rate - 0.1677183451367531767) < 1e-14);

  RateResult diag = rate_function({beta, {1, 1}});
  double s_diag = std::sqrt(r * r / 4.0 - 1);
  CHECK(std::abs(diag.rate - 2.0 * std::asinh(s_diag)) < 1e-13);
  CHECK(std::abs(diag.rate - 0.2373283876022860683) < 1e-14);

  CHECK(std::abs(rate_from_p(0.45, {1, 0}).rate - 0.6389256263933064138) < 1e-14);
  CHECK(rate_from_p(0.45, {1, 0}).rate ==
        rate_function({params_from_p(0.45).beta, {1, 0}}).rate);
}

TEST_CASE("decay rate symmetry, homogeneity, critical vanishing") {
  double beta = 0.35;
  auto rt = [&](int x, int y) { return rate_function({beta, {x, y}}).rate; };
  CHECK(std::abs(rt(1, 0) - rt(0, 1)) < 1e-13);
  CHECK(std::abs(rt(1, 1) - rt(-1, 1)) < 1e-13);
  CHECK(std::abs(rt(2, 1) - rt(1, 2)) < 1e-13);
  CHECK(std::abs(rt(2, 0) - 2.0 * rt(1, 0)) < 1e-12);
  CHECK(std::abs(rt(3, 3) - 3.0 * rt(1, 1)) < 1e-12);
  // strict convexity of the direction dependence: diagonal beats the axis sum
  CHECK(rt(1, 1) > rt(1, 0));
  CHECK(rt(1, 1) < 2.0 * rt(1, 0));

  CHECK(rate_function({critical_beta() - 1e-8, {1, 0}}).rate < 1e-7);
  CHECK(rate_function({critical_beta() - 1e-8, {1, 0}}).rate >= 0.0);
  double prev = rate_function({0.30, {1, 0}}).rate;
  for (double b : {0.35, 0.40, 0.44}) {
    double cur = rate_function({b, {1, 0}}).rate;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("strip contraction equals the vertical rate") {
  for (double p : {0.2, 0.3, 0.4, 0.5}) {
    Params pr = params_from_p(p);
    double lhs = -std::log(strip_contraction_factor(pr));
    double rhs = rate_from_p(p, {0, 1}).rate;
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("massive walk field: structure") {
  Params pr = params_from_p(0.45);
  WalkField wf = walk_field(pr, 12, 1e-12);
  CHECK(wf.mass == pr.mass);
  CHECK(wf.radius == 12);
  CHECK(wf.sweeps > 0);
  CHECK(wf.values.size() == 25u * 25u);
  CHECK(wf.at_offset(13, 0) == 0.0);

  // mirror symmetry in the second coordinate is exact
  for (int x = -12; x <= 12; ++x)
    for (int y = 1; y <= 12; ++y) CHECK(wf.at_offset(x, y) == wf.at_offset(x, -y));

  // the solved field carries a unit dipole of strengths cos(pi/4 +- alpha)
  WalkField w14 = walk_field(pr, 14, 1e-12);
  auto lap = [&](int x, int y) {
    return w14.at_offset(x, y) -
           pr.mass / 4.0 *
               (w14.at_offset(x - 1, y) + w14.at_offset(x + 1, y) +
                w14.at_offset(x, y - 1) + w14.at_offset(x, y + 1));
  };
  const double cp = std::cos(std::numbers::pi / 4.0 + pr.alpha);
  const double cm = std::cos(std::numbers::pi / 4.0 - pr.alpha);
  CHECK(std::abs(lap(1, 0) - cp) < 1e-8);
  CHECK(std::abs(lap(0, 0) + cm) < 1e-8);
  for (auto [x, y] : {std::pair{2, 0}, {1, 1}, {-1, 0}, {0, -1}, {-3, 2}}) {
    CHECK(std::abs(lap(x, y)) < 1e-8);
  }
}

TEST_CASE("massive walk field: odd part and small-mass limit") {
  // with the phase switched off the two source strengths cancel exactly and
  // the field is odd under reflection through x = 1/2
  Params q{};
  q.alpha = 0.0;
  q.mass = 0.5;
  WalkField wf = walk_field(q, 40, 1e-12);
  for (int x = -30; x <= 30; ++x)
    for (int y = -30; y <= 30; ++y)
      CHECK(std::abs(wf.at_offset(x, y) + wf.at_offset(1 - x, y)) < 1e-10);

  // deep subcritical the east neighbor value reduces to the bare kernel
  Params small = params_from_p(1e-3);
  WalkField ws = walk_field(small, 8, 1e-14);
  double m = small.mass;
  CHECK(std::abs(ws.at_offset(1, 0) - m / 4.0) < m * m * m);
  CHECK(std::abs(ws.at_offset(2, 0) - m * m / 16.0) < m * m * m);
}

TEST_CASE("walk representation against the exact box observable") {
  Params pr = params_from_p(0.45);
  Domain box = build_box_domain({-1, -1}, {2, 2});
  Medial m = build_bulk_medial(box, {0, 0});
  Observable obs = observable_bulk_exact(box, m, pr, 26);
  WalkField wf = walk_field(pr, 12, 1e-12);
  for (Site a : {Site{1, 0}, Site{0, 1}, Site{-1, -1}}) {
    int e = m.side_across(box.index_of(a), Dir::NW);
    REQUIRE(e >= 0);
    double exact = std::abs(obs.F[e]);
    double walk = std::abs(wf.at_offset(a.x, a.y));
    CHECK(std::abs(walk / exact - 1.0) < 0.10);
  }
  // the returned complex value sits on the line e^{-i pi/4} R
  std::complex<double> v = walk_representation(12, pr, {1, 0}, 1e-12);
  CHECK(v.real() == -v.imag());
  CHECK(std::abs(std::abs(v) - std::abs(wf.at_offset(1, 0))) < 1e-15);
}
