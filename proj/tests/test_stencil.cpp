#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

#include <initializer_list>

#include "doctest.h"
#include "fk/catalog.hpp"
#include "fk/enumerate.hpp"
#include "fk/stencil.hpp"

using namespace fk;

namespace {

std::complex<double> g_at(const Domain& d, const Medial& m, const Observable& obs,
                          Site s) {
  int i = d.index_of(s);
  REQUIRE(i >= 0);
  int e = m.side_pointing(i, Dir::NW);
  REQUIRE(e >= 0);
  return obs.F[e];
}

Observable zero_observable(const Medial& m, double p) {
  Observable obs;
  obs.params = params_from_p(p);
  obs.F.assign(m.n_edges(), {0.0, 0.0});
  obs.scaled_z = 1.0;
  return obs;
}

}  // namespace

TEST_CASE("bulk stencil on the 4x4 box") {
  Domain box = build_box_domain({-1, -1}, {2, 2});
  Medial m = build_bulk_medial(box, {0, 0});
  Observable obs = observable_bulk_exact(box, m, params_from_p(0.3), 26);
  StencilField f = bulk_stencil_field(box, m, obs);
  REQUIRE(f.report.count_checked == 1);
  CHECK(f.report.max_abs_residual < 1e-10);
  const StencilEntry* hit = nullptr;
  for (const StencilEntry& e : f.entries) {
    if (e.role == StencilRole::source) CHECK(e.site == Site{0, 0});
    if (e.role == StencilRole::interior) hit = &e;
  }
  REQUIRE(hit != nullptr);
  CHECK(hit->site == Site{1, 1});
  // the prediction is the plain discounted four-neighbor average
  std::complex<double> want =
      obs.params.mass / 4.0 *
      (g_at(box, m, obs, {0, 1}) + g_at(box, m, obs, {1, 0}) +
       g_at(box, m, obs, {2, 1}) + g_at(box, m, obs, {1, 2}));
  CHECK(std::abs(hit->predicted - want) < 1e-15);
  CHECK(std::abs(hit->value - g_at(box, m, obs, {1, 1})) < 1e-15);
}

TEST_CASE("bulk stencil eligibility is purely geometric") {
  // 5x5 box: the four diagonal neighbors of the source qualify; the axis
  // neighbors touch the reference edge and are skipped
  Domain box5 = build_box_domain({-2, -2}, {2, 2});
  Medial m5 = build_bulk_medial(box5, {0, 0});
  StencilField f5 = bulk_stencil_field(box5, m5, zero_observable(m5, 0.3));
  CHECK(f5.report.count_checked == 4);
  std::set<std::pair<int, int>> got;
  for (const StencilEntry& e : f5.entries)
    if (e.role == StencilRole::interior) got.insert({e.site.x, e.site.y});
  CHECK(got == std::set<std::pair<int, int>>{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});

  // 3x3 box: nothing is eligible, the field is still well formed
  Domain box3 = build_box_domain({-1, -1}, {1, 1});
  Medial m3 = build_bulk_medial(box3, {0, 0});
  StencilField f3 = bulk_stencil_field(box3, m3, zero_observable(m3, 0.3));
  CHECK(f3.report.count_checked == 0);
  for (const StencilEntry& e : f3.entries)
    CHECK((e.role == StencilRole::source || e.role == StencilRole::skipped));
}

TEST_CASE("bulk stencil refuses a two-point medial") {
  Domain d = build_rectangle_domain(2, 2);
  Medial m = build_medial(d);
  Observable obs = zero_observable(m, 0.3);
  CHECK_THROWS_AS(bulk_stencil_field(d, m, obs), std::invalid_argument);
}

TEST_CASE("wedge domain shape and marks") {
  Domain d = build_wedge_domain({2, 2}, 4);
  CHECK(d.a() == Site{4, 1});
  CHECK(d.b() == Site{1, 4});
  CHECK(d.contains({2, 2}));
  CHECK(d.contains({3, 2}));
  CHECK(d.contains({2, 3}));
  CHECK(d.contains({4, 2}));
  CHECK(!d.contains({3, 3}));
  CHECK(!d.contains({4, 4}));
  CHECK(effective_bond_count(d) == 22);
  CHECK_THROWS_AS(build_wedge_domain({0, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_wedge_domain({2, 2}, 3), std::invalid_argument);
}

TEST_CASE("wedge stencils: roles and residuals") {
  Domain d = build_wedge_domain({2, 2}, 4);
  Medial m = build_medial(d);
  for (double p : {0.3, 0.7}) {
    Observable obs = observable_exact(d, m, params_from_p(p), 26);
    StencilField f = corner_stencil_field(d, m, obs, {2, 2});
    CHECK(f.report.count_checked == 8);
    CHECK(f.report.max_abs_residual < 1e-10);
    std::set<std::pair<int, int>> interior, wired;
    Site corner{-9, -9}, horiz{-9, -9}, vert{-9, -9};
    for (const StencilEntry& e : f.entries) {
      switch (e.role) {
        case StencilRole::interior: interior.insert({e.site.x, e.site.y}); break;
        case StencilRole::wired: wired.insert({e.site.x, e.site.y}); break;
        case StencilRole::corner: corner = e.site; break;
        case StencilRole::horizontal_free: horiz = e.site; break;
        case StencilRole::vertical_free: vert = e.site; break;
        default: break;
      }
    }
    CHECK(corner == Site{2, 2});
    CHECK(horiz == Site{3, 2});
    CHECK(vert == Site{2, 3});
    CHECK(interior == std::set<std::pair<int, int>>{
                          {1, 1}, {2, 1}, {3, 1}, {1, 2}, {1, 3}});
    CHECK(wired.size() == 9);
    CHECK(wired.count({0, 0}) == 1);
    CHECK(wired.count({4, 0}) == 1);
    CHECK(wired.count({0, 4}) == 1);

    // pin the boundary coefficients against the exact field
    const double cp = std::cos(std::numbers::pi / 4.0 + obs.params.alpha);
    const double cm = std::cos(std::numbers::pi / 4.0 - obs.params.alpha);
    const double c1 = obs.params.mass / (2.0 * (1.0 + cm));
    const double c2 = cp / (1.0 + cm);
    for (const StencilEntry& e : f.entries) {
      if (e.role == StencilRole::corner) {
        std::complex<double> want =
            obs.params.mass / 4.0 *
                (g_at(d, m, obs, {1, 2}) + g_at(d, m, obs, {2, 1})) +
            cp / 2.0 * (g_at(d, m, obs, {3, 2}) + g_at(d, m, obs, {2, 3}));
        CHECK(std::abs(e.predicted - want) < 1e-15);
        CHECK(std::abs(e.value - g_at(d, m, obs, {2, 2})) < 1e-15);
      }
      if (e.role == StencilRole::horizontal_free) {
        std::complex<double> want =
            c1 * (g_at(d, m, obs, {2, 2}) + g_at(d, m, obs, {3, 1})) +
            c2 * g_at(d, m, obs, {4, 2});
        CHECK(std::abs(e.predicted - want) < 1e-15);
      }
      if (e.role == StencilRole::vertical_free) {
        std::complex<double> want =
            c1 * (g_at(d, m, obs, {1, 3}) + g_at(d, m, obs, {2, 2})) +
            c2 * g_at(d, m, obs, {2, 4});
        CHECK(std::abs(e.predicted - want) < 1e-15);
      }
    }
  }
}

TEST_CASE("interior stencil field") {
  // the wedge has five deep interior sites; they match the corner field
  Domain d = build_wedge_domain({2, 2}, 4);
  Medial m = build_medial(d);
  Observable obs = observable_exact(d, m, params_from_p(0.3), 26);
  StencilField fi = interior_stencil_field(d, m, obs);
  CHECK(fi.report.count_checked == 5);
  CHECK(fi.report.max_abs_residual < 1e-12);

  // small rectangles have no site whose whole stencil survives the wiring
  Domain r = build_rectangle_domain(3, 2);
  Medial mr = build_medial(r);
  Observable obr = observable_exact(r, mr, params_from_p(0.3), 26);
  CHECK(interior_stencil_field(r, mr, obr).report.count_checked == 0);
}
