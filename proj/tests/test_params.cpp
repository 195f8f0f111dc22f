#include <cmath>
#include <numbers>

#include <initializer_list>

#include "doctest.h"
#include "fk/params.hpp"

using namespace fk;

namespace {
constexpr double kPi4 = std::numbers::pi / 4.0;
}

TEST_CASE("self-dual point and critical coupling") {
  // 2 - sqrt2 and ln(1+sqrt2)/2, frozen to full double precision
  CHECK(std::abs(self_dual_p() - 0.5857864376269049511983) < 1e-15);
  CHECK(std::abs(critical_beta() - 0.4406867935097715126163) < 1e-15);
  CHECK(std::abs(self_dual_p() - (2.0 - std::numbers::sqrt2)) < 1e-15);
  CHECK(std::abs(critical_beta() - 0.5 * std::log(1.0 + std::numbers::sqrt2)) < 1e-15);
  // beta(p_sd) = beta_c ties the two parametrizations together
  CHECK(std::abs(params_from_p(self_dual_p()).beta - critical_beta()) < 1e-15);
}

TEST_CASE("frozen phases and discount") {
  CHECK(std::abs(params_from_p(0.2).alpha - 0.5640837210496570165) < 1e-15);
  CHECK(std::abs(params_from_p(0.3).alpha - 0.4360537653809689235) < 1e-15);
  CHECK(std::abs(params_from_p(0.45).alpha - 0.2202882584582733450) < 1e-15);
  CHECK(std::abs(params_from_p(0.5).alpha - 0.1418970546041639228) < 1e-15);
  CHECK(std::abs(params_from_p(0.45).mass - 0.9045059515695860242) < 1e-15);
  // at the self-dual point x = 1, the phase closes and the discount is 1
  Params sd = params_from_p(self_dual_p());
  CHECK(std::abs(sd.x - 1.0) < 1e-15);
  CHECK(std::abs(sd.alpha) < 1e-15);
  CHECK(std::abs(sd.mass - 1.0) < 1e-15);
}

TEST_CASE("derived fields match their defining formulas") {
  for (double p : {0.05, 0.2, 0.45, 0.5857864376269049, 0.7, 0.95}) {
    Params pr = params_from_p(p);
    CHECK(pr.p == p);
    CHECK(std::abs(pr.x - p / ((1.0 - p) * std::numbers::sqrt2)) < 1e-15);
    CHECK(std::abs(pr.beta + 0.5 * std::log1p(-p)) < 1e-15);
    CHECK(std::abs(pr.mass - std::cos(2.0 * pr.alpha)) < 1e-15);
    // alpha is the argument of (zeta + x)/(zeta x + 1), zeta = e^{i pi/4}
    double num = std::atan2(std::sin(kPi4), std::cos(kPi4) + pr.x);
    double den = std::atan2(pr.x * std::sin(kPi4), pr.x * std::cos(kPi4) + 1.0);
    CHECK(std::abs(pr.alpha - (num - den)) < 1e-14);
    Params pb = params_from_beta(pr.beta);
    CHECK(std::abs(pb.p - p) < 1e-15);
    CHECK(std::abs(pb.alpha - pr.alpha) < 1e-14);
  }
}

TEST_CASE("discount and coupling identity on a dense grid") {
  // (m/2) cosh 2beta = cos(pi/4 + alpha) characterizes the discount without
  // reference to the phase construction; checked across the whole range
  for (int i = 1; i <= 1000; ++i) {
    double p = i / 1001.0;
    Params pr = params_from_p(p);
    double lhs = 0.5 * pr.mass * std::cosh(2.0 * pr.beta);
    double rhs = std::cos(kPi4 + pr.alpha);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("planar duality") {
  CHECK(std::abs(dual_p(self_dual_p()) - self_dual_p()) < 1e-15);
  for (double p : {0.1, 0.2, 0.3, 0.45, 0.5, 0.55}) {
    double ps = dual_p(p);
    CHECK(ps > self_dual_p());
    CHECK(std::abs(dual_p(ps) - p) < 1e-15);
    Params a = params_from_p(p), b = params_from_p(ps);
    // x x* = 1, the phase flips sign, the discount is shared
    CHECK(std::abs(a.x * b.x - 1.0) < 1e-14);
    CHECK(std::abs(a.alpha + b.alpha) < 1e-13);
    CHECK(std::abs(a.mass - b.mass) < 1e-13);
  }
  // q = 1 duality reduces to p* = 1 - p
  CHECK(std::abs(dual_p(0.3, 1.0) - 0.7) < 1e-15);
}
