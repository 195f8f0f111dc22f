#pragma once

#include <complex>
#include <vector>

#include "fk/geometry.hpp"
#include "fk/params.hpp"

namespace fk {

// Massive Green function on Z^2, G(y) = sum_n m^n P^source(X_n = y) for the
// simple random walk, truncated to the box |y - source|_inf <= radius with
// zero outside. Computed by Jacobi sweeps y <- (m/4) sum_nbrs + delta, which
// add one walk-length stratum per sweep, so iterates increase to the limit.
struct GreenField {
  double mass = 0;
  Site source{0, 0};
  int truncation_radius = 0;
  double tail_bound = 0;  // mass^radius/(1-mass), truncation error budget
  long sweeps = 0;
  std::vector<double> values;  // (2R+1)^2 row-major, x fastest

  int n() const { return 2 * truncation_radius + 1; }
  double at_offset(int dx, int dy) const;
  double at(Site y) const { return at_offset(y.x - source.x, y.y - source.y); }
};

// Smallest radius with mass^radius < tol.
int green_required_radius(double mass, double tol);

// Throws std::invalid_argument when mass is outside (0,1) (the series
// diverges from mass = 1 on) or when mass^radius >= tol (truncation alone
// would exceed the budget; the message carries the required radius).
GreenField green_function(double mass, Site source, int radius, double tol);

// Defining-equation check: max over the open box of
// |G(y) - (m/4) sum_nbrs G - delta_source(y)|.
double green_equation_residual(const GreenField& g);

// Exponential decay rate of the two-point function in direction a, per copy
// of a: rate = a1 asinh(s a1) + a2 asinh(s a2) where s >= 0 solves
// sqrt(1+(s a1)^2) + sqrt(1+(s a2)^2) = sinh 2beta + 1/sinh 2beta.
struct RateQuery {
  double beta = 0;
  Site a{0, 0};
};
struct RateResult {
  double s = 0;
  double rate = 0;
};

RateResult rate_function(const RateQuery& q);
RateResult rate_from_p(double p, Site a);

// Discounted-walk value of the observable at a target site: steps carry
// weight m/4, the rim of the box |x|_inf <= radius is killing, and the walk
// collects cos(pi/4 + alpha) per visit of the east base site (1,0) of the
// terminal edge and -cos(pi/4 - alpha) per visit of the origin. This weight
// table is frozen against the exactly enumerated observable; the solved
// field lies on the line e^{-i pi/4} R, is mirror symmetric in the second
// coordinate, and its alpha-independent odd part flips sign under
// reflection through the source pair's perpendicular bisector x = 1/2.
struct WalkField {
  double mass = 0;
  int radius = 0;
  long sweeps = 0;
  std::vector<double> values;  // (2R+1)^2 row-major, offsets from 0

  int n() const { return 2 * radius + 1; }
  double at_offset(int dx, int dy) const;
};

WalkField walk_field(const Params& pr, int radius, double tol);
std::complex<double> walk_representation(int box_radius, const Params& pr,
                                         Site target, double tol);

}  // namespace fk
