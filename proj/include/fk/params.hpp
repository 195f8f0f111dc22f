#pragma once

namespace fk {

// Coupled parameters of the q=2 random-cluster model at edge density p.
// x = p/((1-p) sqrt 2), beta = -ln(1-p)/2, and alpha in [0, pi/4] is the
// phase of (e^{i pi/4} + x)/(e^{i pi/4} x + 1); mass = cos 2alpha.
struct Params {
  double p = 0;
  double x = 0;
  double alpha = 0;
  double beta = 0;
  double mass = 0;
};

Params params_from_p(double p);
Params params_from_beta(double beta);

// Planar dual edge density: p* = (1-p)q / ((1-p)q + p).
double dual_p(double p, double q = 2.0);

// Self-dual point sqrt2/(1+sqrt2) and the matching coupling ln(1+sqrt2)/2.
double self_dual_p();
double critical_beta();

}  // namespace fk
