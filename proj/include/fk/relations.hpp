#pragma once
#include <complex>
#include <string>
#include <vector>

#include "fk/domain.hpp"
#include "fk/enumerate.hpp"
#include "fk/medial.hpp"
#include "fk/params.hpp"

namespace fk {

struct ResidualReport {
  std::string check_name;
  double max_abs_residual = 0.0;
  double sum_abs_residual = 0.0;
  std::string worst_location;
  long count_checked = 0;
  void consider(double r, const std::string& loc) {
    ++count_checked;
    sum_abs_residual += r;
    if (r > max_abs_residual) {
      max_abs_residual = r;
      worst_location = loc;
    }
  }
  double mean_abs_residual() const {
    return count_checked ? sum_abs_residual / count_checked : 0.0;
  }
  bool pass(double tol) const { return max_abs_residual <= tol; }
};

// Three-term relation at every degree-4 medial vertex:
// sum of F on in-edges = e^{i alpha} * sum of F on out-edges. In the bulk
// case the reference edge e0 contributes the constant +1 at its head and -1
// at its tail instead of its (multivalued) F value.
ResidualReport check_vertex_relation(const Medial& m, const Observable& obs);

// Forced (degree-2 and marked-point) steps: F(in) = zeta^{turn} F(out).
ResidualReport check_forced_phase(const Medial& m, const Observable& obs);

// F(e) lies on the line zeta^{delta} R where delta is the quarter-turn angle
// from e's direction to the terminal edge's direction.
ResidualReport check_argument_lines(const Medial& m, const Observable& obs);

// |F| on the wall sides of a strictly-free boundary site equals the
// probability that the site is connected to the wired arc.  The second form
// takes the profile precomputed (shared across edge densities).
ResidualReport check_boundary_modulus(const Domain& d, const Medial& m,
                                      const Observable& obs, int cap = 26);
ResidualReport check_boundary_modulus(const Domain& d, const Medial& m,
                                      const Observable& obs,
                                      const std::vector<double>& profile);

// Per-step contraction factor of the observable up a wired-bottom strip.
double strip_contraction_factor(const Params& pr);

// Signed-amplitude projections of the vertex relation onto the quarter-turn
// lines, at every degree-4 vertex. With n, se, sw, ne the amplitudes of the
// four sides: sw = c1 n + c2 se and ne = c2 n - c1 se, where (c1, c2) is
// (cos(pi/4+alpha), cos(pi/4-alpha)) at a horizontal-bond vertex and the
// swap at a vertical one. Iterating the pair up a strip gives the per-row
// contraction factor.
ResidualReport check_strip_equations(const Domain& d, const Medial& m,
                                     const Observable& obs);

// Column profile of the observable up a strip: values at the NW-pointing
// sides of (0,k), their moduli and successive ratios.
struct StripProfile {
  int height = 0, halfwidth = 0;
  Params params;
  std::vector<std::complex<double>> ek;  // k = 0..height
  std::vector<double> modulus;
  std::vector<double> ratio;  // modulus[k+1]/modulus[k]
};
StripProfile strip_observable_profile(int height, int halfwidth, const Params& pr,
                                      int cap = 26);

// Aitken delta-squared limit of a geometrically converging sequence.
double aitken_extrapolate(const std::vector<double>& v);

}  // namespace fk
