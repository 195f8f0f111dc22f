#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fk/geometry.hpp"
#include "fk/rng.hpp"

namespace fk {

enum class SpinBc { free_bc, plus, strip_dobrushin };

// Spins +/-1 on a w-by-h box, row major, complete assignment.
struct SpinConfig {
  int w = 0, h = 0;
  std::vector<int8_t> s;
  static SpinConfig all_up(int w, int h);
  int idx(int x, int y) const { return x + w * y; }
};

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  long n_samples = 0;
  // Integrated autocorrelation time from batch means, 1/2 for iid samples.
  double autocorrelation_time_estimate = 0.5;
};

// Batch-means summary of a stationary series (also the jackknife std error
// at this batch granularity, the two coincide for a sample mean).
McEstimate batch_stats(const std::vector<double>& xs);

// One Swendsen-Wang update at coupling beta: open each aligned bond with
// probability 1-e^{-2beta}, resample cluster spins uniformly. plus couples
// boundary sites to a +1 ghost through their missing neighbors; the strip bc
// wires the whole bottom row to the ghost. Ghost clusters stay +1.
void sw_step(SpinConfig& sc, double beta, SpinBc bc, CounterRng& rng);

// Downward coupling: open in-box bonds between aligned spins with
// probability p. Bond order: horizontal (x,y)-(x+1,y) row major, then
// vertical (x,y)-(x,y+1) row major.
std::vector<uint8_t> fk_from_spins(const SpinConfig& sc, double p,
                                   CounterRng& rng);

// Connection probability of the two sites in a box-square free-boundary
// chain, estimated from the coupled bond configuration. Needs p below the
// self-dual point and margin >= |a|_inf around both sites. burn_in < 0 runs
// a pilot and burns max(100, 10 tau) sweeps; the count used is written to
// burn_in_used when given.
McEstimate estimate_two_point(int box, double p, Site a, long n_samples,
                              long burn_in, uint64_t seed,
                              long* burn_in_used = nullptr);

// Same chain, connection of the center to center + k*dir for every k in
// [n_min, n_max]; entry k - n_min of the result.
std::vector<McEstimate> estimate_two_point_family(int box, double p, Site dir,
                                                  int n_min, int n_max,
                                                  long n_samples, long burn_in,
                                                  uint64_t seed,
                                                  long* burn_in_used = nullptr);

// Spin product sigma_s sigma_t, the bond connection indicator, and their
// difference, all from one free-boundary run (the coupling identity says the
// first two agree in mean).
struct CouplingPair {
  McEstimate spin, fk, diff;
};
CouplingPair estimate_coupling_pair(int box, double p, Site s, Site t,
                                    long n_samples, long burn_in,
                                    uint64_t seed);

// Probability that the mid-top site of a height-by-(2 halfwidth+1) strip
// connects to the wired bottom row. Burn-in is the pilot rule above.
McEstimate estimate_strip_crossing(int height, int halfwidth, double p,
                                   long n_samples, uint64_t seed,
                                   long* burn_in_used = nullptr);

struct RateFit {
  double rate = 0;
  double std_error = 0;
  int points_used = 0;
  int points_dropped = 0;
};

// Weighted least squares of -ln(mean) - theta ln(n) against n; the slope
// estimates the decay rate, weights come from the std errors pushed through
// the log. theta absorbs a known subexponential prefactor n^{-theta}
// (1/2 for the bulk two-point function); theta = 0 is the plain fit and
// carries an O(theta/n) slope bias on such data. Points with nonpositive
// mean are dropped; fewer than 4 survivors is an error.
RateFit fit_decay_rate(const std::vector<std::pair<int, McEstimate>>& pts,
                       double theta = 0.0);

}  // namespace fk
