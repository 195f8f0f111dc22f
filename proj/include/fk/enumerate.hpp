#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "fk/domain.hpp"
#include "fk/medial.hpp"
#include "fk/params.hpp"

namespace fk {

enum class Bc { free_bc, wired_bc, dobrushin_bc };

// Unnormalized random-cluster weight p^{open}(1-p)^{closed} q^{clusters};
// clusters are counted after merging the wiring implied by bc (whole boundary
// for wired_bc, wired arc for dobrushin_bc).
double rc_weight(const Domain& d, uint64_t bits, double p, double q, Bc bc);

// Medial trace of one bond configuration. loop_count adds one loop per open
// bond between consecutive wired-arc sites (collapsed by the arc wiring) to
// the traced loops, which makes x^{open} sqrt2^{loop_count} exactly
// proportional to rc_weight(dobrushin) across configurations.
struct LoopDecomposition {
  std::vector<int16_t> path;      // e_a .. e_b, or the e0 loop in the bulk case
  std::vector<int16_t> path_cum;  // quarter turns accumulated from the path start
  std::vector<std::vector<int16_t>> loops;  // remaining loops
  int traced_loops = 0;           // loops.size() + (bulk: the e0 loop)
  int loop_count = 0;             // traced_loops + collapsed slivers
};
LoopDecomposition loop_decompose(const Domain& d, const Medial& m, uint64_t bits);
double loop_weight(const Domain& d, const Medial& m, const Params& pr, uint64_t bits);

// Two-point observable F(e) = E[zeta^{w(e)} 1{e on the exploration path}],
// zeta = exp(i pi/4), w(e) = quarter turns of the path from e to e_b. In the
// bulk case the path is the loop through e0 and w(e) counts turns from e to
// the return at e0; the start of that loop carries the value -1 by the same
// convention (total turning is +-4).
struct Observable {
  Params params;
  std::vector<std::complex<double>> F;  // per medial edge
  double scaled_z = 0;                  // partition sum in the engine's scaling
};

std::vector<Observable> observable_exact_multi(const Domain& d, const Medial& m,
                                               const std::vector<Params>& ps,
                                               int cap = 26);
Observable observable_exact(const Domain& d, const Medial& m, const Params& pr,
                            int cap = 26);
std::vector<Observable> observable_bulk_exact_multi(const Domain& d, const Medial& m,
                                                    const std::vector<Params>& ps,
                                                    int cap = 26);
Observable observable_bulk_exact(const Domain& d, const Medial& m, const Params& pr,
                                 int cap = 26);

// Exact P(A <-> B) by enumeration (any site of A to any site of B, after the
// bc wiring).
double connection_prob(const Domain& d, double p, double q, Bc bc,
                       const std::vector<Site>& A, const std::vector<Site>& B,
                       int cap = 26);

// Exact P(site <-> wired arc) under the two-point (dobrushin) measure, for
// every site at once.  The multi variant shares the connectivity scan across
// several edge densities.
std::vector<double> wired_connection_profile(const Domain& d, const Params& pr,
                                             int cap = 26);
std::vector<std::vector<double>> wired_connection_profile_multi(
    const Domain& d, const std::vector<Params>& ps, int cap = 26);

}  // namespace fk
