#pragma once
#include <complex>
#include <vector>

#include "fk/enumerate.hpp"
#include "fk/relations.hpp"

namespace fk {

enum class StencilRole : uint8_t {
  interior,
  horizontal_free,
  vertical_free,
  corner,
  wired,
  source,
  skipped,
};
const char* stencil_role_name(StencilRole r);

// Site field g(X) = F at the NW-pointing side of X's diamond, with the local
// averaging relation it is expected to satisfy.
struct StencilEntry {
  Site site;
  StencilRole role = StencilRole::skipped;
  std::complex<double> value{0, 0};
  std::complex<double> predicted{0, 0};
  double residual = 0.0;  // |predicted - value| for checked roles
};

struct StencilField {
  std::vector<StencilEntry> entries;
  ResidualReport report;
};

// Bulk observable on a box: g(X) = (cos2alpha/4) [g(W)+g(S)+g(E)+g(N)] at
// every eligible site (away from the source and the box rim).
StencilField bulk_stencil_field(const Domain& box, const Medial& m,
                                const Observable& obs);

// Interior sites of a two-point domain satisfy the same averaging relation.
StencilField interior_stencil_field(const Domain& d, const Medial& m,
                                    const Observable& obs);

// Free-corner (L-shaped) domain: boundary stencils along the two free runs
// and the reweighted average at the corner site.
StencilField corner_stencil_field(const Domain& d, const Medial& m,
                                  const Observable& obs, Site corner);

// [0,radius]^2 minus the open quadrant up-right of w. The free arc runs along
// the notch (the two boundary runs meeting at the reflex corner w), the wired
// arc hugs the lower-left rim: a=(radius, w.y-1), b=(w.x-1, radius).
Domain build_wedge_domain(Site w, int radius);

}  // namespace fk
