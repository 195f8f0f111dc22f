#pragma once

#include <string>
#include <vector>

#include "fk/domain.hpp"

namespace fk {

struct CatalogEntry {
  std::string name;
  Domain domain;
  int effective_bonds = 0;  // varying bonds once the wiring collapses the arc
};

// Verification catalog: rectangles 1x1, 2x1, 2x2, 3x2, the height-2
// halfwidth-3 strip, and the (2,2)-corner wedge at radius 4.
std::vector<CatalogEntry> verify_catalog();

// 0.2, 0.3, 0.4, the self-dual point, 0.7.
std::vector<double> verify_p_grid();

int effective_bond_count(const Domain& d);

}  // namespace fk
