#include "fk/catalog.hpp"

#include <bit>

#include "fk/params.hpp"
#include "fk/stencil.hpp"

namespace fk {

int effective_bond_count(const Domain& d) {
  return d.n_bonds() - std::popcount(d.wired_bond_mask);
}

std::vector<CatalogEntry> verify_catalog() {
  std::vector<CatalogEntry> cat;
  const auto add = [&](std::string name, Domain d) {
    const int eff = effective_bond_count(d);
    cat.push_back({std::move(name), std::move(d), eff});
  };
  add("rect_1x1", build_rectangle_domain(1, 1));
  add("rect_2x1", build_rectangle_domain(2, 1));
  add("rect_2x2", build_rectangle_domain(2, 2));
  add("rect_3x2", build_rectangle_domain(3, 2));
  add("strip_h2_w3", build_strip_domain(2, 3));
  add("wedge_2_2_r4", build_wedge_domain({2, 2}, 4));
  return cat;
}

std::vector<double> verify_p_grid() {
  return {0.2, 0.3, 0.4, self_dual_p(), 0.7};
}

}  // namespace fk
