#pragma once
#include <cstdint>
#include <vector>

#include "fk/domain.hpp"
#include "fk/geometry.hpp"

namespace fk {

// Oriented side of a black diamond (the diamond of a lattice site), with the
// white face it borders. Orientation keeps the black diamond on the left, so
// the curves traced through these edges wind clockwise around white faces.
struct MedialEdge {
  P2 from, to;       // doubled coordinates
  Dir dir;
  int black;         // site index, or -1 for the two boundary half-edges
  P2 white;          // doubled center of the bordered white face
  bool white_outer;  // white face is a boundary wall rather than an inner face
};

struct MedialVertex {
  P2 pos;
  int16_t ein[2] = {-1, -1};
  int16_t eout[2] = {-1, -1};
  int8_t nin = 0, nout = 0;
  int16_t bond = -1;  // crossing bond index for degree-4 vertices
};

// Medial graph of a domain together with branchless tracing tables. Edges are
// indexed with domain edges first; in the marked (two-point) case the
// emission/absorption half-edges e_a, e_b come last.
struct Medial {
  std::vector<MedialEdge> edges;
  std::vector<MedialVertex> vertices;
  int e_a = -1, e_b = -1;  // marked case
  int e0 = -1;             // bulk case: NW-pointing side of the origin diamond
  int n_bonds = 0;
  int origin_site = -1;    // bulk case

  // succ[2e+s] / turn[2e+s]: next edge and quarter-turn when the bond at the
  // head of e is in state s (1 = open, right turn; 0 = closed, left turn).
  // Forced turns store the same value in both slots. bond_at_head[e] is the
  // bond index, or n_bonds (a bit that is always zero) when no bond decides.
  std::vector<int16_t> succ;
  std::vector<int8_t> turn;
  std::vector<int16_t> bond_at_head;

  // diamond[4*site + k] = side of the site's diamond across the white face in
  // diagonal direction kDiag[k], or -1; that side points dir_ccw(k).
  std::vector<int16_t> diamond;
  int side_across(int site, Dir face_diag) const {
    return diamond[4 * site + (int)face_diag];
  }
  int side_pointing(int site, Dir d) const {
    return diamond[4 * site + (int)dir_cw(d)];
  }
  int n_edges() const { return (int)edges.size(); }
};

// Two-point version: walls along the free arc, half-edges at the marked
// points, bonds between consecutive wired-arc sites left invisible.
Medial build_medial(const Domain& d);

// Whole-plane version on an unmarked box: walls all around, no half-edges,
// every configuration decomposes into loops; e0 is the NW side at `origin`.
Medial build_bulk_medial(const Domain& d, Site origin);

}  // namespace fk
