#pragma once
#include <cstdint>
#include <compare>
#include <cstdlib>

namespace fk {

// Primal lattice site, integer coordinates.
struct Site {
  int x = 0, y = 0;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};
inline Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
inline Site operator-(Site a, Site b) { return {a.x - b.x, a.y - b.y}; }

// Row-major comparator (y first) used everywhere a canonical site order is needed.
inline bool site_less_yx(Site a, Site b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

// Point in doubled coordinates: sites at (even,even), dual faces at (odd,odd),
// medial vertices (bond midpoints) at mixed parity.
struct P2 {
  int x = 0, y = 0;
  friend bool operator==(const P2&, const P2&) = default;
  friend auto operator<=>(const P2&, const P2&) = default;
};
inline P2 operator+(P2 a, P2 b) { return {a.x + b.x, a.y + b.y}; }
inline P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
inline P2 doubled(Site s) { return {2 * s.x, 2 * s.y}; }
inline long cross(P2 a, P2 b) { return (long)a.x * b.y - (long)a.y * b.x; }

// Lattice axis directions, counterclockwise.
enum class Axis : uint8_t { E = 0, N = 1, W = 2, S = 3 };
inline Site axis_step(Axis a) {
  static constexpr Site v[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return v[(int)a];
}
inline Axis axis_ccw(Axis a) { return Axis(((int)a + 1) & 3); }
inline Axis axis_cw(Axis a) { return Axis(((int)a + 3) & 3); }
inline Axis axis_of(Site d) {
  if (d == Site{1, 0}) return Axis::E;
  if (d == Site{0, 1}) return Axis::N;
  if (d == Site{-1, 0}) return Axis::W;
  if (d == Site{0, -1}) return Axis::S;
  std::abort();
}

// Diagonal directions of oriented medial edges, counterclockwise; a left turn
// is +1 mod 4, a right turn -1.
enum class Dir : uint8_t { NE = 0, NW = 1, SW = 2, SE = 3 };
inline P2 dvec(Dir d) {
  static constexpr P2 v[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  return v[(int)d];
}
inline Dir dir_ccw(Dir d) { return Dir(((int)d + 1) & 3); }
inline Dir dir_cw(Dir d) { return Dir(((int)d + 3) & 3); }
inline Dir dir_of(P2 d) {
  if (d == P2{1, 1}) return Dir::NE;
  if (d == P2{-1, 1}) return Dir::NW;
  if (d == P2{-1, -1}) return Dir::SW;
  if (d == P2{1, -1}) return Dir::SE;
  std::abort();
}
inline const char* dir_name(Dir d) {
  static constexpr const char* n[4] = {"NE", "NW", "SW", "SE"};
  return n[(int)d];
}

// Quarter-turn difference from dir a to dir b, in {-1,0,1,2} (2 = reversal).
inline int dir_delta(Dir a, Dir b) {
  int d = ((int)b - (int)a) & 3;
  return d == 3 ? -1 : d;
}

}  // namespace fk
