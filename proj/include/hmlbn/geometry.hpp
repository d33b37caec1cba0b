#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace hmlbn {

/// Hexagonal Mobility Region of `ring_count` rings around a center cell.
struct RegionSpec {
  int ring_count = 0;        // L
  double cell_radius = 0.0;  // r, km

  std::int64_t cell_count = 0;  // N = 3L(L+1) + 1
  double cell_height = 0.0;     // r * sqrt(3) / 2, km
  double cell_area = 0.0;       // km^2
  double region_area = 0.0;     // N * cell_area, km^2
  double circumradius = 0.0;    // R of the enclosing hexagon, km
  double square_side = 0.0;     // side of the equal-area approximating square, km
};

/// Mobility Area: an M x M grid of Mobility Regions.
struct AreaSpec {
  int regions_per_side = 0;  // M
  RegionSpec region;

  std::int64_t region_count = 0;  // M^2
};

struct AreaCoverage {
  double area_exact = 0.0;  // M^2 * region area
  double area_square_approx = 0.0;    // square approximation (9 sqrt(3) / 8) [M r (2L + 1)]^2
};

/// Closed-form summary of the random walk on a tessellation graph. Vertices are
/// split into internal, edge and corner classes with a fixed degree each.
struct WalkGraphSummary {
  std::int64_t internal_count = 0;
  std::int64_t edge_count = 0;
  std::int64_t corner_count = 0;
  std::int64_t half_edge_sum = 0;  // 2|E|

  int internal_degree = 0;
  int edge_degree = 0;
  int corner_degree = 0;

  double stationary_internal = 0.0;
  double stationary_edge = 0.0;
  double stationary_corner = 0.0;

  [[nodiscard]] double total_probability() const;
};

RegionSpec build_region(int ring_count, double cell_radius);
AreaSpec build_area(int regions_per_side, const RegionSpec& region);

WalkGraphSummary region_graph(int ring_count);
WalkGraphSummary area_graph(int regions_per_side);

/// Nominal corner weight of the area walk, 1 / ((2M-1)(M-1)).
/// It is not degree-consistent (the walk gives 3 / (4(2M-1)(M-1))) and is kept
/// only so the exact-mode area crossing coefficient can be reproduced.
double nominal_area_corner_probability(int regions_per_side);

AreaCoverage area_coverage(const AreaSpec& area);

/// Explicit adjacency of a tessellation, used by the geometric walk simulator
/// and as a brute-force check of the closed-form counters.
struct Lattice {
  static constexpr int kNone = -1;

  int directions = 0;  // 6 for the hex region, 8 for the king-move area grid
  std::vector<int> neighbors;  // cell-major, `directions` slots, kNone if outside

  [[nodiscard]] int size() const { return static_cast<int>(neighbors.size()) / directions; }
  [[nodiscard]] int neighbor(int cell, int direction) const {
    return neighbors[static_cast<std::size_t>(cell * directions + direction)];
  }
  [[nodiscard]] int degree(int cell) const;
  [[nodiscard]] std::int64_t half_edge_sum() const;
};

/// Hex cells at axial distance <= L from the center, in axial coordinates.
struct HexRegionLattice {
  Lattice lattice;
  std::vector<std::array<int, 2>> axial;  // (q, r) per cell
  std::vector<int> ring;                  // hex distance from the center

  [[nodiscard]] std::vector<int> border_cells() const;
};

HexRegionLattice hex_region_lattice(int ring_count);

/// M x M grid with king-move adjacency, cell index = row * M + col.
Lattice king_area_lattice(int regions_per_side);

/// Class counts obtained by scanning the lattice degrees. Degrees are mapped
/// onto the internal/edge/corner classes by value.
WalkGraphSummary summarize_lattice(const Lattice& lattice, int internal_degree, int edge_degree,
                                   int corner_degree);

}  // namespace hmlbn
