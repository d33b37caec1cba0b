#include "hmlbn/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hmlbn {

namespace {

constexpr double kHexAreaFactor = 1.5 * std::numbers::sqrt3;  // hexagon area / r^2

constexpr std::array<std::array<int, 2>, 6> kAxialDirections{{
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

int hex_distance(int q, int r) { return (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2; }

void require_rings(int ring_count) {
  if (ring_count < 1) {
    throw std::domain_error("ring count must be >= 1, got " + std::to_string(ring_count));
  }
}

void require_side(int regions_per_side) {
  if (regions_per_side < 2) {
    throw std::domain_error("regions per side must be >= 2, got " +
                            std::to_string(regions_per_side));
  }
}

void fill_stationary(WalkGraphSummary& g) {
  const auto twice_edges = static_cast<double>(g.half_edge_sum);
  g.stationary_internal = g.internal_degree / twice_edges;
  g.stationary_edge = g.edge_degree / twice_edges;
  g.stationary_corner = g.corner_degree / twice_edges;
}

}  // namespace

double WalkGraphSummary::total_probability() const {
  return static_cast<double>(internal_count) * stationary_internal +
         static_cast<double>(edge_count) * stationary_edge +
         static_cast<double>(corner_count) * stationary_corner;
}

RegionSpec build_region(int ring_count, double cell_radius) {
  require_rings(ring_count);
  if (!(cell_radius > 0.0) || !std::isfinite(cell_radius)) {
    throw std::domain_error("cell radius must be a positive finite length");
  }
  RegionSpec s;
  s.ring_count = ring_count;
  s.cell_radius = cell_radius;
  const std::int64_t L = ring_count;
  s.cell_count = 3 * L * (L + 1) + 1;
  s.cell_height = cell_radius * std::numbers::sqrt3 / 2.0;
  s.cell_area = kHexAreaFactor * cell_radius * cell_radius;
  s.region_area = static_cast<double>(s.cell_count) * s.cell_area;
  s.circumradius = std::numbers::sqrt3 / 2.0 * static_cast<double>(2 * L + 1) * cell_radius;
  s.square_side = std::sqrt(kHexAreaFactor) * s.circumradius;
  return s;
}

AreaSpec build_area(int regions_per_side, const RegionSpec& region) {
  require_side(regions_per_side);
  AreaSpec a;
  a.regions_per_side = regions_per_side;
  a.region = region;
  a.region_count = static_cast<std::int64_t>(regions_per_side) * regions_per_side;
  return a;
}

WalkGraphSummary region_graph(int ring_count) {
  require_rings(ring_count);
  const std::int64_t L = ring_count;
  WalkGraphSummary g;
  g.internal_count = 3 * L * (L - 1) + 1;
  g.edge_count = 6 * (L - 1);
  g.corner_count = 6;
  g.half_edge_sum = 6 * L * (3 * L + 1);
  g.internal_degree = 6;
  g.edge_degree = 4;
  g.corner_degree = 3;
  fill_stationary(g);
  return g;
}

WalkGraphSummary area_graph(int regions_per_side) {
  require_side(regions_per_side);
  const std::int64_t M = regions_per_side;
  WalkGraphSummary g;
  g.internal_count = (M - 2) * (M - 2);
  g.edge_count = 4 * (M - 2);
  g.corner_count = 4;
  g.half_edge_sum = 4 * (2 * M - 1) * (M - 1);
  g.internal_degree = 8;
  g.edge_degree = 5;
  g.corner_degree = 3;
  fill_stationary(g);
  return g;
}

double nominal_area_corner_probability(int regions_per_side) {
  require_side(regions_per_side);
  const double M = regions_per_side;
  return 1.0 / ((2.0 * M - 1.0) * (M - 1.0));
}

AreaCoverage area_coverage(const AreaSpec& area) {
  const double M = area.regions_per_side;
  const double L = area.region.ring_count;
  const double span = M * area.region.cell_radius * (2.0 * L + 1.0);
  return AreaCoverage{
      .area_exact = M * M * area.region.region_area,
      .area_square_approx = 9.0 * std::numbers::sqrt3 / 8.0 * span * span,
  };
}

int Lattice::degree(int cell) const {
  int d = 0;
  for (int k = 0; k < directions; ++k) {
    if (neighbor(cell, k) != kNone) ++d;
  }
  return d;
}

std::int64_t Lattice::half_edge_sum() const {
  std::int64_t sum = 0;
  for (int c = 0; c < size(); ++c) sum += degree(c);
  return sum;
}

std::vector<int> HexRegionLattice::border_cells() const {
  const int outer = ring.empty() ? 0 : ring.back();
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(ring.size()); ++c) {
    if (ring[static_cast<std::size_t>(c)] == outer) out.push_back(c);
  }
  return out;
}

HexRegionLattice hex_region_lattice(int ring_count) {
  require_rings(ring_count);
  HexRegionLattice h;
  std::map<std::array<int, 2>, int> index;
  // Enumerate ring by ring so cell indices grow with distance from the center.
  for (int k = 0; k <= ring_count; ++k) {
    for (int q = -k; q <= k; ++q) {
      for (int r = -k; r <= k; ++r) {
        if (hex_distance(q, r) != k) continue;
        index[{q, r}] = static_cast<int>(h.axial.size());
        h.axial.push_back({q, r});
        h.ring.push_back(k);
      }
    }
  }
  h.lattice.directions = 6;
  h.lattice.neighbors.assign(h.axial.size() * 6, Lattice::kNone);
  for (std::size_t c = 0; c < h.axial.size(); ++c) {
    for (int d = 0; d < 6; ++d) {
      const std::array<int, 2> target{h.axial[c][0] + kAxialDirections[d][0],
                                      h.axial[c][1] + kAxialDirections[d][1]};
      if (auto it = index.find(target); it != index.end()) {
        h.lattice.neighbors[c * 6 + static_cast<std::size_t>(d)] = it->second;
      }
    }
  }
  return h;
}

Lattice king_area_lattice(int regions_per_side) {
  require_side(regions_per_side);
  const int M = regions_per_side;
  Lattice l;
  l.directions = 8;
  l.neighbors.assign(static_cast<std::size_t>(M * M * 8), Lattice::kNone);
  for (int row = 0; row < M; ++row) {
    for (int col = 0; col < M; ++col) {
      int slot = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int nr = row + dr;
          const int nc = col + dc;
          if (nr >= 0 && nr < M && nc >= 0 && nc < M) {
            l.neighbors[static_cast<std::size_t>((row * M + col) * 8 + slot)] = nr * M + nc;
          }
          ++slot;
        }
      }
    }
  }
  return l;
}

WalkGraphSummary summarize_lattice(const Lattice& lattice, int internal_degree, int edge_degree,
                                   int corner_degree) {
  WalkGraphSummary g;
  g.internal_degree = internal_degree;
  g.edge_degree = edge_degree;
  g.corner_degree = corner_degree;
  for (int c = 0; c < lattice.size(); ++c) {
    const int d = lattice.degree(c);
    if (d == internal_degree) {
      ++g.internal_count;
    } else if (d == edge_degree) {
      ++g.edge_count;
    } else if (d == corner_degree) {
      ++g.corner_count;
    } else {
      throw std::logic_error("lattice vertex degree " + std::to_string(d) +
                             " does not match any class");
    }
  }
  g.half_edge_sum = lattice.half_edge_sum();
  fill_stationary(g);
  return g;
}

}  // namespace hmlbn
