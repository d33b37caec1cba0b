#include "hmlbn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

namespace hmlbn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Engine = std::mt19937_64;

LifeRecord model_faithful_life(Engine& rng, const MobilityParams& mob, const CrossingModel& model) {
  std::exponential_distribution<double> life(mob.life_rate);
  std::exponential_distribution<double> dwell(mob.cell_departure_rate);
  std::bernoulli_distribution region_exit(model.p_r);
  std::bernoulli_distribution area_exit(model.p_a);

  LifeRecord rec;
  rec.duration = life(rng);
  double t = dwell(rng);
  while (t <= rec.duration) {
    ++rec.cells;
    if (region_exit(rng)) {
      ++rec.regions;
      if (area_exit(rng)) ++rec.areas;
    }
    t += dwell(rng);
  }
  return rec;
}

/// Read-only lattices shared by all workers in geometric mode.
struct GeometricWorld {
  HexRegionLattice region;
  Lattice area;
  int side = 0;
  std::vector<double> cell_weights;    // stationary, proportional to degree
  std::vector<int> border;
  std::vector<double> border_weights;  // stationary restricted to the border ring
  std::vector<double> region_weights;  // stationary on the area grid

  GeometricWorld(int rings, int regions_per_side)
      : region(hex_region_lattice(rings)),
        area(king_area_lattice(regions_per_side)),
        side(regions_per_side),
        border(region.border_cells()) {
    for (int c = 0; c < region.lattice.size(); ++c) {
      cell_weights.push_back(region.lattice.degree(c));
    }
    for (int c : border) border_weights.push_back(region.lattice.degree(c));
    for (int c = 0; c < area.size(); ++c) region_weights.push_back(area.degree(c));
  }

  /// Neighbor region in king direction `dir`, wrapping into the adjacent area.
  [[nodiscard]] int wrapped(int cell, int dir) const {
    static constexpr int kRow[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int kCol[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    const int row = (cell / side + kRow[dir] + side) % side;
    const int col = (cell % side + kCol[dir] + side) % side;
    return row * side + col;
  }
};

LifeRecord geometric_life(Engine& rng, const MobilityParams& mob, const GeometricWorld& world) {
  std::exponential_distribution<double> life(mob.life_rate);
  std::exponential_distribution<double> dwell(mob.cell_departure_rate);
  std::uniform_int_distribution<int> hex_dir(0, 5);
  std::uniform_int_distribution<int> king_dir(0, 7);
  std::discrete_distribution<int> start_cell(world.cell_weights.begin(), world.cell_weights.end());
  std::discrete_distribution<int> entry_cell(world.border_weights.begin(),
                                             world.border_weights.end());
  std::discrete_distribution<int> start_region(world.region_weights.begin(),
                                               world.region_weights.end());

  LifeRecord rec;
  int cell = start_cell(rng);
  int region = start_region(rng);
  rec.duration = life(rng);
  double t = dwell(rng);
  while (t <= rec.duration) {
    ++rec.cells;
    const int next = world.region.lattice.neighbor(cell, hex_dir(rng));
    if (next != Lattice::kNone) {
      cell = next;
    } else {
      ++rec.regions;
      const int dir = king_dir(rng);
      const int next_region = world.area.neighbor(region, dir);
      if (next_region == Lattice::kNone) {
        ++rec.areas;
        region = world.wrapped(region, dir);
      } else {
        region = next_region;
      }
      cell = world.border[static_cast<std::size_t>(entry_cell(rng))];
    }
    t += dwell(rng);
  }
  return rec;
}

}  // namespace

SimMode parse_sim_mode(std::string_view text) {
  if (text == "model-faithful") return SimMode::ModelFaithful;
  if (text == "geometric") return SimMode::Geometric;
  throw std::invalid_argument("unknown simulation mode '" + std::string(text) +
                              "' (expected model-faithful or geometric)");
}

std::string_view to_string(SimMode mode) {
  return mode == SimMode::Geometric ? "geometric" : "model-faithful";
}

void SimConfig::validate() const {
  if (life_count < 1) throw std::invalid_argument("life_count must be >= 1");
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
  if (!(mobility.life_rate > 0.0 && mobility.cell_departure_rate > 0.0)) {
    throw std::invalid_argument("mobility parameters are not initialized");
  }
  if (region.ring_count < 1) throw std::invalid_argument("region is not initialized");
  if (area.regions_per_side < 2) throw std::invalid_argument("area is not initialized");
}

void EmpiricalPmf::add(std::int64_t value, double weight) {
  if (value < 0) throw std::invalid_argument("empirical pmf values must be non-negative");
  weights_[value] += weight;
  total_ += weight;
}

void EmpiricalPmf::merge(const EmpiricalPmf& other) {
  for (const auto& [v, w] : other.weights_) add(v, w);
}

double EmpiricalPmf::weight(std::int64_t value) const {
  const auto it = weights_.find(value);
  return it == weights_.end() ? 0.0 : it->second;
}

double EmpiricalPmf::frequency(std::int64_t value) const {
  return empty() ? 0.0 : weight(value) / total_;
}

double EmpiricalPmf::mean() const {
  if (empty()) return 0.0;
  double s = 0.0;
  for (const auto& [v, w] : weights_) s += static_cast<double>(v) * w;
  return s / total_;
}

std::int64_t EmpiricalPmf::max_value() const {
  return weights_.empty() ? 0 : weights_.rbegin()->first;
}

std::uint64_t life_seed(std::uint64_t seed, std::uint64_t life_index) {
  return splitmix64(splitmix64(seed) ^ life_index);
}

MovementSample simulate_movement(const SimConfig& config) {
  config.validate();
  const CrossingModel model =
      crossing_model(config.mobility, config.region.ring_count, config.area.regions_per_side,
                     config.crossing_mode);

  std::unique_ptr<GeometricWorld> world;
  if (config.mode == SimMode::Geometric) {
    world = std::make_unique<GeometricWorld>(config.region.ring_count,
                                             config.area.regions_per_side);
  }

  MovementSample out;
  out.records.resize(static_cast<std::size_t>(config.life_count));

  auto run_block = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      Engine rng(life_seed(config.seed, static_cast<std::uint64_t>(i)));
      out.records[static_cast<std::size_t>(i)] =
          world ? geometric_life(rng, config.mobility, *world)
                : model_faithful_life(rng, config.mobility, model);
    }
  };

  const std::int64_t workers = std::min<std::int64_t>(config.worker_count, config.life_count);
  if (workers <= 1) {
    run_block(0, config.life_count);
  } else {
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (config.life_count + workers - 1) / workers;
    for (std::int64_t w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(config.life_count, begin + chunk);
      if (begin < end) pool.emplace_back(run_block, begin, end);
    }
  }

  std::int64_t cells = 0;
  std::int64_t regions = 0;
  std::int64_t areas = 0;
  for (const LifeRecord& r : out.records) {
    out.cells.add(r.cells);
    out.regions.add(r.regions);
    out.areas.add(r.areas);
    cells += r.cells;
    regions += r.regions;
    areas += r.areas;
  }
  const auto lives = static_cast<double>(config.life_count);
  out.cell_survival = static_cast<double>(cells) / (static_cast<double>(cells) + lives);
  out.region_exit_per_cell_step = static_cast<double>(regions) / (static_cast<double>(cells) + lives);
  out.area_exit_per_region_step = static_cast<double>(areas) / (static_cast<double>(regions) + lives);
  return out;
}

EmpiricalPmf simulate_hops(std::uint64_t seed, std::int64_t jumps, int max_diameter,
                           bool mobile_to_mobile, double region_exit_rate) {
  if (max_diameter < 1) throw std::domain_error("maximum network diameter must be >= 1");
  if (jumps < 1) throw std::domain_error("hop simulation needs at least one jump");
  Engine rng(life_seed(seed, 0));
  std::exponential_distribution<double> sojourn(mobile_to_mobile ? 2.0 * region_exit_rate
                                                                 : region_exit_rate);
  std::uniform_int_distribution<int> start(0, max_diameter);
  std::uniform_int_distribution<int> other(0, max_diameter - 1);

  std::vector<double> occupancy(static_cast<std::size_t>(max_diameter) + 1, 0.0);
  int state = start(rng);
  for (std::int64_t n = 0; n < jumps; ++n) {
    occupancy[static_cast<std::size_t>(state)] += sojourn(rng);
    int target = other(rng);
    if (target >= state) ++target;
    state = target;
  }
  EmpiricalPmf pmf;
  for (int s = 0; s <= max_diameter; ++s) pmf.add(s, occupancy[static_cast<std::size_t>(s)]);
  return pmf;
}

PmfComparison compare_empirical(const EmpiricalPmf& empirical, std::span<const double> analytic) {
  if (empirical.empty()) throw std::invalid_argument("cannot compare an empty empirical pmf");
  const auto n = static_cast<std::int64_t>(analytic.size());
  const double total = empirical.total();

  double covered = 0.0;
  for (double p : analytic) covered += p;
  const double analytic_tail = std::max(0.0, 1.0 - covered);
  double empirical_tail = 0.0;
  for (const auto& [v, w] : empirical.weights()) {
    if (v >= n) empirical_tail += w;
  }
  empirical_tail /= total;

  PmfComparison out;
  double tv = std::abs(empirical_tail - analytic_tail);
  for (std::int64_t v = 0; v < n; ++v) {
    tv += std::abs(empirical.frequency(v) - analytic[static_cast<std::size_t>(v)]);
  }
  out.tv_distance = 0.5 * tv;

  // Chi-square: one bin per value with expected count >= 5, the rest pooled.
  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double rest_obs = empirical_tail * total;
  double rest_exp = analytic_tail * total;
  for (std::int64_t v = 0; v < n; ++v) {
    const double expected = analytic[static_cast<std::size_t>(v)] * total;
    if (expected >= 5.0) {
      bins.emplace_back(empirical.weight(v), expected);
    } else {
      rest_obs += empirical.weight(v);
      rest_exp += expected;
    }
  }
  if (rest_exp >= 5.0 || bins.empty()) {
    bins.emplace_back(rest_obs, rest_exp);
  } else {
    bins.back().first += rest_obs;
    bins.back().second += rest_exp;
  }
  double stat = 0.0;
  for (const auto& [o, e] : bins) {
    if (e > 0.0) {
      stat += (o - e) * (o - e) / e;
    } else if (o > 0.0) {
      stat = std::numeric_limits<double>::infinity();
    }
  }
  out.chi_square = stat;
  out.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
  if (out.degrees_of_freedom >= 1 && std::isfinite(stat)) {
    out.p_value = boost::math::gamma_q(0.5 * out.degrees_of_freedom, 0.5 * stat);
  } else {
    out.p_value = std::isfinite(stat) ? 1.0 : 0.0;
  }
  return out;
}

void write_records(std::ostream& out, std::span<const LifeRecord> records) {
  out << "seed_index C R A duration\n";
  char buf[128];
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LifeRecord& r = records[i];
    std::snprintf(buf, sizeof buf, "%zu %lld %lld %lld %.9g\n", i,
                  static_cast<long long>(r.cells), static_cast<long long>(r.regions),
                  static_cast<long long>(r.areas), r.duration);
    out << buf;
  }
}

}  // namespace hmlbn
