#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "hmlbn/geometry.hpp"
#include "hmlbn/movement.hpp"

namespace hmlbn {

/// ModelFaithful samples the crossing structure the analytic model assumes
/// (exponential life, exponential cell dwell, independent region/area
/// thinning). Geometric walks the actual hex region and king-move area grids.
enum class SimMode { ModelFaithful, Geometric };

SimMode parse_sim_mode(std::string_view text);
std::string_view to_string(SimMode mode);

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t life_count = 100'000;
  int worker_count = 1;
  MobilityParams mobility;
  RegionSpec region;
  AreaSpec area;
  SimMode mode = SimMode::ModelFaithful;
  CrossingMode crossing_mode = CrossingMode::PaperApprox;

  void validate() const;
};

struct LifeRecord {
  std::int64_t cells = 0;    // C
  std::int64_t regions = 0;  // R
  std::int64_t areas = 0;    // A
  double duration = 0.0;     // s
};

/// Weighted frequencies over non-negative integer values. Weights are counts
/// for per-life samples and occupancy times for the hop chain.
class EmpiricalPmf {
 public:
  void add(std::int64_t value, double weight = 1.0);
  void merge(const EmpiricalPmf& other);

  [[nodiscard]] bool empty() const { return total_ <= 0.0; }
  [[nodiscard]] double total() const { return total_; }
  [[nodiscard]] double weight(std::int64_t value) const;
  [[nodiscard]] double frequency(std::int64_t value) const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] std::int64_t max_value() const;
  [[nodiscard]] const std::map<std::int64_t, double>& weights() const { return weights_; }

 private:
  std::map<std::int64_t, double> weights_;
  double total_ = 0.0;
};

struct MovementSample {
  std::vector<LifeRecord> records;  // indexed by life
  EmpiricalPmf cells;
  EmpiricalPmf regions;
  EmpiricalPmf areas;

  double cell_survival = 0.0;              // crossings per cell dwell, estimates p_c
  double region_exit_per_cell_step = 0.0;  // region exits per cell dwell
  double area_exit_per_region_step = 0.0;  // area exits per region dwell
};

MovementSample simulate_movement(const SimConfig& config);

/// Seed for the random stream of one life; independent of how lives are
/// distributed over workers.
std::uint64_t life_seed(std::uint64_t seed, std::uint64_t life_index);

/// Time-weighted occupancy of the hop-count chain over `jumps` region changes.
/// The dwell rate doubles when both ends move; the occupancy is unaffected.
EmpiricalPmf simulate_hops(std::uint64_t seed, std::int64_t jumps, int max_diameter,
                           bool mobile_to_mobile, double region_exit_rate = 1.0);

struct PmfComparison {
  double tv_distance = 0.0;
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// `analytic[k]` is the model probability of value k; mass not covered by the
/// span is treated as a single tail bin beyond it.
PmfComparison compare_empirical(const EmpiricalPmf& empirical, std::span<const double> analytic);

/// One life per row: seed_index C R A duration.
void write_records(std::ostream& out, std::span<const LifeRecord> records);

}  // namespace hmlbn
