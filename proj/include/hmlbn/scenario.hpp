#pragma once

#include <cstdint>

#include "hmlbn/geometry.hpp"
#include "hmlbn/metrics.hpp"
#include "hmlbn/movement.hpp"
#include "hmlbn/traffic.hpp"

namespace hmlbn {

/// Coverage, mobility and traffic inputs for one evaluation of the analytic model.
/// Defaults: 4 rings of 5 km cells, 5 x 5 regions per area, 10 areas, one hour
/// of active life.
struct Scenario {
  int ring_count = 4;
  double cell_radius = 5.0;
  int regions_per_side = 5;
  int area_count = 10;
  std::int64_t band = 0;  // inter-area band K; 0 derives it from `epsilon`
  double epsilon = 1e-3;
  double mean_life = 3600.0;
  double origination_rate = 100.0;  // new active lives per area per unit time
  CrossingMode mode = CrossingMode::PaperApprox;
};

struct ScenarioResult {
  MobilityParams mobility;
  CrossingModel crossing;
  CrossingDistributions distributions;
  std::int64_t band = 0;
  InterAreaMatrix transfers;
  RateVectors rates;
};

ScenarioResult evaluate(const Scenario& scenario, double rho_c);

/// Combined per-area update rate at rho_c = 1, the baseline level below
/// which mobility cost differences are not significant. Averaged over areas.
double minimum_event_rate_of_significance(const Scenario& scenario);

}  // namespace hmlbn
