#include "hmlbn/scenario.hpp"

namespace hmlbn {

ScenarioResult evaluate(const Scenario& scenario, double rho_c) {
  ScenarioResult out;
  out.mobility = mobility_params(scenario.mean_life, rho_c);
  out.crossing = crossing_model(out.mobility, scenario.ring_count, scenario.regions_per_side,
                                scenario.mode);
  out.distributions = crossing_distributions(out.mobility.p_c, out.crossing);
  out.band = scenario.band > 0
                 ? scenario.band
                 : survivable_transitions(out.crossing, out.mobility.life_rate, scenario.epsilon);
  out.transfers = inter_area_matrix(scenario.area_count, out.band, out.distributions.areas);
  const Eigen::VectorXd origination =
      Eigen::VectorXd::Constant(scenario.area_count, scenario.origination_rate);
  const Eigen::VectorXd total = solve_event_rates(out.transfers, origination);
  out.rates = update_rates(origination, total, out.distributions, out.transfers.entries);
  return out;
}

double minimum_event_rate_of_significance(const Scenario& scenario) {
  return evaluate(scenario, 1.0).rates.updates().mean();
}

}  // namespace hmlbn
