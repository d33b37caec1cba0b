#include "hmlbn/traffic.hpp"

#include <cmath>

namespace hmlbn {

double HopCountModel::mean() const {
  const Eigen::VectorXd states = Eigen::VectorXd::LinSpaced(max_diameter + 1, 0, max_diameter);
  return states.dot(stationary);
}

double HopCountModel::variance() const {
  const Eigen::VectorXd states = Eigen::VectorXd::LinSpaced(max_diameter + 1, 0, max_diameter);
  const double m = mean();
  return (states.array() - m).square().matrix().dot(stationary);
}

Eigen::MatrixXd HopCountModel::generator() const {
  const int n = max_diameter + 1;
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(n, n, dwell_rate * transition_uniform);
  q.diagonal().setConstant(-dwell_rate);
  return q;
}

HopCountModel hop_count_model(int max_diameter, double region_exit_rate, bool mobile_to_mobile) {
  if (max_diameter < 1) throw std::domain_error("maximum network diameter must be >= 1");
  if (!(region_exit_rate > 0.0)) throw std::domain_error("region exit rate must be > 0");
  HopCountModel h;
  h.max_diameter = max_diameter;
  h.transition_uniform = 1.0 / max_diameter;
  h.dwell_rate = mobile_to_mobile ? 2.0 * region_exit_rate : region_exit_rate;
  // Global balance: pi_j * D * q * rate = (1 - pi_j) * q * rate for every j.
  h.stationary = Eigen::VectorXd::Constant(max_diameter + 1, 1.0 / (max_diameter + 1));
  return h;
}

Eigen::VectorXd solve_event_rates(const Eigen::MatrixXd& transfers,
                                  const Eigen::VectorXd& origination) {
  if ((origination.array() < 0.0).any()) {
    throw std::domain_error("origination rates must be non-negative");
  }
  if ((transfers.array() < 0.0).any()) {
    throw std::domain_error("transfer probabilities must be non-negative");
  }
  const Eigen::VectorXd direct = direct_event_rates(transfers, origination);
  const Eigen::VectorXd iterated = fixed_point_event_rates(transfers, origination);
  const double scale = std::max(1.0, iterated.lpNorm<Eigen::Infinity>());
  if (!direct.allFinite() || (direct - iterated).lpNorm<Eigen::Infinity>() > 1e-10 * scale) {
    throw NonConvergenceError("direct and fixed-point event rates disagree");
  }
  return direct;
}

Eigen::VectorXd solve_event_rates(const InterAreaMatrix& transfers,
                                  const Eigen::VectorXd& origination) {
  return solve_event_rates(transfers.entries, origination);
}

RateVectors update_rates(const Eigen::VectorXd& origination, const Eigen::VectorXd& total,
                         const CrossingDistributions& distributions,
                         const Eigen::MatrixXd& transfers) {
  const Eigen::Index n = total.size();
  if (origination.size() != n || transfers.rows() != n || transfers.cols() != n) {
    throw std::invalid_argument("rate vector and transfer matrix dimensions do not match");
  }
  RateVectors r;
  r.origination = origination;
  r.total = total;
  r.mean_local_internal = distributions.mean_local_internal;
  r.mean_intra_internal = distributions.mean_intra_internal;
  r.local = total * distributions.mean_local_internal;
  r.intra = total * distributions.mean_intra_internal;
  r.inter = transfers * total;
  return r;
}

}  // namespace hmlbn
