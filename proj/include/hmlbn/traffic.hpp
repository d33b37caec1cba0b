#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hmlbn/movement.hpp"

namespace hmlbn {

/// Hop count between the end points of a session as a CTMC over {0 .. D}.
/// Every region change re-draws the hop count uniformly among the other states.
struct HopCountModel {
  int max_diameter = 0;          // D
  double transition_uniform = 0;  // q = 1 / D, per-target jump probability
  double dwell_rate = 0;         // eta_r for a fixed peer, 2 eta_r when both ends move
  Eigen::VectorXd stationary;    // pi_0 .. pi_D

  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;
  /// Generator matrix of the chain: off-diagonal dwell_rate * q, rows sum to 0.
  [[nodiscard]] Eigen::MatrixXd generator() const;
};

HopCountModel hop_count_model(int max_diameter, double region_exit_rate = 1.0,
                              bool mobile_to_mobile = false);

/// Stationary vector of an irreducible CTMC: solves pi Q = 0 with sum(pi) = 1.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> ctmc_stationary(
    const Eigen::MatrixBase<Derived>& generator) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = generator.rows();
  if (n == 0 || generator.cols() != n) throw std::invalid_argument("generator must be square");
  Matrix balance = generator.transpose();
  balance.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = Scalar(1);
  return balance.fullPivLu().solve(rhs);
}

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Event rates through (I - P)^-1 by LU factorization.
template <typename DerivedP, typename DerivedV>
Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, 1> direct_event_rates(
    const Eigen::MatrixBase<DerivedP>& transfers, const Eigen::MatrixBase<DerivedV>& origination) {
  using Matrix = Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = transfers.rows();
  if (transfers.cols() != n || origination.size() != n) {
    throw std::invalid_argument("event-rate system dimensions do not match");
  }
  const Matrix system = Matrix::Identity(n, n) - transfers;
  return system.partialPivLu().solve(origination);
}

/// Event rates by iterating rates <- origination + P * rates from the origination vector.
/// Stops when the sup-norm step drops below `tolerance` relative to the iterate.
template <typename DerivedP, typename DerivedV>
Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, 1> fixed_point_event_rates(
    const Eigen::MatrixBase<DerivedP>& transfers, const Eigen::MatrixBase<DerivedV>& origination,
    typename DerivedP::Scalar tolerance = 1e-13, std::int64_t max_iterations = 1'000'000) {
  using Scalar = typename DerivedP::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = transfers.rows();
  if (transfers.cols() != n || origination.size() != n) {
    throw std::invalid_argument("event-rate system dimensions do not match");
  }
  Vector rates = origination;
  for (std::int64_t it = 0; it < max_iterations; ++it) {
    Vector next = origination + transfers * rates;
    const Scalar step = (next - rates).template lpNorm<Eigen::Infinity>();
    const Scalar scale = std::max(Scalar(1), next.template lpNorm<Eigen::Infinity>());
    rates.swap(next);
    if (!std::isfinite(step)) break;
    if (step <= tolerance * scale) return rates;
  }
  throw NonConvergenceError("event-rate fixed point did not converge in " +
                            std::to_string(max_iterations) +
                            " iterations; the transfer matrix has spectral radius >= 1");
}

/// Total per-area event rates. Solved directly, then checked against the
/// fixed-point iteration; throws NonConvergenceError if they disagree.
Eigen::VectorXd solve_event_rates(const Eigen::MatrixXd& transfers,
                                  const Eigen::VectorXd& origination);
Eigen::VectorXd solve_event_rates(const InterAreaMatrix& transfers,
                                  const Eigen::VectorXd& origination);

/// Per-area network update event rates (all vectors of length J).
struct RateVectors {
  Eigen::VectorXd origination;  // new active lives per area
  Eigen::VectorXd total;        // originations plus transfers
  Eigen::VectorXd local;        // MSF-local updates, total * E[M_c^I]
  Eigen::VectorXd intra;        // intra-area inter-MSF updates, total * E[M_r^I]
  Eigen::VectorXd inter;        // inter-area updates, P * total

  double mean_local_internal = 0;  // E[M_c^I]
  double mean_intra_internal = 0;  // E[M_r^I]

  /// Sum of all update types per area.
  [[nodiscard]] Eigen::VectorXd updates() const { return local + intra + inter; }

  // Split of the local and intra rates into the share driven by new lives
  // and the share driven by transfers from other areas.
  [[nodiscard]] Eigen::VectorXd local_from_origination() const {
    return origination * mean_local_internal;
  }
  [[nodiscard]] Eigen::VectorXd local_from_transfers() const {
    return (total - origination) * mean_local_internal;
  }
  [[nodiscard]] Eigen::VectorXd intra_from_origination() const {
    return origination * mean_intra_internal;
  }
  [[nodiscard]] Eigen::VectorXd intra_from_transfers() const {
    return (total - origination) * mean_intra_internal;
  }
};

RateVectors update_rates(const Eigen::VectorXd& origination, const Eigen::VectorXd& total,
                         const CrossingDistributions& distributions,
                         const Eigen::MatrixXd& transfers);

}  // namespace hmlbn
