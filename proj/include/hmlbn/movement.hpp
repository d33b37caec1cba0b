#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace hmlbn {

/// Which form of the region/area boundary crossing probabilities to use.
/// PaperApprox uses the simplified final forms; Exact keeps the 17/36 and
/// 35/32 coefficients that come out of the stationary-weight sums.
enum class CrossingMode { PaperApprox, Exact };

CrossingMode parse_crossing_mode(std::string_view text);
std::string_view to_string(CrossingMode mode);

struct MobilityParams {
  double life_rate = 0.0;            // lambda, 1/s
  double cell_departure_rate = 0.0;  // mu, 1/s
  double rho_c = 0.0;                // life-to-mobility ratio lambda / mu
  double p_c = 0.0;                  // probability of moving through a cell, mu / (mu + lambda)
  double mean_life = 0.0;            // s
  double mean_cell_dwell = 0.0;      // s
};

MobilityParams mobility_params(double mean_life, double rho_c);

struct CrossingModel {
  double p_sr = 0.0;   // per-step probability of crossing the region boundary
  double p_r = 0.0;    // probability of moving through a region within the remaining life
  double p_sa = 0.0;   // per-region-step probability of crossing the area boundary
  double p_a = 0.0;    // probability of moving through an area within the remaining life
  double eta_r = 0.0;  // region exit rate mu * p_sr, 1/s
  double eta_a = 0.0;  // area exit rate mu * p_sr * p_sa, 1/s
  CrossingMode mode = CrossingMode::PaperApprox;
};

CrossingModel crossing_model(const MobilityParams& params, int ring_count, int regions_per_side,
                             CrossingMode mode = CrossingMode::PaperApprox);

/// Count distribution P(X = k) = (1 - g) g^k on k = 0, 1, 2, ...
class GeometricCount {
 public:
  GeometricCount() = default;
  explicit GeometricCount(double ratio);

  [[nodiscard]] double ratio() const { return ratio_; }
  [[nodiscard]] double pmf(std::int64_t k) const;
  /// P(X >= k).
  [[nodiscard]] double tail(std::int64_t k) const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;
  /// Smallest n with P(X >= n) < tail_mass, capped at 10^7 terms.
  [[nodiscard]] std::int64_t horizon(double tail_mass = 1e-12) const;
  /// pmf(0) .. pmf(n - 1).
  [[nodiscard]] Eigen::VectorXd pmf_vector(std::int64_t n) const;

 private:
  double ratio_ = 0.0;
};

/// Trial count up to and including the first success: P(X = k) = (1 - p)^(k-1) p, k >= 1.
class ShiftedGeometric {
 public:
  ShiftedGeometric() = default;
  explicit ShiftedGeometric(double success);

  [[nodiscard]] double success() const { return success_; }
  [[nodiscard]] double pmf(std::int64_t k) const;
  [[nodiscard]] double mean() const { return 1.0 / success_; }
  [[nodiscard]] double variance() const { return (1.0 - success_) / (success_ * success_); }

 private:
  double success_ = 1.0;
};

struct CrossingDistributions {
  GeometricCount cells;    // C: all boundary crossings in a life
  GeometricCount regions;  // R: region or area crossings
  GeometricCount areas;    // A: area crossings
  ShiftedGeometric cell_steps_to_region_exit;    // M_cb
  ShiftedGeometric region_steps_to_area_exit;    // M_rb

  // Closed-form moments.
  double mean_cells = 0.0;
  double var_cells = 0.0;
  double mean_regions = 0.0;
  double var_regions = 0.0;
  double mean_areas = 0.0;
  double var_areas = 0.0;

  double mean_local = 0.0;            // E[M_c] = E[C] - E[R]
  double mean_intra = 0.0;            // E[M_r] = E[R] - E[A]
  double mean_local_internal = 0.0;   // E[M_c^I] = E[M_c] A(0)
  double mean_intra_internal = 0.0;   // E[M_r^I] = E[M_r] A(0)
};

CrossingDistributions crossing_distributions(double p_c, const CrossingModel& model);

/// Number of area transitions a node is expected to survive, floored at 1.
std::int64_t survivable_transitions(const CrossingModel& model, double life_rate, double epsilon);

struct InterAreaMatrix {
  int area_count = 0;      // J
  std::int64_t band = 0;   // K as requested
  int effective_band = 0;  // min(K, floor((J - 1) / 2)), at least 1
  Eigen::MatrixXd entries;
};

/// Circulant inter-area transition matrix. Entry (i, j) is A(d) where d is the
/// circular distance between i and j, for 1 <= d <= effective band.
/// `area_pmf[k]` is A(k); it must cover k = 0 .. effective band.
InterAreaMatrix inter_area_matrix(int area_count, std::int64_t band,
                                  std::span<const double> area_pmf);
InterAreaMatrix inter_area_matrix(int area_count, std::int64_t band, const GeometricCount& areas);

/// Mean speed implied by the cell dwell time: one hexagon width (sqrt(3) r)
/// per mean cell dwell. Returns km/h.
double estimate_speed(double rho_c, double cell_radius_km, double mean_life_s);

}  // namespace hmlbn
