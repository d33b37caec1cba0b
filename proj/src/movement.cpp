#include "hmlbn/movement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmlbn {

namespace {

constexpr std::int64_t kMaxHorizon = 10'000'000;

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

CrossingMode parse_crossing_mode(std::string_view text) {
  if (text == "paper-approx") return CrossingMode::PaperApprox;
  if (text == "exact") return CrossingMode::Exact;
  throw std::invalid_argument("unknown crossing mode '" + std::string(text) +
                              "' (expected paper-approx or exact)");
}

std::string_view to_string(CrossingMode mode) {
  return mode == CrossingMode::Exact ? "exact" : "paper-approx";
}

MobilityParams mobility_params(double mean_life, double rho_c) {
  if (!positive_finite(mean_life)) throw std::domain_error("mean active life must be > 0");
  if (!positive_finite(rho_c)) throw std::domain_error("life-to-mobility ratio must be > 0");
  MobilityParams p;
  p.mean_life = mean_life;
  p.rho_c = rho_c;
  p.life_rate = 1.0 / mean_life;
  p.cell_departure_rate = p.life_rate / rho_c;
  p.mean_cell_dwell = 1.0 / p.cell_departure_rate;
  p.p_c = 1.0 / (1.0 + rho_c);
  return p;
}

CrossingModel crossing_model(const MobilityParams& params, int ring_count, int regions_per_side,
                             CrossingMode mode) {
  if (ring_count < 1) throw std::domain_error("ring count must be >= 1");
  if (regions_per_side < 2) throw std::domain_error("regions per side must be >= 2");
  if (!positive_finite(params.rho_c)) throw std::domain_error("rho_c must be > 0");

  const double L = ring_count;
  const double M = regions_per_side;
  const double rho = params.rho_c;
  const double ring_factor = L * (3.0 * L + 1.0);
  const double grid_factor = (2.0 * M - 1.0) * (M - 1.0);

  CrossingModel m;
  m.mode = mode;
  if (mode == CrossingMode::Exact) {
    m.p_sr = (17.0 / 36.0) * params.p_c / ring_factor;
  } else {
    m.p_sr = 1.0 / (2.0 * ring_factor * (1.0 + rho));
  }
  m.p_r = 1.0 / (1.0 + rho / m.p_sr);
  if (mode == CrossingMode::Exact) {
    m.p_sa = (35.0 / 32.0) * m.p_r / grid_factor;
  } else {
    m.p_sa = m.p_r / grid_factor;
  }
  m.p_a = 1.0 / (1.0 + rho / (m.p_sr * m.p_sa));
  m.eta_r = params.cell_departure_rate * m.p_sr;
  m.eta_a = params.cell_departure_rate * m.p_sr * m.p_sa;
  return m;
}

GeometricCount::GeometricCount(double ratio) : ratio_(ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw std::domain_error("geometric ratio must lie in [0, 1)");
  }
}

double GeometricCount::pmf(std::int64_t k) const {
  if (k < 0) return 0.0;
  return (1.0 - ratio_) * std::pow(ratio_, static_cast<double>(k));
}

double GeometricCount::tail(std::int64_t k) const {
  if (k <= 0) return 1.0;
  return std::pow(ratio_, static_cast<double>(k));
}

double GeometricCount::mean() const { return ratio_ / (1.0 - ratio_); }

double GeometricCount::variance() const {
  const double q = 1.0 - ratio_;
  return ratio_ / (q * q);
}

std::int64_t GeometricCount::horizon(double tail_mass) const {
  if (!(tail_mass > 0.0 && tail_mass < 1.0)) throw std::domain_error("tail mass must be in (0, 1)");
  if (ratio_ == 0.0) return 1;
  const double n = std::ceil(std::log(tail_mass) / std::log(ratio_));
  auto h = static_cast<std::int64_t>(std::min(n, static_cast<double>(kMaxHorizon)));
  // Guard the boundary against rounding in the logarithms.
  while (h < kMaxHorizon && tail(h) >= tail_mass) ++h;
  return std::max<std::int64_t>(h, 1);
}

Eigen::VectorXd GeometricCount::pmf_vector(std::int64_t n) const {
  Eigen::VectorXd v(n);
  double term = 1.0 - ratio_;
  for (std::int64_t k = 0; k < n; ++k) {
    v[k] = term;
    term *= ratio_;
  }
  return v;
}

ShiftedGeometric::ShiftedGeometric(double success) : success_(success) {
  if (!(success > 0.0 && success <= 1.0)) {
    throw std::domain_error("geometric success probability must lie in (0, 1]");
  }
}

double ShiftedGeometric::pmf(std::int64_t k) const {
  if (k < 1) return 0.0;
  return std::pow(1.0 - success_, static_cast<double>(k - 1)) * success_;
}

CrossingDistributions crossing_distributions(double p_c, const CrossingModel& model) {
  if (!(p_c > 0.0 && p_c < 1.0)) throw std::domain_error("p_c must lie in (0, 1)");
  const double rho = (1.0 - p_c) / p_c;

  // A crossing is kept with probability `keep`; thinning a geometric count
  // yields another geometric count with this ratio.
  auto thinned_ratio = [p_c](double keep) { return p_c * keep / (1.0 - p_c * (1.0 - keep)); };

  CrossingDistributions d;
  d.cells = GeometricCount(p_c);
  d.regions = GeometricCount(thinned_ratio(model.p_r));
  d.areas = GeometricCount(thinned_ratio(model.p_r * model.p_a));
  d.cell_steps_to_region_exit = ShiftedGeometric(model.p_sr);
  d.region_steps_to_area_exit = ShiftedGeometric(model.p_sa);

  const double er = model.p_r / rho;
  const double ea = model.p_r * model.p_a / rho;
  d.mean_cells = 1.0 / rho;
  d.var_cells = (1.0 + rho) / (rho * rho);
  d.mean_regions = er;
  d.var_regions = (1.0 + rho / model.p_r) * er * er;
  d.mean_areas = ea;
  d.var_areas = (1.0 + rho / (model.p_r * model.p_a)) * ea * ea;

  d.mean_local = d.mean_cells - d.mean_regions;
  d.mean_intra = d.mean_regions - d.mean_areas;
  const double stay_in_area = d.areas.pmf(0);
  d.mean_local_internal = d.mean_local * stay_in_area;
  d.mean_intra_internal = d.mean_intra * stay_in_area;
  return d;
}

std::int64_t survivable_transitions(const CrossingModel& model, double life_rate, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
  if (!positive_finite(life_rate)) throw std::domain_error("life rate must be > 0");
  const double bound = std::ceil(model.eta_a / life_rate * (1.0 / epsilon - 1.0));
  constexpr auto kMax = static_cast<double>(std::numeric_limits<std::int32_t>::max());
  if (!(bound < kMax)) return std::numeric_limits<std::int32_t>::max();
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(bound));
}

InterAreaMatrix inter_area_matrix(int area_count, std::int64_t band,
                                  std::span<const double> area_pmf) {
  if (area_count < 2) throw std::domain_error("inter-area matrix needs at least 2 areas");
  if (band < 1) throw std::domain_error("band K must be >= 1");
  InterAreaMatrix m;
  m.area_count = area_count;
  m.band = band;
  m.effective_band =
      static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(band, (area_count - 1) / 2)));
  if (area_pmf.size() <= static_cast<std::size_t>(m.effective_band)) {
    throw std::invalid_argument("area pmf must cover k = 0 .. effective band");
  }
  m.entries = Eigen::MatrixXd::Zero(area_count, area_count);
  for (int i = 0; i < area_count; ++i) {
    for (int j = 0; j < area_count; ++j) {
      const int gap = std::abs(i - j);
      const int d = std::min(gap, area_count - gap);
      if (d >= 1 && d <= m.effective_band) {
        const double a = area_pmf[static_cast<std::size_t>(d)];
        if (a < 0.0) throw std::domain_error("area pmf entries must be non-negative");
        m.entries(i, j) = a;
      }
    }
  }
  if (m.entries.rowwise().sum().maxCoeff() > 1.0) {
    throw std::domain_error("inter-area matrix is not sub-stochastic (row sum > 1)");
  }
  return m;
}

InterAreaMatrix inter_area_matrix(int area_count, std::int64_t band, const GeometricCount& areas) {
  const std::int64_t needed =
      std::max<std::int64_t>(1, std::min<std::int64_t>(band, (area_count - 1) / 2)) + 1;
  const Eigen::VectorXd pmf = areas.pmf_vector(needed);
  return inter_area_matrix(area_count, band,
                           std::span<const double>(pmf.data(), static_cast<std::size_t>(pmf.size())));
}

double estimate_speed(double rho_c, double cell_radius_km, double mean_life_s) {
  const double width_km = std::numbers::sqrt3 * cell_radius_km;
  const double dwell_s = rho_c * mean_life_s;
  return width_km / dwell_s * 3600.0;
}

}  // namespace hmlbn
