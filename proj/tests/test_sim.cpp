#include <doctest.h>

#include <sstream>

#include "hmlbn/scenario.hpp"
#include "hmlbn/sim.hpp"
#include "hmlbn/traffic.hpp"

using namespace hmlbn;

namespace {

SimConfig config_at(double rho, std::int64_t lives, SimMode mode = SimMode::ModelFaithful) {
  SimConfig c;
  c.seed = 42;
  c.life_count = lives;
  c.mobility = mobility_params(3600, rho);
  c.region = build_region(4, 5);
  c.area = build_area(5, c.region);
  c.mode = mode;
  return c;
}

PmfComparison fit(const EmpiricalPmf& emp, const GeometricCount& model) {
  const Eigen::VectorXd pmf = model.pmf_vector(model.horizon());
  return compare_empirical(emp, {pmf.data(), static_cast<std::size_t>(pmf.size())});
}

}  // namespace

TEST_CASE("empirical pmf bookkeeping") {
  EmpiricalPmf a;
  a.add(0, 3);
  a.add(2);
  EmpiricalPmf b;
  b.add(2, 4);
  a.merge(b);
  CHECK(a.total() == 8.0);
  CHECK(a.frequency(2) == doctest::Approx(5.0 / 8));
  CHECK(a.frequency(1) == 0.0);
  CHECK(a.mean() == doctest::Approx(10.0 / 8));
  CHECK(a.max_value() == 2);
  CHECK_THROWS(a.add(-1));
}

TEST_CASE("total variation and chi-square") {
  const std::vector<double> half{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};

  EmpiricalPmf exact;
  for (std::size_t k = 0; k < half.size(); ++k) exact.add(static_cast<std::int64_t>(k), half[k] * 64);
  exact.add(6, 1);  // the remaining 1/64 lands beyond the listed values
  CHECK(compare_empirical(exact, half).tv_distance == doctest::Approx(0.0).epsilon(1e-15));

  EmpiricalPmf skew;
  skew.add(0, 75);
  skew.add(1, 25);
  const std::vector<double> two{0.5, 0.25};
  CHECK(compare_empirical(skew, two).tv_distance == doctest::Approx(0.25));

  EmpiricalPmf far;
  far.add(5, 10);
  CHECK(compare_empirical(far, std::vector<double>{0.5, 0.5}).tv_distance == doctest::Approx(1.0));

  const PmfComparison c = compare_empirical(skew, two);
  CHECK(c.chi_square > 0);
  CHECK(c.p_value < 1e-3);

  CHECK_THROWS_AS(compare_empirical(EmpiricalPmf{}, two), std::invalid_argument);
}

TEST_CASE("model-faithful crossings at rho_c = 1") {
  const MovementSample s = simulate_movement(config_at(1.0, 100'000));
  const ScenarioResult r = evaluate(Scenario{}, 1.0);
  CHECK(s.records.size() == 100'000);
  CHECK(s.cells.mean() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(fit(s.cells, r.distributions.cells).tv_distance <= 0.01);
}

TEST_CASE("model-faithful region crossings at rho_c = 0.01") {
  const MovementSample s = simulate_movement(config_at(0.01, 100'000));
  CHECK(s.regions.mean() == doctest::Approx(48.77).epsilon(0.02));
  const ScenarioResult r = evaluate(Scenario{}, 0.01);
  CHECK(s.cell_survival == doctest::Approx(r.mobility.p_c).epsilon(0.01));
}

TEST_CASE("model-faithful pmfs fit the analytic laws") {
  for (double rho : {0.1, 1.0}) {
    const MovementSample s = simulate_movement(config_at(rho, 100'000));
    const ScenarioResult r = evaluate(Scenario{}, rho);
    const PmfComparison fits[] = {fit(s.cells, r.distributions.cells),
                                  fit(s.regions, r.distributions.regions),
                                  fit(s.areas, r.distributions.areas)};
    for (const PmfComparison& f : fits) {
      CHECK(f.tv_distance <= 0.02);
      CHECK(f.p_value > 1e-3);
    }
  }
}

TEST_CASE("records respect the crossing hierarchy") {
  for (SimMode mode : {SimMode::ModelFaithful, SimMode::Geometric}) {
    const MovementSample s = simulate_movement(config_at(0.05, 5'000, mode));
    for (const LifeRecord& rec : s.records) {
      CHECK(rec.cells >= rec.regions);
      CHECK(rec.regions >= rec.areas);
      CHECK(rec.areas >= 0);
      CHECK(rec.duration > 0);
    }
  }
}

TEST_CASE("geometric walk recovers the cell survival probability") {
  const SimConfig c = config_at(0.1, 50'000, SimMode::Geometric);
  const MovementSample s = simulate_movement(c);
  CHECK(s.cell_survival == doctest::Approx(c.mobility.p_c).epsilon(0.01));
  // Exit rates are reported, not asserted against the analytic forms.
  CHECK(s.region_exit_per_cell_step > 0);
  CHECK(s.region_exit_per_cell_step < 1);
  CHECK(s.area_exit_per_region_step > 0);
  CHECK(s.area_exit_per_region_step < 1);
}

TEST_CASE("results do not depend on the worker count") {
  for (SimMode mode : {SimMode::ModelFaithful, SimMode::Geometric}) {
    SimConfig c = config_at(0.1, 3'001, mode);
    const MovementSample one = simulate_movement(c);
    c.worker_count = 8;
    const MovementSample eight = simulate_movement(c);
    REQUIRE(one.records.size() == eight.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
      CHECK(one.records[i].cells == eight.records[i].cells);
      CHECK(one.records[i].regions == eight.records[i].regions);
      CHECK(one.records[i].areas == eight.records[i].areas);
      CHECK(one.records[i].duration == eight.records[i].duration);
    }
    CHECK(one.cells.weights() == eight.cells.weights());
    CHECK(one.cell_survival == eight.cell_survival);
  }
  CHECK(life_seed(1, 0) != life_seed(1, 1));
  CHECK(life_seed(1, 5) != life_seed(2, 5));
}

TEST_CASE("invalid simulation settings") {
  SimConfig c = config_at(1, 10);
  c.life_count = 0;
  CHECK_THROWS(simulate_movement(c));
  c = config_at(1, 10);
  c.worker_count = 0;
  CHECK_THROWS(simulate_movement(c));
  CHECK_THROWS(simulate_movement(SimConfig{}));
  CHECK(parse_sim_mode("geometric") == SimMode::Geometric);
  CHECK(to_string(SimMode::ModelFaithful) == "model-faithful");
  CHECK_THROWS(parse_sim_mode("exact"));
}

TEST_CASE("hop chain simulation") {
  const HopCountModel m = hop_count_model(10);
  const EmpiricalPmf h = simulate_hops(9, 1'000'000, 10, false);
  CHECK(h.mean() == doctest::Approx(5.0).epsilon(0.02));
  const auto cmp = compare_empirical(h, {m.stationary.data(), std::size_t(m.stationary.size())});
  CHECK(cmp.tv_distance <= 0.01);

  const EmpiricalPmf both = simulate_hops(9, 1'000'000, 10, true);
  for (int k = 0; k <= 10; ++k) CHECK(both.frequency(k) == doctest::Approx(h.frequency(k)).epsilon(1e-9));

  const EmpiricalPmf d1 = simulate_hops(3, 200'000, 1, false);
  CHECK(d1.frequency(0) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(d1.frequency(1) == doctest::Approx(0.5).epsilon(0.01));
  CHECK_THROWS(simulate_hops(3, 10, 0, false));
}

TEST_CASE("record file layout") {
  const std::vector<LifeRecord> recs{{3, 2, 1, 12.5}, {0, 0, 0, 1.0}};
  std::ostringstream out;
  write_records(out, recs);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "seed_index C R A duration");
  long idx = -1, c = -1, r = -1, a = -1;
  double dur = 0;
  in >> idx >> c >> r >> a >> dur;
  CHECK(idx == 0);
  CHECK(c == 3);
  CHECK(r == 2);
  CHECK(a == 1);
  CHECK(dur == doctest::Approx(12.5));
}
