#include <doctest.h>

#include <random>

#include "hmlbn/movement.hpp"
#include "hmlbn/scenario.hpp"
#include "hmlbn/traffic.hpp"

using namespace hmlbn;

TEST_CASE("hop count chain moments") {
  const HopCountModel d20 = hop_count_model(20);
  CHECK(d20.mean() == doctest::Approx(10.0));
  CHECK(d20.stationary.size() == 21);
  CHECK((d20.stationary.array() - 1.0 / 21).abs().maxCoeff() < 1e-15);

  const HopCountModel d10 = hop_count_model(10);
  CHECK(d10.mean() == doctest::Approx(5.0));
  CHECK(d10.variance() == doctest::Approx(10.0));

  const HopCountModel d1 = hop_count_model(1);
  CHECK(d1.stationary.size() == 2);
  CHECK(d1.mean() == doctest::Approx(0.5));

  CHECK_THROWS(hop_count_model(0));
}

TEST_CASE("hop count stationary law equals the global-balance solve") {
  for (int D = 1; D <= 60; ++D) {
    for (bool both_move : {false, true}) {
      const HopCountModel m = hop_count_model(D, 0.37, both_move);
      const Eigen::MatrixXd Q = m.generator();
      CHECK(Q.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
      const Eigen::VectorXd numeric = ctmc_stationary(Q);
      CHECK((numeric - m.stationary).lpNorm<Eigen::Infinity>() < 1e-10);
      CHECK((numeric.transpose() * Q).cwiseAbs().maxCoeff() < 1e-10);

      double second = 0;
      for (int j = 0; j <= D; ++j) second += double(j) * j * numeric[j];
      CHECK(m.variance() == doctest::Approx(second - m.mean() * m.mean()).epsilon(1e-10));
    }
  }
  CHECK(hop_count_model(10, 1.0, true).dwell_rate == doctest::Approx(2.0));
}

TEST_CASE("stationary solver on a non-uniform chain") {
  // Birth-death chain: detailed balance gives pi_k proportional to (b/d)^k.
  Eigen::Matrix3d Q;
  Q << -1, 1, 0,  //
      2, -3, 1,   //
      0, 2, -2;
  const Eigen::Vector3d pi = ctmc_stationary(Q);
  CHECK(pi[0] == doctest::Approx(4.0 / 7));
  CHECK(pi[1] == doctest::Approx(2.0 / 7));
  CHECK(pi[2] == doctest::Approx(1.0 / 7));
}

TEST_CASE("event rates: closed examples") {
  const Eigen::VectorXd v = Eigen::VectorXd::Constant(4, 100);
  CHECK(solve_event_rates(Eigen::MatrixXd::Zero(4, 4), v).isApprox(v));

  const InterAreaMatrix ring = inter_area_matrix(4, 1, std::vector<double>{0.5, 0.2});
  const Eigen::VectorXd g = solve_event_rates(ring, v);
  for (int i = 0; i < 4; ++i) CHECK(g[i] == doctest::Approx(500.0 / 3));

  const InterAreaMatrix band2 = inter_area_matrix(10, 2, std::vector<double>{0.6, 0.23632, 0.090524});
  const Eigen::VectorXd g10 = solve_event_rates(band2, Eigen::VectorXd::Constant(10, 100));
  for (int i = 0; i < 10; ++i) CHECK(g10[i] == doctest::Approx(288.8).epsilon(1e-3));
}

TEST_CASE("direct solve equals fixed point on random sub-stochastic systems") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = size(rng);
    Eigen::MatrixXd P(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) P(i, j) = unit(rng);
      // Row sums spread over (0, 0.98] so some systems converge slowly.
      P.row(i) *= 0.98 * unit(rng) / P.row(i).sum();
    }
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 1000 * unit(rng);

    const Eigen::VectorXd direct = direct_event_rates(P, v);
    const Eigen::VectorXd iterated = fixed_point_event_rates(P, v);
    CHECK((direct - iterated).lpNorm<Eigen::Infinity>() <=
          1e-9 * std::max(1.0, direct.lpNorm<Eigen::Infinity>()));
    CHECK((direct.array() >= 0).all());
    const Eigen::VectorXd residual = direct - (v + P * direct);
    CHECK(residual.lpNorm<Eigen::Infinity>() <= 1e-10 * direct.lpNorm<Eigen::Infinity>());
  }
}

TEST_CASE("solvers are templated on the scalar") {
  Eigen::Matrix2f P;
  P << 0.0f, 0.5f, 0.5f, 0.0f;
  const Eigen::Vector2f v(1.0f, 1.0f);
  const Eigen::VectorXf r = direct_event_rates(P, v);
  CHECK(r[0] == doctest::Approx(2.0f).epsilon(1e-5));
  const Eigen::VectorXf f = fixed_point_event_rates(P, v, 1e-6f);
  CHECK(f[1] == doctest::Approx(2.0f).epsilon(1e-4));
}

TEST_CASE("fixed point reports divergence") {
  Eigen::MatrixXd P(2, 2);
  P << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(fixed_point_event_rates(P, Eigen::VectorXd::Ones(2), 1e-13, 1000),
                  NonConvergenceError);
  CHECK_THROWS_AS(solve_event_rates(P, Eigen::VectorXd::Ones(2)), NonConvergenceError);
  CHECK_THROWS(solve_event_rates(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Ones(3)));
}

TEST_CASE("update rate vectors") {
  const Scenario s;
  const ScenarioResult r = evaluate(s, 0.01);
  const RateVectors& v = r.rates;
  CHECK(r.band == 13);
  CHECK(r.transfers.effective_band == 4);

  const Eigen::VectorXd expected_total =
      s.origination_rate * Eigen::VectorXd::Ones(s.area_count) + r.transfers.entries * v.total;
  CHECK((v.total - expected_total).lpNorm<Eigen::Infinity>() < 1e-10 * v.total.maxCoeff());
  CHECK(v.inter.isApprox(r.transfers.entries * v.total));
  CHECK(v.local.isApprox(v.total * r.distributions.mean_local_internal));
  CHECK(v.intra.isApprox(v.total * r.distributions.mean_intra_internal));
  CHECK((v.local_from_origination() + v.local_from_transfers()).isApprox(v.local));
  CHECK((v.intra_from_origination() + v.intra_from_transfers()).isApprox(v.intra));

  const RateVectors idle = update_rates(Eigen::VectorXd::Constant(3, 5), Eigen::VectorXd::Constant(3, 5),
                                        r.distributions, Eigen::MatrixXd::Zero(3, 3));
  CHECK(idle.inter.isZero());
}

TEST_CASE("local update rate at the reference point") {
  // A total of 288.8 per area at E[M_c^I] = 31.6 gives roughly 9127 local updates.
  const CrossingDistributions d = evaluate(Scenario{}, 0.01).distributions;
  const RateVectors v = update_rates(Eigen::VectorXd::Constant(1, 100),
                                     Eigen::VectorXd::Constant(1, 288.8), d,
                                     Eigen::MatrixXd::Zero(1, 1));
  CHECK(v.local[0] == doctest::Approx(9127).epsilon(3e-3));
}

TEST_CASE("combined update rate at rho_c = 1") {
  const RateVectors v = evaluate(Scenario{}, 1.0).rates;
  for (int i = 0; i < v.total.size(); ++i) CHECK(v.updates()[i] == doctest::Approx(100).epsilon(0.05));
  CHECK(minimum_event_rate_of_significance(Scenario{}) == doctest::Approx(v.updates().mean()));
}
