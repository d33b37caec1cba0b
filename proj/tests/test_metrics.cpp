#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hmlbn/metrics.hpp"
#include "hmlbn/scenario.hpp"

using namespace hmlbn;

namespace {

// Mean residual life of a renewal process with gaps ~ U[t_h - t_o, t_h + t_o],
// integrated from the survival function: E[residual] = int t S(t) dt / E[X].
double residual_by_quadrature(double t_h, double t_o) {
  using boost::math::quadrature::gauss_kronrod;
  const double lo = t_h - t_o;
  const double hi = t_h + t_o;
  auto survival = [&](double t) {
    if (t <= lo) return 1.0;
    if (t >= hi) return 0.0;
    return (hi - t) / (hi - lo);
  };
  auto weighted = [&](double t) { return t * survival(t); };
  double integral = gauss_kronrod<double, 31>::integrate(weighted, 0.0, lo, 0, 1e-14);
  if (hi > lo) integral += gauss_kronrod<double, 31>::integrate(weighted, lo, hi, 0, 1e-14);
  return integral / t_h;
}

}  // namespace

TEST_CASE("link counts") {
  CHECK(link_count(10, Topology::HMLBN) == 4);
  CHECK(link_count(10, Topology::MipOneHa) == 10);
  CHECK(link_count(10, Topology::MipTwoHa) == 16);
  CHECK(link_count(2, Topology::HMLBN) == 0);
  CHECK(link_count(2, Topology::MipOneHa) == 2);
  CHECK(link_count(2, Topology::MipTwoHa) == 4);
  for (int d = 2; d <= 100; ++d) {
    CHECK(link_count(d, Topology::HMLBN) <= link_count(d, Topology::MipOneHa));
    CHECK(link_count(d, Topology::MipOneHa) <= link_count(d, Topology::MipTwoHa));
    CHECK(link_count(d, Topology::HMLBN) == static_cast<int>(std::ceil(d / 2.0 - 1)));
    CHECK(link_count(d, Topology::MipTwoHa) == static_cast<int>(std::ceil((3 * d + 1) / 2.0)));
  }
  CHECK_THROWS(link_count(1, Topology::HMLBN));
}

TEST_CASE("triangular routing penalties") {
  const CostParams p;
  const RoutingPenalty one = routing_penalties(10, Topology::MipOneHa, p);
  const RoutingPenalty two = routing_penalties(10, Topology::MipTwoHa, p);
  CHECK(one.extra_links == 6);
  CHECK(two.extra_links == 12);
  CHECK(one.extra_delay == doctest::Approx(0.030));
  CHECK(two.extra_delay == doctest::Approx(0.060));
  CHECK(one.extra_loss == doctest::Approx(1 - std::pow(0.995, 6)));
  CHECK(two.extra_loss == doctest::Approx(1 - std::pow(0.995, 12)));
  CHECK(one.extra_loss == doctest::Approx(0.0296).epsilon(2e-3));
  CHECK(two.extra_loss == doctest::Approx(0.0584).epsilon(2e-3));
  CHECK(one.excess_utilization == doctest::Approx(384e3));
  CHECK_THROWS_AS(routing_penalties(10, Topology::HMLBN, p), std::invalid_argument);
}

TEST_CASE("hand-off detection time") {
  CHECK(handoff_detection_time(10, 3) == doctest::Approx(5.15));
  CHECK(handoff_detection_time(7, 0) == doctest::Approx(3.5));
  CHECK(handoff_detection_time(2, 1) == doctest::Approx(1.0833333333));
  CHECK_THROWS(handoff_detection_time(2, 2));
  CHECK_THROWS(handoff_detection_time(0, 0));
}

TEST_CASE("detection time equals mean residual life by quadrature") {
  for (double t_h : {0.5, 1.0, 2.0, 10.0, 30.0}) {
    for (double frac : {0.0, 0.1, 0.3, 0.5, 0.9, 0.999}) {
      const double t_o = frac * t_h;
      CHECK(std::abs(handoff_detection_time(t_h, t_o) - residual_by_quadrature(t_h, t_o)) < 1e-9);
    }
  }
}

TEST_CASE("hand-off times with reference parameters") {
  const CostParams p;
  CHECK(p.update_link_time() == doctest::Approx(40.96e-6 + 0.002));

  const HandoffTimes m = handoff_times(Scheme::HMLBN, p);
  CHECK(m.detection == doctest::Approx(5.15));
  CHECK(m.reregistration == doctest::Approx(10e-6));
  CHECK(m.network_update[0] == 0.0);
  CHECK(m.network_update[1] == doctest::Approx(0.01254576).epsilon(1e-9));
  CHECK(m.network_update[2] == doctest::Approx(0.05794688).epsilon(1e-9));
  CHECK(m.of(HandoffKind::Local) == doctest::Approx(10e-6));
  CHECK(m.of(HandoffKind::Intra) == doctest::Approx(5.15 + 10e-6 + 0.01254576));

  const HandoffTimes h = handoff_times(Scheme::HMIP, p);
  CHECK(h.of(HandoffKind::Local) == doctest::Approx(5.15856384).epsilon(1e-9));

  const HandoffTimes b = handoff_times(Scheme::BMIP, p);
  CHECK(b.of(HandoffKind::Local) == doctest::Approx(5.16673).epsilon(1e-6));
  CHECK(b.of(HandoffKind::Inter) == doctest::Approx(b.of(HandoffKind::Intra) + 2.0));

  CostParams no_teardown;
  no_teardown.session_teardown = 0;
  const HandoffTimes b0 = handoff_times(Scheme::BMIP, no_teardown);
  CHECK(b0.of(HandoffKind::Inter) == b0.of(HandoffKind::Intra));
}

TEST_CASE("hand-off intensity") {
  const ScenarioResult r = evaluate(Scenario{}, 0.01);
  const CostParams p;
  const double lambda = r.mobility.life_rate;

  const HandoffReport m = handoff_life_metrics(handoff_times(Scheme::HMLBN, p), r.distributions,
                                               lambda, Interpretation::Table2Literal);
  CHECK(m.intensity == doctest::Approx(0.0435).epsilon(0.01));
  CHECK(m.intensity == doctest::Approx(lambda * m.lifetime_handoff_time));

  const HandoffReport b = handoff_life_metrics(handoff_times(Scheme::BMIP, p), r.distributions,
                                               lambda, Interpretation::FigureMatch);
  CHECK(b.intensity == doctest::Approx(0.144).epsilon(0.01));
  CHECK(b.expected_count[0] == doctest::Approx(r.distributions.mean_local));

  // H-MLBN ignores the interpretation switch.
  const HandoffReport m2 = handoff_life_metrics(handoff_times(Scheme::HMLBN, p), r.distributions,
                                                lambda, Interpretation::FigureMatch);
  CHECK(m2.intensity == m.intensity);

  const HandoffReport none = handoff_life_metrics(handoff_times(Scheme::HMIP, p), r.distributions,
                                                  0.0, Interpretation::Table2Literal);
  CHECK(none.intensity == 0.0);
  CHECK(parse_interpretation("figure-match") == Interpretation::FigureMatch);
  CHECK_THROWS_AS(parse_interpretation("literal"), std::invalid_argument);
}

TEST_CASE("hand-off intensity ordering across mobility levels") {
  const CostParams p;
  for (double rho : {0.01, 0.1, 1.0, 10.0}) {
    const ScenarioResult r = evaluate(Scenario{}, rho);
    for (Interpretation in : {Interpretation::Table2Literal, Interpretation::FigureMatch}) {
      auto rho_h = [&](Scheme s) {
        return handoff_life_metrics(handoff_times(s, p), r.distributions, r.mobility.life_rate, in)
            .intensity;
      };
      CHECK(rho_h(Scheme::HMLBN) < rho_h(Scheme::HMIP));
      CHECK(rho_h(Scheme::HMLBN) < rho_h(Scheme::BMIP));
    }
  }
}

TEST_CASE("per-event delivery coefficients of the MIP schemes") {
  const CostParams p;
  RateVectors unit;
  unit.origination = Eigen::VectorXd::Zero(1);
  unit.total = Eigen::VectorXd::Zero(1);
  unit.local = Eigen::VectorXd::Ones(1);
  unit.intra = Eigen::VectorXd::Zero(1);
  unit.inter = Eigen::VectorXd::Zero(1);
  CHECK(update_costs(Scheme::BMIP, unit, p).delivery(0, 0) == doctest::Approx(4608));

  RateVectors born = unit;
  born.local.setZero();
  born.origination.setOnes();
  born.total.setOnes();
  CHECK(update_costs(Scheme::HMIP, born, p).delivery(0, 0) == doctest::Approx(4608));
}

TEST_CASE("costs are linear in the rates") {
  const ScenarioResult r = evaluate(Scenario{}, 0.1);
  const CostParams p;
  RateVectors zero = r.rates;
  for (Eigen::VectorXd* v : {&zero.origination, &zero.total, &zero.local, &zero.intra, &zero.inter}) {
    v->setZero();
  }
  RateVectors doubled = r.rates;
  for (Eigen::VectorXd* v :
       {&doubled.origination, &doubled.total, &doubled.local, &doubled.intra, &doubled.inter}) {
    *v *= 2;
  }
  for (Scheme s : {Scheme::HMLBN, Scheme::HMIP, Scheme::BMIP}) {
    const CostBreakdown z = update_costs(s, zero, p);
    CHECK(z.delivery.isZero());
    CHECK(z.processing.isZero());
    const CostBreakdown c = update_costs(s, r.rates, p);
    CHECK((c.delivery.array() >= 0).all());
    CHECK((c.processing.array() >= 0).all());
    CHECK(update_costs(s, doubled, p).delivery.isApprox(2 * c.delivery));
    CHECK(c.composite().isApprox(c.delivery_total() + c.processing_total() / p.instructions_per_byte_hop));
  }
  CHECK(update_costs(Scheme::BMIP, r.rates, p).delivery.col(1).isZero());
}

TEST_CASE("H-MLBN costs stay below both MIP schemes") {
  const CostParams p;
  for (double rho : {0.01, 0.1, 1.0, 10.0}) {
    const RateVectors v = evaluate(Scenario{}, rho).rates;
    const CostBreakdown m = update_costs(Scheme::HMLBN, v, p);
    for (Scheme s : {Scheme::HMIP, Scheme::BMIP}) {
      const CostBreakdown o = update_costs(s, v, p);
      CHECK((m.delivery_total().array() < o.delivery_total().array()).all());
      CHECK((m.processing_total().array() < o.processing_total().array()).all());
      CHECK((m.composite().array() < o.composite().array()).all());
    }
  }
}

TEST_CASE("cost parameter validation") {
  CostParams p;
  CHECK_NOTHROW(p.validate());
  p.heartbeat_timeout = 12;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = CostParams{};
  p.hop_loss = 1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = CostParams{};
  p.session_teardown = 0;
  p.heartbeat_timeout = 0;
  CHECK_NOTHROW(p.validate());
}
