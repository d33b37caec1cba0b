#include "hmlbn/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hmlbn {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(std::string("cost parameter out of range: ") + what);
}

constexpr std::size_t idx(HandoffKind k) { return static_cast<std::size_t>(k); }

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::HMLBN: return "H-MLBN";
    case Scheme::HMIP: return "H-MIP";
    case Scheme::BMIP: return "B-MIP";
  }
  return "?";
}

Interpretation parse_interpretation(std::string_view text) {
  if (text == "table2-literal") return Interpretation::Table2Literal;
  if (text == "figure-match") return Interpretation::FigureMatch;
  throw std::invalid_argument("unknown interpretation '" + std::string(text) +
                              "' (expected table2-literal or figure-match)");
}

std::string_view to_string(Interpretation interpretation) {
  return interpretation == Interpretation::FigureMatch ? "figure-match" : "table2-literal";
}

void CostParams::validate() const {
  require(radio_rate > 0, "R_r must be > 0");
  require(radio_latency > 0, "d_r must be > 0");
  require(wire_rate > 0, "R_w must be > 0");
  require(wire_latency > 0, "d_w must be > 0");
  require(registration_size > 0, "s_r must be > 0");
  require(update_size > 0, "s_u must be > 0");
  require(hops_ler_amrr > 0, "h_1 must be > 0");
  require(hops_amrr_aler > 0, "h_2 must be > 0");
  require(hops_amrr_amrr > 0, "h_3 must be > 0");
  require(mips > 0, "MIPS must be > 0");
  require(local_instructions > 0, "L_0 must be > 0");
  require(ler_instructions > 0, "L_1 must be > 0");
  require(amrr_instructions > 0, "L_2 must be > 0");
  require(aler_instructions > 0, "L_3 must be > 0");
  require(session_teardown >= 0, "T_st must be >= 0");
  require(heartbeat_interval > 0, "t_h must be > 0");
  require(heartbeat_timeout >= 0, "t_o must be >= 0");
  require(heartbeat_timeout < heartbeat_interval, "t_o must be < t_h");
  require(hop_delay > 0, "delta must be > 0");
  require(hop_loss > 0 && hop_loss < 1, "p_l must lie in (0, 1)");
  require(session_rate > 0, "R must be > 0");
  require(instructions_per_byte_hop > 0, "composite weight must be > 0");
}

double CostParams::update_link_time() const { return update_size * 8.0 / wire_rate + wire_latency; }

std::array<double, 4> CostParams::delivery_elements() const {
  return {registration_size, update_size * hops_ler_amrr, update_size * hops_amrr_aler,
          update_size * hops_amrr_amrr};
}

int link_count(int max_diameter, Topology topology) {
  if (max_diameter <= 1) throw std::domain_error("link count needs a network diameter > 1");
  const int D = max_diameter;
  switch (topology) {
    case Topology::HMLBN: return (D - 1) / 2;        // ceil(D/2 - 1)
    case Topology::MipOneHa: return D;
    case Topology::MipTwoHa: return (3 * D + 2) / 2;  // ceil((3D + 1) / 2)
  }
  throw std::invalid_argument("unknown topology");
}

RoutingPenalty routing_penalties(int max_diameter, Topology topology, const CostParams& params) {
  if (topology == Topology::HMLBN) {
    throw std::invalid_argument("routing penalties compare a MIP topology against H-MLBN");
  }
  RoutingPenalty p;
  p.extra_links = link_count(max_diameter, topology) - link_count(max_diameter, Topology::HMLBN);
  p.excess_utilization = p.extra_links * params.session_rate;
  p.extra_delay = p.extra_links * params.hop_delay;
  p.extra_loss = 1.0 - std::pow(1.0 - params.hop_loss, p.extra_links);
  return p;
}

double handoff_detection_time(double heartbeat_interval, double heartbeat_timeout) {
  if (!(heartbeat_interval > 0.0)) throw std::domain_error("t_h must be > 0");
  if (!(heartbeat_timeout >= 0.0 && heartbeat_timeout < heartbeat_interval)) {
    throw std::domain_error("t_o must satisfy 0 <= t_o < t_h");
  }
  return heartbeat_interval / 2.0 +
         heartbeat_timeout * heartbeat_timeout / (6.0 * heartbeat_interval);
}

HandoffTimes handoff_times(Scheme scheme, const CostParams& params) {
  params.validate();
  HandoffTimes t;
  t.scheme = scheme;
  t.detection = handoff_detection_time(params.heartbeat_interval, params.heartbeat_timeout);
  t.reregistration = params.local_instructions / params.mips;

  const double link = params.update_link_time();
  const double h1 = params.hops_ler_amrr;
  const double h2 = params.hops_amrr_aler;
  const double h3 = params.hops_amrr_amrr;
  const double L1 = params.ler_instructions;
  const double L2 = params.amrr_instructions;
  const double L3 = params.aler_instructions;
  const double mips = params.mips;
  const double teardown = 2.0 * params.session_teardown;

  switch (scheme) {
    case Scheme::HMLBN: {
      t.network_update[idx(HandoffKind::Local)] = 0.0;
      t.network_update[idx(HandoffKind::Intra)] = link * (h1 + h2) + (L1 + L2 + L3) / mips;
      t.network_update[idx(HandoffKind::Inter)] =
          link * (h1 + 3.0 * (h2 + h3)) + (L1 + 5.0 * L2 + 2.0 * L3) / mips;
      // Local tracking runs at the serving LER without a detection round.
      t.handoff[idx(HandoffKind::Local)] = t.reregistration;
      for (auto k : {HandoffKind::Intra, HandoffKind::Inter}) {
        t.handoff[idx(k)] = t.detection + t.reregistration + t.network_update[idx(k)];
      }
      break;
    }
    case Scheme::HMIP: {
      t.handoff[idx(HandoffKind::Local)] = t.detection + 2.0 * link * h2 + 4.0 * L1 / mips;
      t.handoff[idx(HandoffKind::Intra)] = t.detection + 4.0 * link * h2 + 6.0 * L1 / mips;
      t.handoff[idx(HandoffKind::Inter)] =
          t.detection + teardown + 4.0 * link * h2 + 6.0 * L1 / mips;
      break;
    }
    case Scheme::BMIP: {
      const double intra_ha = t.detection + 2.0 * link * h1 + 4.0 * L1 / mips;
      t.handoff[idx(HandoffKind::Local)] = intra_ha;
      t.handoff[idx(HandoffKind::Intra)] = intra_ha;
      t.handoff[idx(HandoffKind::Inter)] = teardown + intra_ha;
      break;
    }
  }
  return t;
}

HandoffReport handoff_life_metrics(const HandoffTimes& times,
                                   const CrossingDistributions& distributions, double life_rate,
                                   Interpretation interpretation) {
  if (!(life_rate >= 0.0)) throw std::domain_error("life rate must be >= 0");
  HandoffReport r;
  r.times = times;
  r.interpretation = interpretation;

  const bool unscaled = interpretation == Interpretation::FigureMatch && times.scheme != Scheme::HMLBN;
  const double local = unscaled ? distributions.mean_local : distributions.mean_local_internal;
  const double intra = unscaled ? distributions.mean_intra : distributions.mean_intra_internal;
  r.expected_count = {local, intra, distributions.mean_areas};

  for (std::size_t k = 0; k < 3; ++k) {
    r.lifetime_handoff_time += r.expected_count[k] * times.handoff[k];
  }
  r.intensity = life_rate * r.lifetime_handoff_time;
  return r;
}

CostBreakdown hmlbn_update_costs(const RateVectors& rates, const CostParams& params) {
  const double sr = params.registration_size;
  const double su = params.update_size;
  const double intra_hops = params.hops_ler_amrr + params.hops_amrr_aler;
  const double inter_hops = params.hops_ler_amrr + 3.0 * (params.hops_amrr_aler + params.hops_amrr_amrr);
  const double intra_instr = params.ler_instructions + params.amrr_instructions + params.aler_instructions;
  const double inter_instr =
      params.ler_instructions + 5.0 * params.amrr_instructions + 2.0 * params.aler_instructions;

  const Eigen::Index n = rates.total.size();
  CostBreakdown c;
  c.scheme = Scheme::HMLBN;
  c.instructions_per_byte_hop = params.instructions_per_byte_hop;
  c.delivery.resize(n, 3);
  c.processing.resize(n, 3);
  // A new life registers and is announced like an intra-area update; local
  // moves only re-register with the serving LER.
  c.delivery.col(0) = 2.0 * sr * (rates.origination + rates.local) + su * intra_hops * rates.origination;
  c.delivery.col(1) = (2.0 * sr + su * intra_hops) * rates.intra;
  c.delivery.col(2) = (2.0 * sr + su * inter_hops) * rates.inter;
  c.processing.col(0) = intra_instr * rates.origination + params.local_instructions * rates.local;
  c.processing.col(1) = intra_instr * rates.intra;
  c.processing.col(2) = inter_instr * rates.inter;
  return c;
}

CostBreakdown update_costs(Scheme scheme, const RateVectors& rates, const CostParams& params) {
  params.validate();
  const Eigen::Index n = rates.total.size();
  if (rates.origination.size() != n || rates.local.size() != n || rates.intra.size() != n ||
      rates.inter.size() != n) {
    throw std::invalid_argument("rate vectors have mismatched dimensions");
  }
  if (scheme == Scheme::HMLBN) return hmlbn_update_costs(rates, params);

  const double sr = params.registration_size;
  const double su = params.update_size;
  const double L1 = params.ler_instructions;

  CostBreakdown c;
  c.scheme = scheme;
  c.instructions_per_byte_hop = params.instructions_per_byte_hop;
  c.delivery = Eigen::MatrixX3d::Zero(n, 3);
  c.processing = Eigen::MatrixX3d::Zero(n, 3);
  if (scheme == Scheme::HMIP) {
    const double h2 = params.hops_amrr_aler;
    c.delivery.col(0) = 2.0 * (sr + 2.0 * su * h2) * rates.origination +
                        2.0 * (sr + su * h2) * rates.local;
    c.delivery.col(1) = 2.0 * (sr + su * h2) * rates.intra;
    c.delivery.col(2) = 2.0 * (sr + 2.0 * su * h2) * rates.inter;
    c.processing.col(0) = 2.0 * L1 * (3.0 * rates.origination + 2.0 * rates.local);
    c.processing.col(1) = 6.0 * L1 * rates.intra;
    c.processing.col(2) = 6.0 * L1 * rates.inter;
  } else {
    const double h1 = params.hops_ler_amrr;
    c.delivery.col(0) = 2.0 * (sr + su * h1) * (rates.origination + rates.local);
    c.delivery.col(2) = 2.0 * (sr + su * h1) * rates.inter;
    c.processing.col(0) = 4.0 * L1 * (rates.origination + rates.local);
    c.processing.col(2) = 4.0 * L1 * rates.inter;
  }
  return c;
}

}  // namespace hmlbn
