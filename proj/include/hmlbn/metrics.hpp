#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "hmlbn/movement.hpp"
#include "hmlbn/traffic.hpp"

namespace hmlbn {

enum class Scheme { HMLBN, HMIP, BMIP };

/// Forwarding topology for the link-count comparison.
enum class Topology { HMLBN, MipOneHa, MipTwoHa };

/// How the MIP lifetime hand-off expectations are read. Table2Literal uses the
/// area-internal expectations E[M_c^I], E[M_r^I]; FigureMatch uses the
/// unscaled E[M_c], E[M_r] for the MIP schemes.
enum class Interpretation { Table2Literal, FigureMatch };

std::string_view to_string(Scheme scheme);
Interpretation parse_interpretation(std::string_view text);
std::string_view to_string(Interpretation interpretation);

/// Hand-off types in the order of the H-MLBN hierarchy. For the MIP schemes
/// they map onto Intra-RFA / Inter-RFA / Inter-HA (H-MIP) and
/// Intra-HA / Intra-HA / Inter-HA (B-MIP).
enum class HandoffKind { Local = 0, Intra = 1, Inter = 2 };

struct CostParams {
  // Radio leg; carried for completeness, no closed form uses it.
  double radio_rate = 1e6;       // R_r, bits/s
  double radio_latency = 0.010;  // d_r, s

  double wire_rate = 100e6;      // R_w, bits/s
  double wire_latency = 0.002;   // d_w, s
  double registration_size = 256;  // s_r, bytes
  double update_size = 512;        // s_u, bytes
  double hops_ler_amrr = 4;    // h_1
  double hops_amrr_aler = 2;   // h_2
  double hops_amrr_amrr = 6;   // h_3
  double mips = 1e6;           // instructions/s
  double local_instructions = 10;   // L_0
  double ler_instructions = 100;    // L_1
  double amrr_instructions = 100;   // L_2
  double aler_instructions = 100;   // L_3
  double session_teardown = 1.0;    // T_st, s
  double heartbeat_interval = 10;   // t_h, s
  double heartbeat_timeout = 3;     // t_o, s
  double hop_delay = 0.005;         // delta, s
  double hop_loss = 0.005;          // p_l
  double session_rate = 64e3;       // R, bits/s
  double instructions_per_byte_hop = 1.0;  // composite cost weight

  /// Throws std::domain_error naming the first violated constraint.
  void validate() const;

  /// Time to push one update message over one wireline link, s_u / R_w + d_w.
  [[nodiscard]] double update_link_time() const;

  /// The delivery cost elements C_0 .. C_3 in byte-hops: registration over the
  /// radio leg, and one update over h_1, h_2 and h_3 links.
  [[nodiscard]] std::array<double, 4> delivery_elements() const;
};

int link_count(int max_diameter, Topology topology);

struct RoutingPenalty {
  int extra_links = 0;              // Z_mip - Z_mlbn
  double excess_utilization = 0.0;  // bits/s
  double extra_delay = 0.0;         // s
  double extra_loss = 0.0;          // probability
};

RoutingPenalty routing_penalties(int max_diameter, Topology topology, const CostParams& params);

/// Mean residual time of a uniform heartbeat gap U[t_h - t_o, t_h + t_o].
double handoff_detection_time(double heartbeat_interval, double heartbeat_timeout);

struct HandoffTimes {
  Scheme scheme = Scheme::HMLBN;
  double detection = 0.0;       // T_hd
  double reregistration = 0.0;  // T_rr
  std::array<double, 3> network_update{};  // T_nu per HandoffKind (H-MLBN only)
  std::array<double, 3> handoff{};         // T_ho per HandoffKind

  [[nodiscard]] double of(HandoffKind kind) const {
    return handoff[static_cast<std::size_t>(kind)];
  }
};

HandoffTimes handoff_times(Scheme scheme, const CostParams& params);

struct HandoffReport {
  HandoffTimes times;
  Interpretation interpretation = Interpretation::Table2Literal;
  std::array<double, 3> expected_count{};  // expected hand-offs per life per HandoffKind
  double lifetime_handoff_time = 0.0;      // T_ho^l, s
  double intensity = 0.0;                  // rho_h = lambda T_ho^l
};

HandoffReport handoff_life_metrics(const HandoffTimes& times,
                                   const CrossingDistributions& distributions, double life_rate,
                                   Interpretation interpretation);

/// Control-plane update costs per area. Columns are the hand-off kinds
/// (local, intra-area, inter-area); rows are areas.
struct CostBreakdown {
  Scheme scheme = Scheme::HMLBN;
  Eigen::MatrixX3d delivery;    // byte-hops per unit time
  Eigen::MatrixX3d processing;  // instructions per unit time
  double instructions_per_byte_hop = 1.0;

  [[nodiscard]] Eigen::VectorXd delivery_total() const { return delivery.rowwise().sum(); }
  [[nodiscard]] Eigen::VectorXd processing_total() const { return processing.rowwise().sum(); }
  /// Delivery plus processing, in byte-hop units.
  [[nodiscard]] Eigen::VectorXd composite() const {
    return delivery_total() + processing_total() / instructions_per_byte_hop;
  }
};

CostBreakdown update_costs(Scheme scheme, const RateVectors& rates, const CostParams& params);

/// H-MLBN registration and update costs rebuilt from the message paths of the
/// intra- and inter-area network updates. Kept separate from the MIP costs so
/// the reconstruction can be swapped without touching the rest.
CostBreakdown hmlbn_update_costs(const RateVectors& rates, const CostParams& params);

}  // namespace hmlbn
