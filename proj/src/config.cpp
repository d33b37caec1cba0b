#include "hmlbn/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace hmlbn {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
  return value;
}

template <typename Int>
Int to_integer(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<double> to_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, item));
  if (out.empty()) throw ConfigError(field, "expected a comma-separated list of numbers");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(ExperimentConfig&, const std::string& name, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;

  [[nodiscard]] std::string name() const { return section + "." + key; }
};

template <typename Get>
Field real_field(std::string section, std::string key, Get ref) {
  return Field{std::move(section), std::move(key),
               [ref](ExperimentConfig& c, const std::string& n, const std::string& v) {
                 ref(c) = to_double(n, v);
               },
               [ref](const ExperimentConfig& c) {
                 return format_double(ref(const_cast<ExperimentConfig&>(c)));
               }};
}

template <typename Int, typename Get>
Field int_field(std::string section, std::string key, Get ref) {
  return Field{std::move(section), std::move(key),
               [ref](ExperimentConfig& c, const std::string& n, const std::string& v) {
                 ref(c) = to_integer<Int>(n, v);
               },
               [ref](const ExperimentConfig& c) {
                 return std::to_string(ref(const_cast<ExperimentConfig&>(c)));
               }};
}

template <typename Get>
Field list_field(std::string section, std::string key, Get ref) {
  return Field{std::move(section), std::move(key),
               [ref](ExperimentConfig& c, const std::string& n, const std::string& v) {
                 ref(c) = to_list(n, v);
               },
               [ref](const ExperimentConfig& c) {
                 return format_list(ref(const_cast<ExperimentConfig&>(c)));
               }};
}

template <typename Parse, typename Show, typename Get>
Field enum_field(std::string section, std::string key, Get ref, Parse parse, Show show) {
  return Field{std::move(section), std::move(key),
               [ref, parse](ExperimentConfig& c, const std::string& n, const std::string& v) {
                 try {
                   ref(c) = parse(trim(v));
                 } catch (const std::invalid_argument& e) {
                   throw ConfigError(n, e.what());
                 }
               },
               [ref, show](const ExperimentConfig& c) {
                 return std::string(show(ref(const_cast<ExperimentConfig&>(c))));
               }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = {
      int_field<int>("geometry", "L", [](C& c) -> auto& { return c.scenario.ring_count; }),
      real_field("geometry", "r", [](C& c) -> auto& { return c.scenario.cell_radius; }),
      int_field<int>("geometry", "M", [](C& c) -> auto& { return c.scenario.regions_per_side; }),
      int_field<int>("geometry", "J", [](C& c) -> auto& { return c.scenario.area_count; }),
      int_field<std::int64_t>("geometry", "K", [](C& c) -> auto& { return c.scenario.band; }),
      real_field("geometry", "epsilon", [](C& c) -> auto& { return c.scenario.epsilon; }),

      real_field("mobility", "T_l", [](C& c) -> auto& { return c.scenario.mean_life; }),
      list_field("mobility", "rho_c", [](C& c) -> auto& { return c.rho_c; }),
      real_field("mobility", "origination_rate",
                 [](C& c) -> auto& { return c.scenario.origination_rate; }),

      int_field<int>("network", "D", [](C& c) -> auto& { return c.max_diameter; }),
      real_field("network", "h_1", [](C& c) -> auto& { return c.costs.hops_ler_amrr; }),
      real_field("network", "h_2", [](C& c) -> auto& { return c.costs.hops_amrr_aler; }),
      real_field("network", "h_3", [](C& c) -> auto& { return c.costs.hops_amrr_amrr; }),

      real_field("costs", "R_r", [](C& c) -> auto& { return c.costs.radio_rate; }),
      real_field("costs", "d_r", [](C& c) -> auto& { return c.costs.radio_latency; }),
      real_field("costs", "R_w", [](C& c) -> auto& { return c.costs.wire_rate; }),
      real_field("costs", "d_w", [](C& c) -> auto& { return c.costs.wire_latency; }),
      real_field("costs", "s_r", [](C& c) -> auto& { return c.costs.registration_size; }),
      real_field("costs", "s_u", [](C& c) -> auto& { return c.costs.update_size; }),
      real_field("costs", "MIPS", [](C& c) -> auto& { return c.costs.mips; }),
      real_field("costs", "L_0", [](C& c) -> auto& { return c.costs.local_instructions; }),
      real_field("costs", "L_1", [](C& c) -> auto& { return c.costs.ler_instructions; }),
      real_field("costs", "L_2", [](C& c) -> auto& { return c.costs.amrr_instructions; }),
      real_field("costs", "L_3", [](C& c) -> auto& { return c.costs.aler_instructions; }),
      real_field("costs", "T_st", [](C& c) -> auto& { return c.costs.session_teardown; }),
      real_field("costs", "t_h", [](C& c) -> auto& { return c.costs.heartbeat_interval; }),
      real_field("costs", "t_o", [](C& c) -> auto& { return c.costs.heartbeat_timeout; }),
      real_field("costs", "delta", [](C& c) -> auto& { return c.costs.hop_delay; }),
      real_field("costs", "p_l", [](C& c) -> auto& { return c.costs.hop_loss; }),
      real_field("costs", "R", [](C& c) -> auto& { return c.costs.session_rate; }),
      real_field("costs", "composite_weight",
                 [](C& c) -> auto& { return c.costs.instructions_per_byte_hop; }),

      int_field<std::uint64_t>("simulation", "seed", [](C& c) -> auto& { return c.simulation.seed; }),
      int_field<std::int64_t>("simulation", "life_count",
                              [](C& c) -> auto& { return c.simulation.life_count; }),
      int_field<int>("simulation", "worker_count",
                     [](C& c) -> auto& { return c.simulation.worker_count; }),
      enum_field("simulation", "mode", [](C& c) -> auto& { return c.simulation.mode; },
                 parse_sim_mode, [](SimMode m) { return to_string(m); }),
      list_field("simulation", "rho_c", [](C& c) -> auto& { return c.simulation.rho_c; }),
      int_field<std::int64_t>("simulation", "hop_jumps",
                              [](C& c) -> auto& { return c.simulation.hop_jumps; }),

      enum_field("model", "crossing_mode", [](C& c) -> auto& { return c.scenario.mode; },
                 parse_crossing_mode, [](CrossingMode m) { return to_string(m); }),
      enum_field("model", "interpretation", [](C& c) -> auto& { return c.interpretation; },
                 parse_interpretation, [](Interpretation i) { return to_string(i); }),
  };
  return table;
}

void check(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, long line)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? message : field + ": " + message)),
      field_(std::move(field)),
      line_(line) {}

ExperimentConfig::ExperimentConfig() {
  for (int k = 0; k <= 12; ++k) rho_c.push_back(std::pow(10.0, -2.0 + 0.25 * k));
  // Keep the decade points exact so they match the simulated levels.
  for (int k = 0; k <= 12; k += 4) rho_c[static_cast<std::size_t>(k)] = std::pow(10.0, -2 + k / 4);
}

void ExperimentConfig::validate() const {
  const Scenario& s = scenario;
  check(s.ring_count >= 1, "geometry.L", "must be >= 1");
  check(s.cell_radius > 0, "geometry.r", "must be > 0");
  check(s.regions_per_side >= 2, "geometry.M", "must be >= 2");
  check(s.area_count >= 2, "geometry.J", "must be >= 2");
  check(s.band >= 0, "geometry.K", "must be >= 0 (0 derives K from epsilon)");
  check(s.epsilon > 0 && s.epsilon < 1, "geometry.epsilon", "must lie in (0, 1)");
  check(s.mean_life > 0, "mobility.T_l", "must be > 0");
  check(!rho_c.empty(), "mobility.rho_c", "must not be empty");
  for (double r : rho_c) check(r > 0, "mobility.rho_c", "every value must be > 0");
  check(s.origination_rate >= 0, "mobility.origination_rate", "must be >= 0");
  check(max_diameter >= 2, "network.D", "must be >= 2");
  check(costs.hops_ler_amrr > 0, "network.h_1", "must be > 0");
  check(costs.hops_amrr_aler > 0, "network.h_2", "must be > 0");
  check(costs.hops_amrr_amrr > 0, "network.h_3", "must be > 0");
  try {
    costs.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError("costs", e.what());
  }
  check(simulation.life_count >= 1, "simulation.life_count", "must be >= 1");
  check(simulation.worker_count >= 1, "simulation.worker_count", "must be >= 1");
  check(simulation.hop_jumps >= 1, "simulation.hop_jumps", "must be >= 1");
  check(!simulation.rho_c.empty(), "simulation.rho_c", "must not be empty");
  for (double r : simulation.rho_c) check(r > 0, "simulation.rho_c", "every value must be > 0");

  // Dry-run the analytic chain so model-level preconditions surface before any output.
  auto dry_run = [this](const std::vector<double>& levels, const char* field) {
    for (double r : levels) {
      try {
        (void)evaluate(scenario, r);
      } catch (const std::exception& e) {
        throw ConfigError(field, "rho_c = " + format_double(r) + ": " + e.what());
      }
    }
  };
  dry_run(rho_c, "mobility.rho_c");
  dry_run(simulation.rho_c, "simulation.rho_c");
}

ExperimentConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", e.message(), static_cast<long>(e.line()));
  }

  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section, "key outside of any section");
    }
    const auto& table = fields();
    if (std::none_of(table.begin(), table.end(),
                     [&](const Field& f) { return f.section == section; })) {
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      const std::string name = section + "." + key;
      const auto it = std::find_if(table.begin(), table.end(),
                                   [&](const Field& f) { return f.name() == name; });
      if (it == table.end()) throw ConfigError(name, "unknown key");
      it->set(config, name, value.data());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read configuration file '" + path.string() + "'");
  return parse_config(in);
}

std::string to_ini(const ExperimentConfig& config) {
  std::string out;
  std::string current;
  for (const Field& f : fields()) {
    if (f.section != current) {
      if (!current.empty()) out += "\n";
      out += "[" + f.section + "]\n";
      current = f.section;
    }
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

}  // namespace hmlbn
