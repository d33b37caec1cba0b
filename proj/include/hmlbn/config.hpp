#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmlbn/metrics.hpp"
#include "hmlbn/scenario.hpp"
#include "hmlbn/sim.hpp"

namespace hmlbn {

/// Parse or validation failure. `field` is "section.key" when one field is
/// at fault; `line` is set for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message, long line = 0);

  [[nodiscard]] const std::string& field() const { return field_; }
  [[nodiscard]] long line() const { return line_; }

 private:
  std::string field_;
  long line_ = 0;
};

struct SimulationSettings {
  std::uint64_t seed = 1;
  std::int64_t life_count = 100'000;
  int worker_count = 1;
  SimMode mode = SimMode::ModelFaithful;
  std::vector<double> rho_c{0.01, 0.1, 1.0, 10.0};  // mobility levels simulated for the crossing-count pmf figures
  std::int64_t hop_jumps = 1'000'000;
};

/// Everything an experiment run needs. Defaults reproduce the reference
/// numerical parameters.
struct ExperimentConfig {
  Scenario scenario;
  std::vector<double> rho_c;  // sweep grid, 0.01 .. 10 at four points per decade
  int max_diameter = 20;      // D
  CostParams costs;
  Interpretation interpretation = Interpretation::Table2Literal;
  SimulationSettings simulation;

  ExperimentConfig();

  /// Throws ConfigError naming the first violated precondition.
  void validate() const;
};

/// Flat INI text with sections [geometry], [mobility], [network], [costs],
/// [simulation] and [model]. Omitted keys keep their defaults; unknown
/// sections or keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// INI rendering of every field; parses back to the same configuration.
std::string to_ini(const ExperimentConfig& config);

}  // namespace hmlbn
