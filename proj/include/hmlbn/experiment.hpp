#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmlbn/config.hpp"
#include "hmlbn/sim.hpp"

namespace hmlbn {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownFigureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Header plus numeric rows, rendered with 6 significant digits.
struct CsvTable {
  std::string name;  // file stem, e.g. "fig18a"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  [[nodiscard]] std::string render() const;
};

/// "16", "17", "18a", "18b", "18c", "19" .. "25".
const std::vector<std::string>& figure_ids();

/// Goodness of fit of one simulated crossing count at one mobility level.
struct FitSummary {
  double rho_c = 0.0;
  std::string quantity;  // "C", "R" or "A"
  PmfComparison comparison;
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;
};

struct FigureOutput {
  std::vector<CsvTable> tables;
  std::vector<FitSummary> fits;  // only filled for figure 18
};

/// Tables for one figure. "18" yields 18a, 18b and 18c together so the
/// simulation runs once. Throws UnknownFigureError.
FigureOutput figure_tables(const std::string& figure_id, const ExperimentConfig& config);

/// Writes via a temporary file and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes the figure's CSVs into `out_dir`; returns the paths written.
std::vector<std::filesystem::path> run_figure(const std::string& figure_id,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir);

struct RunManifest {
  std::vector<std::filesystem::path> files;  // CSVs, manifest.json last
  std::filesystem::path manifest;
};

/// All twelve CSVs followed by manifest.json. The manifest is only written
/// once every CSV is in place.
RunManifest run_all(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Movement simulation settings derived from the experiment config at one rho_c.
SimConfig sim_config(const ExperimentConfig& config, double rho_c);

std::string library_version();

}  // namespace hmlbn
