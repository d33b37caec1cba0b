// Command-line harness: figure CSVs, full runs, simulation reports, config checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hmlbn/config.hpp"
#include "hmlbn/experiment.hpp"
#include "hmlbn/scenario.hpp"
#include "hmlbn/sim.hpp"
#include "hmlbn/traffic.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kConfig = 3, kIo = 4, kNumeric = 5 };

struct Options {
  std::string config_path;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string interpretation;
  std::string figure;
  std::vector<double> rho;
  std::optional<int> workers;
};

hmlbn::ExperimentConfig load(const Options& o) {
  hmlbn::ExperimentConfig c =
      o.config_path.empty() ? hmlbn::ExperimentConfig{} : hmlbn::parse_config_file(o.config_path);
  try {
    if (o.seed) c.simulation.seed = *o.seed;
    if (o.workers) c.simulation.worker_count = *o.workers;
    if (!o.mode.empty()) c.scenario.mode = hmlbn::parse_crossing_mode(o.mode);
    if (!o.interpretation.empty()) c.interpretation = hmlbn::parse_interpretation(o.interpretation);
  } catch (const std::invalid_argument& e) {
    throw hmlbn::ConfigError("command line", e.what());
  }
  c.validate();
  return c;
}

std::string rho_tag(double rho) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rho);
  return buf;
}

int simulate(const hmlbn::ExperimentConfig& config, const Options& o) {
  const std::vector<double> levels = o.rho.empty() ? config.simulation.rho_c : o.rho;
  std::filesystem::create_directories(o.out);
  for (double rho : levels) {
    if (!(rho > 0)) throw hmlbn::ConfigError("--rho", "every value must be > 0");
    const hmlbn::ScenarioResult r = hmlbn::evaluate(config.scenario, rho);
    const hmlbn::MovementSample s = hmlbn::simulate_movement(hmlbn::sim_config(config, rho));

    std::ostringstream records;
    hmlbn::write_records(records, s.records);
    const auto path = std::filesystem::path(o.out) / ("records_rho_" + rho_tag(rho) + ".txt");
    hmlbn::write_file_atomic(path, records.str());

    std::printf("rho_c=%g mode=%s lives=%lld records=%s\n", rho,
                std::string(hmlbn::to_string(config.simulation.mode)).c_str(),
                static_cast<long long>(s.records.size()), path.string().c_str());
    const struct {
      const char* name;
      const hmlbn::EmpiricalPmf& emp;
      const hmlbn::GeometricCount& model;
    } rows[] = {{"C", s.cells, r.distributions.cells},
                {"R", s.regions, r.distributions.regions},
                {"A", s.areas, r.distributions.areas}};
    for (const auto& row : rows) {
      const Eigen::VectorXd pmf = row.model.pmf_vector(row.model.horizon());
      const auto cmp = hmlbn::compare_empirical(row.emp, {pmf.data(), std::size_t(pmf.size())});
      std::printf("  %s mean sim=%.6g model=%.6g tv=%.4g chi2=%.4g dof=%d p=%.4g\n", row.name,
                  row.emp.mean(), row.model.mean(), cmp.tv_distance, cmp.chi_square,
                  cmp.degrees_of_freedom, cmp.p_value);
    }
    std::printf("  cell survival sim=%.6g model p_c=%.6g\n", s.cell_survival, r.mobility.p_c);
    std::printf("  region exit per cell step sim=%.6g model p_sr=%.6g\n",
                s.region_exit_per_cell_step, r.crossing.p_sr);
    std::printf("  area exit per region step sim=%.6g model p_sa=%.6g\n",
                s.area_exit_per_region_step, r.crossing.p_sa);
  }

  const int d = config.max_diameter;
  const hmlbn::EmpiricalPmf hops =
      hmlbn::simulate_hops(config.simulation.seed, config.simulation.hop_jumps, d, false);
  const hmlbn::HopCountModel model = hmlbn::hop_count_model(d);
  const auto cmp = hmlbn::compare_empirical(
      hops, {model.stationary.data(), std::size_t(model.stationary.size())});
  std::printf("hops D=%d mean sim=%.6g model=%.6g tv=%.4g\n", d, hops.mean(), model.mean(),
              cmp.tv_distance);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobility management model: figure data, simulation and config checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "INI configuration file");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--seed", o.seed, "Simulation seed");
  app.add_option("--mode", o.mode, "Crossing probabilities: exact | paper-approx");
  app.add_option("--interpretation", o.interpretation, "table2-literal | figure-match");
  app.add_option("--workers", o.workers, "Simulation worker threads");
  app.set_version_flag("--version", hmlbn::library_version());

  auto* figure = app.add_subcommand("figure", "Write the CSV for one figure");
  figure->add_option("id", o.figure, "16..25, or 18a/18b/18c")->required();
  auto* all = app.add_subcommand("all", "Write every figure CSV and a run manifest");
  auto* sim = app.add_subcommand("simulate", "Run the movement and hop simulators");
  sim->add_option("--rho", o.rho, "Mobility levels (default: simulation.rho_c)")->delimiter(',');
  auto* check = app.add_subcommand("validate-config", "Parse and validate the configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const hmlbn::ExperimentConfig config = load(o);
    if (*check) {
      std::cout << hmlbn::to_ini(config);
      return kOk;
    }
    if (*figure) {
      for (const auto& p : hmlbn::run_figure(o.figure, config, o.out)) {
        std::cout << p.string() << '\n';
      }
      return kOk;
    }
    if (*all) {
      const auto manifest = hmlbn::run_all(config, o.out);
      for (const auto& p : manifest.files) std::cout << p.string() << '\n';
      return kOk;
    }
    if (*sim) return simulate(config, o);
  } catch (const hmlbn::UnknownFigureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const hmlbn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const hmlbn::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
