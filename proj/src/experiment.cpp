#include "hmlbn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <boost/version.hpp>
#include <json.hpp>

#include "hmlbn/geometry.hpp"
#include "hmlbn/metrics.hpp"
#include "hmlbn/movement.hpp"
#include "hmlbn/scenario.hpp"

#ifndef HMLBN_VERSION
#define HMLBN_VERSION "unknown"
#endif

namespace hmlbn {

namespace {

constexpr double kFigure18Tail = 1e-4;
constexpr std::int64_t kFigure18MaxRows = 2000;
constexpr double kComparisonTail = 1e-12;

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<int> diameter_sweep(const ExperimentConfig& config) {
  std::vector<int> out;
  for (int d = 2; d <= config.max_diameter; ++d) out.push_back(d);
  return out;
}

CsvTable speed_table(const ExperimentConfig& config) {
  CsvTable t{"fig16", {"rho_c", "speed_kmh"}, {}};
  for (double rho : config.rho_c) {
    t.add_row({rho, estimate_speed(rho, config.scenario.cell_radius, config.scenario.mean_life)});
  }
  return t;
}

CsvTable crossing_means_table(const ExperimentConfig& config) {
  CsvTable t{"fig17", {"rho_c", "E_C", "E_R", "E_A"}, {}};
  for (double rho : config.rho_c) {
    const ScenarioResult r = evaluate(config.scenario, rho);
    t.add_row({rho, r.distributions.mean_cells, r.distributions.mean_regions,
               r.distributions.mean_areas});
  }
  return t;
}

FigureOutput crossing_pmf_tables(const ExperimentConfig& config) {
  FigureOutput out;
  const char* names[] = {"fig18a", "fig18b", "fig18c"};
  const char* quantities[] = {"C", "R", "A"};
  for (const char* name : names) {
    out.tables.push_back(CsvTable{name, {"rho_c", "k", "analytic_p", "empirical_p"}, {}});
  }

  for (double rho : config.simulation.rho_c) {
    const ScenarioResult r = evaluate(config.scenario, rho);
    const MovementSample sample = simulate_movement(sim_config(config, rho));
    const GeometricCount* analytic[] = {&r.distributions.cells, &r.distributions.regions,
                                        &r.distributions.areas};
    const EmpiricalPmf* empirical[] = {&sample.cells, &sample.regions, &sample.areas};

    for (std::size_t q = 0; q < 3; ++q) {
      const std::int64_t rows = std::min(analytic[q]->horizon(kFigure18Tail), kFigure18MaxRows);
      for (std::int64_t k = 0; k < rows; ++k) {
        out.tables[q].add_row({rho, static_cast<double>(k), analytic[q]->pmf(k),
                               empirical[q]->frequency(k)});
      }
      const Eigen::VectorXd pmf = analytic[q]->pmf_vector(analytic[q]->horizon(kComparisonTail));
      out.fits.push_back(FitSummary{rho, quantities[q],
                                    compare_empirical(*empirical[q], {pmf.data(), std::size_t(pmf.size())}),
                                    empirical[q]->mean(), analytic[q]->mean()});
    }
  }
  return out;
}

CsvTable link_count_table(const ExperimentConfig& config) {
  CsvTable t{"fig19", {"D", "Z_mlbn", "Z_mip1", "Z_mip2", "U_l_1", "U_l_2"}, {}};
  for (int d : diameter_sweep(config)) {
    const RoutingPenalty one = routing_penalties(d, Topology::MipOneHa, config.costs);
    const RoutingPenalty two = routing_penalties(d, Topology::MipTwoHa, config.costs);
    t.add_row({double(d), double(link_count(d, Topology::HMLBN)),
               double(link_count(d, Topology::MipOneHa)), double(link_count(d, Topology::MipTwoHa)),
               one.excess_utilization, two.excess_utilization});
  }
  return t;
}

CsvTable routing_penalty_table(const ExperimentConfig& config) {
  CsvTable t{"fig20", {"D", "delay_1ha", "delay_2ha", "loss_1ha", "loss_2ha"}, {}};
  for (int d : diameter_sweep(config)) {
    const RoutingPenalty one = routing_penalties(d, Topology::MipOneHa, config.costs);
    const RoutingPenalty two = routing_penalties(d, Topology::MipTwoHa, config.costs);
    t.add_row({double(d), one.extra_delay, two.extra_delay, one.extra_loss, two.extra_loss});
  }
  return t;
}

CsvTable handoff_intensity_table(const ExperimentConfig& config) {
  CsvTable t{"fig21", {"rho_c", "rho_h_mlbn", "rho_h_hmip", "rho_h_bmip"}, {}};
  const HandoffTimes times[] = {handoff_times(Scheme::HMLBN, config.costs),
                                handoff_times(Scheme::HMIP, config.costs),
                                handoff_times(Scheme::BMIP, config.costs)};
  for (double rho : config.rho_c) {
    const ScenarioResult r = evaluate(config.scenario, rho);
    std::vector<double> row{rho};
    for (const HandoffTimes& ht : times) {
      row.push_back(handoff_life_metrics(ht, r.distributions, r.mobility.life_rate,
                                         config.interpretation)
                        .intensity);
    }
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable event_rate_table(const ExperimentConfig& config) {
  CsvTable t{"fig22", {"rho_c", "rate_LA", "rate_IA", "rate_TA", "MERS"}, {}};
  const double mers = minimum_event_rate_of_significance(config.scenario);
  for (double rho : config.rho_c) {
    const RateVectors& v = evaluate(config.scenario, rho).rates;
    t.add_row({rho, v.local.mean(), v.intra.mean(), v.inter.mean(), mers});
  }
  return t;
}

enum class CostColumn { Delivery, Processing, Composite };

CsvTable cost_table(const ExperimentConfig& config, const char* name, CostColumn column) {
  CsvTable t{name, {"rho_c", "cost_mlbn", "cost_hmip", "cost_bmip"}, {}};
  for (double rho : config.rho_c) {
    const ScenarioResult r = evaluate(config.scenario, rho);
    std::vector<double> row{rho};
    for (Scheme s : {Scheme::HMLBN, Scheme::HMIP, Scheme::BMIP}) {
      const CostBreakdown c = update_costs(s, r.rates, config.costs);
      switch (column) {
        case CostColumn::Delivery: row.push_back(c.delivery_total().mean()); break;
        case CostColumn::Processing: row.push_back(c.processing_total().mean()); break;
        case CostColumn::Composite: row.push_back(c.composite().mean()); break;
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

nlohmann::json fit_json(const FitSummary& f) {
  return {{"rho_c", f.rho_c},
          {"quantity", f.quantity},
          {"tv_distance", f.comparison.tv_distance},
          {"chi_square", f.comparison.chi_square},
          {"degrees_of_freedom", f.comparison.degrees_of_freedom},
          {"p_value", f.comparison.p_value},
          {"empirical_mean", f.empirical_mean},
          {"analytic_mean", f.analytic_mean}};
}

}  // namespace

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header.size()) throw std::logic_error("row width does not match header");
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_value(row[i]);
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"16",  "17", "18a", "18b", "18c", "19",
                                               "20",  "21", "22",  "23",  "24",  "25"};
  return ids;
}

FigureOutput figure_tables(const std::string& id, const ExperimentConfig& config) {
  if (id == "16") return {{speed_table(config)}, {}};
  if (id == "17") return {{crossing_means_table(config)}, {}};
  if (id == "18" || id == "18a" || id == "18b" || id == "18c") {
    FigureOutput all = crossing_pmf_tables(config);
    if (id == "18") return all;
    const std::size_t which = static_cast<std::size_t>(id.back() - 'a');
    const char* quantity = which == 0 ? "C" : which == 1 ? "R" : "A";
    FigureOutput one{{all.tables[which]}, {}};
    for (const FitSummary& f : all.fits) {
      if (f.quantity == quantity) one.fits.push_back(f);
    }
    return one;
  }
  if (id == "19") return {{link_count_table(config)}, {}};
  if (id == "20") return {{routing_penalty_table(config)}, {}};
  if (id == "21") return {{handoff_intensity_table(config)}, {}};
  if (id == "22") return {{event_rate_table(config)}, {}};
  if (id == "23") return {{cost_table(config, "fig23", CostColumn::Delivery)}, {}};
  if (id == "24") return {{cost_table(config, "fig24", CostColumn::Processing)}, {}};
  if (id == "25") return {{cost_table(config, "fig25", CostColumn::Composite)}, {}};
  throw UnknownFigureError("unknown figure '" + id + "' (expected 16..25, or 18a/18b/18c)");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

namespace {

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

std::vector<std::filesystem::path> write_tables(const FigureOutput& output,
                                                const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  for (const CsvTable& t : output.tables) {
    const auto path = out_dir / (t.name + ".csv");
    write_file_atomic(path, t.render());
    written.push_back(path);
  }
  return written;
}

}  // namespace

std::vector<std::filesystem::path> run_figure(const std::string& figure_id,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir) {
  const FigureOutput output = figure_tables(figure_id, config);
  ensure_directory(out_dir);
  return write_tables(output, out_dir);
}

RunManifest run_all(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  RunManifest result;
  nlohmann::json timings = nlohmann::json::array();
  nlohmann::json fits = nlohmann::json::array();

  for (const char* id : {"16", "17", "18", "19", "20", "21", "22", "23", "24", "25"}) {
    const auto start = std::chrono::steady_clock::now();
    const FigureOutput output = figure_tables(id, config);
    const auto paths = write_tables(output, out_dir);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : paths) files.push_back(p.filename().string());
    timings.push_back({{"figure", id}, {"files", files}, {"wall_time_s", seconds}});
    for (const FitSummary& f : output.fits) fits.push_back(fit_json(f));
    result.files.insert(result.files.end(), paths.begin(), paths.end());
  }

  nlohmann::json manifest = {
      {"tool", "hmlbn"},
      {"versions",
       {{"hmlbn", library_version()},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"boost", BOOST_LIB_VERSION},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
        {"compiler", __VERSION__}}},
      {"seed", config.simulation.seed},
      {"config", to_ini(config)},
      {"figures", timings},
      {"figure18_fit", fits},
  };

  result.manifest = out_dir / "manifest.json";
  write_file_atomic(result.manifest, manifest.dump(2) + "\n");
  result.files.push_back(result.manifest);
  return result;
}

SimConfig sim_config(const ExperimentConfig& config, double rho_c) {
  SimConfig s;
  s.seed = config.simulation.seed;
  s.life_count = config.simulation.life_count;
  s.worker_count = config.simulation.worker_count;
  s.mobility = mobility_params(config.scenario.mean_life, rho_c);
  s.region = build_region(config.scenario.ring_count, config.scenario.cell_radius);
  s.area = build_area(config.scenario.regions_per_side, s.region);
  s.mode = config.simulation.mode;
  s.crossing_mode = config.scenario.mode;
  return s;
}

std::string library_version() { return HMLBN_VERSION; }

}  // namespace hmlbn
