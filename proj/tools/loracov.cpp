// loracov: uplink outage and coverage of a single-gateway LoRa network,
// analytic and Monte Carlo. Exit codes: 0 success, 1 usage error,
// 2 numerical failure, 3 I/O failure.

#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lora/commands.hpp"
#include "lora/quadrature.hpp"
#include "lora/scenario.hpp"

namespace {

struct CommandSetup {
  CLI::App* app = nullptr;
  std::string config_path;
  // every scenario key is also a flag of the same name; values are funneled
  // through the same parser as config-file lines
  std::vector<std::pair<std::string, CLI::Option*>> keyed;
};

void add_scenario_options(CLI::App* cmd, CommandSetup& setup) {
  setup.app = cmd;
  cmd->add_option("--config", setup.config_path, "scenario file: 'key = value' lines, '#' comments");

  const auto opt = [&](const std::string& key, const std::string& desc) {
    setup.keyed.emplace_back(key, cmd->add_option("--" + key, desc));
  };
  opt("radius_km", "deployment disk radius R");
  opt("mean_devices", "expected device count");
  opt("duty_cycle", "transmit probability p0 per device");
  opt("path_loss_exponent", "eta (2.7 sub-urban, 4 urban)");
  opt("tx_power_dbm", "device transmit power P1");
  opt("noise_figure_db", "receiver noise figure NF");
  opt("bandwidth_hz", "channel bandwidth");
  opt("carrier_freq_hz", "carrier frequency");
  opt("sf_boundaries", "six comma-separated SF range boundaries l0..l5 in km");
  opt("trials", "Monte Carlo trials");
  opt("seed", "Monte Carlo seed");
  opt("d1_grid", "explicit comma-separated probe distances in km");
  opt("d1_min", "generated grid start");
  opt("d1_max", "generated grid end (0 = radius)");
  opt("d1_points", "generated grid size");
  opt("nbar_sweep", "comma-separated mean device counts for sweep");
  opt("output_path", "CSV destination (empty = stdout)");
  opt("threads", "Monte Carlo worker threads (0 = hardware)");
  opt("quad_abs_tol", "quadrature absolute tolerance");
  opt("quad_rel_tol", "quadrature relative tolerance");
  opt("quad_max_subdivisions", "quadrature subdivision limit");

  setup.keyed.emplace_back(
      "output_path", cmd->add_option("--out", "CSV destination (alias for --output_path)"));
  setup.keyed.emplace_back(
      "mean_devices", cmd->add_option("--nbar", "expected device count (alias for --mean_devices)"));
  setup.keyed.emplace_back("disk",
                           cmd->add_flag("--disk", "simulate: disk-averaged coverage instead of "
                                                   "the per-distance grid"));
  setup.keyed.emplace_back("with_mc",
                           cmd->add_flag("--mc", "sweep: add Monte Carlo estimate columns"));
}

lora::ScenarioFile build_scenario(const CommandSetup& setup) {
  lora::ScenarioFile sc;
  if (!setup.config_path.empty()) sc = lora::load_scenario(setup.config_path);
  for (const auto& [key, option] : setup.keyed) {
    if (option->count() == 0) continue;
    const std::string value =
        option->results().empty() ? std::string("true") : option->results().back();
    lora::apply_key(sc, key, value);
  }
  lora::validate(sc.cfg);
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-gateway LoRa uplink outage/coverage: analytic closed forms and "
               "quadrature cross-validated by Monte Carlo simulation"};
  app.require_subcommand(1);

  CommandSetup analyze, simulate, sweep, table;
  add_scenario_options(app.add_subcommand("analyze", "analytic h1/q1/joint curves over the "
                                                     "d1 grid (CSV)"),
                       analyze);
  add_scenario_options(app.add_subcommand("simulate", "Monte Carlo estimates with 95% "
                                                      "confidence intervals (CSV)"),
                       simulate);
  add_scenario_options(app.add_subcommand("sweep", "coverage vs mean device count, with the "
                                                   "scalability crossover (CSV + summary)"),
                       sweep);
  add_scenario_options(app.add_subcommand("table", "active SF table and derived quantities"),
                       table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const CommandSetup* active = nullptr;
  std::string name;
  for (const CommandSetup* setup : {&analyze, &simulate, &sweep, &table}) {
    if (setup->app->parsed()) {
      active = setup;
      name = setup->app->get_name();
    }
  }

  try {
    return lora::dispatch(name, build_scenario(*active));
  } catch (const lora::QuadratureError& e) {
    std::cerr << "loracov: numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "loracov: I/O failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "loracov: " << e.what() << '\n';
    return 1;
  }
}
