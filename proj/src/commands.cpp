#include "lora/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "lora/analysis.hpp"
#include "lora/montecarlo.hpp"

namespace lora {

namespace {

void write_estimate_rows(std::ostream& csv, const std::string& where,
                         const ConditionalEstimate& est) {
  const auto row = [&](const char* name, const EstimateCI& e) {
    csv << where << ',' << name << ',' << format_sig9(e.estimate) << ','
        << format_sig9(e.ci95_halfwidth) << ',' << est.trials << ',' << est.seed << '\n';
  };
  row("h1", est.h1);
  row("q1", est.q1);
  row("joint", est.joint);
}

}  // namespace

int run_analyze(const ScenarioFile& sc, std::ostream& csv) {
  int status = 0;
  csv << "d1_km,h1,q1,q1_approx,joint\n";
  for (double d : d1_grid(sc)) {
    const double h = h1(d, sc.cfg);
    const double qa = q1_approx(d, sc.cfg);
    std::string q_field, joint_field;
    try {
      const double q = q1(d, sc.cfg, sc.quad);
      q_field = format_sig9(q);
      joint_field = format_sig9(h * q);
    } catch (const QuadratureError&) {
      q_field = joint_field = "ERROR";
      status = 2;
    }
    csv << format_sig9(d) << ',' << format_sig9(h) << ',' << q_field << ','
        << format_sig9(qa) << ',' << joint_field << '\n';
  }
  return status;
}

int run_simulate(const ScenarioFile& sc, std::ostream& csv) {
  csv << "d1_km,metric,estimate,ci95,trials,seed\n";
  if (sc.disk) {
    ConditionalEstimate est;
    est.trials = sc.trials;
    est.seed = sc.seed;
    for (Metric m : {Metric::H1, Metric::Q1, Metric::Joint}) {
      const CoverageResult r = estimate_coverage(m, sc.cfg, sc.trials, sc.seed, sc.threads);
      EstimateCI& slot = m == Metric::H1 ? est.h1 : m == Metric::Q1 ? est.q1 : est.joint;
      slot.estimate = r.estimate;
      slot.ci95_halfwidth = r.ci95_halfwidth;
    }
    write_estimate_rows(csv, "disk", est);
    return 0;
  }
  for (double d : d1_grid(sc)) {
    const ConditionalEstimate est =
        estimate_conditional(d, sc.cfg, sc.trials, sc.seed, sc.threads);
    write_estimate_rows(csv, format_sig9(d), est);
  }
  return 0;
}

int run_sweep(const ScenarioFile& sc, std::ostream& csv, std::ostream& summary) {
  csv << "nbar,coverage_h1,coverage_q1,coverage_joint";
  if (sc.with_mc)
    csv << ",mc_h1,mc_h1_ci95,mc_q1,mc_q1_ci95,mc_joint,mc_joint_ci95";
  csv << '\n';

  NetworkConfig cfg = sc.cfg;
  const double cov_h1 = coverage(Metric::H1, cfg, sc.quad);
  for (double nbar : nbar_grid(sc)) {
    cfg.mean_devices = nbar;
    csv << format_sig9(nbar) << ',' << format_sig9(cov_h1) << ','
        << format_sig9(coverage(Metric::Q1, cfg, sc.quad)) << ','
        << format_sig9(coverage(Metric::Joint, cfg, sc.quad));
    if (sc.with_mc) {
      for (Metric m : {Metric::H1, Metric::Q1, Metric::Joint}) {
        const CoverageResult r = estimate_coverage(m, cfg, sc.trials, sc.seed, sc.threads);
        csv << ',' << format_sig9(r.estimate) << ',' << format_sig9(r.ci95_halfwidth);
      }
    }
    csv << '\n';
  }

  // Scalability crossover: coverage[Q1] is strictly decreasing in nbar while
  // coverage[H1] is density-independent, so the crossing is unique.
  const auto margin = [&](double nbar) {
    cfg.mean_devices = nbar;
    return coverage(Metric::Q1, cfg, sc.quad) - cov_h1;
  };
  double lo = 1.0;
  double crossover;
  if (margin(lo) <= 0) {
    crossover = lo;
  } else {
    double hi = 2000.0;
    while (margin(hi) > 0 && hi < 1e6) hi *= 2;
    while (hi - lo > 0.5) {
      const double mid = 0.5 * (lo + hi);
      (margin(mid) > 0 ? lo : hi) = mid;
    }
    crossover = 0.5 * (lo + hi);
  }
  summary << "coverage_h1 = " << format_sig9(cov_h1) << '\n';
  summary << "crossover_nbar = " << format_sig9(crossover)
          << "  # coverage[Q1] falls below coverage[H1] here (+/-0.5 devices)\n";
  return 0;
}

int run_table(const ScenarioFile& sc, std::ostream& out) {
  const NetworkConfig& cfg = sc.cfg;
  char buf[160];
  out << "SF table (25-byte message)\n";
  out << "  SF  bitrate_kbps  airtime_ms  tx_per_hour  sensitivity_dbm  snr_threshold_db"
         "      annulus_km\n";
  for (const SfParams& row : cfg.sf_table) {
    const Annulus ann = annulus_for_sf(row, cfg);
    const bool last = row.annulus_outer_km >= cfg.radius_km;
    std::snprintf(buf, sizeof buf,
                  "  %2d  %12.2f  %10.1f  %11.0f  %15.1f  %16.1f  [%5.2f, %5.2f%c%s\n",
                  row.sf, row.bitrate_kbps, row.airtime_ms, row.transmits_per_hour,
                  row.sensitivity_dbm, row.snr_threshold_db, ann.inner_km, ann.outer_km,
                  last ? ']' : ')', ann.empty() ? "  (outside disk)" : "");
    out << buf;
  }

  out << "\nderived quantities\n";
  std::snprintf(buf, sizeof buf, "  noise floor        %12.4f dBm\n", noise_power_dbm(cfg));
  out << buf;
  std::snprintf(buf, sizeof buf, "  wavelength         %12.6f m\n", cfg.wavelength_m());
  out << buf;
  std::snprintf(buf, sizeof buf, "  density rho        %12.6f devices/km^2\n",
                cfg.density_per_km2());
  out << buf;
  out << "  per-annulus interferer intensity v at nbar = " << format_sig9(cfg.mean_devices)
      << ":\n";
  double v_sum = 0.0;
  for (const SfParams& row : cfg.sf_table) {
    const Annulus ann = annulus_for_sf(row, cfg);
    v_sum += ann.interferer_intensity;
    std::snprintf(buf, sizeof buf, "    SF%-2d  %12.9f\n", row.sf, ann.interferer_intensity);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "  sum(v)   %12.9f  (= p0 * nbar * covered area fraction)\n",
                v_sum);
  out << buf;
  return 0;
}

int dispatch(const std::string& command, const ScenarioFile& sc) {
  std::ofstream file;
  const bool to_file = !sc.output_path.empty();
  if (to_file) {
    file.open(sc.output_path, std::ios::binary);
    if (!file)
      throw std::ios_base::failure("cannot open output file '" + sc.output_path + "'",
                                   std::make_error_code(std::errc::io_error));
  }
  std::ostream& out = to_file ? static_cast<std::ostream&>(file) : std::cout;
  // Keep piped CSV clean: the sweep summary goes to stdout only when the
  // CSV itself goes to a file.
  std::ostream& summary = to_file ? std::cout : std::cerr;

  int status;
  if (command == "analyze") status = run_analyze(sc, out);
  else if (command == "simulate") status = run_simulate(sc, out);
  else if (command == "sweep") status = run_sweep(sc, out, summary);
  else if (command == "table") status = run_table(sc, out);
  else throw std::invalid_argument("unknown command '" + command + "'");

  out.flush();
  if (!out)
    throw std::ios_base::failure("error writing output",
                                 std::make_error_code(std::errc::io_error));
  return status;
}

}  // namespace lora
