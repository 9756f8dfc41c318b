#include "lora/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lora {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': cannot parse number '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  if (x != std::floor(x)) throw std::invalid_argument("key '" + key + "': expected integer");
  return static_cast<long>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument("key '" + key + "': expected boolean, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw std::invalid_argument("key '" + key + "': empty list");
  return out;
}

}  // namespace

void apply_key(ScenarioFile& sc, const std::string& key, const std::string& value) {
  if (key == "radius_km") sc.cfg.radius_km = parse_double(key, value);
  else if (key == "mean_devices") sc.cfg.mean_devices = parse_double(key, value);
  else if (key == "duty_cycle") sc.cfg.duty_cycle = parse_double(key, value);
  else if (key == "path_loss_exponent") sc.cfg.path_loss_exponent = parse_double(key, value);
  else if (key == "tx_power_dbm") sc.cfg.tx_power_dbm = parse_double(key, value);
  else if (key == "noise_figure_db") sc.cfg.noise_figure_db = parse_double(key, value);
  else if (key == "bandwidth_hz") sc.cfg.bandwidth_hz = parse_double(key, value);
  else if (key == "carrier_freq_hz") sc.cfg.carrier_freq_hz = parse_double(key, value);
  else if (key == "sf_boundaries") {
    const auto l = parse_list(key, value);
    if (l.size() != 6)
      throw std::invalid_argument("key 'sf_boundaries': expected 6 values l0..l5");
    sc.cfg.sf_table = sf_table_with_boundaries({l[0], l[1], l[2], l[3], l[4], l[5]});
  } else if (key == "trials") sc.trials = parse_long(key, value);
  else if (key == "seed") sc.seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "d1_grid") sc.d1_grid = parse_list(key, value);
  else if (key == "d1_min") sc.d1_min = parse_double(key, value);
  else if (key == "d1_max") sc.d1_max = parse_double(key, value);
  else if (key == "d1_points") sc.d1_points = static_cast<int>(parse_long(key, value));
  else if (key == "nbar_sweep") sc.nbar_sweep = parse_list(key, value);
  else if (key == "output_path") sc.output_path = value;
  else if (key == "disk") sc.disk = parse_bool(key, value);
  else if (key == "with_mc") sc.with_mc = parse_bool(key, value);
  else if (key == "threads") sc.threads = static_cast<int>(parse_long(key, value));
  else if (key == "quad_abs_tol") sc.quad.abs_tol = parse_double(key, value);
  else if (key == "quad_rel_tol") sc.quad.rel_tol = parse_double(key, value);
  else if (key == "quad_max_subdivisions")
    sc.quad.max_subdivisions = static_cast<int>(parse_long(key, value));
  else throw std::invalid_argument("unknown scenario key '" + key + "'");
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  // an unreadable config is a usage error; exit code 3 is for output I/O
  if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
  ScenarioFile sc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    apply_key(sc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return sc;
}

std::vector<double> d1_grid(const ScenarioFile& sc) {
  if (!sc.d1_grid.empty()) return sc.d1_grid;
  const double hi = sc.d1_max > 0 ? sc.d1_max : sc.cfg.radius_km;
  const double lo = sc.d1_min;
  const int n = sc.d1_points;
  if (n < 1 || !(lo > 0) || !(hi >= lo))
    throw std::invalid_argument("d1 grid: need d1_points >= 1 and 0 < d1_min <= d1_max");

  std::vector<double> grid;
  grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    double d = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    for (const SfParams& row : sc.cfg.sf_table) {
      const double l = row.annulus_inner_km;
      if (l > 0 && l < sc.cfg.radius_km && std::fabs(d - l) < 1e-9)
        d = std::min(l + 1e-3, sc.cfg.radius_km);
    }
    grid.push_back(d);
  }
  return grid;
}

std::vector<double> nbar_grid(const ScenarioFile& sc) {
  if (!sc.nbar_sweep.empty()) return sc.nbar_sweep;
  std::vector<double> grid{1.0};
  for (double n = 100.0; n <= 2000.0; n += 100.0) grid.push_back(n);
  return grid;
}

std::string format_sig9(double x) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 9);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace lora
