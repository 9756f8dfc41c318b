#include "lora/phy.hpp"

#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lora {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::array<SfParams, 6> default_sf_table() {
  return sf_table_with_boundaries({0.0, 2.0, 4.0, 6.0, 8.0, 10.0});
}

std::array<SfParams, 6> sf_table_with_boundaries(const std::array<double, 6>& l) {
  // 25-byte message at BW = 125 kHz. Transmits-per-hour is informational
  // only (it reflects a 0.1% duty cycle, not the 1% modelled here).
  std::array<SfParams, 6> t{{
      {7, 5.47, 36.6, 98, -123.0, -6.0, l[0], l[1]},
      {8, 3.13, 64.0, 56, -126.0, -9.0, l[1], l[2]},
      {9, 1.76, 113.0, 31, -129.0, -12.0, l[2], l[3]},
      {10, 0.98, 204.0, 17, -132.0, -15.0, l[3], l[4]},
      {11, 0.54, 372.0, 9, -134.5, -17.5, l[4], l[5]},
      {12, 0.29, 682.0, 5, -137.0, -20.0, l[5], kInf},
  }};
  return t;
}

double NetworkConfig::density_per_km2() const {
  return mean_devices / (std::numbers::pi * radius_km * radius_km);
}

void validate(const NetworkConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (!(cfg.radius_km > 0)) fail("radius_km must be > 0");
  if (!(cfg.mean_devices >= 0)) fail("mean_devices must be >= 0");
  if (!(cfg.duty_cycle >= 0 && cfg.duty_cycle <= 1)) fail("duty_cycle must be in [0,1]");
  if (!(cfg.path_loss_exponent >= 2)) fail("path_loss_exponent must be >= 2");
  if (!(cfg.bandwidth_hz > 0)) fail("bandwidth_hz must be > 0");
  if (!(cfg.carrier_freq_hz > 0)) fail("carrier_freq_hz must be > 0");
  const auto& t = cfg.sf_table;
  for (int i = 0; i < 6; ++i) {
    if (t[i].sf != 7 + i) fail("sf_table rows must be SF7..SF12 in order");
    if (i > 0) {
      if (!(t[i].snr_threshold_db < t[i - 1].snr_threshold_db))
        fail("snr_threshold_db must be strictly decreasing with SF");
      if (!(t[i].airtime_ms > t[i - 1].airtime_ms))
        fail("airtime_ms must be strictly increasing with SF");
      if (t[i].annulus_inner_km != t[i - 1].annulus_outer_km)
        fail("annuli must be contiguous: inner(sf) == outer(sf-1)");
    }
    if (!(t[i].annulus_inner_km >= 0) || !(t[i].annulus_outer_km > t[i].annulus_inner_km))
      fail("annulus bounds must satisfy 0 <= inner < outer");
  }
  if (!(t[0].annulus_inner_km < cfg.radius_km))
    fail("innermost annulus must start inside the disk");
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
  if (!(x > 0)) throw std::domain_error("linear_to_db: argument must be > 0");
  return 10.0 * std::log10(x);
}

double path_gain(double d_km, const NetworkConfig& cfg) {
  if (!(d_km > 0)) throw std::domain_error("path_gain: distance must be > 0");
  const double d_m = d_km * 1e3;
  return std::pow(cfg.wavelength_m() / (4.0 * std::numbers::pi * d_m), cfg.path_loss_exponent);
}

double noise_power_dbm(const NetworkConfig& cfg) {
  if (!(cfg.bandwidth_hz > 0)) throw std::domain_error("noise_power_dbm: bandwidth must be > 0");
  return kThermalNoiseDbmHz + cfg.noise_figure_db + 10.0 * std::log10(cfg.bandwidth_hz);
}

double noise_power_mw(const NetworkConfig& cfg) { return db_to_linear(noise_power_dbm(cfg)); }

const SfParams& assign_sf(double d_km, const NetworkConfig& cfg) {
  if (!(d_km > 0) || d_km > cfg.radius_km)
    throw std::domain_error("assign_sf: distance outside (0, R]");
  // Scan outermost-in; skip rows whose annulus is empty once clamped to R
  // (only reachable when d == R == some boundary).
  for (int i = 5; i >= 0; --i) {
    const SfParams& row = cfg.sf_table[i];
    if (row.annulus_inner_km < cfg.radius_km && d_km >= row.annulus_inner_km) return row;
  }
  throw std::domain_error("assign_sf: no annulus contains the distance");
}

}  // namespace lora
