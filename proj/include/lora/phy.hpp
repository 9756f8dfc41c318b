#pragma once

#include <array>
#include <cmath>

namespace lora {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kThermalNoiseDbmHz = -174.0;

// Same-SF capture threshold: a collision is survivable when the desired
// received power is at least 4x (6 dB) the strongest interferer's. The
// exact factor is 4, not 10^0.6.
inline constexpr double kCaptureRatio = 4.0;

/// One row of the LoRa link table for a 25-byte message at BW = 125 kHz.
struct SfParams {
  int sf = 0;                       ///< spreading factor, 7..12
  double bitrate_kbps = 0.0;
  double airtime_ms = 0.0;          ///< packet time on air
  double transmits_per_hour = 0.0;  ///< informational only; never used in computation
  double sensitivity_dbm = 0.0;
  double snr_threshold_db = 0.0;    ///< decode threshold q_SF
  double annulus_inner_km = 0.0;    ///< l_j
  double annulus_outer_km = 0.0;    ///< l_{j+1}; +inf for the outermost row
};

/// Builds the default table with range boundaries l_i = 2i km.
std::array<SfParams, 6> default_sf_table();

/// Same link parameters with custom boundaries l_0..l_5 (km). The outermost
/// row stays unbounded; it is clamped to the deployment radius where used.
std::array<SfParams, 6> sf_table_with_boundaries(const std::array<double, 6>& l_km);

/// Scenario parameters for the single-gateway uplink.
struct NetworkConfig {
  double radius_km = 12.0;          ///< deployment disk radius R
  double mean_devices = 500.0;      ///< expected device count N over the disk
  double duty_cycle = 0.01;         ///< transmit probability p0 per device per snapshot
  double path_loss_exponent = 2.7;  ///< eta (2.7 sub-urban, 4 urban)
  double tx_power_dbm = 19.0;       ///< P1, equal for all devices
  double noise_figure_db = 6.0;
  double bandwidth_hz = 125e3;
  double carrier_freq_hz = 868e6;
  std::array<SfParams, 6> sf_table = default_sf_table();

  double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
  double tx_power_mw() const { return std::pow(10.0, tx_power_dbm / 10.0); }
  /// Deployment density rho = N / (pi R^2), devices per km^2.
  double density_per_km2() const;
};

/// Throws std::invalid_argument when a field or the SF table violates its
/// invariants (six rows 7..12, thresholds strictly decreasing, airtimes
/// strictly increasing, annuli contiguous and ordered).
void validate(const NetworkConfig& cfg);

double db_to_linear(double x_db);
double linear_to_db(double x);  ///< throws std::domain_error for x <= 0

/// Free-space gain g(d) = (lambda / 4 pi d)^eta. Strictly decreasing in d;
/// not clamped below unity at near-field distances.
double path_gain(double d_km, const NetworkConfig& cfg);

/// Receiver noise floor -174 + NF + 10 log10(BW) in dBm.
double noise_power_dbm(const NetworkConfig& cfg);
double noise_power_mw(const NetworkConfig& cfg);

/// Distance-based SF assignment. Interior boundaries are half-open
/// [l_j, l_{j+1}), so a device exactly on a boundary takes the higher SF;
/// the outermost non-empty annulus is closed at R. Throws std::domain_error
/// for d outside (0, R].
const SfParams& assign_sf(double d_km, const NetworkConfig& cfg);

}  // namespace lora
