#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lora/phy.hpp"

using namespace lora;

namespace {
const NetworkConfig kDefault{};
}

TEST_CASE("path gain equals one at d = lambda / 4 pi") {
  const double d_km = kDefault.wavelength_m() / (4.0 * std::numbers::pi) / 1e3;
  CHECK(path_gain(d_km, kDefault) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("path gain ratio law: halving distance gains 2^eta") {
  const double ratio = path_gain(1.0, kDefault) / path_gain(2.0, kDefault);
  CHECK(ratio == doctest::Approx(std::pow(2.0, 2.7)).epsilon(1e-12));
}

TEST_CASE("path gain regression value at 1 km") {
  // lambda = c/868e6 = 0.3453830 m, gain = (lambda / 4 pi 1000)^2.7
  CHECK(path_gain(1.0, kDefault) == doctest::Approx(4.8478146532177431e-13).epsilon(1e-12));
}

TEST_CASE("path gain scaling law g(a d) = a^-eta g(d)") {
  for (double d : {0.03, 0.7, 1.0, 5.0, 11.9}) {
    for (double a : {0.5, 2.0, 3.7, 10.0}) {
      const double lhs = path_gain(a * d, kDefault);
      const double rhs = std::pow(a, -kDefault.path_loss_exponent) * path_gain(d, kDefault);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("path gain is strictly decreasing") {
  double prev = path_gain(0.01, kDefault);
  for (double d = 0.5; d <= 15.0; d += 0.5) {
    const double g = path_gain(d, kDefault);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("path gain rejects non-positive distances") {
  CHECK_THROWS_AS(path_gain(0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(path_gain(-1.0, kDefault), std::domain_error);
}

TEST_CASE("noise floor at the default receiver") {
  CHECK(noise_power_dbm(kDefault) == doctest::Approx(-117.03).epsilon(1e-4));
}

TEST_CASE("noise floor reduces to -174 dBm for NF=0, BW=1") {
  NetworkConfig cfg = kDefault;
  cfg.noise_figure_db = 0.0;
  cfg.bandwidth_hz = 1.0;
  CHECK(noise_power_dbm(cfg) == doctest::Approx(-174.0).epsilon(1e-12));
}

TEST_CASE("doubling the bandwidth adds 3.01 dB of noise") {
  NetworkConfig cfg = kDefault;
  cfg.bandwidth_hz = 250e3;
  CHECK(noise_power_dbm(cfg) == doctest::Approx(-114.0206).epsilon(1e-6));
  CHECK(noise_power_dbm(cfg) - noise_power_dbm(kDefault) ==
        doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("noise floor rejects non-positive bandwidth") {
  NetworkConfig cfg = kDefault;
  cfg.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(noise_power_dbm(cfg), std::domain_error);
}

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(6.0) == doctest::Approx(3.981).epsilon(1e-4));
  for (double x : {1e-6, 0.25, 1.0, 3.0, 79.43, 1e9}) {
    CHECK(db_to_linear(linear_to_db(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
  CHECK_THROWS_AS(linear_to_db(-2.0), std::domain_error);
}

TEST_CASE("SF assignment follows the distance boundaries") {
  CHECK(assign_sf(1.0, kDefault).sf == 7);
  CHECK(assign_sf(10.0, kDefault).sf == 12);  // boundary takes the higher SF
  CHECK(assign_sf(11.0, kDefault).sf == 12);
  CHECK(assign_sf(2.0, kDefault).sf == 8);
  CHECK(assign_sf(1.9999, kDefault).sf == 7);
  CHECK(assign_sf(12.0, kDefault).sf == 12);  // disk edge
}

TEST_CASE("SF assignment rejects distances outside (0, R]") {
  CHECK_THROWS_AS(assign_sf(0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(assign_sf(-3.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(assign_sf(12.0001, kDefault), std::domain_error);
}

TEST_CASE("SF assignment partitions the disk") {
  // every distance lands in exactly one row's clamped annulus
  for (double d = 0.05; d <= 12.0; d += 0.05) {
    const SfParams& row = assign_sf(d, kDefault);
    int members = 0;
    for (const SfParams& r : kDefault.sf_table) {
      const double outer = std::min(r.annulus_outer_km, kDefault.radius_km);
      const bool last_nonempty = r.annulus_outer_km >= kDefault.radius_km;
      if (d >= r.annulus_inner_km && (d < outer || (last_nonempty && d <= outer))) ++members;
    }
    CHECK(members == 1);
    CHECK(d >= row.annulus_inner_km);
  }
}

TEST_CASE("small disks clamp the outer annuli away") {
  NetworkConfig cfg = kDefault;
  cfg.radius_km = 5.0;
  CHECK(assign_sf(4.5, cfg).sf == 9);
  CHECK(assign_sf(5.0, cfg).sf == 9);  // outermost non-empty annulus is closed at R
  CHECK_THROWS_AS(assign_sf(5.5, cfg), std::domain_error);

  // R exactly on a boundary: d = R still lands in a positive-area annulus
  cfg.radius_km = 8.0;
  CHECK(assign_sf(8.0, cfg).sf == 10);
  CHECK(assign_sf(7.9999, cfg).sf == 10);
}

TEST_CASE("default table is internally consistent") {
  const auto& t = kDefault.sf_table;
  REQUIRE(t.size() == 6);
  const double noise = noise_power_dbm(kDefault);
  for (int i = 0; i < 6; ++i) {
    CHECK(t[i].sf == 7 + i);
    // receiver sensitivity = noise floor + SNR threshold, to within 0.1 dB
    CHECK(std::fabs(t[i].sensitivity_dbm - (noise + t[i].snr_threshold_db)) < 0.1);
    if (i > 0) {
      CHECK(t[i].snr_threshold_db < t[i - 1].snr_threshold_db);
      CHECK(t[i].airtime_ms > t[i - 1].airtime_ms);
      CHECK(t[i].annulus_inner_km == t[i - 1].annulus_outer_km);
    }
  }
  CHECK_NOTHROW(validate(kDefault));
}

TEST_CASE("validate rejects broken configs") {
  NetworkConfig cfg = kDefault;
  cfg.radius_km = -1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = kDefault;
  cfg.duty_cycle = 1.5;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = kDefault;
  cfg.path_loss_exponent = 1.5;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = kDefault;
  cfg.sf_table[3].snr_threshold_db = 0.0;  // breaks monotonicity
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  cfg = kDefault;
  cfg.sf_table[2].annulus_inner_km = 3.5;  // breaks contiguity
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
