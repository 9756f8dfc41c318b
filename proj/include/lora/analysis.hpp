#pragma once

#include <functional>

#include "lora/phy.hpp"
#include "lora/quadrature.hpp"

namespace lora {

/// Ring of devices sharing one SF, with its thinned interferer intensity.
/// Only devices inside the probe's annulus can cause co-SF interference.
struct Annulus {
  double inner_km = 0.0;              ///< l_j
  double outer_km = 0.0;              ///< l_{j+1}, clamped to R
  double area_km2 = 0.0;              ///< pi (outer^2 - inner^2)
  double interferer_intensity = 0.0;  ///< v = p0 * rho * area

  bool empty() const { return !(area_km2 > 0.0); }
};

/// Annulus of one table row, clamped to the deployment disk. Rows starting
/// at or beyond R come back empty with zero intensity.
Annulus annulus_for_sf(const SfParams& row, const NetworkConfig& cfg);

/// Annulus containing a probe at distance d1 (same boundary conventions as
/// assign_sf).
Annulus annulus_of(double d1_km, const NetworkConfig& cfg);

enum class Metric { H1, Q1, Q1Approx, Joint };

/// Conditional complementary-outage probabilities at one probe distance.
/// `joint` is the product h1*q1, the scalability metric built on the
/// independence treatment of the two outage conditions; see joint_exact for
/// the conjunction with the shared fading draw.
struct LinkMetrics {
  double d1_km = 0.0;
  double h1 = 0.0;
  double q1 = 0.0;
  double q1_approx = 0.0;
  double joint = 0.0;
};

/// P[SNR >= q_SF | d1] = exp(-N q / (P1 g(d1))), the complement of the
/// connection outage. Piecewise in d1 because q_SF jumps at annulus
/// boundaries; independent of the deployment density.
double h1(double d1_km, const NetworkConfig& cfg);

/// Density of X_i = |h|^2 g(d_i) for a device placed uniformly in the
/// annulus with Rayleigh fading:
///   f(z) = lam^2 z^(-(eta+2)/eta) / (8 eta pi |V|)
///          * [Gamma(1+2/eta, z/g(l_j)) - Gamma(1+2/eta, z/g(l_j+1))].
double product_pdf(double z, const Annulus& ann, const NetworkConfig& cfg);

/// Closed-form antiderivative of product_pdf; clamped to [0,1] against
/// round-off. F(0) = 0 and F(z) -> 1 as z -> inf.
double product_cdf(double z, const Annulus& ann, const NetworkConfig& cfg);

/// CDF of the strongest mark among a Poisson(v) number of i.i.d. X_i:
/// exp(v (F_Xi(z) - 1)), the closed form of the Poisson-weighted
/// order-statistics sum. Equals 1 everywhere when v = 0 (empty max).
double max_interferer_cdf(double z, const Annulus& ann, const NetworkConfig& cfg);

/// P[desired power >= 4x strongest same-SF interferer | d1], by quadrature
/// of integral_0^inf e^(-z) F_max(z g(d1)/4) dz, truncated at z = 46 and
/// split at the interferer-gain support edges mapped into z. Absolute
/// accuracy 1e-6 or better, else QuadratureError.
double q1(double d1_km, const NetworkConfig& cfg, const QuadratureSettings& quad = {});

/// Probability that both reception conditions hold for one transmission,
/// sharing the probe's fading draw: integral_z0^inf e^(-z) F_max(z g/4) dz
/// with z0 = N q / (P1 g(d1)). Exceeds the product h1*q1 because both
/// conditions improve with the same fading gain; this is the quantity a
/// simulated conjunction estimates.
double joint_exact(double d1_km, const NetworkConfig& cfg, const QuadratureSettings& quad = {});

/// Closed-form leading-order approximation of q1. Piecewise constant in d1
/// (a downward staircase across annuli); exact 1 at v = 0; clamped to [0,1].
double q1_approx(double d1_km, const NetworkConfig& cfg);
double q1_approx(const Annulus& ann, const NetworkConfig& cfg);

LinkMetrics link_metrics(double d1_km, const NetworkConfig& cfg,
                         const QuadratureSettings& quad = {});

/// Disk average (2/R^2) integral_0^R f(d1) d1 dd1 with the integration
/// domain split at every SF boundary (the integrand jumps there).
/// `abs_accuracy` is the contract on the returned value; exceeding it
/// raises QuadratureError.
double disk_average(const std::function<double(double)>& f, const NetworkConfig& cfg,
                    const QuadratureSettings& quad, double abs_accuracy);

/// Coverage probability of a uniformly placed device for the chosen
/// conditional metric. Accuracy contract: 1e-5 for H1/Q1Approx, 1e-4 for
/// Q1/Joint (the inner quadrature compounds).
double coverage(Metric metric, const NetworkConfig& cfg, const QuadratureSettings& quad = {});

}  // namespace lora
