#include "lora/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lora/incomplete_gamma.hpp"

namespace lora {

namespace {

constexpr double kPi = std::numbers::pi;

// e^-z truncation point for the fading integrals; e^-46 < 1e-20.
constexpr double kFadingCutoff = 46.0;

// Accuracy contracts (absolute) for the public quadrature results.
constexpr double kQ1Contract = 1e-6;
constexpr double kCoverageContractClosed = 1e-5;  // H1, Q1Approx integrands
constexpr double kCoverageContractNested = 1e-4;  // Q1, Joint integrands

double annulus_area_km2(double inner_km, double outer_km) {
  return kPi * (outer_km * outer_km - inner_km * inner_km);
}

// Integrates f over [lo, hi] split at the given interior breakpoints,
// dividing the absolute budget across segments. Returns value and summed
// error estimate through *abs_error.
double integrate_split(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> breaks, const QuadratureSettings& quad,
                       double* abs_error) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double b) { return !(b > lo && b < hi); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.insert(breaks.begin(), lo);
  breaks.push_back(hi);

  QuadratureSettings per = quad;
  per.abs_tol = quad.abs_tol / static_cast<double>(breaks.size() - 1);

  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const IntegralResult r = integrate(f, breaks[i], breaks[i + 1], per);
    total += r.value;
    err += r.abs_error;
  }
  *abs_error = err;
  return total;
}

}  // namespace

Annulus annulus_for_sf(const SfParams& row, const NetworkConfig& cfg) {
  Annulus ann;
  ann.inner_km = row.annulus_inner_km;
  ann.outer_km = std::min(row.annulus_outer_km, cfg.radius_km);
  if (ann.inner_km >= cfg.radius_km) {
    ann.outer_km = ann.inner_km;  // entirely outside the disk
    return ann;
  }
  ann.area_km2 = annulus_area_km2(ann.inner_km, ann.outer_km);
  ann.interferer_intensity = cfg.duty_cycle * cfg.density_per_km2() * ann.area_km2;
  return ann;
}

Annulus annulus_of(double d1_km, const NetworkConfig& cfg) {
  return annulus_for_sf(assign_sf(d1_km, cfg), cfg);
}

double h1(double d1_km, const NetworkConfig& cfg) {
  const SfParams& row = assign_sf(d1_km, cfg);
  const double q = db_to_linear(row.snr_threshold_db);
  return std::exp(-noise_power_mw(cfg) * q / (cfg.tx_power_mw() * path_gain(d1_km, cfg)));
}

double product_pdf(double z, const Annulus& ann, const NetworkConfig& cfg) {
  if (!(z > 0)) throw std::domain_error("product_pdf: z must be > 0");
  if (ann.empty()) throw std::domain_error("product_pdf: empty annulus");
  const double eta = cfg.path_loss_exponent;
  const double a = 1.0 + 2.0 / eta;
  const double lam = cfg.wavelength_m();
  const double area_m2 = ann.area_km2 * 1e6;

  // bracket = Gamma(a, z/g(l_j)) - Gamma(a, z/g(l_j+1)); inner radius 0
  // means g = inf, so the first argument collapses to 0.
  const double arg_inner =
      ann.inner_km > 0 ? z / path_gain(ann.inner_km, cfg) : 0.0;
  const double arg_outer = z / path_gain(ann.outer_km, cfg);
  const double bracket =
      upper_incomplete_gamma(a, arg_inner) - upper_incomplete_gamma(a, arg_outer);

  const double density = lam * lam * std::pow(z, -(eta + 2.0) / eta) /
                         (8.0 * eta * kPi * area_m2) * bracket;
  return std::max(density, 0.0);
}

double product_cdf(double z, const Annulus& ann, const NetworkConfig& cfg) {
  if (!(z >= 0)) throw std::domain_error("product_cdf: z must be >= 0");
  if (ann.empty()) throw std::domain_error("product_cdf: empty annulus");
  if (z == 0.0) return 0.0;
  const double eta = cfg.path_loss_exponent;
  const double a = 1.0 + 2.0 / eta;
  const double lam = cfg.wavelength_m();
  const double area_m2 = ann.area_km2 * 1e6;
  const double z_pow = std::pow(z, -2.0 / eta);

  // Antiderivative term at one radius; expm1 keeps the z << g branch exact.
  auto term = [&](double l_km) {
    if (l_km <= 0) return -z_pow * std::tgamma(a);
    const double g = path_gain(l_km, cfg);
    return std::expm1(-z / g) * std::pow(g, -2.0 / eta) -
           z_pow * upper_incomplete_gamma(a, z / g);
  };

  const double cdf = lam * lam / (16.0 * kPi * area_m2) *
                     (term(ann.inner_km) - term(ann.outer_km));
  return std::clamp(cdf, 0.0, 1.0);
}

double max_interferer_cdf(double z, const Annulus& ann, const NetworkConfig& cfg) {
  const double v = ann.interferer_intensity;
  if (v == 0.0) return 1.0;
  return std::exp(v * (product_cdf(z, ann, cfg) - 1.0));
}

namespace {

// Shared tail integral of q1 / joint_exact: int_{z_lo}^{z_lo+46} of
// e^-z F_max(z g(d1)/4) dz, split where z g(d1)/4 crosses the gains of the
// annulus edges (the integrand's curvature changes there).
double capture_integral(double z_lo, double d1_km, const Annulus& ann,
                        const NetworkConfig& cfg, const QuadratureSettings& quad,
                        const char* who) {
  const double gain_d1 = path_gain(d1_km, cfg);
  const auto integrand = [&](double z) {
    return std::exp(-z) * max_interferer_cdf(z * gain_d1 / kCaptureRatio, ann, cfg);
  };

  std::vector<double> breaks;
  for (double l : {ann.outer_km, ann.inner_km})
    if (l > 0) breaks.push_back(kCaptureRatio * path_gain(l, cfg) / gain_d1);

  double err = 0.0;
  const double hi = z_lo + kFadingCutoff;
  const double value = integrate_split(integrand, z_lo, hi, std::move(breaks), quad, &err);
  const double bound = std::max(kQ1Contract, quad.abs_tol);
  if (err > bound) {
    throw QuadratureError(std::string(who) + ": quadrature did not converge (achieved " +
                              std::to_string(err) + ", contract " + std::to_string(bound) +
                              ")",
                          err);
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

double q1(double d1_km, const NetworkConfig& cfg, const QuadratureSettings& quad) {
  const Annulus ann = annulus_of(d1_km, cfg);
  if (ann.interferer_intensity == 0.0) return 1.0;
  return capture_integral(0.0, d1_km, ann, cfg, quad, "q1");
}

double joint_exact(double d1_km, const NetworkConfig& cfg, const QuadratureSettings& quad) {
  const SfParams& row = assign_sf(d1_km, cfg);
  const double q = db_to_linear(row.snr_threshold_db);
  const double z0 = noise_power_mw(cfg) * q / (cfg.tx_power_mw() * path_gain(d1_km, cfg));
  const Annulus ann = annulus_for_sf(row, cfg);
  if (ann.interferer_intensity == 0.0) return std::exp(-z0);
  return capture_integral(z0, d1_km, ann, cfg, quad, "joint_exact");
}

double q1_approx(const Annulus& ann, const NetworkConfig& cfg) {
  if (ann.empty()) throw std::domain_error("q1_approx: empty annulus");
  const double eta = cfg.path_loss_exponent;
  const double v = ann.interferer_intensity;
  const double outer_pow = std::pow(ann.outer_km, eta);
  const double two_area = 2.0 * (eta + 2.0) * ann.area_km2;

  const double num = std::exp(-v) * outer_pow * two_area;
  const double den = kPi * v * std::pow(ann.inner_km, eta + 2.0) +
                     outer_pow * (two_area - kPi * v * ann.outer_km * ann.outer_km);
  // The Taylor expansion behind this has a pole once v is large enough to
  // flip the denominator's sign; the clamp keeps the output a probability.
  // (+0.0 normalizes the -0.0 that an underflowed numerator can produce)
  return std::clamp(num / den, 0.0, 1.0) + 0.0;
}

double q1_approx(double d1_km, const NetworkConfig& cfg) {
  return q1_approx(annulus_of(d1_km, cfg), cfg);
}

LinkMetrics link_metrics(double d1_km, const NetworkConfig& cfg,
                         const QuadratureSettings& quad) {
  LinkMetrics m;
  m.d1_km = d1_km;
  m.h1 = h1(d1_km, cfg);
  m.q1 = q1(d1_km, cfg, quad);
  m.q1_approx = q1_approx(d1_km, cfg);
  m.joint = m.h1 * m.q1;
  return m;
}

double disk_average(const std::function<double(double)>& f, const NetworkConfig& cfg,
                    const QuadratureSettings& quad, double abs_accuracy) {
  const double r = cfg.radius_km;
  const double scale = 2.0 / (r * r);

  std::vector<double> breaks;
  for (const SfParams& row : cfg.sf_table)
    if (row.annulus_inner_km > 0 && row.annulus_inner_km < r)
      breaks.push_back(row.annulus_inner_km);

  const auto weighted = [&](double d) { return f(d) * d; };
  double err = 0.0;
  const double value = integrate_split(weighted, 0.0, r, std::move(breaks), quad, &err);
  if (scale * err > abs_accuracy) {
    throw QuadratureError("disk_average: quadrature did not converge (achieved " +
                              std::to_string(scale * err) + ", contract " +
                              std::to_string(abs_accuracy) + ")",
                          scale * err);
  }
  return scale * value;
}

double coverage(Metric metric, const NetworkConfig& cfg, const QuadratureSettings& quad) {
  switch (metric) {
    case Metric::H1:
      return disk_average([&](double d) { return h1(d, cfg); }, cfg, quad,
                          kCoverageContractClosed);
    case Metric::Q1Approx:
      return disk_average([&](double d) { return q1_approx(d, cfg); }, cfg, quad,
                          kCoverageContractClosed);
    case Metric::Q1:
      return disk_average([&](double d) { return q1(d, cfg, quad); }, cfg, quad,
                          kCoverageContractNested);
    case Metric::Joint:
      return disk_average([&](double d) { return h1(d, cfg) * q1(d, cfg, quad); }, cfg,
                          quad, kCoverageContractNested);
  }
  throw std::invalid_argument("coverage: unknown metric");
}

}  // namespace lora
