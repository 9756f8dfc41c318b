#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lora/analysis.hpp"
#include "lora/phy.hpp"

namespace lora {

/// Counter-based per-trial generator: trial i derives its whole state from
/// (seed, i), so estimates are independent of execution order and degree of
/// parallelism. xoshiro256++ seeded through splitmix64.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Unit-mean exponential (finite; never -log(0)).
  double exponential();
  bool bernoulli(double p) { return uniform() < p; }
  /// Poisson draw; Knuth multiplication below mean 10, Hormann's PTRS
  /// transformed rejection above.
  std::uint64_t poisson(double mean);

 private:
  std::array<std::uint64_t, 4> state_;
};

/// Sentinel probe position: draw the probe uniformly over the disk.
inline constexpr double kRandomProbe = -1.0;

/// One PPP realisation at a single time instant: every device's distance,
/// SF, duty-cycle activity flag and fading gain, plus the probe's state.
/// The probe is conditioned on transmitting and is not part of the
/// interferer lists.
struct DeploymentSnapshot {
  std::vector<double> distances_km;
  std::vector<std::int8_t> sfs;
  std::vector<std::uint8_t> active;
  std::vector<double> fading;  ///< |h|^2, unit-mean exponential
  double probe_distance_km = 0.0;
  double probe_fading = 0.0;
};

/// Draws N ~ Poisson(mean_devices) interferers uniformly over the disk
/// (distance R sqrt(U)), Bernoulli(p0) activity, Exp(1) fading for each and
/// for the probe. probe_d1_km must be in (0, R] or kRandomProbe.
DeploymentSnapshot sample_deployment(const NetworkConfig& cfg, double probe_d1_km,
                                     TrialRng& rng);
/// Same, reusing the vectors of an existing snapshot.
void sample_deployment(const NetworkConfig& cfg, double probe_d1_km, TrialRng& rng,
                       DeploymentSnapshot& out);

/// SNR condition: P1 |h1|^2 g(d1) / N >= q_SF(d1), in linear units.
bool eval_condition1(const DeploymentSnapshot& snap, const NetworkConfig& cfg);

/// Capture condition: probe power at least 4x the strongest concurrent
/// same-SF interferer (boundary inclusive); vacuously true with none.
/// Equal transmit powers cancel.
bool eval_condition2(const DeploymentSnapshot& snap, const NetworkConfig& cfg);

struct EstimateCI {
  double estimate = 0.0;
  double ci95_halfwidth = 0.0;  ///< 1.96 sqrt(p(1-p)/n)
};

/// Empirical complementary-outage probabilities at a fixed probe distance.
/// `joint` is the measured conjunction of the two conditions (they share
/// the probe fading draw, so it sits above the h1*q1 product).
struct ConditionalEstimate {
  double d1_km = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  EstimateCI h1, q1, joint;
};

struct CoverageResult {
  Metric metric = Metric::H1;
  double estimate = 0.0;
  double ci95_halfwidth = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
};

/// Runs `trials` independent snapshots at fixed d1. Deterministic given
/// (cfg, d1, trials, seed) for any thread count; threads = 0 picks the
/// hardware concurrency.
ConditionalEstimate estimate_conditional(double d1_km, const NetworkConfig& cfg,
                                         long trials, std::uint64_t seed, int threads = 0);

/// Disk-averaged coverage estimate: the probe is re-placed uniformly every
/// trial. Metric::Q1Approx is not a simulable event and is rejected.
CoverageResult estimate_coverage(Metric metric, const NetworkConfig& cfg, long trials,
                                 std::uint64_t seed, int threads = 0);

}  // namespace lora
