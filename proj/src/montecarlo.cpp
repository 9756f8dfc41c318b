#include "lora/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lora {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t x = (seed + 0x9E3779B97F4A7C15ull) ^ (trial * 0xBF58476D1CE4E5B9ull);
  for (auto& word : state_) word = splitmix64(x);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t TrialRng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double TrialRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double TrialRng::exponential() { return -std::log1p(-uniform()); }

std::uint64_t TrialRng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    // Knuth multiplication method.
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform();
    while (prod > threshold) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Hormann's PTRS transformed rejection, valid for mean >= 10.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        kf * loglam - mean - std::lgamma(kf + 1.0))
      return static_cast<std::uint64_t>(kf);
  }
}

void sample_deployment(const NetworkConfig& cfg, double probe_d1_km, TrialRng& rng,
                       DeploymentSnapshot& out) {
  const bool random_probe = probe_d1_km == kRandomProbe;
  if (!random_probe && (!(probe_d1_km > 0) || probe_d1_km > cfg.radius_km))
    throw std::domain_error("sample_deployment: probe distance outside (0, R]");

  // Fixed draw order: probe position, probe fading, device count, then per
  // device (distance, activity, fading).
  out.probe_distance_km =
      random_probe ? cfg.radius_km * std::sqrt(1.0 - rng.uniform()) : probe_d1_km;
  out.probe_fading = rng.exponential();

  const std::uint64_t n = rng.poisson(cfg.mean_devices);
  out.distances_km.clear();
  out.sfs.clear();
  out.active.clear();
  out.fading.clear();
  out.distances_km.reserve(n);
  out.sfs.reserve(n);
  out.active.reserve(n);
  out.fading.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    // 1-U keeps the draw in (0,1] so the distance stays strictly positive.
    const double d = cfg.radius_km * std::sqrt(1.0 - rng.uniform());
    out.distances_km.push_back(d);
    out.sfs.push_back(static_cast<std::int8_t>(assign_sf(d, cfg).sf));
    out.active.push_back(rng.bernoulli(cfg.duty_cycle) ? 1 : 0);
    out.fading.push_back(rng.exponential());
  }
}

DeploymentSnapshot sample_deployment(const NetworkConfig& cfg, double probe_d1_km,
                                     TrialRng& rng) {
  DeploymentSnapshot snap;
  sample_deployment(cfg, probe_d1_km, rng, snap);
  return snap;
}

bool eval_condition1(const DeploymentSnapshot& snap, const NetworkConfig& cfg) {
  const SfParams& row = assign_sf(snap.probe_distance_km, cfg);
  const double signal_mw =
      cfg.tx_power_mw() * snap.probe_fading * path_gain(snap.probe_distance_km, cfg);
  return signal_mw >= noise_power_mw(cfg) * db_to_linear(row.snr_threshold_db);
}

bool eval_condition2(const DeploymentSnapshot& snap, const NetworkConfig& cfg) {
  const std::int8_t probe_sf =
      static_cast<std::int8_t>(assign_sf(snap.probe_distance_km, cfg).sf);
  double strongest = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < snap.distances_km.size(); ++k) {
    if (!snap.active[k] || snap.sfs[k] != probe_sf) continue;
    const double mark = snap.fading[k] * path_gain(snap.distances_km[k], cfg);
    if (!any || mark > strongest) strongest = mark;
    any = true;
  }
  if (!any) return true;
  const double probe_mark = snap.probe_fading * path_gain(snap.probe_distance_km, cfg);
  return probe_mark >= kCaptureRatio * strongest;
}

namespace {

struct TrialCounts {
  std::uint64_t cond1 = 0;
  std::uint64_t cond2 = 0;
  std::uint64_t both = 0;
};

// Runs trials [first, last) and accumulates integer counts; summing integer
// chunk results keeps the reduction exact and order-insensitive.
TrialCounts run_range(const NetworkConfig& cfg, double probe_d1_km, std::uint64_t seed,
                      long first, long last) {
  TrialCounts counts;
  DeploymentSnapshot snap;
  for (long t = first; t < last; ++t) {
    TrialRng rng(seed, static_cast<std::uint64_t>(t));
    sample_deployment(cfg, probe_d1_km, rng, snap);
    const bool c1 = eval_condition1(snap, cfg);
    const bool c2 = eval_condition2(snap, cfg);
    counts.cond1 += c1;
    counts.cond2 += c2;
    counts.both += c1 && c2;
  }
  return counts;
}

TrialCounts run_parallel(const NetworkConfig& cfg, double probe_d1_km, std::uint64_t seed,
                         long trials, int threads) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  threads = static_cast<int>(std::min<long>(threads, std::max<long>(trials, 1)));
  if (threads <= 1) return run_range(cfg, probe_d1_km, seed, 0, trials);

  std::vector<TrialCounts> partial(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (trials + threads - 1) / threads;
  for (int i = 0; i < threads; ++i) {
    const long first = i * chunk;
    const long last = std::min<long>(first + chunk, trials);
    pool.emplace_back([&, i, first, last] {
      partial[i] = run_range(cfg, probe_d1_km, seed, first, last);
    });
  }
  for (auto& th : pool) th.join();

  TrialCounts total;
  for (const TrialCounts& c : partial) {
    total.cond1 += c.cond1;
    total.cond2 += c.cond2;
    total.both += c.both;
  }
  return total;
}

EstimateCI make_estimate(std::uint64_t successes, long trials) {
  EstimateCI e;
  e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci95_halfwidth =
      1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  return e;
}

}  // namespace

ConditionalEstimate estimate_conditional(double d1_km, const NetworkConfig& cfg,
                                         long trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::domain_error("estimate_conditional: trials must be >= 1");
  if (!(d1_km > 0) || d1_km > cfg.radius_km)
    throw std::domain_error("estimate_conditional: d1 outside (0, R]");
  const TrialCounts counts = run_parallel(cfg, d1_km, seed, trials, threads);
  ConditionalEstimate est;
  est.d1_km = d1_km;
  est.trials = trials;
  est.seed = seed;
  est.h1 = make_estimate(counts.cond1, trials);
  est.q1 = make_estimate(counts.cond2, trials);
  est.joint = make_estimate(counts.both, trials);
  return est;
}

CoverageResult estimate_coverage(Metric metric, const NetworkConfig& cfg, long trials,
                                 std::uint64_t seed, int threads) {
  if (trials < 1) throw std::domain_error("estimate_coverage: trials must be >= 1");
  if (metric == Metric::Q1Approx)
    throw std::domain_error("estimate_coverage: Q1Approx is not a simulable event");
  const TrialCounts counts = run_parallel(cfg, kRandomProbe, seed, trials, threads);
  std::uint64_t successes = 0;
  switch (metric) {
    case Metric::H1: successes = counts.cond1; break;
    case Metric::Q1: successes = counts.cond2; break;
    case Metric::Joint: successes = counts.both; break;
    case Metric::Q1Approx: break;  // rejected above
  }
  const EstimateCI e = make_estimate(successes, trials);
  CoverageResult res;
  res.metric = metric;
  res.estimate = e.estimate;
  res.ci95_halfwidth = e.ci95_halfwidth;
  res.trials = trials;
  res.seed = seed;
  return res;
}

}  // namespace lora
