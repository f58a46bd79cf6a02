#pragma once

#include <vector>

#include "dsfo/engine.hpp"
#include "dsfo/metrics.hpp"
#include "dsfo/perturbation.hpp"
#include "dsfo/problem.hpp"
#include "dsfo/vec.hpp"

namespace dsfo::analysis {

/// Pointwise seed-averaged metrics over a sweep of runs of one configuration.
struct TrajectoryMetrics {
  std::vector<long> rounds;
  std::vector<double> mean_sq_dist;
  std::vector<double> se_sq_dist;
  std::vector<double> mean_consensus_error;
  std::vector<double> se_consensus_error;
  /// Per-agent seed-mean of ||xi_k^i - ref||^2, indexed [agent][round index].
  std::vector<std::vector<double>> per_agent_mean_sq_dist;
  int seed_count = 0;
};

/// Records must share the (seed-excluded) config fingerprint.
TrajectoryMetrics aggregate_over_seeds(const std::vector<engine::RunRecord>& records);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  long k_lo = 0;
  long k_hi = 0;
  int points = 0;
};

/// Least squares on (log k, log value) over logged rounds within [k_lo, k_hi].
/// Requires >= 10 points with positive values; throws otherwise.
RateFit fit_rate(const std::vector<long>& rounds, const std::vector<double>& values, long k_lo,
                 long k_hi);
RateFit fit_rate(const TrajectoryMetrics& metrics, long k_lo, long k_hi);

struct GeometricFit {
  double ratio = 0.0;      // exp(slope per index step)
  double log_scale = 0.0;  // intercept
  double residual_rms = 0.0;
  double log_range = 0.0;  // max - min of the log data
  int points = 0;
};

/// Least squares of log(values[t]) against t = 1..N (geometric-decay fit).
GeometricFit fit_geometric(const std::vector<double>& values);

/// Minimizer of sum_i f_i over the intersection of the constraint sets.
/// Exact interval reduction + golden section for m = 1; adaptive grid zoom
/// for m = 2 (1e-6 accurate for convex objectives); projected subgradient
/// with iterate averaging for m >= 3 (best effort, roughly 1e-3).
Vec centralized_minimize(const problem::ProblemSpec& spec);

struct MomentReport {
  int samples = 0;
  double mean_norm = 0.0;
  double se_norm = 0.0;
  double mean_sq_norm = 0.0;
  double se_sq_norm = 0.0;
  double bound_norm = 0.0;     // L + sqrt(m) b e / (2 gain)
  double bound_sq_norm = 0.0;  // bound_norm^2
  double lipschitz = 0.0;
  double noise_moment = 0.0;   // e = sup sqrt(E eps^2)
  bool norm_within_bound(double n_se = 3.0) const;
  bool sq_norm_within_bound(double n_se = 3.0) const;
};

/// Monte Carlo first/second moments of the randomized-difference norm for one
/// agent's objective at a fixed point, against the analytic bounds.
/// Requires samples >= 1000.
MomentReport moment_probe(perturbation::DifferenceKind kind, const problem::ProblemSpec& spec,
                          int agent, const perturbation::DitherDistribution& dither, const Vec& x,
                          double gain, int samples, RngStream& rng);

}  // namespace dsfo::analysis
