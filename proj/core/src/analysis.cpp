#include "dsfo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsfo::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  return fit;
}

// One-dimensional feasible interval of a constraint set.
void intersect_interval_1d(const problem::ConstraintSet& s, double& lo, double& hi) {
  using problem::ConstraintKind;
  switch (s.kind()) {
    case ConstraintKind::Ball:
      lo = std::max(lo, s.center()[0] - s.scalar());
      hi = std::min(hi, s.center()[0] + s.scalar());
      break;
    case ConstraintKind::Box:
      lo = std::max(lo, s.center()[0]);
      hi = std::min(hi, s.aux()[0]);
      break;
    case ConstraintKind::Halfspace: {
      const double a = s.center()[0], b = s.scalar();
      if (a > 0.0) {
        hi = std::min(hi, b / a);
      } else if (a < 0.0) {
        lo = std::max(lo, b / a);
      } else if (b < 0.0) {
        lo = 1.0;
        hi = 0.0;  // empty
      }
      break;
    }
    case ConstraintKind::WholeSpace: break;
  }
}

double golden_section(const std::function<double(double)>& f, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Vec minimize_1d(const problem::ProblemSpec& spec) {
  double lo = -kInf, hi = kInf;
  for (const problem::ConstraintSet& s : spec.constraints) intersect_interval_1d(s, lo, hi);
  if (!(lo <= hi)) throw std::invalid_argument("centralized_minimize: empty intersection");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("centralized_minimize: intersection must be bounded");
  }
  const double x = golden_section([&spec](double t) { return spec.total_objective(Vec{t}); }, lo, hi);
  return Vec{x};
}

Vec minimize_2d(const problem::ProblemSpec& spec) {
  // bounding box of the intersection from the per-set bounding radii
  double radius = kInf;
  for (const problem::ConstraintSet& s : spec.constraints) {
    radius = std::min(radius, s.bounding_radius());
  }
  if (!std::isfinite(radius)) {
    throw std::invalid_argument("centralized_minimize: intersection must be bounded");
  }
  Vec center = spec.feasible_point();
  double half = radius + norm2(center);

  const int grid = 41;
  Vec best = center;
  double best_val = spec.total_objective(center);
  for (int zoom = 0; zoom < 18; ++zoom) {
    Vec round_best = best;
    double round_val = best_val;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        Vec p{center[0] - half + 2.0 * half * i / (grid - 1),
              center[1] - half + 2.0 * half * j / (grid - 1)};
        bool feasible = true;
        for (const problem::ConstraintSet& s : spec.constraints) {
          if (!s.contains(p, 1e-12)) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        const double v = spec.total_objective(p);
        if (v < round_val) {
          round_val = v;
          round_best = p;
        }
      }
    }
    best = round_best;
    best_val = round_val;
    center = best;
    half *= 0.25;
    if (half < 1e-9) break;
  }
  return best;
}

Vec minimize_nd(const problem::ProblemSpec& spec) {
  // projected subgradient with iterate averaging; feasibility by cyclic
  // projections per step
  Vec z = spec.feasible_point();
  double radius = kInf;
  for (const problem::ConstraintSet& s : spec.constraints) {
    radius = std::min(radius, s.bounding_radius());
  }
  if (!std::isfinite(radius)) {
    throw std::invalid_argument("centralized_minimize: intersection must be bounded");
  }
  const int iters = 200000;
  Vec avg(spec.dimension, 0.0);
  long avg_count = 0;
  for (int t = 1; t <= iters; ++t) {
    Vec g(spec.dimension, 0.0);
    for (const problem::Objective& f : spec.objectives) axpy_in_place(g, 1.0, f.subgradient(z));
    const double gn = norm2(g);
    if (gn > 0.0) axpy_in_place(z, -(radius / (gn * std::sqrt(static_cast<double>(t)))), g);
    for (int pass = 0; pass < 4; ++pass) {
      for (const problem::ConstraintSet& s : spec.constraints) z = s.project(z);
    }
    if (t > iters / 2) {
      axpy_in_place(avg, 1.0, z);
      ++avg_count;
    }
  }
  for (double& v : avg) v /= static_cast<double>(avg_count);
  for (const problem::ConstraintSet& s : spec.constraints) avg = s.project(avg);
  return avg;
}

}  // namespace

double consensus_error(const std::vector<Vec>& states) {
  if (states.empty()) throw std::invalid_argument("consensus_error: empty input");
  const Vec mean = mean_point(states);
  double s = 0.0;
  for (const Vec& x : states) s += sq_dist(x, mean);
  return s;
}

double sq_dist_to(const std::vector<Vec>& states, const Vec& ref) {
  double s = 0.0;
  for (const Vec& x : states) s += sq_dist(x, ref);
  return s;
}

TrajectoryMetrics aggregate_over_seeds(const std::vector<engine::RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate_over_seeds: no records");
  const engine::RunRecord& first = records.front();
  for (const engine::RunRecord& r : records) {
    if (r.fingerprint != first.fingerprint) {
      throw std::invalid_argument("aggregate_over_seeds: mismatched config fingerprints");
    }
    if (r.snapshots.size() != first.snapshots.size()) {
      throw std::invalid_argument("aggregate_over_seeds: mismatched snapshot counts");
    }
  }

  const std::size_t rounds = first.snapshots.size();
  const std::size_t n_agents = first.snapshots.empty() ? 0 : first.snapshots[0].iterates.size();
  const std::size_t n_seeds = records.size();
  const bool has_reference = !first.reference.empty();

  TrajectoryMetrics m;
  m.seed_count = static_cast<int>(n_seeds);
  m.rounds.reserve(rounds);
  m.per_agent_mean_sq_dist.assign(n_agents, std::vector<double>(rounds, 0.0));

  for (std::size_t t = 0; t < rounds; ++t) {
    m.rounds.push_back(first.snapshots[t].round);
    double sum_sq = 0.0, sumsq_sq = 0.0, sum_ce = 0.0, sumsq_ce = 0.0;
    for (const engine::RunRecord& r : records) {
      const engine::Snapshot& snap = r.snapshots[t];
      if (snap.round != first.snapshots[t].round) {
        throw std::invalid_argument("aggregate_over_seeds: snapshot rounds differ across records");
      }
      sum_sq += snap.sq_dist;
      sumsq_sq += snap.sq_dist * snap.sq_dist;
      sum_ce += snap.consensus_error;
      sumsq_ce += snap.consensus_error * snap.consensus_error;
      if (has_reference) {
        for (std::size_t i = 0; i < n_agents; ++i) {
          m.per_agent_mean_sq_dist[i][t] += sq_dist(snap.iterates[i], r.reference);
        }
      }
    }
    const double inv = 1.0 / static_cast<double>(n_seeds);
    const double mean_sq = sum_sq * inv;
    const double mean_ce = sum_ce * inv;
    m.mean_sq_dist.push_back(mean_sq);
    m.mean_consensus_error.push_back(mean_ce);
    auto standard_error = [&](double sumsq, double mean) {
      if (n_seeds < 2) return 0.0;
      const double var = std::max(0.0, (sumsq - n_seeds * mean * mean) /
                                           static_cast<double>(n_seeds - 1));
      return std::sqrt(var / static_cast<double>(n_seeds));
    };
    m.se_sq_dist.push_back(standard_error(sumsq_sq, mean_sq));
    m.se_consensus_error.push_back(standard_error(sumsq_ce, mean_ce));
    for (std::size_t i = 0; i < n_agents; ++i) m.per_agent_mean_sq_dist[i][t] *= inv;
  }
  return m;
}

RateFit fit_rate(const std::vector<long>& rounds, const std::vector<double>& values, long k_lo,
                 long k_hi) {
  if (rounds.size() != values.size()) throw std::invalid_argument("fit_rate: length mismatch");
  if (!(k_lo < k_hi)) throw std::invalid_argument("fit_rate: need k_lo < k_hi");
  std::vector<double> xs, ys;
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    if (rounds[t] < k_lo || rounds[t] > k_hi) continue;
    if (!(values[t] > 0.0)) {
      throw std::invalid_argument("fit_rate: non-positive value in window at round " +
                                  std::to_string(rounds[t]) + " (shrink the window)");
    }
    xs.push_back(std::log(static_cast<double>(rounds[t])));
    ys.push_back(std::log(values[t]));
  }
  if (xs.size() < 10) {
    throw std::invalid_argument("fit_rate: window must contain at least 10 logged rounds");
  }
  const LineFit fit = least_squares(xs, ys);
  RateFit r;
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.residual_rms = fit.residual_rms;
  r.k_lo = k_lo;
  r.k_hi = k_hi;
  r.points = static_cast<int>(xs.size());
  return r;
}

RateFit fit_rate(const TrajectoryMetrics& metrics, long k_lo, long k_hi) {
  return fit_rate(metrics.rounds, metrics.mean_sq_dist, k_lo, k_hi);
}

GeometricFit fit_geometric(const std::vector<double>& values) {
  if (values.size() < 3) throw std::invalid_argument("fit_geometric: need at least 3 values");
  std::vector<double> xs, ys;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (!(values[t] > 0.0)) throw std::invalid_argument("fit_geometric: values must be positive");
    xs.push_back(static_cast<double>(t + 1));
    ys.push_back(std::log(values[t]));
  }
  const LineFit fit = least_squares(xs, ys);
  GeometricFit g;
  g.ratio = std::exp(fit.slope);
  g.log_scale = fit.intercept;
  g.residual_rms = fit.residual_rms;
  g.log_range = *std::max_element(ys.begin(), ys.end()) - *std::min_element(ys.begin(), ys.end());
  g.points = static_cast<int>(xs.size());
  return g;
}

Vec centralized_minimize(const problem::ProblemSpec& spec) {
  spec.validate();
  if (spec.dimension == 1) return minimize_1d(spec);
  if (spec.dimension == 2) return minimize_2d(spec);
  return minimize_nd(spec);
}

bool MomentReport::norm_within_bound(double n_se) const {
  return mean_norm <= bound_norm + n_se * se_norm;
}

bool MomentReport::sq_norm_within_bound(double n_se) const {
  return mean_sq_norm <= bound_sq_norm + n_se * se_sq_norm;
}

MomentReport moment_probe(perturbation::DifferenceKind kind, const problem::ProblemSpec& spec,
                          int agent, const perturbation::DitherDistribution& dither, const Vec& x,
                          double gain, int samples, RngStream& rng) {
  if (samples < 1000) throw std::invalid_argument("moment_probe: need at least 1000 samples");
  if (agent < 0 || static_cast<std::size_t>(agent) >= spec.agent_count()) {
    throw std::invalid_argument("moment_probe: agent out of range");
  }
  const problem::Objective& f = spec.objectives[agent];
  const problem::ConstraintSet& set = spec.constraints[agent];

  double sum_n = 0.0, sumsq_n = 0.0, sum_s = 0.0, sumsq_s = 0.0;
  for (int t = 0; t < samples; ++t) {
    const Vec delta = dither.sample(spec.dimension, rng);
    const Vec d = perturbation::estimate(kind, f, spec.noise, x, gain, delta, rng);
    const double nn = norm2(d);
    sum_n += nn;
    sumsq_n += nn * nn;
    sum_s += nn * nn;
    sumsq_s += nn * nn * nn * nn;
  }

  MomentReport rep;
  rep.samples = samples;
  rep.lipschitz = problem::lipschitz_bound(f, set);
  rep.noise_moment = std::sqrt(spec.noise.second_moment());
  rep.mean_norm = sum_n / samples;
  rep.mean_sq_norm = sum_s / samples;
  auto standard_error = [samples](double sumsq, double mean) {
    if (samples < 2) return 0.0;
    const double var = std::max(0.0, (sumsq - samples * mean * mean) / (samples - 1.0));
    return std::sqrt(var / samples);
  };
  rep.se_norm = standard_error(sumsq_n, rep.mean_norm);
  rep.se_sq_norm = standard_error(sumsq_s, rep.mean_sq_norm);
  rep.bound_norm = rep.lipschitz + std::sqrt(static_cast<double>(spec.dimension)) *
                                       dither.reciprocal_bound() * rep.noise_moment / (2.0 * gain);
  rep.bound_sq_norm = rep.bound_norm * rep.bound_norm;
  return rep;
}

}  // namespace dsfo::analysis
