#pragma once

#include <cstddef>

#include "dsfo/problem.hpp"
#include "dsfo/rng.hpp"
#include "dsfo/vec.hpp"

namespace dsfo::perturbation {

enum class DitherKind { TwoInterval, Rademacher };

/// Zero-mean-reciprocal dither with bounded magnitude a and bounded
/// reciprocal b; components are i.i.d. across coordinates, agents and rounds
/// when sampled from keyed streams.
class DitherDistribution {
 public:
  /// |component| uniform on [lo, hi], sign equiprobable; requires 0 < lo <= hi.
  static DitherDistribution two_interval(double lo, double hi);
  /// Component is +magnitude or -magnitude equiprobably; requires magnitude > 0.
  static DitherDistribution rademacher(double magnitude);

  DitherDistribution() : DitherDistribution(rademacher(1.0)) {}

  DitherKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// a: |component| < a almost surely (up to the closed upper endpoint).
  double magnitude_bound() const { return hi_; }
  /// b: |1/component| <= b.
  double reciprocal_bound() const { return 1.0 / lo_; }
  /// E|component| in closed form.
  double mean_abs() const;
  /// E[component^2] in closed form.
  double mean_sq() const;

  /// One component; draws the sign first, then the magnitude.
  double sample_component(RngStream& rng) const;
  /// m i.i.d. components.
  Vec sample(std::size_t m, RngStream& rng) const;

 private:
  DitherDistribution(DitherKind k, double lo, double hi) : kind_(k), lo_(lo), hi_(hi) {}
  DitherKind kind_;
  double lo_, hi_;
};

/// Elementwise 1/delta. Throws on a zero component (cannot happen for
/// samples of the built-in dithers).
Vec reciprocal(const Vec& delta);

enum class DifferenceKind { TwoSided, RightSided, LeftSided };

/// Randomized-difference estimate of a descent direction at x from noisy
/// function values only. Exactly two observations per call, each with a
/// fresh independent noise draw:
///   two-sided:   ((y+ - y-) / (2 gain)) .* reciprocal(delta)
///   right-sided: ((y+ - y0) / gain)     .* reciprocal(delta)
///   left-sided:  ((y0 - y-) / gain)     .* reciprocal(delta)
/// where y+/y- observe x +- gain*delta and y0 observes x itself.
/// Draw order: the (+) observation first for two- and right-sided; the
/// unperturbed observation first for left-sided.
Vec estimate(DifferenceKind kind, const problem::Objective& obj, const problem::NoiseModel& noise,
             const Vec& x, double gain, const Vec& delta, RngStream& noise_rng);

}  // namespace dsfo::perturbation
