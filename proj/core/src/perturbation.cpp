#include "dsfo/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace dsfo::perturbation {

DitherDistribution DitherDistribution::two_interval(double lo, double hi) {
  if (!(lo > 0.0)) {
    throw std::invalid_argument("dither: lo must be > 0 (reciprocal bound would be infinite)");
  }
  if (!(hi >= lo)) throw std::invalid_argument("dither: need hi >= lo");
  return DitherDistribution(DitherKind::TwoInterval, lo, hi);
}

DitherDistribution DitherDistribution::rademacher(double magnitude) {
  if (!(magnitude > 0.0)) throw std::invalid_argument("dither: magnitude must be > 0");
  return DitherDistribution(DitherKind::Rademacher, magnitude, magnitude);
}

double DitherDistribution::mean_abs() const {
  return kind_ == DitherKind::Rademacher ? lo_ : 0.5 * (lo_ + hi_);
}

double DitherDistribution::mean_sq() const {
  if (kind_ == DitherKind::Rademacher || hi_ == lo_) return lo_ * lo_;
  return (hi_ * hi_ * hi_ - lo_ * lo_ * lo_) / (3.0 * (hi_ - lo_));
}

double DitherDistribution::sample_component(RngStream& rng) const {
  const double sign = rng.coin() ? 1.0 : -1.0;
  if (kind_ == DitherKind::Rademacher) return sign * lo_;
  return sign * rng.uniform(lo_, hi_);
}

Vec DitherDistribution::sample(std::size_t m, RngStream& rng) const {
  if (m == 0) throw std::invalid_argument("dither: dimension must be >= 1");
  Vec d(m);
  for (double& v : d) v = sample_component(rng);
  return d;
}

Vec reciprocal(const Vec& delta) {
  Vec r(delta.size());
  for (std::size_t p = 0; p < delta.size(); ++p) {
    if (delta[p] == 0.0) throw std::invalid_argument("reciprocal: zero dither component");
    r[p] = 1.0 / delta[p];
  }
  return r;
}

Vec estimate(DifferenceKind kind, const problem::Objective& obj, const problem::NoiseModel& noise,
             const Vec& x, double gain, const Vec& delta, RngStream& noise_rng) {
  if (!(gain > 0.0)) throw std::invalid_argument("estimate: gain must be > 0");
  check_dim(x, obj.dimension(), "estimate");
  check_dim(delta, obj.dimension(), "estimate dither");

  const Vec recip = reciprocal(delta);
  double scale = 0.0;
  switch (kind) {
    case DifferenceKind::TwoSided: {
      const double y_plus = problem::noisy_observe(obj, add(x, scaled(gain, delta)), noise, noise_rng);
      const double y_minus = problem::noisy_observe(obj, sub(x, scaled(gain, delta)), noise, noise_rng);
      scale = (y_plus - y_minus) / (2.0 * gain);
      break;
    }
    case DifferenceKind::RightSided: {
      const double y_plus = problem::noisy_observe(obj, add(x, scaled(gain, delta)), noise, noise_rng);
      const double y_base = problem::noisy_observe(obj, x, noise, noise_rng);
      scale = (y_plus - y_base) / gain;
      break;
    }
    case DifferenceKind::LeftSided: {
      const double y_base = problem::noisy_observe(obj, x, noise, noise_rng);
      const double y_minus = problem::noisy_observe(obj, sub(x, scaled(gain, delta)), noise, noise_rng);
      scale = (y_base - y_minus) / gain;
      break;
    }
  }
  return scaled(scale, recip);
}

}  // namespace dsfo::perturbation
