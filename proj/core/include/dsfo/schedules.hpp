#pragma once

#include <string>
#include <vector>

namespace dsfo::schedules {

/// Power-law step and gain sequences: step = scale_iota / k^(1+epsilon),
/// gain = scale_c / k^delta, k >= 1.
struct ScheduleParams {
  double epsilon = 0.5;
  double delta = 0.5;
  double scale_iota = 1.0;
  double scale_c = 1.0;
};

double step_size(const ScheduleParams& p, long k);
double dither_gain(const ScheduleParams& p, long k);

struct ConditionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ScheduleReport {
  std::vector<ConditionCheck> items;
  std::vector<std::string> warnings;
  bool pass() const;
  std::string to_string() const;
};

/// Analytic checks of the summability/divergence requirements on the step
/// and gain series, plus the exponent window 1/2 + epsilon > delta >= epsilon > 0
/// needed for the convergence-rate guarantee.
ScheduleReport validate(const ScheduleParams& p);

/// Predicted mean-square decay exponent min(epsilon, 1 + 2 epsilon - 2 delta).
/// Throws std::invalid_argument when validate(p) fails.
double predicted_rate(const ScheduleParams& p);

}  // namespace dsfo::schedules
