#include "dsfo/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsfo::schedules {

double step_size(const ScheduleParams& p, long k) {
  if (k < 1) throw std::invalid_argument("step_size: rounds are 1-based");
  return p.scale_iota / std::pow(static_cast<double>(k), 1.0 + p.epsilon);
}

double dither_gain(const ScheduleParams& p, long k) {
  if (k < 1) throw std::invalid_argument("dither_gain: rounds are 1-based");
  return p.scale_c / std::pow(static_cast<double>(k), p.delta);
}

bool ScheduleReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const ConditionCheck& c) { return c.pass; });
}

std::string ScheduleReport::to_string() const {
  std::ostringstream out;
  for (const ConditionCheck& c : items) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  for (const std::string& w : warnings) out << "[warn] " << w << '\n';
  return out.str();
}

ScheduleReport validate(const ScheduleParams& p) {
  ScheduleReport r;
  auto add = [&r](std::string name, bool pass, std::string detail) {
    r.items.push_back({std::move(name), pass, std::move(detail)});
  };

  // Power-law series facts: sum k^(-q) converges iff q > 1.
  add("steps-summable", p.epsilon > 0.0,
      "sum of 1/k^(1+epsilon) finite requires epsilon > 0");
  add("gain-decays", p.delta > 0.0, "1/k^delta -> 0 requires delta > 0");
  add("step-gain-ratio-diverges", p.delta >= p.epsilon,
      "sum of step/gain = sum 1/k^(1+epsilon-delta) infinite requires delta >= epsilon");
  add("squared-step-gain-ratio-summable", p.delta < 0.5 + p.epsilon,
      "sum of (step/gain)^2 finite requires delta < 1/2 + epsilon");
  add("step-gain-product-summable", p.epsilon + p.delta > 0.0,
      "sum of step*gain finite requires epsilon + delta > 0");
  add("exponent-window", p.epsilon > 0.0 && p.delta >= p.epsilon && p.delta < 0.5 + p.epsilon,
      "rate guarantee needs 1/2 + epsilon > delta >= epsilon > 0");

  if (!(p.scale_iota > 0.0) || !(p.scale_c > 0.0)) {
    add("positive-scales", false, "scale multipliers must be > 0");
  }
  if (p.scale_iota != 1.0 || p.scale_c != 1.0) {
    r.warnings.push_back("scale multipliers differ from 1; absolute constants differ from the "
                         "plain 1/k^(1+epsilon), 1/k^delta sequences");
  }
  return r;
}

double predicted_rate(const ScheduleParams& p) {
  if (!validate(p).pass()) {
    throw std::invalid_argument("predicted_rate: schedule parameters fail validation");
  }
  return std::min(p.epsilon, 1.0 + 2.0 * p.epsilon - 2.0 * p.delta);
}

}  // namespace dsfo::schedules
