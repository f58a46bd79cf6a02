#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dsfo/network.hpp"
#include "dsfo/perturbation.hpp"
#include "dsfo/problem.hpp"
#include "dsfo/rng.hpp"
#include "dsfo/schedules.hpp"
#include "dsfo/vec.hpp"

namespace dsfo::engine {

enum class Algorithm { SubgradientFree, BaselineSubgradient };

/// Snapshot every round up to dense_until, then at geometrically spaced
/// rounds (ratio log_ratio); the final round is always logged.
struct SnapshotPolicy {
  long dense_until = 1000;
  double log_ratio = 1.02;
  long next_logged_round(long last_logged) const;
};

struct SwarmState {
  long round = 1;
  std::vector<Vec> iterates;
  std::vector<Vec> dithers;      // last sampled dither per agent (SF only)
  std::vector<Vec> differences;  // last search direction per agent
};

struct RunConfig {
  problem::ProblemSpec problem;
  network::TopologySchedule topology;
  schedules::ScheduleParams schedule;
  perturbation::DitherDistribution dither;
  perturbation::DifferenceKind difference = perturbation::DifferenceKind::TwoSided;
  Algorithm algorithm = Algorithm::SubgradientFree;
  long iterations = 0;
  std::uint64_t seed = 1;
  /// Empty: each agent starts at the projection of the origin onto its set.
  std::vector<Vec> initial_iterates;
  /// Reference point for the squared-distance metric; when absent the
  /// recorded sq_dist is NaN.
  std::optional<Vec> reference_optimum;
  SnapshotPolicy snapshots;
  /// Agent evaluation order, for determinism audits; empty = natural order.
  /// Results are required to be bit-identical for every permutation.
  std::vector<int> eval_order;

  /// Topology + schedule validation, dimension checks, feasible initials.
  /// Throws std::invalid_argument on failure.
  void validate() const;
};

struct Snapshot {
  long round = 0;
  std::vector<Vec> iterates;
  double consensus_error = 0.0;
  double sq_dist = 0.0;  // NaN when no reference point was configured
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;  // canonical config hash; excludes the seed
  Vec reference;                  // empty when none
  long iterations = 0;
  std::vector<Snapshot> snapshots;
};

/// Signalled when an iterate turns non-finite (typically a mis-scaled
/// schedule); carries the offending round.
struct EngineAbort : std::runtime_error {
  EngineAbort(long round_, const std::string& what_) : std::runtime_error(what_), round(round_) {}
  long round = 0;
};

std::vector<Vec> default_initial_iterates(const problem::ProblemSpec& spec);
SwarmState initial_state(const RunConfig& cfg);

/// One synchronous round: consensus averaging, randomized-difference
/// estimate at the averaged point, descent step, projection. All randomness
/// comes from streams keyed by (seed, agent, round), so the result does not
/// depend on the agent evaluation order.
SwarmState step_sf(const SwarmState& state, const RunConfig& cfg);

/// Baseline round: consensus averaging, then a noisy subgradient step with
/// step size 1/sqrt(k), then projection.
SwarmState step_baseline(const SwarmState& state, const RunConfig& cfg);

/// Dispatch on cfg.algorithm.
SwarmState step(const SwarmState& state, const RunConfig& cfg);

/// Executes cfg.iterations rounds from the initial state. Identical config
/// and seed give a bit-identical record.
RunRecord run(const RunConfig& cfg);

/// Canonical config hash; excludes seed and eval_order, so records from
/// seed sweeps of one configuration share it.
std::uint64_t config_fingerprint(const RunConfig& cfg);

/// Hash of the problem + topology blocks only (comparison precondition).
std::uint64_t problem_topology_fingerprint(const RunConfig& cfg);

}  // namespace dsfo::engine
