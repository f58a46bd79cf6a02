#pragma once

#include <string>
#include <vector>

#include "dsfo/vec.hpp"

namespace dsfo::network {

/// Undirected communication link between two agents (0-based).
struct Edge {
  int u = 0;
  int v = 0;
};
using EdgeSet = std::vector<Edge>;

enum class WeightRule { Metropolis, UniformNeighbor, Explicit };

struct ConditionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  long first_offending_round = 0;  // 0 when none
};

struct ValidationReport {
  std::vector<ConditionResult> items;
  bool pass() const;
  std::string to_string() const;
};

/// Periodic time-varying topology: round k >= 1 uses pattern entry (k mod p).
/// Weight matrices are built once per pattern entry and are doubly stochastic
/// with positive diagonals; the entry floor eta is derived as the minimum
/// positive entry over one period unless explicit matrices supply it.
class TopologySchedule {
 public:
  /// Single agent, weight [[1]]; useful as a neutral default.
  TopologySchedule();
  TopologySchedule(int agent_count, std::vector<EdgeSet> pattern, WeightRule rule, int kappa);
  /// Explicit per-phase matrices; the edge sets are implied by off-diagonal
  /// support. Throws when a matrix fails double stochasticity, nonnegativity,
  /// or the supplied eta floor.
  TopologySchedule(std::vector<Matrix> matrices, int kappa, double eta_floor);

  int agent_count() const { return n_; }
  int period() const { return static_cast<int>(pattern_.size()); }
  int kappa() const { return kappa_; }
  double eta() const { return eta_; }
  WeightRule rule() const { return rule_; }

  const Matrix& weights_at(long round) const;
  const EdgeSet& edges_at(long round) const;
  const std::vector<EdgeSet>& pattern() const { return pattern_; }

  ValidationReport validate() const;

 private:
  void derive_eta();
  int n_ = 1;
  int kappa_ = 1;
  double eta_ = 1.0;
  WeightRule rule_ = WeightRule::Metropolis;
  std::vector<EdgeSet> pattern_;
  std::vector<Matrix> matrices_;
  bool directed_ = false;  // explicit matrices may be non-symmetric
};

struct TransitionProduct {
  long k = 0;
  long s = 0;
  Matrix matrix;  // W_k * W_{k-1} * ... * W_s
};

/// Exact product of the weight matrices over rounds s..k (k >= s >= 1).
TransitionProduct transition_product(const TopologySchedule& sched, long k, long s);

/// max_{ij} |[product]_{ij} - 1/n|
double mixing_deviation(const TopologySchedule& sched, long k, long s);

/// Whitespace-separated rows; each non-empty line is one matrix row.
Matrix load_matrix_file(const std::string& path);

}  // namespace dsfo::network
