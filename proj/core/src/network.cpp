#include "dsfo/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dsfo::network {

namespace {

constexpr double kStochasticTol = 1e-12;

void require_valid_edges(int n, const EdgeSet& edges) {
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("topology: edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("topology: self-loops are implicit, not edges");
  }
}

Matrix metropolis_matrix(int n, const EdgeSet& edges) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  Matrix w(n, n);
  for (const Edge& e : edges) {
    const double val = 1.0 / (1.0 + std::max(deg[e.u], deg[e.v]));
    w(e.u, e.v) += val;
    w(e.v, e.u) += val;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return w;
}

Matrix uniform_neighbor_matrix(int n, const EdgeSet& edges) {
  Matrix w(n, n);
  const double val = 1.0 / n;
  for (const Edge& e : edges) {
    w(e.u, e.v) += val;
    w(e.v, e.u) += val;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return w;
}

// Directed support: w(i, j) > 0 means agent i hears agent j, edge (j -> i).
EdgeSet support_edges(const Matrix& w) {
  EdgeSet edges;
  for (int i = 0; i < w.rows; ++i) {
    for (int j = 0; j < w.cols; ++j) {
      if (i != j && w(i, j) > 0.0) edges.push_back({j, i});
    }
  }
  return edges;
}

void check_doubly_stochastic(const Matrix& w, long round, bool throw_on_fail,
                             std::string* detail = nullptr) {
  for (int i = 0; i < w.rows; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < w.cols; ++j) {
      if (w(i, j) < -kStochasticTol) {
        std::string msg = "negative entry at round " + std::to_string(round);
        if (throw_on_fail) throw std::invalid_argument("topology: " + msg);
        if (detail) *detail = msg;
        return;
      }
      row += w(i, j);
      col += w(j, i);
    }
    if (std::abs(row - 1.0) > kStochasticTol || std::abs(col - 1.0) > kStochasticTol) {
      std::string msg = "row/column sum off 1 at round " + std::to_string(round) + " (row " +
                        std::to_string(i + 1) + ")";
      if (throw_on_fail) throw std::invalid_argument("topology: " + msg);
      if (detail) *detail = msg;
      return;
    }
  }
}

// Strong connectivity of the directed graph given by adjacency lists:
// every node reachable from node 0 and node 0 reachable from every node.
bool strongly_connected(int n, const std::vector<std::vector<int>>& fwd,
                        const std::vector<std::vector<int>>& rev) {
  auto reach_all = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach_all(fwd) && reach_all(rev);
}

}  // namespace

bool ValidationReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const ConditionResult& c) { return c.pass; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const ConditionResult& c : items) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return out.str();
}

TopologySchedule::TopologySchedule() : TopologySchedule(1, {EdgeSet{}}, WeightRule::Metropolis, 1) {}

TopologySchedule::TopologySchedule(int agent_count, std::vector<EdgeSet> pattern, WeightRule rule,
                                   int kappa)
    : n_(agent_count), kappa_(kappa), rule_(rule), pattern_(std::move(pattern)) {
  if (n_ < 1) throw std::invalid_argument("topology: agent count must be >= 1");
  if (pattern_.empty()) throw std::invalid_argument("topology: empty pattern");
  if (kappa_ < 1) throw std::invalid_argument("topology: kappa must be >= 1");
  if (rule_ == WeightRule::Explicit) {
    throw std::invalid_argument("topology: explicit rule needs matrices");
  }
  matrices_.reserve(pattern_.size());
  for (const EdgeSet& edges : pattern_) {
    require_valid_edges(n_, edges);
    matrices_.push_back(rule_ == WeightRule::Metropolis ? metropolis_matrix(n_, edges)
                                                        : uniform_neighbor_matrix(n_, edges));
  }
  derive_eta();
}

TopologySchedule::TopologySchedule(std::vector<Matrix> matrices, int kappa, double eta_floor)
    : kappa_(kappa), eta_(eta_floor), rule_(WeightRule::Explicit), matrices_(std::move(matrices)),
      directed_(true) {
  if (matrices_.empty()) throw std::invalid_argument("topology: empty matrix list");
  if (kappa_ < 1) throw std::invalid_argument("topology: kappa must be >= 1");
  if (!(eta_ > 0.0 && eta_ < 1.0)) {
    throw std::invalid_argument("topology: eta floor must lie in (0, 1)");
  }
  n_ = matrices_.front().rows;
  for (std::size_t p = 0; p < matrices_.size(); ++p) {
    const Matrix& w = matrices_[p];
    if (w.rows != n_ || w.cols != n_) {
      throw std::invalid_argument("topology: matrices must be square with equal sizes");
    }
    check_doubly_stochastic(w, static_cast<long>(p) + 1, /*throw_on_fail=*/true);
    for (int i = 0; i < n_; ++i) {
      if (w(i, i) < eta_ - kStochasticTol) {
        throw std::invalid_argument("topology: diagonal entry below eta floor");
      }
      for (int j = 0; j < n_; ++j) {
        if (i != j && w(i, j) > 0.0 && w(i, j) < eta_ - kStochasticTol) {
          throw std::invalid_argument("topology: supported entry below eta floor");
        }
      }
    }
    pattern_.push_back(support_edges(w));
  }
}

void TopologySchedule::derive_eta() {
  double min_pos = 1.0;
  for (const Matrix& w : matrices_) {
    for (double v : w.data) {
      if (v > 0.0) min_pos = std::min(min_pos, v);
    }
  }
  eta_ = min_pos;
}

const Matrix& TopologySchedule::weights_at(long round) const {
  if (round < 1) throw std::invalid_argument("weights_at: rounds are 1-based");
  return matrices_[static_cast<std::size_t>(round % period())];
}

const EdgeSet& TopologySchedule::edges_at(long round) const {
  if (round < 1) throw std::invalid_argument("edges_at: rounds are 1-based");
  return pattern_[static_cast<std::size_t>(round % period())];
}

ValidationReport TopologySchedule::validate() const {
  ValidationReport report;
  const int p = period();

  // (a) entry floor on diagonal and supported off-diagonals
  {
    ConditionResult c{"weight-floor", true, "", 0};
    for (long k = 1; k <= p && c.pass; ++k) {
      const Matrix& w = weights_at(k);
      for (int i = 0; i < n_ && c.pass; ++i) {
        if (w(i, i) < eta_ - kStochasticTol) {
          c.pass = false;
          c.first_offending_round = k;
          c.detail = "diagonal below eta at agent " + std::to_string(i + 1);
        }
      }
      for (const Edge& e : edges_at(k)) {
        if (w(e.v, e.u) < eta_ - kStochasticTol || (!directed_ && w(e.u, e.v) < eta_ - kStochasticTol)) {
          c.pass = false;
          c.first_offending_round = k;
          c.detail = "edge weight below eta";
          break;
        }
      }
    }
    if (c.pass) c.detail = "eta = " + std::to_string(eta_);
    report.items.push_back(std::move(c));
  }

  // (b) double stochasticity and nonnegativity
  {
    ConditionResult c{"double-stochasticity", true, "", 0};
    for (long k = 1; k <= p && c.pass; ++k) {
      std::string detail;
      check_doubly_stochastic(weights_at(k), k, /*throw_on_fail=*/false, &detail);
      if (!detail.empty()) {
        c.pass = false;
        c.detail = detail;
        c.first_offending_round = k;
      }
    }
    report.items.push_back(std::move(c));
  }

  // (c) union over every window of kappa consecutive rounds strongly connected
  {
    ConditionResult c{"joint-connectivity", true, "", 0};
    for (long start = 1; start <= p && c.pass; ++start) {
      std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n_)),
          rev(static_cast<std::size_t>(n_));
      for (long k = start; k < start + kappa_; ++k) {
        for (const Edge& e : edges_at(k)) {
          fwd[e.u].push_back(e.v);
          rev[e.v].push_back(e.u);
          if (!directed_) {
            fwd[e.v].push_back(e.u);
            rev[e.u].push_back(e.v);
          }
        }
      }
      if (!strongly_connected(n_, fwd, rev)) {
        c.pass = false;
        c.first_offending_round = start;
        c.detail = "window starting at round " + std::to_string(start) +
                   " has a disconnected union graph (kappa = " + std::to_string(kappa_) + ")";
      }
    }
    report.items.push_back(std::move(c));
  }

  return report;
}

TransitionProduct transition_product(const TopologySchedule& sched, long k, long s) {
  if (s < 1 || k < s) throw std::invalid_argument("transition_product: need k >= s >= 1");
  Matrix prod = sched.weights_at(s);
  for (long r = s + 1; r <= k; ++r) prod = sched.weights_at(r) * prod;
  return TransitionProduct{k, s, std::move(prod)};
}

double mixing_deviation(const TopologySchedule& sched, long k, long s) {
  const TransitionProduct p = transition_product(sched, k, s);
  const double target = 1.0 / sched.agent_count();
  double dev = 0.0;
  for (double v : p.matrix.data) dev = std::max(dev, std::abs(v - target));
  return dev;
}

Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v = 0.0;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix file is empty: " + path);
  const std::size_t n = rows.size();
  Matrix m(static_cast<int>(n), static_cast<int>(rows.front().size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw std::runtime_error("matrix file has ragged rows: " + path);
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace dsfo::network
