#include "dsfo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dsfo/metrics.hpp"

namespace dsfo::engine {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void describe_vec(std::ostringstream& out, const Vec& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << fmt17(v[i]);
  }
  out << ']';
}

void describe_objective(std::ostringstream& out, const problem::Objective& f) {
  using problem::Objective;
  if (const auto* d = std::get_if<Objective::AffineData>(&f.data())) {
    out << "affine a=";
    describe_vec(out, d->a);
    out << " b=" << fmt17(d->b);
  } else if (const auto* d = std::get_if<Objective::QuadraticData>(&f.data())) {
    out << "quadratic ";
    if (d->scaled_identity) {
      out << "scale=" << fmt17(d->scale);
    } else {
      out << "q=";
      describe_vec(out, d->q.data);
    }
    out << " shift=";
    describe_vec(out, d->shift);
  } else if (const auto* d = std::get_if<Objective::AbsSumData>(&f.data())) {
    out << "abs_sum weights=";
    describe_vec(out, d->weights);
    out << " shift=";
    describe_vec(out, d->shift);
  } else if (const auto* d = std::get_if<Objective::MaxAffineData>(&f.data())) {
    out << "max_affine rows=";
    for (const Vec& r : d->rows) describe_vec(out, r);
    out << " offsets=";
    describe_vec(out, d->offsets);
  } else {
    // callables hash by declaration only
    const auto& c = std::get<Objective::CustomData>(f.data());
    out << "custom dim=" << f.dimension() << " lipschitz=" << fmt17(c.lipschitz);
  }
}

void describe_constraint(std::ostringstream& out, const problem::ConstraintSet& s) {
  using problem::ConstraintKind;
  switch (s.kind()) {
    case ConstraintKind::Ball:
      out << "ball center=";
      describe_vec(out, s.center());
      out << " radius=" << fmt17(s.scalar());
      break;
    case ConstraintKind::Box:
      out << "box lo=";
      describe_vec(out, s.center());
      out << " hi=";
      describe_vec(out, s.aux());
      break;
    case ConstraintKind::Halfspace:
      out << "halfspace a=";
      describe_vec(out, s.center());
      out << " b=" << fmt17(s.scalar());
      break;
    case ConstraintKind::WholeSpace:
      out << "whole_space dim=" << s.dimension();
      break;
  }
}

void describe_problem_topology(std::ostringstream& out, const RunConfig& cfg) {
  const auto& spec = cfg.problem;
  out << "dimension=" << spec.dimension << "\nagents=" << spec.agent_count() << "\nnoise="
      << (spec.noise.kind == problem::NoiseModel::Kind::None ? "none" : "gaussian")
      << " sigma=" << fmt17(spec.noise.sigma) << '\n';
  for (std::size_t i = 0; i < spec.agent_count(); ++i) {
    out << "objective." << i + 1 << '=';
    describe_objective(out, spec.objectives[i]);
    out << "\nconstraint." << i + 1 << '=';
    describe_constraint(out, spec.constraints[i]);
    out << '\n';
  }
  const auto& topo = cfg.topology;
  out << "topology rule=" << static_cast<int>(topo.rule()) << " kappa=" << topo.kappa()
      << " period=" << topo.period() << '\n';
  for (long k = 1; k <= topo.period(); ++k) {
    out << "phase." << k << '=';
    if (topo.rule() == network::WeightRule::Explicit) {
      describe_vec(out, topo.weights_at(k).data);
    } else {
      for (const network::Edge& e : topo.edges_at(k)) out << e.u << '-' << e.v << ';';
    }
    out << '\n';
  }
  if (topo.rule() == network::WeightRule::Explicit) out << "eta=" << fmt17(topo.eta()) << '\n';
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<int> resolve_order(const std::vector<int>& order, std::size_t n) {
  if (order.empty()) {
    std::vector<int> natural(n);
    std::iota(natural.begin(), natural.end(), 0);
    return natural;
  }
  return order;
}

Vec averaged_iterate(const Matrix& w, const std::vector<Vec>& iterates, int agent,
                     std::size_t dim) {
  Vec x(dim, 0.0);
  for (std::size_t j = 0; j < iterates.size(); ++j) {
    const double wij = w(agent, static_cast<int>(j));
    if (wij != 0.0) axpy_in_place(x, wij, iterates[j]);
  }
  return x;
}

}  // namespace

long SnapshotPolicy::next_logged_round(long last_logged) const {
  if (last_logged < dense_until) return last_logged + 1;
  const long geometric = static_cast<long>(std::ceil(static_cast<double>(last_logged) * log_ratio));
  return std::max(last_logged + 1, geometric);
}

void RunConfig::validate() const {
  problem.validate();
  if (static_cast<std::size_t>(topology.agent_count()) != problem.agent_count()) {
    throw std::invalid_argument("config: topology agent count != problem agent count");
  }
  const network::ValidationReport topo_report = topology.validate();
  if (!topo_report.pass()) {
    throw std::invalid_argument("config: topology validation failed\n" + topo_report.to_string());
  }
  const schedules::ScheduleReport sched_report = schedules::validate(schedule);
  if (!sched_report.pass()) {
    throw std::invalid_argument("config: schedule validation failed\n" + sched_report.to_string());
  }
  if (iterations < 0) throw std::invalid_argument("config: iterations must be >= 0");
  if (!initial_iterates.empty()) {
    if (initial_iterates.size() != problem.agent_count()) {
      throw std::invalid_argument("config: initial iterate count != agent count");
    }
    for (std::size_t i = 0; i < initial_iterates.size(); ++i) {
      check_dim(initial_iterates[i], problem.dimension, "initial iterate");
      if (!problem.constraints[i].contains(initial_iterates[i], 1e-9)) {
        throw std::invalid_argument("config: initial iterate " + std::to_string(i + 1) +
                                    " is infeasible");
      }
    }
  }
  if (reference_optimum) check_dim(*reference_optimum, problem.dimension, "reference optimum");
  if (!eval_order.empty()) {
    std::vector<int> sorted = eval_order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != static_cast<int>(i) || sorted.size() != problem.agent_count()) {
        throw std::invalid_argument("config: eval_order must be a permutation of the agents");
      }
    }
  }
  if (!(snapshots.log_ratio > 1.0)) {
    throw std::invalid_argument("config: snapshot log ratio must be > 1");
  }
}

std::vector<Vec> default_initial_iterates(const problem::ProblemSpec& spec) {
  std::vector<Vec> init;
  init.reserve(spec.agent_count());
  const Vec origin(spec.dimension, 0.0);
  for (const problem::ConstraintSet& s : spec.constraints) init.push_back(s.project(origin));
  return init;
}

SwarmState initial_state(const RunConfig& cfg) {
  SwarmState st;
  st.round = 1;
  st.iterates = cfg.initial_iterates.empty() ? default_initial_iterates(cfg.problem)
                                             : cfg.initial_iterates;
  st.dithers.assign(cfg.problem.agent_count(), Vec{});
  st.differences.assign(cfg.problem.agent_count(), Vec{});
  return st;
}

SwarmState step_sf(const SwarmState& state, const RunConfig& cfg) {
  const auto& spec = cfg.problem;
  const std::size_t n = spec.agent_count();
  const std::size_t m = spec.dimension;
  const long k = state.round;
  const Matrix& w = cfg.topology.weights_at(k);
  const double iota = schedules::step_size(cfg.schedule, k);
  const double gain = schedules::dither_gain(cfg.schedule, k);

  SwarmState next;
  next.round = k + 1;
  next.iterates.resize(n);
  next.dithers.resize(n);
  next.differences.resize(n);

  for (int i : resolve_order(cfg.eval_order, n)) {
    Vec x = averaged_iterate(w, state.iterates, i, m);
    RngStream dither_rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(k), StreamPurpose::Dither);
    Vec delta = cfg.dither.sample(m, dither_rng);
    RngStream noise_rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i),
                                        static_cast<std::uint64_t>(k), StreamPurpose::Noise);
    Vec d = perturbation::estimate(cfg.difference, spec.objectives[i], spec.noise, x, gain, delta,
                                   noise_rng);
    axpy_in_place(x, -iota, d);
    next.iterates[i] = spec.constraints[i].project(x);
    next.dithers[i] = std::move(delta);
    next.differences[i] = std::move(d);
  }
  return next;
}

SwarmState step_baseline(const SwarmState& state, const RunConfig& cfg) {
  const auto& spec = cfg.problem;
  const std::size_t n = spec.agent_count();
  const std::size_t m = spec.dimension;
  const long k = state.round;
  const Matrix& w = cfg.topology.weights_at(k);
  const double alpha = 1.0 / std::sqrt(static_cast<double>(k));

  SwarmState next;
  next.round = k + 1;
  next.iterates.resize(n);
  next.dithers.resize(n);
  next.differences.resize(n);

  for (int i : resolve_order(cfg.eval_order, n)) {
    Vec x = averaged_iterate(w, state.iterates, i, m);
    Vec g = spec.objectives[i].subgradient(x);
    if (spec.noise.kind == problem::NoiseModel::Kind::Gaussian && spec.noise.sigma > 0.0) {
      RngStream noise_rng =
          derive_stream(cfg.seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k),
                        StreamPurpose::SubgradientNoise);
      for (double& gp : g) gp += spec.noise.sigma * noise_rng.normal();
    }
    axpy_in_place(x, -alpha, g);
    next.iterates[i] = spec.constraints[i].project(x);
    next.differences[i] = std::move(g);
  }
  return next;
}

SwarmState step(const SwarmState& state, const RunConfig& cfg) {
  return cfg.algorithm == Algorithm::SubgradientFree ? step_sf(state, cfg)
                                                     : step_baseline(state, cfg);
}

RunRecord run(const RunConfig& cfg) {
  cfg.validate();
  SwarmState st = initial_state(cfg);

  RunRecord rec;
  rec.seed = cfg.seed;
  rec.fingerprint = config_fingerprint(cfg);
  rec.reference = cfg.reference_optimum.value_or(Vec{});
  rec.iterations = cfg.iterations;

  const auto log_state = [&rec, &cfg](const SwarmState& s) {
    Snapshot snap;
    snap.round = s.round;
    snap.iterates = s.iterates;
    snap.consensus_error = analysis::consensus_error(s.iterates);
    snap.sq_dist = cfg.reference_optimum
                       ? analysis::sq_dist_to(s.iterates, *cfg.reference_optimum)
                       : std::numeric_limits<double>::quiet_NaN();
    rec.snapshots.push_back(std::move(snap));
  };

  log_state(st);
  long next_log = cfg.snapshots.next_logged_round(1);
  for (long k = 1; k <= cfg.iterations; ++k) {
    st = step(st, cfg);
    for (std::size_t i = 0; i < st.iterates.size(); ++i) {
      if (!all_finite(st.iterates[i])) {
        throw EngineAbort(st.round, "non-finite iterate for agent " + std::to_string(i + 1) +
                                        " at round " + std::to_string(st.round) +
                                        " (check schedule scaling)");
      }
    }
    if (st.round == next_log) {
      log_state(st);
      next_log = cfg.snapshots.next_logged_round(next_log);
    }
  }
  if (rec.snapshots.back().round != st.round) log_state(st);
  return rec;
}

std::uint64_t config_fingerprint(const RunConfig& cfg) {
  std::ostringstream out;
  describe_problem_topology(out, cfg);
  out << "schedule epsilon=" << fmt17(cfg.schedule.epsilon) << " delta=" << fmt17(cfg.schedule.delta)
      << " scale_iota=" << fmt17(cfg.schedule.scale_iota)
      << " scale_c=" << fmt17(cfg.schedule.scale_c) << '\n';
  out << "dither kind=" << static_cast<int>(cfg.dither.kind()) << " lo=" << fmt17(cfg.dither.lo())
      << " hi=" << fmt17(cfg.dither.hi()) << '\n';
  out << "algorithm=" << static_cast<int>(cfg.algorithm)
      << " difference=" << static_cast<int>(cfg.difference) << " iterations=" << cfg.iterations
      << '\n';
  const std::vector<Vec> init =
      cfg.initial_iterates.empty() ? default_initial_iterates(cfg.problem) : cfg.initial_iterates;
  for (std::size_t i = 0; i < init.size(); ++i) {
    out << "initial." << i + 1 << '=';
    describe_vec(out, init[i]);
    out << '\n';
  }
  if (cfg.reference_optimum) {
    out << "reference=";
    describe_vec(out, *cfg.reference_optimum);
    out << '\n';
  }
  out << "snapshots dense=" << cfg.snapshots.dense_until
      << " ratio=" << fmt17(cfg.snapshots.log_ratio) << '\n';
  return fnv1a(out.str());
}

std::uint64_t problem_topology_fingerprint(const RunConfig& cfg) {
  std::ostringstream out;
  describe_problem_topology(out, cfg);
  return fnv1a(out.str());
}

}  // namespace dsfo::engine
