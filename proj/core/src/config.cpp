#include "dsfo/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "dsfo/toml_lite.hpp"

namespace dsfo::config {

namespace {

using tomllite::Node;
using tomllite::Value;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config key '" + path + "': " + msg);
}

struct Reader {
  const tomllite::Document& doc;

  const Node* find(const std::string& path) const {
    const Node* n = doc.find(path);
    if (n != nullptr && n->value.has_value()) n->touched = true;
    return n;
  }

  bool has(const std::string& path) const { return doc.find(path) != nullptr; }

  const Value& value(const std::string& path) const {
    const Node* n = find(path);
    if (n == nullptr || !n->value.has_value()) fail(path, "missing required key");
    return *n->value;
  }

  long long get_int(const std::string& path) const {
    const Value& v = value(path);
    if (v.type != Value::Type::Int) fail(path, "expected an integer");
    return v.i;
  }
  long long get_int_or(const std::string& path, long long fallback) const {
    return has(path) ? get_int(path) : fallback;
  }

  double get_double(const std::string& path) const {
    const Value& v = value(path);
    if (!v.is_number()) fail(path, "expected a number");
    return v.as_double();
  }
  double get_double_or(const std::string& path, double fallback) const {
    return has(path) ? get_double(path) : fallback;
  }

  std::string get_string(const std::string& path) const {
    const Value& v = value(path);
    if (v.type != Value::Type::String) fail(path, "expected a string");
    return v.s;
  }

  Vec get_vec(const std::string& path) const {
    const Value& v = value(path);
    if (v.type != Value::Type::Array) fail(path, "expected an array of numbers");
    Vec out;
    for (const Value& e : v.array) {
      if (!e.is_number()) fail(path, "expected numeric array entries");
      out.push_back(e.as_double());
    }
    return out;
  }
  Vec get_vec_or(const std::string& path, Vec fallback) const {
    return has(path) ? get_vec(path) : std::move(fallback);
  }

  const std::vector<Value>& get_array(const std::string& path) const {
    const Value& v = value(path);
    if (v.type != Value::Type::Array) fail(path, "expected an array");
    return v.array;
  }
};

Vec vec_from(const Value& v, const std::string& path) {
  if (v.type != Value::Type::Array) fail(path, "expected an array of numbers");
  Vec out;
  for (const Value& e : v.array) {
    if (!e.is_number()) fail(path, "expected numeric array entries");
    out.push_back(e.as_double());
  }
  return out;
}

problem::Objective parse_objective(const Reader& r, const std::string& prefix, std::size_t m) {
  const std::string kind = r.get_string(prefix + ".kind");
  if (kind == "quadratic") {
    const Vec shift = r.get_vec(prefix + ".shift");
    if (shift.size() != m) fail(prefix + ".shift", "dimension mismatch");
    if (r.has(prefix + ".q_matrix")) {
      const auto& rows = r.get_array(prefix + ".q_matrix");
      Matrix q(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Vec row = vec_from(rows[i], prefix + ".q_matrix");
        if (row.size() != rows.size()) fail(prefix + ".q_matrix", "matrix must be square");
        for (std::size_t j = 0; j < row.size(); ++j) {
          q(static_cast<int>(i), static_cast<int>(j)) = row[j];
        }
      }
      return problem::Objective::quadratic(q, shift);
    }
    return problem::Objective::quadratic(r.get_double_or(prefix + ".scale", 1.0), shift);
  }
  if (kind == "affine") {
    const Vec a = r.get_vec(prefix + ".a");
    if (a.size() != m) fail(prefix + ".a", "dimension mismatch");
    return problem::Objective::affine(a, r.get_double_or(prefix + ".b", 0.0));
  }
  if (kind == "abs_sum") {
    const Vec weights = r.get_vec_or(prefix + ".weights", Vec(m, 1.0));
    const Vec shift = r.get_vec_or(prefix + ".shift", Vec(m, 0.0));
    if (weights.size() != m || shift.size() != m) fail(prefix, "dimension mismatch");
    return problem::Objective::abs_sum(weights, shift);
  }
  if (kind == "max_affine") {
    const auto& rows_v = r.get_array(prefix + ".rows");
    std::vector<Vec> rows;
    for (const Value& rv : rows_v) {
      Vec row = vec_from(rv, prefix + ".rows");
      if (row.size() != m) fail(prefix + ".rows", "row dimension mismatch");
      rows.push_back(std::move(row));
    }
    const Vec offsets = r.get_vec(prefix + ".offsets");
    if (offsets.size() != rows.size()) fail(prefix + ".offsets", "one offset per row required");
    return problem::Objective::max_affine(rows, offsets);
  }
  fail(prefix + ".kind", "unknown objective kind '" + kind + "'");
}

problem::ConstraintSet parse_constraint(const Reader& r, const std::string& prefix,
                                        std::size_t m) {
  const std::string kind = r.get_string(prefix + ".kind");
  if (kind == "ball") {
    const Vec center = r.get_vec_or(prefix + ".center", Vec(m, 0.0));
    if (center.size() != m) fail(prefix + ".center", "dimension mismatch");
    return problem::ConstraintSet::ball(center, r.get_double(prefix + ".radius"));
  }
  if (kind == "box") {
    const Vec lo = r.get_vec(prefix + ".lo");
    const Vec hi = r.get_vec(prefix + ".hi");
    if (lo.size() != m || hi.size() != m) fail(prefix, "dimension mismatch");
    return problem::ConstraintSet::box(lo, hi);
  }
  if (kind == "halfspace") {
    const Vec a = r.get_vec(prefix + ".a");
    if (a.size() != m) fail(prefix + ".a", "dimension mismatch");
    return problem::ConstraintSet::halfspace(a, r.get_double(prefix + ".b"));
  }
  if (kind == "whole_space") return problem::ConstraintSet::whole_space(m);
  fail(prefix + ".kind", "unknown constraint kind '" + kind + "'");
}

void check_agent_sections(const tomllite::Document& doc, const std::string& table,
                          std::size_t agents, bool allow_all) {
  const Node* node = doc.find(table);
  if (node == nullptr) return;
  for (const auto& [key, child] : node->children) {
    (void)child;
    if (allow_all && key == "all") continue;
    bool numbered = !key.empty() && key.find_first_not_of("0123456789") == std::string::npos;
    const long idx = numbered ? std::strtol(key.c_str(), nullptr, 10) : 0;
    if (!numbered || idx < 1 || static_cast<std::size_t>(idx) > agents) {
      fail(table + "." + key, "expected sections " + table + ".1 .. " + table + "." +
                                  std::to_string(agents) + (allow_all ? " or " + table + ".all" : ""));
    }
  }
}

network::TopologySchedule parse_topology(const Reader& r, const tomllite::Document& doc,
                                         std::size_t agents, const std::string& config_dir) {
  const std::string rule = r.get_string("topology.weight_rule");
  const int kappa = static_cast<int>(r.get_int("topology.kappa"));

  if (rule == "explicit") {
    std::vector<Matrix> mats;
    if (r.has("topology.matrices")) {
      for (const Value& mv : r.get_array("topology.matrices")) {
        if (mv.type != Value::Type::Array) fail("topology.matrices", "expected nested arrays");
        Matrix m(static_cast<int>(mv.array.size()), static_cast<int>(mv.array.size()));
        for (std::size_t i = 0; i < mv.array.size(); ++i) {
          const Vec row = vec_from(mv.array[i], "topology.matrices");
          if (row.size() != mv.array.size()) fail("topology.matrices", "matrices must be square");
          for (std::size_t j = 0; j < row.size(); ++j) {
            m(static_cast<int>(i), static_cast<int>(j)) = row[j];
          }
        }
        mats.push_back(std::move(m));
      }
    } else if (r.has("topology.matrix_files")) {
      for (const Value& fv : r.get_array("topology.matrix_files")) {
        if (fv.type != Value::Type::String) fail("topology.matrix_files", "expected file names");
        const std::filesystem::path p = std::filesystem::path(config_dir) / fv.s;
        mats.push_back(network::load_matrix_file(p.string()));
      }
    } else {
      fail("topology", "explicit rule needs 'matrices' or 'matrix_files'");
    }
    const double eta = r.get_double("topology.eta");
    try {
      network::TopologySchedule sched(std::move(mats), kappa, eta);
      if (static_cast<std::size_t>(sched.agent_count()) != agents) {
        fail("topology.matrices", "matrix size != problem.agents");
      }
      return sched;
    } catch (const std::invalid_argument& e) {
      fail("topology", e.what());
    }
  }

  network::WeightRule wr;
  if (rule == "metropolis") {
    wr = network::WeightRule::Metropolis;
  } else if (rule == "uniform_neighbor") {
    wr = network::WeightRule::UniformNeighbor;
  } else {
    fail("topology.weight_rule", "unknown rule '" + rule + "'");
  }

  std::vector<network::EdgeSet> pattern;
  for (const Value& phase : r.get_array("topology.pattern")) {
    if (phase.type != Value::Type::Array) fail("topology.pattern", "expected an array of phases");
    network::EdgeSet edges;
    for (const Value& ev : phase.array) {
      if (ev.type != Value::Type::Array || ev.array.size() != 2 ||
          ev.array[0].type != Value::Type::Int || ev.array[1].type != Value::Type::Int) {
        fail("topology.pattern", "edges are [i, j] pairs of 1-based agent ids");
      }
      const long u = ev.array[0].i, v = ev.array[1].i;
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > agents ||
          static_cast<std::size_t>(v) > agents) {
        fail("topology.pattern", "agent id out of range in edge");
      }
      edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1)});
    }
    pattern.push_back(std::move(edges));
  }
  (void)doc;
  try {
    return network::TopologySchedule(static_cast<int>(agents), std::move(pattern), wr, kappa);
  } catch (const std::invalid_argument& e) {
    fail("topology", e.what());
  }
}

ExperimentConfig parse_document(const tomllite::Document& doc) {
  const Reader r{doc};
  ExperimentConfig cfg;
  engine::RunConfig& base = cfg.base;

  if (r.has("meta.name")) cfg.name = r.get_string("meta.name");

  const long long dim = r.get_int("problem.dimension");
  const long long agents = r.get_int("problem.agents");
  if (dim < 1) fail("problem.dimension", "must be >= 1");
  if (agents < 1) fail("problem.agents", "must be >= 1");
  const std::size_t m = static_cast<std::size_t>(dim);
  const std::size_t n = static_cast<std::size_t>(agents);

  base.problem.dimension = m;
  if (r.has("problem.noise")) {
    const std::string kind = r.get_string("problem.noise.kind");
    if (kind == "none") {
      base.problem.noise = problem::NoiseModel::none();
    } else if (kind == "gaussian") {
      base.problem.noise = problem::NoiseModel::gaussian(r.get_double("problem.noise.sigma"));
    } else {
      fail("problem.noise.kind", "expected 'none' or 'gaussian'");
    }
  }
  if (r.has("problem.optimum")) {
    Vec point = r.get_vec("problem.optimum.point");
    if (point.size() != m) fail("problem.optimum.point", "dimension mismatch");
    cfg.pinned_optimum = std::move(point);
  }

  check_agent_sections(doc, "objective", n, /*allow_all=*/false);
  check_agent_sections(doc, "constraint", n, /*allow_all=*/true);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string prefix = "objective." + std::to_string(i);
    if (!r.has(prefix)) fail(prefix, "missing objective for agent " + std::to_string(i));
    try {
      base.problem.objectives.push_back(parse_objective(r, prefix, m));
    } catch (const std::invalid_argument& e) {
      fail(prefix, e.what());
    }
  }
  const bool shared_constraint = r.has("constraint.all");
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string prefix = shared_constraint ? "constraint.all"
                                                 : "constraint." + std::to_string(i);
    if (!r.has(prefix)) fail(prefix, "missing constraint for agent " + std::to_string(i));
    try {
      base.problem.constraints.push_back(parse_constraint(r, prefix, m));
    } catch (const std::invalid_argument& e) {
      fail(prefix, e.what());
    }
  }

  if (r.has("dither")) {
    const std::string kind = r.get_string("dither.kind");
    try {
      if (kind == "two_interval") {
        base.dither = perturbation::DitherDistribution::two_interval(r.get_double("dither.lo"),
                                                                     r.get_double("dither.hi"));
      } else if (kind == "rademacher") {
        base.dither = perturbation::DitherDistribution::rademacher(r.get_double("dither.magnitude"));
      } else {
        fail("dither.kind", "expected 'two_interval' or 'rademacher'");
      }
    } catch (const std::invalid_argument& e) {
      fail("dither", e.what());
    }
  } else {
    base.dither = perturbation::DitherDistribution::two_interval(0.5, 1.0);
  }

  std::string config_dir = ".";
  if (const auto slash = doc.origin().find_last_of('/'); slash != std::string::npos) {
    config_dir = doc.origin().substr(0, slash);
  }
  base.topology = parse_topology(r, doc, n, config_dir);

  base.schedule.epsilon = r.get_double("schedule.epsilon");
  base.schedule.delta = r.get_double("schedule.delta");
  base.schedule.scale_iota = r.get_double_or("schedule.scale_iota", 1.0);
  base.schedule.scale_c = r.get_double_or("schedule.scale_c", 1.0);

  const std::string algorithm = r.get_string("run.algorithm");
  if (algorithm == "sf") {
    base.algorithm = engine::Algorithm::SubgradientFree;
  } else if (algorithm == "baseline") {
    base.algorithm = engine::Algorithm::BaselineSubgradient;
  } else {
    fail("run.algorithm", "expected 'sf' or 'baseline'");
  }
  if (r.has("run.difference")) {
    const std::string diff = r.get_string("run.difference");
    if (diff == "two_sided") {
      base.difference = perturbation::DifferenceKind::TwoSided;
    } else if (diff == "right_sided") {
      base.difference = perturbation::DifferenceKind::RightSided;
    } else if (diff == "left_sided") {
      base.difference = perturbation::DifferenceKind::LeftSided;
    } else {
      fail("run.difference", "expected 'two_sided', 'right_sided' or 'left_sided'");
    }
  }
  base.iterations = r.get_int("run.iterations");
  if (base.iterations < 0) fail("run.iterations", "must be >= 0");

  if (r.has("run.seed_list")) {
    cfg.seeds.clear();
    for (const Value& sv : r.get_array("run.seed_list")) {
      if (sv.type != Value::Type::Int || sv.i < 0) fail("run.seed_list", "seeds are integers >= 0");
      cfg.seeds.push_back(static_cast<std::uint64_t>(sv.i));
    }
    if (cfg.seeds.empty()) fail("run.seed_list", "must not be empty");
    if (r.has("run.seeds") || r.has("run.seed_base")) {
      fail("run.seed_list", "give either seed_list or seeds/seed_base, not both");
    }
  } else {
    const long long count = r.get_int_or("run.seeds", 1);
    const long long seed_base = r.get_int_or("run.seed_base", 1);
    if (count < 1) fail("run.seeds", "must be >= 1");
    if (seed_base < 0) fail("run.seed_base", "must be >= 0");
    cfg.seeds.clear();
    for (long long s = 0; s < count; ++s) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(seed_base + s));
    }
  }

  base.snapshots.dense_until = r.get_int_or("run.snapshot_dense_until", 1000);
  base.snapshots.log_ratio = r.get_double_or("run.snapshot_log_ratio", 1.02);

  if (r.has("run.initial")) {
    for (const Value& pv : r.get_array("run.initial")) {
      Vec p = vec_from(pv, "run.initial");
      if (p.size() != m) fail("run.initial", "point dimension mismatch");
      base.initial_iterates.push_back(std::move(p));
    }
    if (base.initial_iterates.size() != n) fail("run.initial", "one point per agent required");
  }

  if (r.has("output.directory")) cfg.output_directory = r.get_string("output.directory");
  if (r.has("output.formats")) {
    cfg.formats.clear();
    for (const Value& fv : r.get_array("output.formats")) {
      if (fv.type != Value::Type::String || (fv.s != "csv" && fv.s != "plot")) {
        fail("output.formats", "supported formats: 'csv', 'plot'");
      }
      cfg.formats.push_back(fv.s);
    }
  }

  const std::vector<std::string> unknown = doc.untouched_leaves();
  if (!unknown.empty()) {
    throw ConfigError(doc.origin() + ": unknown key '" + unknown.front() + "'");
  }
  return cfg;
}

void describe_vec_toml(std::ostringstream& out, const Vec& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << fmt17(v[i]);
  }
  out << ']';
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  return parse_document(tomllite::Document::parse_file(path));
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  return parse_document(tomllite::Document::parse(text, origin));
}

bool ValidationSummary::pass() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

std::string ValidationSummary::to_string() const {
  std::ostringstream out;
  for (const Item& i : items) {
    out << (i.pass ? "[pass] " : "[FAIL] ") << i.name;
    if (!i.detail.empty()) out << ": " << i.detail;
    out << '\n';
  }
  for (const std::string& w : warnings) out << "[warn] " << w << '\n';
  return out.str();
}

ValidationSummary validate_config(const ExperimentConfig& cfg) {
  ValidationSummary summary;
  const engine::RunConfig& base = cfg.base;

  const network::ValidationReport topo = base.topology.validate();
  for (const network::ConditionResult& c : topo.items) {
    summary.items.push_back({"topology/" + c.name, c.pass, c.detail});
  }
  const schedules::ScheduleReport sched = schedules::validate(base.schedule);
  for (const schedules::ConditionCheck& c : sched.items) {
    summary.items.push_back({"schedule/" + c.name, c.pass, c.detail});
  }
  summary.warnings.insert(summary.warnings.end(), sched.warnings.begin(), sched.warnings.end());

  try {
    base.problem.validate();
    summary.items.push_back({"problem/feasible-intersection", true, ""});
  } catch (const std::exception& e) {
    summary.items.push_back({"problem/feasible-intersection", false, e.what()});
  }

  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < base.problem.agent_count() && ok; ++i) {
      try {
        (void)problem::lipschitz_bound(base.problem.objectives[i], base.problem.constraints[i]);
      } catch (const std::exception& e) {
        ok = false;
        detail = "agent " + std::to_string(i + 1) + ": " + e.what();
      }
    }
    summary.items.push_back({"problem/subgradient-bound", ok, detail});
  }

  try {
    base.validate();
    summary.items.push_back({"run/config", true, ""});
  } catch (const std::exception& e) {
    summary.items.push_back({"run/config", false, e.what()});
  }

  if (cfg.seeds.empty()) summary.items.push_back({"run/seeds", false, "no seeds configured"});
  return summary;
}

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg = parse_config(path);
  const ValidationSummary summary = validate_config(cfg);
  if (!summary.pass()) {
    throw ConfigError(path + ": validation failed\n" + summary.to_string());
  }
  return cfg;
}

std::string write_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const engine::RunConfig& base = cfg.base;
  const std::size_t n = base.problem.agent_count();

  if (!cfg.name.empty()) out << "[meta]\nname = \"" << cfg.name << "\"\n\n";

  out << "[problem]\ndimension = " << base.problem.dimension << "\nagents = " << n << "\n\n";
  out << "[problem.noise]\nkind = \""
      << (base.problem.noise.kind == problem::NoiseModel::Kind::None ? "none" : "gaussian")
      << "\"\n";
  if (base.problem.noise.kind == problem::NoiseModel::Kind::Gaussian) {
    out << "sigma = " << fmt17(base.problem.noise.sigma) << '\n';
  }
  out << '\n';
  if (cfg.pinned_optimum) {
    out << "[problem.optimum]\npoint = ";
    describe_vec_toml(out, *cfg.pinned_optimum);
    out << "\n\n";
  }

  for (std::size_t i = 0; i < n; ++i) {
    using problem::Objective;
    out << "[objective." << i + 1 << "]\n";
    const Objective& f = base.problem.objectives[i];
    if (const auto* d = std::get_if<Objective::AffineData>(&f.data())) {
      out << "kind = \"affine\"\na = ";
      describe_vec_toml(out, d->a);
      out << "\nb = " << fmt17(d->b) << '\n';
    } else if (const auto* d = std::get_if<Objective::QuadraticData>(&f.data())) {
      out << "kind = \"quadratic\"\n";
      if (d->scaled_identity) {
        out << "scale = " << fmt17(d->scale) << '\n';
      } else {
        out << "q_matrix = [";
        for (int row = 0; row < d->q.rows; ++row) {
          if (row) out << ", ";
          out << '[';
          for (int col = 0; col < d->q.cols; ++col) {
            if (col) out << ", ";
            out << fmt17(d->q(row, col));
          }
          out << ']';
        }
        out << "]\n";
      }
      out << "shift = ";
      describe_vec_toml(out, d->shift);
      out << '\n';
    } else if (const auto* d = std::get_if<Objective::AbsSumData>(&f.data())) {
      out << "kind = \"abs_sum\"\nweights = ";
      describe_vec_toml(out, d->weights);
      out << "\nshift = ";
      describe_vec_toml(out, d->shift);
      out << '\n';
    } else if (const auto* d = std::get_if<Objective::MaxAffineData>(&f.data())) {
      out << "kind = \"max_affine\"\nrows = [";
      for (std::size_t rix = 0; rix < d->rows.size(); ++rix) {
        if (rix) out << ", ";
        describe_vec_toml(out, d->rows[rix]);
      }
      out << "]\noffsets = ";
      describe_vec_toml(out, d->offsets);
      out << '\n';
    } else {
      throw ConfigError("write_config: custom objectives have no file representation");
    }
    out << '\n';
  }

  for (std::size_t i = 0; i < n; ++i) {
    using problem::ConstraintKind;
    const problem::ConstraintSet& s = base.problem.constraints[i];
    out << "[constraint." << i + 1 << "]\n";
    switch (s.kind()) {
      case ConstraintKind::Ball:
        out << "kind = \"ball\"\ncenter = ";
        describe_vec_toml(out, s.center());
        out << "\nradius = " << fmt17(s.scalar()) << '\n';
        break;
      case ConstraintKind::Box:
        out << "kind = \"box\"\nlo = ";
        describe_vec_toml(out, s.center());
        out << "\nhi = ";
        describe_vec_toml(out, s.aux());
        out << '\n';
        break;
      case ConstraintKind::Halfspace:
        out << "kind = \"halfspace\"\na = ";
        describe_vec_toml(out, s.center());
        out << "\nb = " << fmt17(s.scalar()) << '\n';
        break;
      case ConstraintKind::WholeSpace: out << "kind = \"whole_space\"\n"; break;
    }
    out << '\n';
  }

  out << "[dither]\n";
  if (base.dither.kind() == perturbation::DitherKind::TwoInterval) {
    out << "kind = \"two_interval\"\nlo = " << fmt17(base.dither.lo())
        << "\nhi = " << fmt17(base.dither.hi()) << '\n';
  } else {
    out << "kind = \"rademacher\"\nmagnitude = " << fmt17(base.dither.lo()) << '\n';
  }
  out << '\n';

  out << "[topology]\n";
  if (base.topology.rule() == network::WeightRule::Explicit) {
    out << "weight_rule = \"explicit\"\nkappa = " << base.topology.kappa()
        << "\neta = " << fmt17(base.topology.eta()) << "\nmatrices = [";
    for (int p = 1; p <= base.topology.period(); ++p) {
      if (p > 1) out << ", ";
      const Matrix& w = base.topology.weights_at(p % base.topology.period() == 0
                                                     ? base.topology.period()
                                                     : p);
      // weights_at uses round % period; emit phases in pattern order 0..p-1
      (void)w;
    }
    out << "]\n";
    // emit phases in storage order: rounds period, 1, 2, .. period-1 map to
    // indices 0..period-1; rebuild directly:
    std::ostringstream mats;
    mats << "matrices = [";
    for (int idx = 0; idx < base.topology.period(); ++idx) {
      const long round = idx == 0 ? base.topology.period() : idx;  // round % period == idx
      const Matrix& w = base.topology.weights_at(round);
      if (idx) mats << ", ";
      mats << '[';
      for (int row = 0; row < w.rows; ++row) {
        if (row) mats << ", ";
        mats << '[';
        for (int col = 0; col < w.cols; ++col) {
          if (col) mats << ", ";
          mats << fmt17(w(row, col));
        }
        mats << ']';
      }
      mats << ']';
    }
    mats << "]\n";
  } else {
    out << "weight_rule = \""
        << (base.topology.rule() == network::WeightRule::Metropolis ? "metropolis"
                                                                    : "uniform_neighbor")
        << "\"\nkappa = " << base.topology.kappa() << "\npattern = [";
    const auto& pattern = base.topology.pattern();
    for (std::size_t p = 0; p < pattern.size(); ++p) {
      if (p) out << ", ";
      out << '[';
      for (std::size_t e = 0; e < pattern[p].size(); ++e) {
        if (e) out << ", ";
        out << '[' << pattern[p][e].u + 1 << ", " << pattern[p][e].v + 1 << ']';
      }
      out << ']';
    }
    out << "]\n";
  }
  out << '\n';

  out << "[schedule]\nepsilon = " << fmt17(base.schedule.epsilon)
      << "\ndelta = " << fmt17(base.schedule.delta)
      << "\nscale_iota = " << fmt17(base.schedule.scale_iota)
      << "\nscale_c = " << fmt17(base.schedule.scale_c) << "\n\n";

  out << "[run]\nalgorithm = \""
      << (base.algorithm == engine::Algorithm::SubgradientFree ? "sf" : "baseline")
      << "\"\ndifference = \"";
  switch (base.difference) {
    case perturbation::DifferenceKind::TwoSided: out << "two_sided"; break;
    case perturbation::DifferenceKind::RightSided: out << "right_sided"; break;
    case perturbation::DifferenceKind::LeftSided: out << "left_sided"; break;
  }
  out << "\"\niterations = " << base.iterations << "\nseed_list = [";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (i) out << ", ";
    out << cfg.seeds[i];
  }
  out << "]\nsnapshot_dense_until = " << base.snapshots.dense_until
      << "\nsnapshot_log_ratio = " << fmt17(base.snapshots.log_ratio) << '\n';
  if (!base.initial_iterates.empty()) {
    out << "initial = [";
    for (std::size_t i = 0; i < base.initial_iterates.size(); ++i) {
      if (i) out << ", ";
      describe_vec_toml(out, base.initial_iterates[i]);
    }
    out << "]\n";
  }
  out << '\n';

  out << "[output]\ndirectory = \"" << cfg.output_directory << "\"\nformats = [";
  for (std::size_t i = 0; i < cfg.formats.size(); ++i) {
    if (i) out << ", ";
    out << '"' << cfg.formats[i] << '"';
  }
  out << "]\n";
  return out.str();
}

engine::RunConfig make_run_config(const ExperimentConfig& cfg, std::uint64_t seed) {
  engine::RunConfig run = cfg.base;
  run.seed = seed;
  if (cfg.pinned_optimum) run.reference_optimum = cfg.pinned_optimum;
  return run;
}

}  // namespace dsfo::config
