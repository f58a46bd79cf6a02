#include "dsfo/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsfo::problem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest eigenvalue magnitude of a symmetric matrix by power iteration;
// deterministic start, enough accuracy for Lipschitz bounds.
double sym_op_norm(const Matrix& q) {
  const int n = q.rows;
  Vec v(static_cast<std::size_t>(n), 1.0);
  v[0] += 0.5;  // break symmetry against alternating eigenvectors
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vec w = mat_vec(q, v);
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (double& x : w) x /= nw;
    lambda = nw;
    v = std::move(w);
  }
  return lambda;
}

void require_symmetric(const Matrix& q) {
  if (q.rows != q.cols) throw std::invalid_argument("quadratic: Q must be square");
  for (int i = 0; i < q.rows; ++i) {
    for (int j = i + 1; j < q.cols; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > 1e-12) {
        throw std::invalid_argument("quadratic: Q must be symmetric");
      }
    }
  }
}

// PSD check via LDL^T with a small shift; rejects clearly indefinite Q.
void require_psd(const Matrix& q) {
  const int n = q.rows;
  Matrix a = q;
  const double shift = 1e-10 * std::max(1.0, sym_op_norm(q));
  for (int i = 0; i < n; ++i) a(i, i) += shift;
  for (int k = 0; k < n; ++k) {
    double d = a(k, k);
    if (d < 0.0) throw std::invalid_argument("quadratic: Q must be positive semidefinite");
    if (d == 0.0) continue;
    for (int i = k + 1; i < n; ++i) {
      const double l = a(i, k) / d;
      for (int j = k; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
}

}  // namespace

Objective Objective::affine(Vec a, double b) {
  const std::size_t m = a.size();
  if (m == 0) throw std::invalid_argument("affine: empty coefficient vector");
  return Objective(m, AffineData{std::move(a), b});
}

Objective Objective::quadratic(double scale, Vec shift) {
  if (shift.empty()) throw std::invalid_argument("quadratic: empty shift");
  if (scale < 0.0) throw std::invalid_argument("quadratic: scale must be >= 0");
  const std::size_t m = shift.size();
  return Objective(m, QuadraticData{Matrix(), scale, std::move(shift), true});
}

Objective Objective::quadratic(Matrix q, Vec shift) {
  if (shift.empty() || q.rows != static_cast<int>(shift.size())) {
    throw std::invalid_argument("quadratic: Q/shift dimension mismatch");
  }
  require_symmetric(q);
  require_psd(q);
  const std::size_t m = shift.size();
  return Objective(m, QuadraticData{std::move(q), 0.0, std::move(shift), false});
}

Objective Objective::abs_sum(Vec weights, Vec shift) {
  if (weights.empty() || weights.size() != shift.size()) {
    throw std::invalid_argument("abs_sum: weights/shift dimension mismatch");
  }
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("abs_sum: weights must be >= 0");
  }
  const std::size_t m = weights.size();
  return Objective(m, AbsSumData{std::move(weights), std::move(shift)});
}

Objective Objective::abs_sum(std::size_t dimension) {
  return abs_sum(Vec(dimension, 1.0), Vec(dimension, 0.0));
}

Objective Objective::max_affine(std::vector<Vec> rows, Vec offsets) {
  if (rows.empty() || rows.size() != offsets.size()) {
    throw std::invalid_argument("max_affine: rows/offsets mismatch");
  }
  const std::size_t m = rows.front().size();
  for (const Vec& r : rows) {
    if (r.size() != m) throw std::invalid_argument("max_affine: inconsistent row dimensions");
  }
  return Objective(m, MaxAffineData{std::move(rows), std::move(offsets)});
}

Objective Objective::custom(std::size_t dimension, std::function<double(const Vec&)> f,
                            std::function<Vec(const Vec&)> subgrad, double lipschitz) {
  if (dimension == 0 || !f) throw std::invalid_argument("custom: need dimension and callable");
  return Objective(dimension, CustomData{std::move(f), std::move(subgrad), lipschitz});
}

ObjectiveKind Objective::kind() const {
  switch (data_.index()) {
    case 0: return ObjectiveKind::Affine;
    case 1: return ObjectiveKind::Quadratic;
    case 2: return ObjectiveKind::AbsSum;
    case 3: return ObjectiveKind::MaxAffine;
    default: return ObjectiveKind::Custom;
  }
}

double Objective::eval(const Vec& x) const {
  check_dim(x, dim_, "Objective::eval");
  if (const auto* d = std::get_if<AffineData>(&data_)) return dot(d->a, x) + d->b;
  if (const auto* d = std::get_if<QuadraticData>(&data_)) {
    const Vec r = sub(x, d->shift);
    if (d->scaled_identity) return d->scale * sq_norm(r);
    return dot(r, mat_vec(d->q, r));
  }
  if (const auto* d = std::get_if<AbsSumData>(&data_)) {
    double s = 0.0;
    for (std::size_t p = 0; p < dim_; ++p) s += d->weights[p] * std::abs(x[p] - d->shift[p]);
    return s;
  }
  if (const auto* d = std::get_if<MaxAffineData>(&data_)) {
    double best = -kInf;
    for (std::size_t j = 0; j < d->rows.size(); ++j) {
      best = std::max(best, dot(d->rows[j], x) + d->offsets[j]);
    }
    return best;
  }
  return std::get<CustomData>(data_).f(x);
}

Vec Objective::subgradient(const Vec& x) const {
  check_dim(x, dim_, "Objective::subgradient");
  if (const auto* d = std::get_if<AffineData>(&data_)) return d->a;
  if (const auto* d = std::get_if<QuadraticData>(&data_)) {
    const Vec r = sub(x, d->shift);
    if (d->scaled_identity) return scaled(2.0 * d->scale, r);
    return scaled(2.0, mat_vec(d->q, r));
  }
  if (const auto* d = std::get_if<AbsSumData>(&data_)) {
    Vec g(dim_, 0.0);
    for (std::size_t p = 0; p < dim_; ++p) {
      const double r = x[p] - d->shift[p];
      // minimum-norm selection at the kink
      g[p] = r > 0.0 ? d->weights[p] : (r < 0.0 ? -d->weights[p] : 0.0);
    }
    return g;
  }
  if (const auto* d = std::get_if<MaxAffineData>(&data_)) {
    // gradient of the first active piece in declaration order
    std::size_t best = 0;
    double best_val = dot(d->rows[0], x) + d->offsets[0];
    for (std::size_t j = 1; j < d->rows.size(); ++j) {
      const double v = dot(d->rows[j], x) + d->offsets[j];
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    return d->rows[best];
  }
  const auto& c = std::get<CustomData>(data_);
  if (!c.subgrad) throw std::runtime_error("custom objective: no subgradient callable provided");
  Vec g = c.subgrad(x);
  check_dim(g, dim_, "custom subgradient");
  return g;
}

ConstraintSet ConstraintSet::ball(Vec center, double radius) {
  if (center.empty()) throw std::invalid_argument("ball: empty center");
  if (!(radius >= 0.0)) throw std::invalid_argument("ball: radius must be >= 0");
  ConstraintSet s(ConstraintKind::Ball, center.size());
  s.u_ = std::move(center);
  s.s_ = radius;
  return s;
}

ConstraintSet ConstraintSet::box(Vec lo, Vec hi) {
  if (lo.empty() || lo.size() != hi.size()) throw std::invalid_argument("box: lo/hi mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box: lo > hi");
  }
  ConstraintSet s(ConstraintKind::Box, lo.size());
  s.u_ = std::move(lo);
  s.v_ = std::move(hi);
  return s;
}

ConstraintSet ConstraintSet::halfspace(Vec a, double b) {
  if (a.empty() || norm2(a) == 0.0) throw std::invalid_argument("halfspace: zero normal");
  ConstraintSet s(ConstraintKind::Halfspace, a.size());
  s.u_ = std::move(a);
  s.s_ = b;
  return s;
}

ConstraintSet ConstraintSet::whole_space(std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("whole_space: dimension must be >= 1");
  return ConstraintSet(ConstraintKind::WholeSpace, dimension);
}

bool ConstraintSet::bounded() const {
  return kind_ == ConstraintKind::Ball || kind_ == ConstraintKind::Box;
}

double ConstraintSet::bounding_radius() const {
  switch (kind_) {
    case ConstraintKind::Ball: return norm2(u_) + s_;
    case ConstraintKind::Box: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double e = std::max(std::abs(u_[i]), std::abs(v_[i]));
        s += e * e;
      }
      return std::sqrt(s);
    }
    default: return kInf;
  }
}

double ConstraintSet::max_dist_to(const Vec& p) const {
  check_dim(p, dim_, "ConstraintSet::max_dist_to");
  switch (kind_) {
    case ConstraintKind::Ball: return norm2(sub(u_, p)) + s_;
    case ConstraintKind::Box: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double e = std::max(std::abs(u_[i] - p[i]), std::abs(v_[i] - p[i]));
        s += e * e;
      }
      return std::sqrt(s);
    }
    default: return kInf;
  }
}

Vec ConstraintSet::project(const Vec& x) const {
  check_dim(x, dim_, "ConstraintSet::project");
  switch (kind_) {
    case ConstraintKind::Ball: {
      const Vec r = sub(x, u_);
      const double n = norm2(r);
      if (n <= s_) return x;
      return add(u_, scaled(s_ / n, r));
    }
    case ConstraintKind::Box: {
      Vec y(dim_);
      for (std::size_t i = 0; i < dim_; ++i) y[i] = std::clamp(x[i], u_[i], v_[i]);
      return y;
    }
    case ConstraintKind::Halfspace: {
      const double viol = dot(u_, x) - s_;
      if (viol <= 0.0) return x;
      return sub(x, scaled(viol / sq_norm(u_), u_));
    }
    case ConstraintKind::WholeSpace: return x;
  }
  throw std::logic_error("unreachable");
}

bool ConstraintSet::contains(const Vec& x, double tol) const {
  check_dim(x, dim_, "ConstraintSet::contains");
  switch (kind_) {
    case ConstraintKind::Ball: return norm2(sub(x, u_)) <= s_ + tol;
    case ConstraintKind::Box:
      for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] < u_[i] - tol || x[i] > v_[i] + tol) return false;
      }
      return true;
    case ConstraintKind::Halfspace: return dot(u_, x) <= s_ + tol * (1.0 + norm2(u_));
    case ConstraintKind::WholeSpace: return true;
  }
  return false;
}

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian noise: sigma must be >= 0");
  NoiseModel n;
  n.kind = Kind::Gaussian;
  n.sigma = sigma;
  return n;
}

double NoiseModel::sample(RngStream& rng) const {
  if (kind == Kind::None) return 0.0;
  return sigma * rng.normal();
}

double noisy_observe(const Objective& obj, const Vec& x, const NoiseModel& noise, RngStream& rng) {
  return obj.eval(x) + noise.sample(rng);
}

double lipschitz_bound(const Objective& obj, const ConstraintSet& set) {
  if (obj.dimension() != set.dimension()) {
    throw std::invalid_argument("lipschitz_bound: dimension mismatch");
  }
  if (const auto* d = std::get_if<Objective::AffineData>(&obj.data())) return norm2(d->a);
  if (const auto* d = std::get_if<Objective::QuadraticData>(&obj.data())) {
    const double reach = set.max_dist_to(d->shift);
    if (!std::isfinite(reach)) {
      throw std::domain_error("lipschitz_bound: quadratic objective over unbounded set");
    }
    const double op = d->scaled_identity ? d->scale : sym_op_norm(d->q);
    return 2.0 * op * reach;
  }
  if (const auto* d = std::get_if<Objective::AbsSumData>(&obj.data())) return norm2(d->weights);
  if (const auto* d = std::get_if<Objective::MaxAffineData>(&obj.data())) {
    double best = 0.0;
    for (const Vec& r : d->rows) best = std::max(best, norm2(r));
    return best;
  }
  const auto& c = std::get<Objective::CustomData>(obj.data());
  if (c.lipschitz < 0.0) {
    throw std::domain_error("lipschitz_bound: custom objective without a declared bound");
  }
  return c.lipschitz;
}

double ProblemSpec::total_objective(const Vec& x) const {
  double s = 0.0;
  for (const Objective& f : objectives) s += f.eval(x);
  return s;
}

void ProblemSpec::validate() const {
  if (objectives.empty()) throw std::invalid_argument("problem: needs at least one agent");
  if (objectives.size() != constraints.size()) {
    throw std::invalid_argument("problem: objective/constraint count mismatch");
  }
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    if (objectives[i].dimension() != dimension) {
      throw std::invalid_argument("problem: objective " + std::to_string(i + 1) +
                                  " dimension != " + std::to_string(dimension));
    }
    if (constraints[i].dimension() != dimension) {
      throw std::invalid_argument("problem: constraint " + std::to_string(i + 1) +
                                  " dimension != " + std::to_string(dimension));
    }
  }
  feasible_point();  // throws when the intersection cannot be certified non-empty
}

Vec ProblemSpec::feasible_point(int max_cycles, double tol) const {
  Vec z(dimension, 0.0);
  auto in_all = [&](const Vec& p) {
    for (const ConstraintSet& s : constraints) {
      if (!s.contains(p, tol)) return false;
    }
    return true;
  };
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    if (in_all(z)) return z;
    for (const ConstraintSet& s : constraints) z = s.project(z);
  }
  if (in_all(z)) return z;
  throw std::invalid_argument("problem: constraint intersection could not be certified non-empty");
}

}  // namespace dsfo::problem
