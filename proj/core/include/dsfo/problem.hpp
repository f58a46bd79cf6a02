#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsfo/rng.hpp"
#include "dsfo/vec.hpp"

namespace dsfo::problem {

enum class ObjectiveKind { Affine, Quadratic, AbsSum, MaxAffine, Custom };

/// Convex objective on R^m. Built-in kinds are convex by construction and
/// expose exact subgradients; the selection at kinks is deterministic:
/// minimum-norm where cheap (0 for |.| at the kink), otherwise the gradient
/// of the first active piece in declaration order.
class Objective {
 public:
  // a'x + b
  static Objective affine(Vec a, double b);
  // scale * (x - shift)'(x - shift)
  static Objective quadratic(double scale, Vec shift);
  // (x - shift)'Q(x - shift), Q symmetric positive semidefinite
  static Objective quadratic(Matrix q, Vec shift);
  // sum_p weights[p] * |x[p] - shift[p]|, weights >= 0
  static Objective abs_sum(Vec weights, Vec shift);
  static Objective abs_sum(std::size_t dimension);  // unit weights, zero shift
  // max_j rows[j]'x + offsets[j]
  static Objective max_affine(std::vector<Vec> rows, Vec offsets);
  // user callable; subgrad may be empty (then subgradient() throws),
  // lipschitz < 0 means "not declared".
  static Objective custom(std::size_t dimension, std::function<double(const Vec&)> f,
                          std::function<Vec(const Vec&)> subgrad, double lipschitz);

  std::size_t dimension() const { return dim_; }
  ObjectiveKind kind() const;

  double eval(const Vec& x) const;
  Vec subgradient(const Vec& x) const;

  struct AffineData {
    Vec a;
    double b;
  };
  struct QuadraticData {
    Matrix q;         // empty when scaled identity
    double scale;     // used when q empty
    Vec shift;
    bool scaled_identity;
  };
  struct AbsSumData {
    Vec weights;
    Vec shift;
  };
  struct MaxAffineData {
    std::vector<Vec> rows;
    Vec offsets;
  };
  struct CustomData {
    std::function<double(const Vec&)> f;
    std::function<Vec(const Vec&)> subgrad;
    double lipschitz;
  };
  using Data = std::variant<AffineData, QuadraticData, AbsSumData, MaxAffineData, CustomData>;
  const Data& data() const { return data_; }

 private:
  Objective(std::size_t dim, Data data) : dim_(dim), data_(std::move(data)) {}
  std::size_t dim_ = 0;
  Data data_;
};

enum class ConstraintKind { Ball, Box, Halfspace, WholeSpace };

/// Closed convex set with an exact closed-form nearest-point projection.
class ConstraintSet {
 public:
  static ConstraintSet ball(Vec center, double radius);
  static ConstraintSet box(Vec lo, Vec hi);
  // { x : a'x <= b }, a != 0
  static ConstraintSet halfspace(Vec a, double b);
  static ConstraintSet whole_space(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  ConstraintKind kind() const { return kind_; }
  bool bounded() const;
  /// sup ||x|| over the set; +inf when unbounded.
  double bounding_radius() const;
  /// sup ||x - p|| over the set; +inf when unbounded.
  double max_dist_to(const Vec& p) const;

  Vec project(const Vec& x) const;
  bool contains(const Vec& x, double tol = 1e-12) const;

  const Vec& center() const { return u_; }  // ball center / box lo / halfspace normal
  const Vec& aux() const { return v_; }     // box hi
  double scalar() const { return s_; }      // ball radius / halfspace offset

 private:
  ConstraintSet(ConstraintKind k, std::size_t dim) : kind_(k), dim_(dim) {}
  ConstraintKind kind_;
  std::size_t dim_;
  Vec u_, v_;
  double s_ = 0.0;
};

struct NoiseModel {
  enum class Kind { None, Gaussian };
  Kind kind = Kind::None;
  double sigma = 0.0;

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double sigma);

  /// One fresh draw; the zero-noise model consumes nothing from the stream.
  double sample(RngStream& rng) const;
  /// sup_k E eps_k^2
  double second_moment() const { return sigma * sigma; }
};

/// f(x) + eps with a fresh independent noise draw per call.
double noisy_observe(const Objective& obj, const Vec& x, const NoiseModel& noise, RngStream& rng);

/// L with ||subgradient(x)|| <= L over the set; closed form per kind.
/// Throws std::domain_error when no finite bound exists (e.g. quadratic
/// objective over an unbounded set).
double lipschitz_bound(const Objective& obj, const ConstraintSet& set);

struct ProblemSpec {
  std::vector<Objective> objectives;
  std::vector<ConstraintSet> constraints;
  NoiseModel noise;
  std::size_t dimension = 0;

  std::size_t agent_count() const { return objectives.size(); }
  double total_objective(const Vec& x) const;

  /// Dimension consistency plus non-empty intersection of the constraint
  /// sets (certified by cyclic projections for the built-in kinds).
  /// Throws std::invalid_argument on failure.
  void validate() const;

  /// A point in the intersection of all constraint sets, found by cyclic
  /// projections from the origin. Throws when no certificate is found.
  Vec feasible_point(int max_cycles = 20000, double tol = 1e-9) const;
};

}  // namespace dsfo::problem
