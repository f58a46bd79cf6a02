#include "dsfo/vec.hpp"

#include <cmath>
#include <stdexcept>

namespace dsfo {

namespace {
void require_same_size(const Vec& x, const Vec& y, const char* op) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}
}  // namespace

double dot(const Vec& x, const Vec& y) {
  require_same_size(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double sq_norm(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double norm2(const Vec& x) { return std::sqrt(sq_norm(x)); }

double sq_dist(const Vec& x, const Vec& y) {
  require_same_size(x, y, "sq_dist");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

Vec add(const Vec& x, const Vec& y) {
  require_same_size(x, y, "add");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  require_same_size(x, y, "sub");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Vec scaled(double a, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
  return r;
}

void axpy_in_place(Vec& y, double a, const Vec& x) {
  require_same_size(y, x, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vec mean_point(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("mean_point: empty input");
  Vec m(points.front().size(), 0.0);
  for (const Vec& p : points) {
    require_same_size(m, p, "mean_point");
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += p[i];
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (double& v : m) v *= inv;
  return m;
}

bool all_finite(const Vec& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_dim(const Vec& x, std::size_t m, const std::string& where) {
  if (x.size() != m) {
    throw std::invalid_argument(where + ": dimension mismatch (got " + std::to_string(x.size()) +
                                ", expected " + std::to_string(m) + ")");
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vec mat_vec(const Matrix& a, const Vec& x) {
  if (static_cast<std::size_t>(a.cols) != x.size()) {
    throw std::invalid_argument("mat_vec: shape mismatch");
  }
  Vec y(static_cast<std::size_t>(a.rows), 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    if (std::abs(a.data[i] - b.data[i]) > tol) return false;
  }
  return true;
}

}  // namespace dsfo
