#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dsfo {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double sq_norm(const Vec& x);
double norm2(const Vec& x);
double sq_dist(const Vec& x, const Vec& y);

Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scaled(double a, const Vec& x);

// y += a * x
void axpy_in_place(Vec& y, double a, const Vec& x);

Vec mean_point(const std::vector<Vec>& points);

bool all_finite(const Vec& x);

// Throws std::invalid_argument when dim(x) != m.
void check_dim(const Vec& x, std::size_t m, const std::string& where);

// Dense row-major matrix, sized for small agent counts.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n);
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec mat_vec(const Matrix& a, const Vec& x);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

}  // namespace dsfo
