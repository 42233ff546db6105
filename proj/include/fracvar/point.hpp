#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace fracvar {

/// Point (or vector) in R^n for n <= 3. Fixed storage keeps the inner
/// quadrature loops allocation free.
class Point {
 public:
  static constexpr int kMaxDim = 3;

  Point() = default;
  explicit Point(int n) : n_(n) { assert(n >= 1 && n <= kMaxDim); }
  Point(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    assert(n_ >= 1 && n_ <= kMaxDim);
    int i = 0;
    for (double v : xs) c_[i++] = v;
  }

  static Point unit(int n, int axis) {
    Point p(n);
    p[axis] = 1.0;
    return p;
  }

  int dim() const { return n_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < n_; ++i) c_[i] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }

  friend double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (int i = 0; i < a.n_; ++i) s += a.c_[i] * b.c_[i];
    return s;
  }
  friend double norm(const Point& a) { return std::sqrt(dot(a, a)); }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 1;
};

}  // namespace fracvar
