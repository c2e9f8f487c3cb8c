#pragma once

// Dense univariate polynomial, ascending degree, over double or Rational.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "ambar/rational.hpp"

namespace ambar {

template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  /// x - root
  static Poly linear(T root) { return Poly(std::vector<T>{T(-root), T(1)}); }
  static Poly one() { return constant(T(1)); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of x^i; zero past the degree.
  T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& coefficients() const { return c_; }

  const T& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

  /// False when any coefficient overflowed (float mode only).
  bool is_finite() const {
    if constexpr (std::is_floating_point_v<T>) {
      return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
    } else {
      return true;
    }
  }

  /// Horner evaluation.
  template <class X>
  X eval(const X& x) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = X(acc * x + X(*it));
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x); }

  /// Horner bound on |p|(|x|) used for rounding-error estimates.
  double magnitude_at(double x) const
    requires std::is_floating_point_v<T>
  {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = T(c_[i] * T(static_cast<long>(i)));
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly l, const Poly& r) { return l += r; }
  friend Poly operator-(Poly l, const Poly& r) { return l -= r; }
  friend Poly operator*(Poly l, const T& s) { return l *= s; }
  friend Poly operator*(const T& s, Poly r) { return r *= s; }
  friend Poly operator-(Poly p) { return p *= T(-1); }

  friend Poly operator*(const Poly& l, const Poly& r) {
    if (l.is_zero() || r.is_zero()) return Poly();
    std::vector<T> out(l.c_.size() + r.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < l.c_.size(); ++i) {
      for (std::size_t j = 0; j < r.c_.size(); ++j) out[i + j] += l.c_[i] * r.c_[j];
    }
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& l, const Poly& r) { return l.c_ == r.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

inline Poly<double> to_double(const Poly<Rational>& p) {
  std::vector<double> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) c.push_back(q.get_d());
  return Poly<double>(std::move(c));
}

/// Largest coefficientwise absolute difference.
inline double max_coefficient_gap(const Poly<double>& a, const Poly<double>& b) {
  const std::size_t len = std::max(a.coefficients().size(), b.coefficients().size());
  double gap = 0.0;
  for (std::size_t i = 0; i < len; ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

}  // namespace ambar
