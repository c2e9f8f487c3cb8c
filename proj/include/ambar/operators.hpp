#pragma once

// Finite Jacobi, discrete Schrodinger and Floquet matrices.
//
// Matrices are stored compactly: a Jacobi matrix is its off-diagonal `a`
// (length n-1, strictly positive) and diagonal `b` (length n). Dense
// materialization is an explicit conversion used by tests and output.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ambar/rational.hpp"

namespace ambar {

template <class Real>
class BasicJacobiMatrix {
 public:
  BasicJacobiMatrix(std::vector<Real> off_diagonal, std::vector<Real> diagonal)
      : a_(std::move(off_diagonal)), b_(std::move(diagonal)) {
    if (b_.empty()) {
      throw std::invalid_argument("Jacobi matrix must have dimension >= 1");
    }
    if (a_.size() + 1 != b_.size()) {
      throw std::invalid_argument("off-diagonal length must be n-1 (got " +
                                  std::to_string(a_.size()) + " for n=" +
                                  std::to_string(b_.size()) + ")");
    }
    for (const Real& v : b_) {
      if (!is_finite(v)) throw std::invalid_argument("diagonal entry is not finite");
    }
    for (const Real& v : a_) {
      if (!is_finite(v)) throw std::invalid_argument("off-diagonal entry is not finite");
      if (!(v > 0)) throw std::invalid_argument("off-diagonal entries must be strictly positive");
    }
  }

  std::size_t size() const { return b_.size(); }
  std::span<const Real> off_diagonal() const { return a_; }
  std::span<const Real> diagonal() const { return b_; }

  /// True when every off-diagonal entry equals one.
  bool is_schrodinger() const {
    for (const Real& v : a_) {
      if (!(v == Real(1))) return false;
    }
    return true;
  }

  /// Principal submatrix on rows/columns [first, last), 0-based.
  BasicJacobiMatrix principal(std::size_t first, std::size_t last) const {
    if (first >= last || last > size()) {
      throw std::out_of_range("principal submatrix range out of bounds");
    }
    std::vector<Real> b(b_.begin() + first, b_.begin() + last);
    std::vector<Real> a(a_.begin() + first, a_.begin() + (last - 1));
    return BasicJacobiMatrix(std::move(a), std::move(b));
  }

  friend bool operator==(const BasicJacobiMatrix&, const BasicJacobiMatrix&) = default;

 private:
  static bool is_finite(const Real& v) {
    if constexpr (std::is_floating_point_v<Real>) {
      return std::isfinite(v);
    } else {
      return true;
    }
  }

  std::vector<Real> a_;
  std::vector<Real> b_;
};

using JacobiMatrix = BasicJacobiMatrix<double>;
using RationalJacobiMatrix = BasicJacobiMatrix<Rational>;

/// Additive perturbation of the first (`b`) and last (`B`) diagonal entries.
/// Encodes the boundary conditions f_0 = b f_1 and f_{n+1} = B f_n.
struct BoundaryPerturbation {
  double b = 0.0;
  double B = 0.0;
};

/// Discrete Schrodinger matrix S_n: unit off-diagonal, given diagonal.
template <class Real>
BasicJacobiMatrix<Real> make_schrodinger(std::size_t n, std::vector<Real> b) {
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
  if (b.size() != n) {
    throw std::invalid_argument("diagonal length " + std::to_string(b.size()) +
                                " does not match n=" + std::to_string(n));
  }
  return BasicJacobiMatrix<Real>(std::vector<Real>(n - 1, Real(1)), std::move(b));
}

inline JacobiMatrix make_schrodinger(std::size_t n, std::vector<double> b) {
  return make_schrodinger<double>(n, std::move(b));
}

/// Free matrix F_n: unit off-diagonal, zero diagonal.
template <class Real = double>
BasicJacobiMatrix<Real> make_free(std::size_t n) {
  return make_schrodinger<Real>(n, std::vector<Real>(n, Real(0)));
}

/// S_n with b_1, b_2 given and every other diagonal entry zero. Requires n >= 2.
template <class Real = double>
BasicJacobiMatrix<Real> make_two_site(std::size_t n, Real b1, Real b2) {
  if (n < 2) throw std::invalid_argument("two-site potential needs n >= 2");
  std::vector<Real> b(n, Real(0));
  b[0] = b1;
  b[1] = b2;
  return make_schrodinger<Real>(n, std::move(b));
}

JacobiMatrix apply_boundary(const JacobiMatrix& m, const BoundaryPerturbation& p);

/// Reduce an angle in turns into [0, 1).
double canonical_turns(double theta);

/// Schrodinger matrix with Floquet corners: entry (1,n) is e^{2 pi i theta},
/// entry (n,1) its conjugate. Angle is in turns and kept in [0, 1).
class FloquetMatrix {
 public:
  FloquetMatrix(std::vector<double> diagonal, double theta);

  std::size_t size() const { return b_.size(); }
  std::span<const double> diagonal() const { return b_; }
  double theta() const { return theta_; }

  /// e^{2 pi i theta}, the (1,n) corner entry.
  std::complex<double> corner() const;
  /// 2 cos(2 pi theta), the only place the angle enters the characteristic polynomial.
  double corner_trace() const;

  /// The conjugate transpose equals the matrix; the plain transpose is the
  /// matrix at angle 1 - theta.
  FloquetMatrix transposed() const;

  /// Tridiagonal part (corners removed).
  JacobiMatrix band() const;

  friend bool operator==(const FloquetMatrix&, const FloquetMatrix&) = default;

 private:
  std::vector<double> b_;
  double theta_;
};

FloquetMatrix make_floquet(std::size_t n, std::vector<double> b, double theta);

/// Row-major dense square matrix.
template <class T>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<T> data;

  explicit DenseMatrix(std::size_t dim) : n(dim), data(dim * dim, T{}) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

DenseMatrix<double> to_dense(const JacobiMatrix& m);
DenseMatrix<std::complex<double>> to_dense(const FloquetMatrix& m);

bool is_hermitian(const DenseMatrix<double>& m);
bool is_hermitian(const DenseMatrix<std::complex<double>>& m);

}  // namespace ambar
