#include "ambar/operators.hpp"

#include <numbers>

namespace ambar {

JacobiMatrix apply_boundary(const JacobiMatrix& m, const BoundaryPerturbation& p) {
  std::vector<double> b(m.diagonal().begin(), m.diagonal().end());
  std::vector<double> a(m.off_diagonal().begin(), m.off_diagonal().end());
  b.front() += p.b;
  b.back() += p.B;
  return JacobiMatrix(std::move(a), std::move(b));
}

double canonical_turns(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("angle is not finite");
  double r = theta - std::floor(theta);
  // floor of a tiny negative value can round the difference up to exactly 1.
  if (r >= 1.0) r = 0.0;
  return r;
}

FloquetMatrix::FloquetMatrix(std::vector<double> diagonal, double theta)
    : b_(std::move(diagonal)), theta_(canonical_turns(theta)) {
  if (b_.size() < 3) {
    throw std::invalid_argument("Floquet matrix needs n >= 3 so the corners stay off the band");
  }
  for (double v : b_) {
    if (!std::isfinite(v)) throw std::invalid_argument("diagonal entry is not finite");
  }
}

std::complex<double> FloquetMatrix::corner() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * theta_);
}

double FloquetMatrix::corner_trace() const {
  return 2.0 * std::cos(2.0 * std::numbers::pi * theta_);
}

FloquetMatrix FloquetMatrix::transposed() const {
  return FloquetMatrix(b_, canonical_turns(1.0 - theta_));
}

JacobiMatrix FloquetMatrix::band() const { return make_schrodinger(b_.size(), b_); }

FloquetMatrix make_floquet(std::size_t n, std::vector<double> b, double theta) {
  if (n < 3) throw std::invalid_argument("Floquet matrix needs n >= 3");
  if (b.size() != n) {
    throw std::invalid_argument("diagonal length " + std::to_string(b.size()) +
                                " does not match n=" + std::to_string(n));
  }
  return FloquetMatrix(std::move(b), theta);
}

DenseMatrix<double> to_dense(const JacobiMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = m.diagonal()[i];
    if (i + 1 < n) {
      d(i, i + 1) = m.off_diagonal()[i];
      d(i + 1, i) = m.off_diagonal()[i];
    }
  }
  return d;
}

DenseMatrix<std::complex<double>> to_dense(const FloquetMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix<std::complex<double>> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = m.diagonal()[i];
    if (i + 1 < n) {
      d(i, i + 1) = 1.0;
      d(i + 1, i) = 1.0;
    }
  }
  d(0, n - 1) = m.corner();
  d(n - 1, 0) = std::conj(m.corner());
  return d;
}

bool is_hermitian(const DenseMatrix<double>& m) {
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

bool is_hermitian(const DenseMatrix<std::complex<double>>& m) {
  for (std::size_t i = 0; i < m.n; ++i) {
    if (m(i, i).imag() != 0.0) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (m(i, j) != std::conj(m(j, i))) return false;
    }
  }
  return true;
}

}  // namespace ambar
