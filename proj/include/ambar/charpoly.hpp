#pragma once

// Characteristic polynomials det(xI - M) via the tridiagonal three-term
// recurrence, exact (Rational) or floating point.

#include <cstddef>
#include <vector>

#include "ambar/operators.hpp"
#include "ambar/poly.hpp"

namespace ambar {

/// p_k = (x - b_k) p_{k-1} - a_{k-1}^2 p_{k-2}, p_0 = 1, p_{-1} = 0.
/// Returns p_0 .. p_n; entry k is the characteristic polynomial of the
/// leading k x k block.
template <class Real>
std::vector<Poly<Real>> leading_charpolys(const BasicJacobiMatrix<Real>& m) {
  const auto a = m.off_diagonal();
  const auto b = m.diagonal();
  std::vector<Poly<Real>> p;
  p.reserve(m.size() + 1);
  p.push_back(Poly<Real>::one());
  p.push_back(Poly<Real>::linear(b[0]));
  for (std::size_t k = 1; k < m.size(); ++k) {
    const Real a2 = a[k - 1] * a[k - 1];
    p.push_back(Poly<Real>::linear(b[k]) * p[k] - p[k - 1] * a2);
  }
  return p;
}

template <class Real>
Poly<Real> charpoly(const BasicJacobiMatrix<Real>& m) {
  return leading_charpolys(m).back();
}

/// Exact characteristic polynomial of a double-valued matrix; every entry is
/// converted to the rational it represents.
Poly<Rational> charpoly_exact(const JacobiMatrix& m);

/// Principal block rows/columns k..l, 1-based and inclusive (D[k,l]).
struct BlockRange {
  std::size_t k;
  std::size_t l;
};

template <class Real>
Poly<Real> block_det(const BasicJacobiMatrix<Real>& m, BlockRange r) {
  if (r.k < 1 || r.k > r.l || r.l > m.size()) {
    throw std::out_of_range("block range [" + std::to_string(r.k) + "," + std::to_string(r.l) +
                            "] outside 1.." + std::to_string(m.size()));
  }
  return charpoly(m.principal(r.k - 1, r.l));
}

/// det(xI - S_n(theta)) = (x - b_1) D[2,n] - D[3,n] - D[2,n-1] - 2 cos(2 pi theta).
Poly<double> charpoly(const FloquetMatrix& m);

template <class T>
struct LeadingCoefficients {
  T sub_leading;      ///< coefficient of x^{n-1}
  T sub_sub_leading;  ///< coefficient of x^{n-2}
};

template <class T>
LeadingCoefficients<T> leading_coefficients(const Poly<T>& p) {
  if (p.degree() < 2) throw std::invalid_argument("need degree >= 2 for leading coefficients");
  if (!p.is_monic()) throw std::invalid_argument("polynomial is not monic");
  const auto n = static_cast<std::size_t>(p.degree());
  return {p[n - 1], p[n - 2]};
}

/// Closed forms of the two sub-leading coefficients of a Schrodinger
/// charpoly: -sum b_i and sum_{i<j} b_i b_j - (n-1).
template <class T>
LeadingCoefficients<T> schrodinger_leading_coefficients(const std::vector<T>& b) {
  T sum(0);
  T pairs(0);
  for (const T& v : b) {
    pairs += sum * v;
    sum += v;
  }
  return {T(-sum), T(pairs - T(static_cast<long>(b.size()) - 1))};
}

}  // namespace ambar
