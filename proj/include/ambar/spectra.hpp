#pragma once

// Eigenvalues, eigenvectors, interlacing and eigenvalue derivatives for the
// Jacobi and Floquet families.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ambar/operators.hpp"
#include "ambar/poly.hpp"

namespace ambar {

inline constexpr double kDefaultTol = 1e-12;

/// Bisection could not shrink a bracket to the requested width.
class ConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation that needs a simple eigenvalue was given a (near) multiple one.
class NotSimpleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ascending eigenvalues; multiplicity is encoded by repetition. `tol` is the
/// bracket width each value was resolved to.
struct Spectrum {
  std::vector<double> values;
  double tol = kDefaultTol;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  /// Smallest gap between consecutive values; +inf for fewer than two.
  double min_gap() const;
};

/// Largest |a_i - b_i| between equal-size spectra.
double max_difference(const Spectrum& a, const Spectrum& b);

template <class T>
struct EigenPair {
  double value = 0.0;
  std::vector<T> vector;  ///< unit norm, first non-negligible entry real positive
  double residual = 0.0;  ///< ||M v - value v||
};

/// M_n(t): the free matrix with diagonal entries 1 and 2 replaced by -t.
class PerturbationPath {
 public:
  PerturbationPath(std::size_t n, double t);
  std::size_t size() const { return n_; }
  double t() const { return t_; }
  JacobiMatrix matrix() const;

 private:
  std::size_t n_;
  double t_;
};

/// Leading principal determinants p_k(x) = det(x I_k - J_k), k = 0..n.
std::vector<double> sturm_sequence(const JacobiMatrix& m, double x);

/// Number of eigenvalues strictly below x, from the signs of the LDL^T
/// pivots of J - xI.
std::size_t count_below(const JacobiMatrix& m, double x);

Spectrum eigenvalues(const JacobiMatrix& m, double tol = kDefaultTol);

/// Roots of the Floquet characteristic polynomial, double roots repeated.
Spectrum eigenvalues(const FloquetMatrix& m, double tol = kDefaultTol);

/// All roots of a polynomial known to have only real roots (e.g. the
/// characteristic polynomial of a Hermitian matrix), with multiplicity up to 2.
/// Each root is isolated between consecutive critical points; an interval
/// whose endpoint is a critical zero carries a double root there.
std::vector<double> real_rooted_roots(const Poly<double>& p, double tol = kDefaultTol);

EigenPair<double> eigenvector(const JacobiMatrix& m, double lambda, double tol = kDefaultTol);
EigenPair<std::complex<double>> eigenvector(const FloquetMatrix& m, double lambda,
                                            double tol = kDefaultTol);

/// lambda_1 < mu_1 < lambda_2 < ... < mu_{n-1} < lambda_n, each comparison
/// allowed to fail by at most the larger of the two spectra's tolerances.
bool interlaces(const Spectrum& outer, const Spectrum& inner);

/// d lambda_k / dt along M_n(t) by Hellmann-Feynman: -X_1^2 - X_2^2 for the
/// unit eigenvector X. `k` is 1-based. Throws NotSimpleError when the gap to
/// a neighbour is below 1e3 * tol.
double eigenvalue_derivative(const PerturbationPath& path, std::size_t k, double tol = kDefaultTol);

/// Spectrum of S_n(-b) is the negated, reversed spectrum of S_n(b).
Spectrum negated(const Spectrum& s);

}  // namespace ambar
