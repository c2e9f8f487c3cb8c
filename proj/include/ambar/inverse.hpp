#pragma once

// Ambarzumian-type uniqueness checks for the free discrete Schrodinger
// matrix: Dirichlet, known nonzero boundary condition, Floquet angle, and the
// mixed problem with two unknown leading diagonal entries and two consecutive
// known eigenvalues.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ambar/operators.hpp"
#include "ambar/spectra.hpp"
#include "json.hpp"

namespace ambar {

struct Tolerances {
  double eig = kDefaultTol;  ///< bisection bracket width
  double match = 1e-9;       ///< two eigenvalues are "shared" when this close
};

enum class Verdict { confirmed, violated };

struct VerificationReport {
  std::string theorem;
  nlohmann::json instance;
  Verdict verdict = Verdict::confirmed;
  /// Free-form outcome label, e.g. "eliminated" or "degenerate-coincide".
  std::string status;
  nlohmann::json witness;
};

enum class Branch { trivial, spurious };
enum class Degeneracy { none, coincide, undefined };

/// Hypothesis (b1, b2) for the two-site potential. For the spurious branch,
/// b1 = l_k + l_{k+1} and b2 = 1/l_k + 1/l_{k+1}; b2 is NaN when undefined.
struct CandidatePair {
  double b1 = 0.0;
  double b2 = 0.0;
  Branch branch = Branch::trivial;
  Degeneracy degenerate = Degeneracy::none;
};

/// Degeneracy of the spurious pair for the k-th/(k+1)-th eigenvalues of F_n
/// (k 1-based) from the symmetry of the free spectrum: n even with k = n/2
/// coincides with the trivial pair; n odd with k = (n-1)/2 or (n+1)/2 hits
/// the zero eigenvalue.
Degeneracy classify_free_pair(std::size_t n, std::size_t k);

/// Coefficient route and spectral comparison for the Dirichlet problem.
VerificationReport verify_amb_dirichlet(std::span<const double> b, const Tolerances& tol = {});

/// The isospectral pair A = S_3(2,0,0), B = S_3(-2/(1+sqrt5), 1, (1+sqrt5)/2).
VerificationReport verify_counterexample(const Tolerances& tol = {});

/// S_n(b, rest...) against F_n with the same boundary value b at entry 1.
VerificationReport verify_known_boundary(double b, std::span<const double> rest,
                                         const Tolerances& tol = {});

/// Exact check of the two sub-leading charpoly coefficients of S_n(b)
/// against their closed forms, b converted exactly to rationals.
VerificationReport verify_coefficient_identities(std::span<const double> b);

/// Exact check that charpoly(S_{n,2}) = [(x-b1)(x-b2)-1] p_{n-2} - (x-b1) p_{n-3}.
VerificationReport verify_two_site_factorization(std::size_t n, const Rational& b1,
                                                 const Rational& b2);

/// Angles {phi, 1 - phi} (in turns, canonical, deduplicated) of the free
/// Floquet matrix whose spectrum is `s`. Throws std::invalid_argument when
/// the recovered corner trace exceeds 2 + tol in magnitude.
std::vector<double> recover_floquet_angle(const Spectrum& s, std::size_t n, double tol = 1e-9);

VerificationReport verify_floquet_uniqueness(std::span<const double> b, double theta, double phi,
                                             const Tolerances& tol = {});

/// Trivial pair plus the spurious pair admitted by two root matches.
std::vector<CandidatePair> amb3_candidates(double lk, double lk1, double tol = 1e-9);

/// Shows the spurious candidate for eigenvalues k, k+1 of F_n (1-based)
/// cannot reproduce them, both by direct eigensolve and by the monotone
/// perturbation argument. Degenerate k yields a report with a
/// "degenerate-*" status and nothing to eliminate.
VerificationReport eliminate_spurious(std::size_t n, std::size_t k, const Tolerances& tol = {});

/// Recovers (b1, b2) = (0, 0) from the k-th and (k+1)-th eigenvalues.
/// Throws std::invalid_argument when the inputs are not free eigenvalues or k
/// is degenerate-undefined.
CandidatePair amb3_solve(std::size_t n, std::size_t k, double lk, double lk1,
                         const Tolerances& tol = {});

struct GridSpec {
  double lo = -3.0;
  double hi = 3.0;
  double step = 0.01;

  std::size_t points() const;
  double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

struct OracleOptions {
  double scan_tol = 1e-6;     ///< eigenvalue accuracy during the grid scan
  double refine_tol = 1e-14;  ///< eigenvalue accuracy during refinement
  double match = 1e-8;        ///< accept a refined point below this residual
  double newton_tol = 1e-10;  ///< stop refining below this residual
  int max_iterations = 200;
  unsigned workers = 0;  ///< 0 = hardware concurrency
};

struct OracleSolution {
  std::size_t k = 0;  ///< 1-based index of the first matched eigenvalue
  double b1 = 0.0;
  double b2 = 0.0;
  double residual = 0.0;  ///< max |l~_j - l_j| over the matched pair
};

struct OracleResult {
  std::size_t n = 0;
  GridSpec grid;
  std::size_t evaluated = 0;
  std::size_t seeds = 0;
  std::vector<OracleSolution> solutions;
};

/// Residual of the index-aware match for eigenvalues k, k+1 (1-based).
double two_site_match_residual(std::size_t n, std::size_t k, double b1, double b2,
                               const Spectrum& free, double tol);

/// Grid scan over (b1, b2) followed by damped Newton refinement with a
/// finite-difference Jacobian. Returns every refined point at which S_{n,2}
/// reproduces eigenvalues k and k+1 of F_n, for every k.
OracleResult brute_force_isospectral_search(std::size_t n, const GridSpec& grid,
                                            const OracleOptions& opts = {});

}  // namespace ambar
