#include "ambar/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <string>

#include "ambar/charpoly.hpp"

namespace ambar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBisectionCap = 400;
constexpr int kInverseIterationCap = 12;

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tolerance must be positive");
}

// Gershgorin interval containing every eigenvalue.
std::pair<double, double> gershgorin(const JacobiMatrix& m) {
  const auto a = m.off_diagonal();
  const auto b = m.diagonal();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += a[i - 1];
    if (i < a.size()) radius += a[i];
    lo = std::min(lo, b[i] - radius);
    hi = std::max(hi, b[i] + radius);
  }
  const double pad = 4.0 * kEps * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

// Deterministic start vector with no special symmetry.
std::vector<double> start_vector(std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t s = 0x9E3779B97F4A7C15ULL;
  for (auto& x : v) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    x = 0.5 + static_cast<double>(s >> 11) * 0x1.0p-53;
  }
  return v;
}

template <class T>
double norm2(const std::vector<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <class T>
void normalize(std::vector<T>& v) {
  const double s = norm2(v);
  for (auto& x : v) x /= s;
}

// Rotate so the first non-negligible entry is real and positive.
template <class T>
void fix_phase(std::vector<T>& v) {
  double big = 0.0;
  for (const auto& x : v) big = std::max(big, std::abs(x));
  for (const auto& x : v) {
    if (std::abs(x) > 1e-10 * big) {
      const T phase = x / std::abs(x);
      if constexpr (std::is_same_v<T, double>) {
        if (phase < 0) {
          for (auto& y : v) y = -y;
        }
      } else {
        const T rot = std::conj(phase);
        for (auto& y : v) y *= rot;
        // the pivot entry is now real up to rounding
      }
      return;
    }
  }
}

// LU factorization with partial pivoting of the tridiagonal J - shift I,
// LAPACK gttrf layout. Returns false on an exactly zero pivot.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<std::size_t> ipiv;

  bool factor(const JacobiMatrix& m, double shift) {
    const std::size_t n = m.size();
    d.assign(m.diagonal().begin(), m.diagonal().end());
    for (auto& x : d) x -= shift;
    dl.assign(m.off_diagonal().begin(), m.off_diagonal().end());
    du = dl;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    ipiv.resize(n);
    std::iota(ipiv.begin(), ipiv.end(), std::size_t{0});
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] != 0.0) {
          const double fact = dl[i] / d[i];
          dl[i] = fact;
          d[i + 1] -= fact * du[i];
        }
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        ipiv[i] = i + 1;
      }
    }
    return std::none_of(d.begin(), d.end(), [](double x) { return x == 0.0; });
  }

  void solve(std::vector<double>& rhs) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t ip = ipiv[i];
      const double temp = rhs[i + 1 - ip + i] - dl[i] * rhs[ip];
      rhs[i] = rhs[ip];
      rhs[i + 1] = temp;
    }
    rhs[n - 1] /= d[n - 1];
    if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
    if (n < 3) return;
    for (std::size_t i = n - 2; i-- > 0;) {
      rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
    }
  }
};

// Dense complex LU with partial pivoting.
struct DenseLU {
  std::size_t n = 0;
  std::vector<std::complex<double>> lu;
  std::vector<std::size_t> perm;

  bool factor(const DenseMatrix<std::complex<double>>& a, double shift) {
    n = a.n;
    lu = a.data;
    for (std::size_t i = 0; i < n; ++i) lu[i * n + i] -= shift;
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::abs(lu[r * n + c]) > std::abs(lu[p * n + c])) p = r;
      }
      if (lu[p * n + c] == 0.0) return false;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu[p * n + j], lu[c * n + j]);
        std::swap(perm[p], perm[c]);
      }
      for (std::size_t r = c + 1; r < n; ++r) {
        const auto f = lu[r * n + c] / lu[c * n + c];
        lu[r * n + c] = f;
        for (std::size_t j = c + 1; j < n; ++j) lu[r * n + j] -= f * lu[c * n + j];
      }
    }
    return true;
  }

  void solve(std::vector<std::complex<double>>& rhs) const {
    std::vector<std::complex<double>> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = rhs[perm[i]];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) y[i] -= lu[i * n + j] * y[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu[i * n + j] * y[j];
      y[i] /= lu[i * n + i];
    }
    rhs = std::move(y);
  }
};

double residual(const JacobiMatrix& m, const std::vector<double>& v, double lambda) {
  const auto a = m.off_diagonal();
  const auto b = m.diagonal();
  const std::size_t n = m.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (b[i] - lambda) * v[i];
    if (i > 0) r += a[i - 1] * v[i - 1];
    if (i + 1 < n) r += a[i] * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

double residual(const FloquetMatrix& m, const std::vector<std::complex<double>>& v, double lambda) {
  const auto b = m.diagonal();
  const std::size_t n = m.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> r = (b[i] - lambda) * v[i];
    if (i > 0) r += v[i - 1];
    if (i + 1 < n) r += v[i + 1];
    if (i == 0) r += m.corner() * v[n - 1];
    if (i == n - 1) r += std::conj(m.corner()) * v[0];
    s += std::norm(r);
  }
  return std::sqrt(s);
}

// Shared inverse-iteration driver. `factor(shift)` prepares a solver and
// reports singularity; an exactly singular shift is nudged and retried.
template <class T, class Factor, class Solve, class Residual>
EigenPair<T> inverse_iteration(std::size_t n, double lambda, double tol, double scale,
                               Factor factor, Solve solve, Residual resid) {
  require_tol(tol);
  double shift = lambda;
  bool ok = factor(shift);
  for (int attempt = 1; !ok && attempt <= 4; ++attempt) {
    shift = lambda + attempt * 16.0 * kEps * scale;
    ok = factor(shift);
  }
  if (!ok) throw std::runtime_error("shifted system is singular for every perturbed shift");

  const auto seed = start_vector(n);
  std::vector<T> v(seed.begin(), seed.end());
  normalize(v);
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kInverseIterationCap; ++it) {
    solve(v);
    if (!std::isfinite(norm2(v))) throw std::runtime_error("inverse iteration overflowed");
    normalize(v);
    res = resid(v);
    if (it >= 1 && res <= tol) break;
  }
  if (!(res <= 10.0 * tol)) {
    throw std::invalid_argument("lambda=" + std::to_string(lambda) +
                                " is not within tolerance of an eigenvalue (residual " +
                                std::to_string(res) + ")");
  }
  fix_phase(v);
  return {lambda, std::move(v), res};
}

}  // namespace

double Spectrum::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < values.size(); ++i) gap = std::min(gap, values[i] - values[i - 1]);
  return gap;
}

double max_difference(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spectra differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Spectrum negated(const Spectrum& s) {
  Spectrum out{std::vector<double>(s.values.rbegin(), s.values.rend()), s.tol};
  for (auto& v : out.values) v = -v;
  return out;
}

PerturbationPath::PerturbationPath(std::size_t n, double t) : n_(n), t_(t) {
  if (n < 2) throw std::invalid_argument("perturbation path needs n >= 2");
  if (!std::isfinite(t)) throw std::invalid_argument("path parameter is not finite");
}

JacobiMatrix PerturbationPath::matrix() const { return make_two_site(n_, -t_, -t_); }

std::vector<double> sturm_sequence(const JacobiMatrix& m, double x) {
  const auto a = m.off_diagonal();
  const auto b = m.diagonal();
  std::vector<double> p(m.size() + 1);
  p[0] = 1.0;
  p[1] = x - b[0];
  for (std::size_t k = 1; k < m.size(); ++k) {
    p[k + 1] = (x - b[k]) * p[k] - a[k - 1] * a[k - 1] * p[k - 1];
  }
  return p;
}

std::size_t count_below(const JacobiMatrix& m, double x) {
  const auto a = m.off_diagonal();
  const auto b = m.diagonal();
  double amax = 1.0;
  for (double v : a) amax = std::max(amax, v * v);
  const double pivmin = std::numeric_limits<double>::min() * amax;

  std::size_t count = 0;
  double d = b[0] - x;
  for (std::size_t k = 0;; ++k) {
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    if (k + 1 == m.size()) break;
    d = (b[k + 1] - x) - a[k] * a[k] / d;
  }
  return count;
}

Spectrum eigenvalues(const JacobiMatrix& m, double tol) {
  require_tol(tol);
  const auto [lo, hi] = gershgorin(m);
  const std::size_t n = m.size();
  Spectrum s{std::vector<double>(n), tol};
  double floor = lo;
  for (std::size_t k = 0; k < n; ++k) {
    // eigenvalue k lies in [l, u) where count_below(l) <= k < count_below(u)
    double l = floor;
    double u = hi;
    int it = 0;
    while (u - l > tol) {
      const double mid = l + 0.5 * (u - l);
      if (mid <= l || mid >= u || ++it > kBisectionCap) {
        throw ConvergenceError("bisection stalled at width " + std::to_string(u - l) +
                               " above tol " + std::to_string(tol));
      }
      if (count_below(m, mid) > k) {
        u = mid;
      } else {
        l = mid;
      }
    }
    s.values[k] = l + 0.5 * (u - l);
    floor = l;
  }
  return s;
}

std::vector<double> real_rooted_roots(const Poly<double>& p, double tol) {
  require_tol(tol);
  const int deg = p.degree();
  if (deg < 1) return {};
  if (!p.is_finite()) throw std::invalid_argument("polynomial has non-finite coefficients");
  if (deg == 1) return {-p[0] / p[1]};

  const std::vector<double> crit = real_rooted_roots(p.derivative(), tol);

  double cauchy = 0.0;
  for (int i = 0; i < deg; ++i) cauchy = std::max(cauchy, std::abs(p[i] / p.leading()));
  const double bound = 1.0 + cauchy;

  std::vector<double> pts;
  pts.reserve(crit.size() + 2);
  pts.push_back(-bound);
  pts.insert(pts.end(), crit.begin(), crit.end());
  pts.push_back(bound);

  std::vector<double> vals(pts.size());
  std::vector<bool> zero(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = p(pts[i]);
    const bool interior = i > 0 && i + 1 < pts.size();
    zero[i] = interior && std::abs(vals[i]) <= 16.0 * deg * kEps * p.magnitude_at(pts[i]);
  }

  std::vector<double> roots;
  roots.reserve(deg);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double l = pts[i];
    double u = pts[i + 1];
    if (zero[i]) {
      roots.push_back(l);
    } else if (zero[i + 1]) {
      roots.push_back(u);
    } else if (std::signbit(vals[i]) != std::signbit(vals[i + 1])) {
      const bool neg_left = std::signbit(vals[i]);
      int it = 0;
      while (u - l > tol) {
        const double mid = l + 0.5 * (u - l);
        if (mid <= l || mid >= u || ++it > kBisectionCap) {
          throw ConvergenceError("root bisection stalled at width " + std::to_string(u - l));
        }
        const double v = p(mid);
        if (v == 0.0) {
          l = u = mid;
          break;
        }
        if (std::signbit(v) == neg_left) {
          l = mid;
        } else {
          u = mid;
        }
      }
      roots.push_back(l + 0.5 * (u - l));
    } else {
      // No sign change and no flagged zero: a double root sits at whichever
      // critical endpoint is closer to zero.
      roots.push_back(std::abs(vals[i]) < std::abs(vals[i + 1]) ? l : u);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Spectrum eigenvalues(const FloquetMatrix& m, double tol) {
  return Spectrum{real_rooted_roots(charpoly(m), tol), tol};
}

EigenPair<double> eigenvector(const JacobiMatrix& m, double lambda, double tol) {
  TridiagonalLU lu;
  double scale = std::abs(lambda);
  for (double v : m.diagonal()) scale = std::max(scale, std::abs(v));
  for (double v : m.off_diagonal()) scale = std::max(scale, v);
  return inverse_iteration<double>(
      m.size(), lambda, tol, std::max(scale, 1.0),
      [&](double shift) { return lu.factor(m, shift); },
      [&](std::vector<double>& v) { lu.solve(v); },
      [&](const std::vector<double>& v) { return residual(m, v, lambda); });
}

EigenPair<std::complex<double>> eigenvector(const FloquetMatrix& m, double lambda, double tol) {
  DenseLU lu;
  const auto dense = to_dense(m);
  double scale = std::max(1.0, std::abs(lambda));
  for (double v : m.diagonal()) scale = std::max(scale, std::abs(v));
  return inverse_iteration<std::complex<double>>(
      m.size(), lambda, tol, scale,
      [&](double shift) { return lu.factor(dense, shift); },
      [&](std::vector<std::complex<double>>& v) { lu.solve(v); },
      [&](const std::vector<std::complex<double>>& v) { return residual(m, v, lambda); });
}

bool interlaces(const Spectrum& outer, const Spectrum& inner) {
  if (outer.size() != inner.size() + 1) {
    throw std::invalid_argument("interlacing needs spectra of sizes n and n-1 (got " +
                                std::to_string(outer.size()) + " and " +
                                std::to_string(inner.size()) + ")");
  }
  const double margin = std::max(outer.tol, inner.tol);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!(outer[i] < inner[i] + margin)) return false;
    if (!(inner[i] < outer[i + 1] + margin)) return false;
  }
  return true;
}

double eigenvalue_derivative(const PerturbationPath& path, std::size_t k, double tol) {
  const JacobiMatrix m = path.matrix();
  if (k < 1 || k > m.size()) throw std::out_of_range("eigenvalue index out of range");
  const Spectrum s = eigenvalues(m, tol);
  const std::size_t i = k - 1;
  const double simple_gap = 1e3 * tol;
  if ((i > 0 && s[i] - s[i - 1] <= simple_gap) ||
      (i + 1 < s.size() && s[i + 1] - s[i] <= simple_gap)) {
    throw NotSimpleError("eigenvalue " + std::to_string(k) + " is not simple within tolerance");
  }
  const auto pair = eigenvector(m, s[i], tol);
  return -(pair.vector[0] * pair.vector[0] + pair.vector[1] * pair.vector[1]);
}

}  // namespace ambar
