// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "ambar/charpoly.hpp"
#include "ambar/cli.hpp"
#include "ambar/inverse.hpp"
#include "ambar/spectra.hpp"
#include "oracles/oracles.hpp"

using namespace ambar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

RationalJacobiMatrix exact_schrodinger(const std::vector<double>& b) {
  std::vector<Rational> q;
  for (double v : b) q.push_back(to_rational(v));
  return make_schrodinger<Rational>(b.size(), q);
}

// 1. Counterexample: exact A, float B within 1e-12, spectra within 1e-10.
Outcome counterexample() {
  const Poly<Rational> target{2, -2, -2, 1};
  if (charpoly(make_schrodinger<Rational>(3, {2, 0, 0})) != target) return fail("A charpoly differs");
  const double s5 = std::sqrt(5.0);
  const auto b = make_schrodinger(3, {-2.0 / (1.0 + s5), 1.0, (1.0 + s5) / 2.0});
  const double gap = max_coefficient_gap(charpoly(b), to_double(target));
  if (gap > 1e-12) return fail("B coefficient gap " + std::to_string(gap));
  const double d = max_difference(eigenvalues(make_schrodinger(3, {2, 0, 0})), eigenvalues(b));
  if (d > 1e-10) return fail("spectra differ by " + std::to_string(d));
  std::ostringstream os;
  os << "B gap " << gap << ", spectral gap " << d;
  return {true, os.str()};
}

// 2. Lemma identities, 200 random integer diagonals, n in 2..10, exact.
Outcome lemma() {
  oracle::Gen g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.size(2, 10);
    const auto b = g.integers(n, -5, 5);
    const auto c = leading_coefficients(charpoly(exact_schrodinger(b)));
    Rational sum = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += to_rational(b[i]);
      for (std::size_t j = i + 1; j < n; ++j) pairs += to_rational(b[i]) * to_rational(b[j]);
    }
    if (c.sub_leading != -sum) return fail("x^{n-1} coefficient, trial " + std::to_string(trial));
    if (c.sub_sub_leading != pairs - Rational(static_cast<long>(n - 1))) {
      return fail("x^{n-2} coefficient, trial " + std::to_string(trial));
    }
  }
  return {true, "200 instances, zero error"};
}

// 3. Two-site factorization, exact, n in 4..12, 100 random rational pairs.
Outcome factorization() {
  oracle::Gen g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial) % 9;
    const Rational b1 = g.rational(20, 9), b2 = g.rational(20, 9);
    const auto lhs = charpoly(make_two_site<Rational>(n, b1, b2));
    const auto x_b1 = Poly<Rational>::linear(b1);
    const auto quad = x_b1 * Poly<Rational>::linear(b2) - Poly<Rational>::one();
    const auto rhs = quad * charpoly(make_free<Rational>(n - 2)) - x_b1 * charpoly(make_free<Rational>(n - 3));
    if (lhs != rhs) return fail("n=" + std::to_string(n) + " b1=" + to_string(b1) + " b2=" + to_string(b2));
    if (verify_two_site_factorization(n, b1, b2).verdict != Verdict::confirmed) return fail("library report");
  }
  return {true, "100 pairs, exact equality"};
}

// 4. Elimination for n in 4..12, degeneracy classes, under 10 s.
Outcome elimination() {
  const auto t0 = Clock::now();
  std::size_t eliminated = 0, degenerate = 0;
  double worst = INFINITY;
  for (std::size_t n = 4; n <= 12; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const auto r = eliminate_spurious(n, k);
      const bool coincide = n % 2 == 0 && k == n / 2;
      const bool undefined = n % 2 == 1 && (k == (n - 1) / 2 || k == (n + 1) / 2);
      const std::string where = " at n=" + std::to_string(n) + " k=" + std::to_string(k);
      if (r.verdict != Verdict::confirmed) return fail("report violated" + where);
      if (coincide) {
        if (r.status != "degenerate-coincide") return fail("expected coincide" + where);
        ++degenerate;
        continue;
      }
      if (undefined) {
        if (r.status != "degenerate-undefined") return fail("expected undefined" + where);
        ++degenerate;
        continue;
      }
      if (r.status != "eliminated") return fail("not eliminated" + where);
      // Independent residual from the dense solver.
      const auto sf = oracle::free_spectrum(n);
      std::vector<double> diag(n, 0.0);
      diag[0] = sf[k - 1] + sf[k];
      diag[1] = 1 / sf[k - 1] + 1 / sf[k];
      const auto ss = oracle::eig_schrodinger(diag);
      const double res = std::max(std::abs(ss[k - 1] - sf[k - 1]), std::abs(ss[k] - sf[k]));
      if (!(res > 1e-6)) return fail("residual " + std::to_string(res) + where);
      worst = std::min(worst, res);
      ++eliminated;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 10.0) return fail("took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << eliminated << " eliminated (min residual " << worst << "), " << degenerate << " degenerate, "
     << secs << " s";
  return {true, os.str()};
}

// 5. Brute-force oracle, n in 3..6, full grid, under 5 min.
Outcome oracle_uniqueness() {
  const auto t0 = Clock::now();
  const GridSpec grid{-3.0, 3.0, 0.01};
  OracleOptions opts;
  opts.match = 1e-8;
  std::size_t found = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto res = brute_force_isospectral_search(n, grid, opts);
    for (const auto& s : res.solutions) {
      if (std::hypot(s.b1, s.b2) > 1e-6) {
        std::ostringstream os;
        os << "n=" << n << " k=" << s.k << " (" << s.b1 << ", " << s.b2 << ") residual " << s.residual;
        return fail(os.str());
      }
      ++found;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300.0) return fail("took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << found << " solutions, all at the origin, " << secs << " s";
  return {true, os.str()};
}

// 6. Floquet theta dependence and angle round trip.
Outcome floquet() {
  oracle::Gen g(6);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.size(3, 12);
    const auto b = g.reals(n, -3, 3);
    const double t1 = g.unit(), t2 = g.unit();
    const auto diff = charpoly(make_floquet(n, b, t1)) - charpoly(make_floquet(n, b, t2));
    const double expect = 2 * std::cos(2 * std::numbers::pi * t2) - 2 * std::cos(2 * std::numbers::pi * t1);
    worst = std::max(worst, std::abs(diff[0] - expect));
    for (std::size_t i = 1; i <= n; ++i) worst = std::max(worst, std::abs(diff[i]));
  }
  if (worst > 1e-12) return fail("charpoly difference off by " + std::to_string(worst));
  double angle_err = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.size(3, 12);
    const double phi = g.unit();
    const auto angles = recover_floquet_angle(eigenvalues(make_floquet(n, std::vector<double>(n, 0.0), phi)), n);
    const double want_lo = std::min(phi, 1 - phi), want_hi = std::max(phi, 1 - phi);
    double e = std::abs(angles.front() - want_lo);
    if (angles.size() == 2) e = std::max(e, std::abs(angles.back() - want_hi));
    else e = std::max(e, std::abs(want_hi - want_lo));
    angle_err = std::max(angle_err, e);
  }
  if (angle_err > 1e-9) return fail("angle round trip off by " + std::to_string(angle_err));
  std::ostringstream os;
  os << "max coefficient error " << worst << ", max angle error " << angle_err;
  return {true, os.str()};
}

// 7. Derivative vs central differences, n in 2..20, t in {-0.5, 0, 0.5}.
Outcome hellmann_feynman() {
  double worst = 0;
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 20; ++n) {
    for (double t : {-0.5, 0.0, 0.5}) {
      const auto es = oracle::eig_path(n, t);
      for (std::size_t k = 1; k <= n; ++k) {
        double d = 0;
        try {
          d = eigenvalue_derivative(PerturbationPath(n, t), k);
        } catch (const NotSimpleError&) {
          continue;
        }
        worst = std::max(worst, std::abs(d - oracle::fd_derivative(n, k, t)));
        const double x1 = es.eigenvectors()(0, static_cast<Eigen::Index>(k - 1));
        const double x2 = es.eigenvectors()(1, static_cast<Eigen::Index>(k - 1));
        if (x1 * x1 + x2 * x2 > 1e-12 && !(d < 0.0)) {
          return fail("derivative not negative at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
        ++checked;
      }
    }
  }
  if (worst > 1e-6) return fail("max deviation " + std::to_string(worst));
  std::ostringstream os;
  os << checked << " eigenvalues, max deviation " << worst;
  return {true, os.str()};
}

// 8. Free spectrum bounds, simplicity, interlacing.
Outcome spectral_basics() {
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto s = eigenvalues(make_free(n));
    if (s.values.front() < -2.0 || s.values.back() > 2.0) return fail("F_" + std::to_string(n) + " leaves [-2,2]");
  }
  double gap = INFINITY;
  for (std::size_t n = 2; n <= 50; ++n) gap = std::min(gap, eigenvalues(make_free(n)).min_gap());
  if (!(gap > 1e-10)) return fail("min gap " + std::to_string(gap));
  oracle::Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.size(2, 20);
    const JacobiMatrix m(g.reals(n - 1, 0.1, 2.0), g.reals(n, -3, 3));
    if (!interlaces(eigenvalues(m), eigenvalues(m.principal(0, n - 1)))) {
      return fail("interlacing, trial " + std::to_string(trial));
    }
  }
  std::ostringstream os;
  os << "n <= 200 inside [-2,2], min gap (n <= 50) " << gap << ", 100 interlacing instances";
  return {true, os.str()};
}

// 9. Determinism of CLI JSON.
Outcome determinism() {
  const std::vector<std::vector<std::string>> cases = {
      {"verify", "--theorem", "amb1", "--n", "6", "--trials", "100", "--seed", "7"},
      {"verify", "--theorem", "amb2", "--n", "8", "--trials", "30", "--seed", "99"},
      {"verify", "--theorem", "nzbc", "--n", "5", "--trials", "20", "--seed", "1"},
      {"verify", "--theorem", "factorization", "--n", "9", "--trials", "10", "--seed", "5"},
      {"solve-amb3", "--n", "8", "--k", "3"},
      {"oracle-scan", "--n", "3", "--step", "0.05"},
  };
  for (auto args : cases) {
    std::string outputs[2];
    for (auto& o : outputs) {
      std::vector<std::string> a = args;
      a.insert(a.begin(), "ambar");
      std::vector<char*> argv;
      for (auto& s : a) argv.push_back(s.data());
      std::ostringstream out, err;
      const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
      if (code != 0) return fail(args[0] + " exited " + std::to_string(code) + ": " + err.str());
      o = out.str();
    }
    if (outputs[0] != outputs[1]) return fail("output differs for " + args[0]);
  }
  return {true, std::to_string(cases.size()) + " configs byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 counterexample", counterexample},
      {"2 lemma identities", lemma},
      {"3 two-site factorization", factorization},
      {"4 spurious elimination", elimination},
      {"5 oracle uniqueness", oracle_uniqueness},
      {"6 floquet", floquet},
      {"7 eigenvalue derivative", hellmann_feynman},
      {"8 spectral basics", spectral_basics},
      {"9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
