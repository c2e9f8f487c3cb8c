#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ambar/charpoly.hpp"
#include "ambar/spectra.hpp"
#include "oracles/oracles.hpp"

using namespace ambar;

namespace {

std::vector<double> vec(const Spectrum& s) { return s.values; }

JacobiMatrix random_jacobi(oracle::Gen& g, std::size_t n) {
  return JacobiMatrix(g.reals(n - 1, 0.1, 2.0), g.reals(n, -3, 3));
}

}  // namespace

TEST_CASE("sturm count is consistent with the recurrence") {
  oracle::Gen g(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.size(1, 15);
    const auto m = random_jacobi(g, n);
    const auto ref = oracle::eig_jacobi({m.off_diagonal().begin(), m.off_diagonal().end()},
                                        {m.diagonal().begin(), m.diagonal().end()});
    CHECK(count_below(m, -100.0) == 0);
    CHECK(count_below(m, 100.0) == n);
    for (int probe = 0; probe < 10; ++probe) {
      const double x = g.real(-5, 5);
      std::size_t expect = 0;
      for (double v : ref) expect += v < x;
      CHECK(count_below(m, x) == expect);
      // The leading-minor sequence at x equals the polynomial recurrence.
      const auto seq = sturm_sequence(m, x);
      const auto polys = leading_charpolys(m);
      REQUIRE(seq.size() == n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        CHECK(seq[k] == doctest::Approx(polys[k](x)).epsilon(1e-9));
      }
      std::size_t agreements = 0;
      for (std::size_t k = 1; k <= n; ++k) agreements += (seq[k] > 0) == (seq[k - 1] > 0);
      CHECK(agreements == count_below(m, x));
    }
  }
}

TEST_CASE("jacobi eigenvalue examples") {
  const auto f2 = eigenvalues(make_free(2));
  CHECK(f2[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f2[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto z = eigenvalues(make_schrodinger(1, {0.0}));
  CHECK(z.size() == 1);
  CHECK(std::abs(z[0]) <= 1e-12);

  const auto a = eigenvalues(make_schrodinger(3, {2.0, 0.0, 0.0}));
  const Poly<double> p{2, -2, -2, 1};
  for (double l : a.values) CHECK(std::abs(p(l)) < 1e-10);
}

TEST_CASE("free spectrum matches the chebyshev closed form") {
  // The closed form is checked against a dense solver before use.
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto closed = oracle::free_spectrum(n);
    CHECK(oracle::max_abs_diff(closed, oracle::eig_schrodinger(std::vector<double>(n, 0.0))) < 1e-12);
    CHECK(oracle::max_abs_diff(vec(eigenvalues(make_free(n))), closed) < 1e-11);
  }
}

TEST_CASE("free spectrum inside [-2,2] and simple") {
  for (std::size_t n = 1; n <= 200; n += (n < 20 ? 1 : 17)) {
    const auto s = eigenvalues(make_free(n));
    CHECK(s.values.front() >= -2.0);
    CHECK(s.values.back() <= 2.0);
  }
  for (std::size_t n = 2; n <= 50; ++n) CHECK(eigenvalues(make_free(n)).min_gap() > 1e-10);
}

TEST_CASE("random jacobi spectra match the dense solver and are simple") {
  oracle::Gen g(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.size(2, 30);
    const auto m = random_jacobi(g, n);
    const auto s = eigenvalues(m);
    const auto ref = oracle::eig_jacobi({m.off_diagonal().begin(), m.off_diagonal().end()},
                                        {m.diagonal().begin(), m.diagonal().end()});
    CHECK(oracle::max_abs_diff(s.values, ref) < 1e-10);
    CHECK(s.min_gap() > s.tol);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
  }
}

TEST_CASE("floquet eigenvalue examples") {
  const auto s0 = eigenvalues(make_floquet(3, {0, 0, 0}, 0.0));
  REQUIRE(s0.size() == 3);
  CHECK(oracle::max_abs_diff(s0.values, {-1, -1, 2}) < 1e-9);
  const auto sh = eigenvalues(make_floquet(3, {0, 0, 0}, 0.5));
  CHECK(oracle::max_abs_diff(sh.values, {-2, 1, 1}) < 1e-9);
}

TEST_CASE("floquet spectra match the dense solver") {
  oracle::Gen g(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.size(3, 12);
    const double theta = g.unit();
    const auto b = trial % 3 == 0 ? std::vector<double>(n, 0.0) : g.reals(n, -3, 3);
    const auto s = eigenvalues(make_floquet(n, b, theta));
    CHECK(oracle::max_abs_diff(s.values, oracle::eig_floquet(b, theta)) < 1e-8);
    // Transpose has the same spectrum.
    CHECK(max_difference(s, eigenvalues(make_floquet(n, b, 1.0 - theta))) < 1e-9);
  }
  for (std::size_t n = 3; n <= 12; ++n) {
    for (double theta : {0.0, 0.5, 0.125}) {
      const auto s = eigenvalues(make_floquet(n, std::vector<double>(n, 0.0), theta));
      CHECK(oracle::max_abs_diff(s.values, oracle::free_floquet_spectrum(n, theta)) < 1e-8);
    }
  }
}

TEST_CASE("real rooted roots") {
  CHECK(oracle::max_abs_diff(real_rooted_roots(Poly<double>{-2, -3, 0, 1}), {-1, -1, 2}) < 1e-9);
  CHECK(oracle::max_abs_diff(real_rooted_roots(Poly<double>{-6, 11, -6, 1}), {1, 2, 3}) < 1e-11);
  CHECK(real_rooted_roots(Poly<double>{4, 1}).size() == 1);
}

TEST_CASE("jacobi eigenvectors") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto up = eigenvector(make_free(2), 1.0);
  CHECK(up.vector[0] == doctest::Approx(r));
  CHECK(up.vector[1] == doctest::Approx(r));
  const auto dn = eigenvector(make_free(2), -1.0);
  CHECK(dn.vector[0] == doctest::Approx(r));
  CHECK(dn.vector[1] == doctest::Approx(-r));

  const auto v = eigenvector(make_free(3), std::sqrt(2.0));
  CHECK(v.vector[0] == doctest::Approx(0.5));
  CHECK(v.vector[1] == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(v.vector[2] == doctest::Approx(0.5));
  CHECK(v.residual < 1e-10);

  CHECK_THROWS_AS(eigenvector(make_free(3), 0.5), std::invalid_argument);

  oracle::Gen g(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.size(2, 20);
    const auto m = random_jacobi(g, n);
    const auto s = eigenvalues(m);
    for (double l : s.values) {
      const auto e = eigenvector(m, l);
      double norm = 0;
      for (double x : e.vector) norm += x * x;
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(e.residual < 1e-9);
    }
  }
}

TEST_CASE("floquet eigenvectors") {
  oracle::Gen g(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = g.size(3, 10);
    const auto m = make_floquet(n, g.reals(n, -3, 3), g.unit());
    const auto d = to_dense(m);
    for (double l : eigenvalues(m).values) {
      const auto e = eigenvector(m, l);
      double worst = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> acc = -l * e.vector[i];
        for (std::size_t j = 0; j < n; ++j) acc += d(i, j) * e.vector[j];
        worst = std::max(worst, std::abs(acc));
      }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("interlacing") {
  CHECK(interlaces(eigenvalues(make_free(4)), eigenvalues(make_free(3))));
  oracle::Gen g(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.size(2, 15);
    const auto m = random_jacobi(g, n);
    CHECK(interlaces(eigenvalues(m), eigenvalues(m.principal(0, n - 1))));
    CHECK(interlaces(eigenvalues(m), eigenvalues(m.principal(1, n))));
  }
  const Spectrum outer{{-1.0, 0.0, 1.0}};
  CHECK_FALSE(interlaces(outer, Spectrum{{-0.5, 1.5}}));
  CHECK_FALSE(interlaces(outer, Spectrum{{-2.0, 0.5}}));
  CHECK_THROWS(interlaces(outer, Spectrum{{0.0}}));
}

TEST_CASE("eigenvalue derivative") {
  for (double t : {-0.7, 0.0, 0.3}) {
    CHECK(eigenvalue_derivative(PerturbationPath(2, t), 1) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(eigenvalue_derivative(PerturbationPath(2, t), 2) == doctest::Approx(-1.0).epsilon(1e-10));
  }
  CHECK(std::abs(eigenvalue_derivative(PerturbationPath(5, 0.0), 3) - oracle::fd_derivative(5, 3, 0.0)) < 1e-6);
  CHECK_THROWS_AS(PerturbationPath(1, 0.0), std::invalid_argument);
  CHECK_THROWS(eigenvalue_derivative(PerturbationPath(4, 0.0), 0));
  CHECK_THROWS(eigenvalue_derivative(PerturbationPath(4, 0.0), 5));

  oracle::Gen g(53);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.size(2, 20);
    const std::size_t k = g.size(1, n);
    const double t = g.real(-1, 1);
    const double d = eigenvalue_derivative(PerturbationPath(n, t), k);
    CHECK(std::abs(d - oracle::fd_derivative(n, k, t)) < 1e-6);
    CHECK(d < 0.0);
  }
}

TEST_CASE("eigenvalues decrease along the path") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto s0 = eigenvalues(PerturbationPath(n, 0.0).matrix());
    const auto sh = eigenvalues(PerturbationPath(n, 1e-3).matrix());
    for (std::size_t k = 0; k < n; ++k) CHECK(sh[k] < s0[k]);
  }
}

TEST_CASE("sign symmetry of schrodinger spectra") {
  oracle::Gen g(61);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.size(1, 15);
    auto b = g.reals(n, -3, 3);
    const auto s = eigenvalues(make_schrodinger(n, b));
    for (auto& x : b) x = -x;
    CHECK(max_difference(negated(s), eigenvalues(make_schrodinger(n, b))) < 1e-11);
  }
}

TEST_CASE("spectrum helpers") {
  CHECK(std::isinf(Spectrum{{1.0}}.min_gap()));
  CHECK(Spectrum{{0.0, 0.5, 2.0}}.min_gap() == 0.5);
  CHECK_THROWS(max_difference(Spectrum{{1.0}}, Spectrum{{1.0, 2.0}}));
}
