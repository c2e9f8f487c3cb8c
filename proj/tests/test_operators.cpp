#include "doctest.h"

#include <cmath>
#include <complex>

#include "ambar/operators.hpp"
#include "oracles/oracles.hpp"

using namespace ambar;

TEST_CASE("jacobi matrix validates shape and positivity") {
  CHECK_THROWS_AS(JacobiMatrix({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(JacobiMatrix({1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(JacobiMatrix({0.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(JacobiMatrix({-1.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(JacobiMatrix({1.0}, {NAN, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(JacobiMatrix({INFINITY}, {0.0, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(JacobiMatrix({}, {3.0}));
}

TEST_CASE("schrodinger constructors") {
  const auto s = make_schrodinger(3, {2.0, 0.0, 0.0});
  CHECK(s.is_schrodinger());
  CHECK(s.size() == 3);
  CHECK_THROWS_AS(make_schrodinger(3, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_schrodinger(0, {}), std::invalid_argument);

  const auto f = make_free(4);
  for (double v : f.diagonal()) CHECK(v == 0.0);

  const auto t = make_two_site(5, -1.0, 2.0);
  CHECK(t.diagonal()[0] == -1.0);
  CHECK(t.diagonal()[1] == 2.0);
  CHECK(t.diagonal()[4] == 0.0);
  CHECK_THROWS(make_two_site(1, 1.0, 1.0));

  const JacobiMatrix j({2.0, 0.5}, {0.0, 0.0, 0.0});
  CHECK_FALSE(j.is_schrodinger());
}

TEST_CASE("principal submatrix") {
  const JacobiMatrix m({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0, 7.0});
  const auto p = m.principal(1, 3);
  CHECK(p.size() == 2);
  CHECK(p.diagonal()[0] == 5.0);
  CHECK(p.off_diagonal()[0] == 2.0);
  CHECK_THROWS_AS(m.principal(2, 2), std::out_of_range);
  CHECK_THROWS_AS(m.principal(0, 5), std::out_of_range);
}

TEST_CASE("boundary perturbation is additive on the end entries") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.size(1, 9);
    const auto b = g.reals(n, -3, 3);
    const BoundaryPerturbation p{g.real(-2, 2), g.real(-2, 2)};
    const auto m = apply_boundary(make_schrodinger(n, b), p);
    auto expect = b;
    expect.front() += p.b;
    expect.back() += p.B;
    for (std::size_t i = 0; i < n; ++i) CHECK(m.diagonal()[i] == expect[i]);

    // Two perturbations compose to their sum.
    const BoundaryPerturbation q{g.real(-1, 1), g.real(-1, 1)};
    const auto twice = apply_boundary(apply_boundary(make_schrodinger(n, b), p), q);
    const auto once = apply_boundary(make_schrodinger(n, b), {p.b + q.b, p.B + q.B});
    for (std::size_t i = 0; i < n; ++i) CHECK(twice.diagonal()[i] == doctest::Approx(once.diagonal()[i]));
  }
}

TEST_CASE("canonical angle lives in [0,1)") {
  CHECK(canonical_turns(0.0) == 0.0);
  CHECK(canonical_turns(1.0) == 0.0);
  CHECK(canonical_turns(1.25) == doctest::Approx(0.25));
  CHECK(canonical_turns(-0.25) == doctest::Approx(0.75));
  oracle::Gen g(3);
  for (int i = 0; i < 200; ++i) {
    const double t = canonical_turns(g.real(-10, 10));
    CHECK(t >= 0.0);
    CHECK(t < 1.0);
  }
}

TEST_CASE("floquet matrix") {
  CHECK_THROWS_AS(make_floquet(2, {0.0, 0.0}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_floquet(3, {0.0, 0.0}, 0.1), std::invalid_argument);

  const auto m = make_floquet(4, {1.0, 2.0, 3.0, 4.0}, 0.25);
  CHECK(std::abs(m.corner() - std::complex<double>(0.0, 1.0)) < 1e-15);
  CHECK(m.corner_trace() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(make_floquet(4, {0, 0, 0, 0}, 0.0).corner_trace() == 2.0);
  CHECK(m.band().size() == 4);
  CHECK(m.band().diagonal()[3] == 4.0);
}

TEST_CASE("floquet transpose maps theta to 1 - theta") {
  oracle::Gen g(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.size(3, 10);
    const auto m = make_floquet(n, g.reals(n, -3, 3), g.unit());
    const auto d = to_dense(m);
    const auto dt = to_dense(m.transposed());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(dt(i, j) - d(j, i)) < 1e-15);
    CHECK(m.transposed().theta() == doctest::Approx(canonical_turns(1.0 - m.theta())));
  }
}

TEST_CASE("dense forms are hermitian") {
  oracle::Gen g(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.size(3, 12);
    CHECK(is_hermitian(to_dense(make_schrodinger(n, g.reals(n, -3, 3)))));
    CHECK(is_hermitian(to_dense(make_floquet(n, g.reals(n, -3, 3), g.unit()))));
  }
  DenseMatrix<double> bad(2);
  bad(0, 1) = 1.0;
  CHECK_FALSE(is_hermitian(bad));
  DenseMatrix<std::complex<double>> cbad(2);
  cbad(0, 0) = std::complex<double>(0.0, 1.0);
  CHECK_FALSE(is_hermitian(cbad));
}

TEST_CASE("dense floquet agrees with the oracle layout") {
  const std::vector<double> b{0.5, -1.0, 2.0, 0.0, 1.5};
  const auto d = to_dense(make_floquet(5, b, 0.3));
  const auto o = oracle::dense_floquet(b, 0.3);
  for (std::size_t i = 0; i < 25; ++i) CHECK(std::abs(d.data[i] - o[i]) < 1e-15);
}
