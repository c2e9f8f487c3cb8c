#include "ambar/charpoly.hpp"

namespace ambar {

Poly<Rational> charpoly_exact(const JacobiMatrix& m) {
  std::vector<Rational> a;
  std::vector<Rational> b;
  for (double v : m.off_diagonal()) a.push_back(to_rational(v));
  for (double v : m.diagonal()) b.push_back(to_rational(v));
  return charpoly(RationalJacobiMatrix(std::move(a), std::move(b)));
}

Poly<double> charpoly(const FloquetMatrix& m) {
  const std::size_t n = m.size();
  const JacobiMatrix band = m.band();
  const double b1 = m.diagonal()[0];

  const Poly<double> d2n = block_det(band, {2, n});
  const Poly<double> d3n = block_det(band, {3, n});
  const Poly<double> d2n1 = block_det(band, {2, n - 1});

  return Poly<double>::linear(b1) * d2n - d3n - d2n1 - Poly<double>::constant(m.corner_trace());
}

}  // namespace ambar
