#include "ambar/rational.hpp"

#include <stdexcept>

namespace ambar {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
      throw std::invalid_argument("malformed rational literal: " + text);
    }
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    return q;
  }
  // Decimal: shift the point away and divide by the matching power of ten.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t scale = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") {
    throw std::invalid_argument("malformed decimal literal: " + text);
  }
  if (digits[0] == '+') digits.erase(0, 1);
  mpz_class num;
  if (num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("malformed decimal literal: " + text);
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace ambar
