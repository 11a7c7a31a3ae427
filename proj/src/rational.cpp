#include "eisenprod/rational.hpp"

#include <cctype>

#include "eisenprod/errors.hpp"

namespace eisenprod {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) throw ParseError("invalid integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(text));
  } else {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-') throw ParseError("negative denominator");
    Integer den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator");
    r = Rational(num, den);
    r.canonicalize();
  }
  return r;
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational pow(const Rational& base, unsigned long exp) {
  Integer num = pow(base.get_num(), exp);
  Integer den = pow(base.get_den(), exp);
  return Rational(num, den);  // already coprime, den > 0
}

}  // namespace eisenprod
