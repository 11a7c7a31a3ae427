#include "eisenprod/upoly.hpp"

#include <algorithm>

#include "eisenprod/errors.hpp"

namespace eisenprod {

ZPoly::ZPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::constant(const Integer& c) { return ZPoly(std::vector<Integer>{c}); }

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer ZPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

Rational ZPoly::eval(const Rational& x) const {
  // Homogenized Horner: den^deg * p(num/den) stays integral.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  if (c_.empty()) return 0;
  Integer acc = 0, dpow = 1;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= num;
    acc += c_[i] * dpow;
    dpow *= den;
  }
  // acc = sum c_i num^i den^(deg-i); divide by den^deg.
  Rational r(acc, pow(den, c_.size() - 1));
  r.canonicalize();
  return r;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return ZPoly(std::move(out));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return ZPoly(std::move(out));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(out));
}

ZPoly operator*(const ZPoly& a, const Integer& s) {
  if (s == 0) return {};
  ZPoly r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

ZPoly ZPoly::div_exact(const Integer& s) const {
  if (s == 0) throw DomainError("division by zero");
  ZPoly r = *this;
  for (auto& c : r.c_) {
    if (!mpz_divisible_p(c.get_mpz_t(), s.get_mpz_t())) throw DivisionNotExact("coefficient not divisible");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  }
  return r;
}

bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) {
    if (quotient) *quotient = ZPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db) + 1);
  Integer t;
  for (int i = a.degree(); i >= db; --i) {
    Integer& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) return false;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(i - db + j)].get_mpz_t(), t.get_mpz_t(),
                 b[static_cast<std::size_t>(j)].get_mpz_t());
    }
    q[static_cast<std::size_t>(i - db)] = t;
  }
  for (int i = 0; i < db; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  }
  if (quotient) *quotient = ZPoly(std::move(q));
  return true;
}

ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!divides(b, a, &q)) throw DivisionNotExact("univariate division leaves a remainder");
  return q;
}

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const Integer& lb = b.lead();
  int steps = a.degree() - db + 1;
  for (int i = a.degree(); i >= db; --i) {
    const Integer top = r[static_cast<std::size_t>(i)];
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[static_cast<std::size_t>(i - db + j)].get_mpz_t(), top.get_mpz_t(),
                 b[static_cast<std::size_t>(j)].get_mpz_t());
    }
    r.pop_back();
    --steps;
  }
  return ZPoly(std::move(r));
}

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.lead() < 0) g = -g;
  return p.div_exact(g);
}

ZPoly derivative(const ZPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Integer> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(out));
}

ZPoly gcd_subresultant(ZPoly a, ZPoly b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  Integer g = 1, h = 1;
  while (true) {
    const int delta = a.degree() - b.degree();
    ZPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) return primitive_part(b);
    if (r.degree() == 0) return ZPoly::constant(1);
    a = std::move(b);
    b = r.div_exact(g * pow(h, static_cast<unsigned long>(delta)));
    g = a.lead();
    if (delta == 0) continue;
    // h <- g^delta / h^(delta-1)
    Integer num = pow(g, static_cast<unsigned long>(delta));
    Integer den = pow(h, static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
}

std::pair<ZPoly, Integer> to_zpoly(const Poly& p, VarId v) {
  Integer scale = 1;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.width(); ++i) {
      if (i != v && t.mono[static_cast<VarId>(i)]) throw DomainError("to_zpoly: polynomial is not univariate");
    }
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  const int deg = degree_in(p, v);
  if (deg == kDegreeNegInf) return {ZPoly(), Integer(1)};
  std::vector<Integer> c(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) {
    Integer x = t.coeff.get_num() * (scale / t.coeff.get_den());
    c[t.mono[v]] = x;
  }
  return {ZPoly(std::move(c)), scale};
}

Poly to_poly(const ZPoly& z, const RegistryPtr& reg, VarId v) {
  std::vector<Poly::Term> terms;
  for (std::size_t i = 0; i < z.coeffs().size(); ++i) {
    if (z[i] != 0) terms.push_back({Monomial::var(v, static_cast<unsigned>(i)), Rational(z[i])});
  }
  return Poly(reg, std::move(terms));
}

}  // namespace eisenprod
