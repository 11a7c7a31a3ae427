#pragma once

// Dense univariate polynomials over the integers. These back the
// univariate stages of the elimination (the b2-polynomials H, U and their
// gcds) where the sparse multivariate representation would be wasteful.

#include <span>
#include <vector>

#include "eisenprod/poly.hpp"
#include "eisenprod/rational.hpp"

namespace eisenprod {

class ZPoly {
 public:
  ZPoly() = default;
  /// coeffs[i] multiplies t^i; trailing zeros are dropped.
  explicit ZPoly(std::vector<Integer> coeffs);
  static ZPoly constant(const Integer& c);

  /// kDegreeNegInf for zero.
  int degree() const { return c_.empty() ? kDegreeNegInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Integer& lead() const { return c_.back(); }
  const Integer& operator[](std::size_t i) const { return c_[i]; }
  std::span<const Integer> coeffs() const { return c_; }
  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  ZPoly operator-() const;
  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const Integer& s);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  /// Divides every coefficient by s; throws DivisionNotExact if any
  /// coefficient is not a multiple.
  ZPoly div_exact(const Integer& s) const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Quotient q with a == b*q; throws DivisionNotExact otherwise.
ZPoly exact_div(const ZPoly& a, const ZPoly& b);
/// Returns nullopt-equivalent (false) when b does not divide a exactly.
bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr);
/// lc(b)^(deg a - deg b + 1) * a = q*b + r.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b);

Integer content(const ZPoly& p);
/// p / content(p) with positive leading coefficient; zero stays zero.
ZPoly primitive_part(const ZPoly& p);
ZPoly derivative(const ZPoly& p);

/// Primitive gcd with positive leading coefficient via the subresultant
/// polynomial remainder sequence.
ZPoly gcd_subresultant(ZPoly a, ZPoly b);

/// Conversions between a Poly in at most one variable and a ZPoly.
/// to_zpoly clears denominators: returns (z, scale) with z == scale * p,
/// scale a positive integer.
std::pair<ZPoly, Integer> to_zpoly(const Poly& p, VarId v);
Poly to_poly(const ZPoly& z, const RegistryPtr& reg, VarId v);

}  // namespace eisenprod
