#pragma once

// Univariate gcd and rational root extraction.

#include <vector>

#include "eisenprod/poly.hpp"
#include "eisenprod/upoly.hpp"

namespace eisenprod {

/// Primitive gcd with positive leading coefficient. Tries a multimodular
/// image first; a modular answer is returned only after exact trial
/// division confirms it (or, for gcd 1, after an image of degree 0 at a
/// prime not dividing both leading coefficients). Otherwise falls back
/// to the subresultant sequence.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// gcd of two polys that together mention at most one variable, in the
/// normalization above. Throws DomainError when both are zero or when
/// more than one variable occurs.
Poly univariate_gcd(const Poly& p, const Poly& q);

struct RationalRoot {
  Rational value;
  unsigned multiplicity = 1;
  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// All rational roots in increasing order, with multiplicities.
/// Throws DomainError on the zero polynomial.
std::vector<RationalRoot> rational_roots(const ZPoly& p);
std::vector<RationalRoot> rational_roots(const Poly& p);

/// Prime factorization of |n| (n != 0) as (prime, exponent) pairs.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

}  // namespace eisenprod
