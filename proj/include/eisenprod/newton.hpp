#pragma once

// Newton polygons, Minkowski sums, areas and the bivariate Bernstein
// bound, plus resultants of "check" polynomials with generic coefficients.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eisenprod/poly.hpp"

namespace eisenprod {

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

/// Vertices counterclockwise from the lexicographically smallest one, no
/// three collinear. Points and segments have one and two vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  /// Hull of arbitrary points (duplicates and interior points allowed).
  static ConvexPolygon hull(std::vector<LatticePoint> pts);

  const std::vector<LatticePoint>& vertices() const { return v_; }
  bool empty() const { return v_.empty(); }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  std::vector<LatticePoint> v_;
};

/// Hull of the support of p projected to the exponents of (v, w).
/// Throws DomainError on the zero polynomial.
ConvexPolygon newton_polygon(const Poly& p, VarId v, VarId w);

ConvexPolygon minkowski_sum(const ConvexPolygon& P, const ConvexPolygon& Q);

/// The polygon B with minkowski_sum(B, C) == A. Throws DomainError when C
/// is not a Minkowski summand of A.
ConvexPolygon minkowski_difference(const ConvexPolygon& A, const ConvexPolygon& C);

/// Shoelace area; the denominator divides 2.
Rational area(const ConvexPolygon& P);

/// Area(P+Q) - Area(P) - Area(Q).
Rational bernstein_bound(const ConvexPolygon& P, const ConvexPolygon& Q);

nlohmann::json to_json(const ConvexPolygon& P);
ConvexPolygon polygon_from_json(const nlohmann::json& j);

// ---- generic check resultants -------------------------------------------

struct GenericTerm {
  std::vector<unsigned> exps;  ///< one exponent per slot
  std::string coeff;           ///< name of its generic coefficient
};

/// Names a, b, c, ... skipping l, m, n and the slot letters, with `suffix`
/// appended (e.g. "'").
std::vector<GenericTerm> generic_terms(const std::vector<std::vector<unsigned>>& support,
                                       const std::string& suffix = "");

struct CheckResultant {
  RegistryPtr registry;
  /// Slot variables are named x, y, z, ... in slot order.
  std::vector<std::string> slots;
  std::size_t eliminated = 0;
  Poly A, B, resultant;
  /// Extreme exponent tuples of the resultant over the surviving slots.
  std::vector<std::vector<unsigned>> extremes;

  /// Coefficient of the monomial with the given exponents of the
  /// surviving slots, as a polynomial in the generic coefficients.
  Poly coefficient(const std::vector<unsigned>& exps) const;
  /// Degree of the resultant in a surviving slot.
  int degree(const std::string& slot) const;
  /// The generic coefficient variable with this name.
  Poly var(const std::string& name) const;
};

/// Res over slot `eliminated` of the two polynomials whose terms are given.
/// Throws DomainError when neither polynomial involves the slot.
CheckResultant generic_check_resultant(const std::vector<GenericTerm>& a, const std::vector<GenericTerm>& b,
                                       std::size_t eliminated);

}  // namespace eisenprod
