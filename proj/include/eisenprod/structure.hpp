#pragma once

// Structure of the symbolic system after the linear stage: the named
// pivots, extreme monomials along both resultant towers, and the
// coefficient combinations whose vanishing removes a generic monomial.
//
// The linear stage and P22 are exact. The tower polynomials F, R, T, G
// are too large to form over Q[x0, x2, ...], so they are studied at
// random integer points for the x-variables, where every step is again
// exact. A coefficient that is nonzero at some point is nonzero
// identically. A coefficient (or combination) that vanishes at every
// point is zero with error probability at most (D / 2^bits)^trials for
// a total x-degree D.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "eisenprod/eliminate.hpp"
#include "eisenprod/newton.hpp"

namespace eisenprod {

using ExponentList = std::vector<std::vector<unsigned>>;

struct PivotCheck {
  std::string pair;  ///< "(b8, E15)"
  Poly pivot;
  Poly expected;  ///< A x0^2, A B x0^3, A B C x0^4
  bool equal = false;
};

struct CombinationCheck {
  std::string name;
  /// Zero at every sample point.
  bool vanishes = false;
  /// Nonzero at some sample point (so certainly not identically zero).
  bool certainly_nonzero = false;
};

struct StructureOptions {
  unsigned trials = 4;
  unsigned bits = 31;
  std::uint64_t seed = 0x5eed0f5eed0f5eedull;
  /// Also compute G = Res_b4(F35, F_n) and G/P22^2 at the sample points.
  bool tower_G = true;
};

struct SymbolicStructure {
  AuxiliaryPolys abc;
  std::vector<PivotCheck> pivots;
  /// Keys: P22 (b2,b3), F35.. (b2,b3,b4), G36.. and Gred36.. (b2,b3),
  /// R22 (b2,b4), R35.. (b2,b4,b7), T36, T39 (b2,b4).
  std::map<std::string, ExponentList> extremes;
  std::map<std::string, std::vector<std::string>> extreme_vars;
  /// Newton polygons of the full support, for the two-variable keys.
  std::map<std::string, ConvexPolygon> polygons;
  std::vector<CombinationCheck> combinations;
  /// Presence of single monomials at the sample points, e.g. "G36:b2^11*b3^8".
  std::map<std::string, bool> monomial_present;
  unsigned trials = 0;
  unsigned bits = 0;

  nlohmann::json to_json() const;
};

SymbolicStructure symbolic_structure(const LinearStage& symbolic_stage, const StructureOptions& opts = {},
                                     EliminationTrace* trace = nullptr);

/// Maximal elements of a list of exponent vectors under the componentwise
/// order, sorted descending lex.
ExponentList maximal_elements(const ExponentList& pts);

}  // namespace eisenprod
