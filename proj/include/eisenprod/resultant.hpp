#pragma once

// Resultants via the Sylvester matrix.
//
// Sign convention: for p = sum_{i<=m} p_i v^i and q = sum_{j<=n} q_j v^j
// the Sylvester matrix has n shifted rows of p's coefficients (leading
// coefficient first) followed by m shifted rows of q's, so that
// Res(p, q) = p_m^n * prod q(roots of p). For two linear inputs this is
// p_1 q_0 - q_1 p_0.

#include <vector>

#include "eisenprod/poly.hpp"
#include "eisenprod/upoly.hpp"

namespace eisenprod {

enum class ResultantMethod {
  kAuto,     ///< linear shortcut, then dense/modular/sparse by shape
  kBareiss,  ///< fraction-free elimination over the coefficient ring
  kModular,  ///< multimodular evaluation/interpolation (univariate coefficients only)
};

/// Res_v(p, q). Requires both nonzero and at least one of them of positive
/// degree in v; throws DomainError otherwise.
Poly resultant(const Poly& p, const Poly& q, VarId v, ResultantMethod method = ResultantMethod::kAuto);

using PolyMatrix = std::vector<std::vector<Poly>>;
using ZPolyMatrix = std::vector<std::vector<ZPoly>>;

PolyMatrix sylvester_matrix(const Poly& p, const Poly& q, VarId v);

/// Fraction-free (Bareiss) determinant over a polynomial ring.
Poly bareiss_determinant(PolyMatrix m, const RegistryPtr& reg);
ZPoly bareiss_determinant(ZPolyMatrix m);

/// Determinant of a square matrix over Z[t] via evaluation at enough
/// points modulo enough primes, recombined by CRT against a Hadamard-type
/// coefficient bound. Exact, not probabilistic.
ZPoly modular_determinant(const ZPolyMatrix& m);

}  // namespace eisenprod
