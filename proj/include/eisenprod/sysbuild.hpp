#pragma once

// The multiplicativity equation system.
//
// For g = sum b_n q^n with b_1 = 1 and f = E_{2k}, the normalized
// coefficients of f*g are multiplicative iff every E_n below vanishes,
// where n = x*y is the canonical coprime split of a non-prime-power n.
//
// Numeric mode (fixed k), with lambda = 4k / B_{2k}:
//   E_n = S_n - (b_x S_y + b_y S_x - lambda S_x S_y),
//   S_n = sum_{i=1}^{n-1} sigma_{2k-1}(i) b_{n-i}.
// Symbolic mode, over R = Q[x0, x2, x3, x5, ...] with y_n in place of sigma:
//   E_n = x0 S_n - x0 (b_x S_y + b_y S_x) - S_x S_y.
// The symbolic form is the numeric one multiplied by x0 = -1/lambda, so
// phi_k(E_n) = phi_k(x0) * E_{k,n}. Every b_n with n not a prime power is
// replaced by the product over its split when E_n is built.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eisenprod/poly.hpp"

namespace eisenprod {

enum class Mode { kNumeric, kSymbolic };

/// Smallest prime factor p and exponent e with n = p^e, if n is a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned n);
bool is_prime_power(unsigned n);
bool is_prime(unsigned n);

/// (x, y) with x = p^{v_p(n)} for the least prime p | n and y = n / x.
/// Throws DomainError for prime powers and n < 2.
std::pair<unsigned, unsigned> canonical_split(unsigned n);

struct IndexClass {
  unsigned n = 0;
  bool prime_power = false;
  unsigned x = 0, y = 0;  // canonical split, zero for prime powers
};
IndexClass classify(unsigned n);

/// Variable names used throughout the pipeline.
std::string b_name(unsigned n);
std::string x_name(unsigned p);  // p = 0 gives "x0"

/// A registry with b_n (prime powers n <= max_index, increasing) followed
/// by x0 and x_p (primes p <= max_index). b2 is the most significant
/// variable of the monomial order.
RegistryPtr make_system_registry(unsigned max_index = 40);

/// y_1 = 1, y_{p^n} = 1 + x_p + ... + x_p^n, y_{mn} = y_m y_n for coprime m, n.
class SymbolicSequence {
 public:
  explicit SymbolicSequence(RegistryPtr reg);
  const Poly& y(unsigned n);

 private:
  RegistryPtr reg_;
  std::map<unsigned, Poly> memo_;
};

/// lambda = 4k / B_{2k}.
Rational eisenstein_lambda(unsigned k);

class SystemInstance {
 public:
  static SystemInstance numeric(unsigned k, unsigned max_index = 40, RegistryPtr reg = nullptr);
  static SystemInstance symbolic(unsigned max_index = 40, RegistryPtr reg = nullptr);

  Mode mode() const { return mode_; }
  /// Zero in symbolic mode.
  unsigned k() const { return k_; }
  unsigned max_index() const { return max_index_; }
  const RegistryPtr& registry() const { return reg_; }

  /// b_n after Step 1: 1 for n = 1, a variable for prime powers,
  /// otherwise the product over the canonical split.
  Poly b(unsigned n) const;
  VarId b_var(unsigned n) const;
  /// sigma_{2k-1}(n) or y_n.
  const Poly& weight(unsigned n);

  /// Prime powers <= max_index, increasing.
  const std::vector<unsigned>& variables() const { return vars_; }
  /// Non-prime-powers <= max_index, increasing.
  const std::vector<unsigned>& equation_indices() const { return eq_indices_; }

  /// Uses (x, y) instead of the canonical split when building E_n.
  /// Must be called before E_n is built; x*y = n with gcd(x, y) = 1.
  void set_split(unsigned n, unsigned x, unsigned y);
  std::pair<unsigned, unsigned> split(unsigned n) const;

  Poly S(unsigned n);
  /// Throws DomainError for prime powers.
  Poly E(unsigned n);
  /// All E_n, n <= max_index.
  const std::map<unsigned, Poly>& equations();

  nlohmann::json to_json();

 private:
  SystemInstance(Mode mode, unsigned k, unsigned max_index, RegistryPtr reg);

  Mode mode_;
  unsigned k_;
  unsigned max_index_;
  RegistryPtr reg_;
  std::vector<unsigned> vars_, eq_indices_;
  std::map<unsigned, Poly> weights_, S_, E_;
  std::map<unsigned, std::pair<unsigned, unsigned>> splits_;
  std::optional<SymbolicSequence> seq_;
  Rational lambda_;
  bool all_built_ = false;
};

Poly build_S(unsigned n, SystemInstance& sys);
Poly build_E(unsigned n, SystemInstance& sys);

/// x0 -> -B_{2k}/4k, x_p -> p^{2k-1}. Variables other than x's are kept.
Poly specialize_phi_k(const Poly& p, unsigned k);
Rational phi_k_x0(unsigned k);

struct AuxiliaryPolys {
  Poly A, B, C;
};
/// The three auxiliary polynomials in x2, x3, x5, x7.
AuxiliaryPolys auxiliary_ABC(const RegistryPtr& reg);

}  // namespace eisenprod
