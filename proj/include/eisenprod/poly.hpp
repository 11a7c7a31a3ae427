#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Every Poly is bound to a VarRegistry that maps variable names to dense
// indices. Terms are kept in canonical form: sorted by descending
// graded-lex order over registry order, no zero coefficients, no
// duplicate monomials. Two polys over the same registry are equal iff
// their term vectors are equal, which is also iff their serializations
// are byte-identical.

#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eisenprod/rational.hpp"

namespace eisenprod {

using VarId = std::uint32_t;

/// Append-only name <-> index table. Indices are stable for the lifetime
/// of the registry; text serialization always uses names.
class VarRegistry {
 public:
  VarRegistry() = default;
  VarRegistry(const VarRegistry&) = delete;
  VarRegistry& operator=(const VarRegistry&) = delete;

  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  /// Throws DomainError if the name was never interned.
  VarId id(std::string_view name) const;
  const std::string& name(VarId v) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

using RegistryPtr = std::shared_ptr<VarRegistry>;

RegistryPtr make_registry(std::initializer_list<std::string_view> names = {});

/// Degree of the zero polynomial. Distinct from 0 (nonzero constants).
inline constexpr int kDegreeNegInf = std::numeric_limits<int>::min();

/// Exponent vector indexed by VarId, stored inline. Registries used with
/// polynomials may hold at most kMaxVars variables and exponents are
/// capped at 255; both limits raise DomainError rather than wrap.
class Monomial {
 public:
  using Exp = std::uint8_t;
  static constexpr std::size_t kMaxVars = 40;

  Monomial() = default;
  explicit Monomial(const std::vector<Exp>& exps);
  static Monomial var(VarId v, unsigned e = 1);

  unsigned operator[](VarId v) const { return v < kMaxVars ? e_[v] : 0u; }
  unsigned degree() const { return deg_; }
  /// One past the last nonzero slot.
  std::size_t width() const { return width_; }
  bool is_one() const { return deg_ == 0; }
  std::span<const Exp> exponents() const { return {e_.data(), width_}; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o) == true on `d`.
  Monomial quotient(const Monomial& d) const;
  Monomial with(VarId v, unsigned e) const;
  Monomial without(VarId v) const { return with(v, 0); }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg_ == b.deg_ && a.e_ == b.e_;
  }
  std::size_t hash() const;

 private:
  friend std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);
  void refresh();

  std::array<Exp, kMaxVars> e_{};
  std::uint16_t deg_ = 0;
  std::uint8_t width_ = 0;
};

/// Graded lexicographic comparison; the variable with the smallest
/// registry index is the most significant.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// A default-constructed Poly is the zero polynomial with no registry;
  /// it adopts the registry of whatever it is combined with.
  Poly() = default;
  explicit Poly(RegistryPtr reg) : reg_(std::move(reg)) {}
  /// Canonicalizes: sorts, merges duplicates, drops zeros.
  Poly(RegistryPtr reg, std::vector<Term> terms);

  static Poly constant(RegistryPtr reg, const Rational& c);
  static Poly var(RegistryPtr reg, VarId v, unsigned e = 1);
  /// Interns `name` if needed.
  static Poly var(const RegistryPtr& reg, std::string_view name, unsigned e = 1);
  static Poly monomial(RegistryPtr reg, Monomial m, const Rational& c);

  const RegistryPtr& registry() const { return reg_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Value of a constant poly; throws DomainError otherwise.
  Rational constant_value() const;
  const Term& leading_term() const;

  /// Total degree; kDegreeNegInf for zero.
  int total_degree() const;
  std::vector<VarId> variables() const;
  bool depends_on(VarId v) const;
  /// Coefficient of the exact monomial m (0 if absent).
  Rational coefficient(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  friend class PolyBuilder;
  RegistryPtr reg_;
  std::vector<Term> terms_;
};

/// Open-addressing map from monomials to coefficients, insertion ordered.
class TermTable {
 public:
  explicit TermTable(std::size_t expected = 0);
  /// The coefficient slot for m, created as zero when absent.
  Rational& at(const Monomial& m, bool* inserted = nullptr);
  Rational* find(const Monomial& m);
  std::vector<Poly::Term>& terms() { return terms_; }
  std::size_t size() const { return terms_.size(); }
  void clear();

 private:
  void grow();

  std::vector<Poly::Term> terms_;
  std::vector<std::uint32_t> slots_;  // index + 1, 0 = empty
  std::size_t mask_ = 0;
};

/// Accumulates terms in a hash table; build() returns the canonical Poly.
class PolyBuilder {
 public:
  explicit PolyBuilder(RegistryPtr reg, std::size_t reserve = 0);
  void add(const Monomial& m, const Rational& c);
  void add(Monomial&& m, const Rational& c);
  void add(const Poly& p, const Rational& scale = 1);
  Poly build() &&;

 private:
  RegistryPtr reg_;
  TermTable acc_;
};

// ---- ring operations -------------------------------------------------

Poly add(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly pow(const Poly& p, unsigned e);

/// Returns e with d*e == p. Throws DivisionNotExact on nonzero remainder
/// and DomainError when d == 0.
Poly exact_div(const Poly& p, const Poly& d);
/// Same as exact_div but returns nullopt instead of throwing.
std::optional<Poly> try_exact_div(const Poly& p, const Poly& d);

// ---- structure -------------------------------------------------------

/// Max exponent of v over the support; kDegreeNegInf for the zero poly.
int degree_in(const Poly& p, VarId v);
/// The polynomial multiplying v^d.
Poly coeff_of(const Poly& p, VarId v, unsigned d);
/// Coefficients c_0..c_n with p = sum c_i v^i (empty for zero).
std::vector<Poly> coefficients_in(const Poly& p, VarId v);
/// Inverse of coefficients_in.
Poly from_coefficients(const RegistryPtr& reg, std::span<const Poly> coeffs, VarId v);

/// Support of p projected onto `vars`, keeping the elements that are
/// maximal under the componentwise partial order. Sorted descending lex.
std::vector<std::vector<unsigned>> extreme_monomials(const Poly& p, std::span<const VarId> vars);

/// Coefficient of the monomial vars^exps, as a polynomial in the other
/// variables.
Poly coeff_of_monomial(const Poly& p, std::span<const VarId> vars, std::span<const unsigned> exps);

// ---- substitution ----------------------------------------------------

/// Simultaneous substitution; variables not in the map are kept.
Poly substitute(const Poly& p, const std::map<VarId, Poly>& assignment);
Poly substitute(const Poly& p, const std::map<VarId, Rational>& assignment);

// ---- content ---------------------------------------------------------

/// Positive rational c such that p / c has coprime integer coefficients.
/// (Sign is not normalized here.) Zero for the zero poly.
Rational content(const Poly& p);
/// p / content(p), with positive leading coefficient.
Poly primitive_part(const Poly& p);

// ---- text form -------------------------------------------------------

/// Canonical text, e.g. "-24*b2^3*b3 + 5/2*b4 - 1". Zero prints as "0".
std::string to_string(const Poly& p);
/// Parses the canonical form (any whitespace). Unknown names are interned.
Poly parse_poly(const RegistryPtr& reg, std::string_view text);

/// Short stable digest of the canonical form (hex of a 64-bit FNV-1a).
std::string digest(const Poly& p);

}  // namespace eisenprod
