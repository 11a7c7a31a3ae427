#include "eisenprod/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <set>

#include "eisenprod/errors.hpp"

namespace eisenprod {

// ---- VarRegistry -----------------------------------------------------

VarId VarRegistry::intern(std::string_view name) {
  std::lock_guard lock(mu_);
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto v = static_cast<VarId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), v);
  return v;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  std::lock_guard lock(mu_);
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

VarId VarRegistry::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw DomainError("unknown variable '" + std::string(name) + "'");
}

const std::string& VarRegistry::name(VarId v) const {
  std::lock_guard lock(mu_);
  if (v >= names_.size()) throw DomainError("variable index out of range");
  return names_[v];
}

std::size_t VarRegistry::size() const {
  std::lock_guard lock(mu_);
  return names_.size();
}

RegistryPtr make_registry(std::initializer_list<std::string_view> names) {
  auto reg = std::make_shared<VarRegistry>();
  for (auto n : names) reg->intern(n);
  return reg;
}

// ---- Monomial --------------------------------------------------------

Monomial::Monomial(const std::vector<Exp>& exps) {
  std::size_t n = exps.size();
  while (n > 0 && exps[n - 1] == 0) --n;
  if (n > kMaxVars) throw DomainError("too many variables for a monomial");
  std::copy(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(n), e_.begin());
  refresh();
}

void Monomial::refresh() {
  unsigned d = 0;
  std::size_t w = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    d += e_[i];
    if (e_[i]) w = i + 1;
  }
  deg_ = static_cast<std::uint16_t>(d);
  width_ = static_cast<std::uint8_t>(w);
}

Monomial Monomial::var(VarId v, unsigned e) {
  if (e == 0) return {};
  if (v >= kMaxVars) throw DomainError("too many variables for a monomial");
  if (e > std::numeric_limits<Exp>::max()) throw DomainError("exponent overflow");
  Monomial m;
  m.e_[v] = static_cast<Exp>(e);
  m.deg_ = static_cast<std::uint16_t>(e);
  m.width_ = static_cast<std::uint8_t>(v + 1);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  const std::size_t w = std::max(width_, o.width_);
  unsigned overflow = 0;
  for (std::size_t i = 0; i < w; ++i) {
    const unsigned s = unsigned(e_[i]) + o.e_[i];
    overflow |= s;
    r.e_[i] = static_cast<Exp>(s);
  }
  if (overflow > std::numeric_limits<Exp>::max()) throw DomainError("exponent overflow");
  r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
  r.width_ = static_cast<std::uint8_t>(w);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (width_ > o.width_ || deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < width_; ++i) {
    if (e_[i] > o.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& d) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < d.width_; ++i) r.e_[i] = static_cast<Exp>(r.e_[i] - d.e_[i]);
  r.deg_ = static_cast<std::uint16_t>(deg_ - d.deg_);
  std::size_t w = width_;
  while (w > 0 && r.e_[w - 1] == 0) --w;
  r.width_ = static_cast<std::uint8_t>(w);
  return r;
}

Monomial Monomial::with(VarId v, unsigned e) const {
  if (v >= kMaxVars) {
    if (e == 0) return *this;
    throw DomainError("too many variables for a monomial");
  }
  if (e > std::numeric_limits<Exp>::max()) throw DomainError("exponent overflow");
  Monomial r = *this;
  r.e_[v] = static_cast<Exp>(e);
  r.deg_ = static_cast<std::uint16_t>(deg_ - e_[v] + e);
  if (e && v + 1 > r.width_) {
    r.width_ = static_cast<std::uint8_t>(v + 1);
  } else if (!e && v + 1 == r.width_) {
    std::size_t w = v;
    while (w > 0 && r.e_[w - 1] == 0) --w;
    r.width_ = static_cast<std::uint8_t>(w);
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ deg_;
  for (std::size_t i = 0; i < kMaxVars; i += 8) {
    std::uint64_t w;
    std::memcpy(&w, e_.data() + i, 8);
    h = (h ^ w) * 0xff51afd7ed558ccdull;
    h ^= h >> 32;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.deg_ <=> b.deg_; c != 0) return c;
  // Byte order is lex order with slot 0 most significant.
  const int c = std::memcmp(a.e_.data(), b.e_.data(), Monomial::kMaxVars);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// ---- coefficient fast paths --------------------------------------------
//
// Most coefficients in the pipeline are integers; skip the gcd work mpq
// does when both denominators are 1.

namespace {

inline bool den_one(const mpq_t x) { return mpz_cmp_ui(mpq_denref(x), 1) == 0; }

inline void q_mul(mpq_t r, const mpq_t a, const mpq_t b) {
  if (den_one(a) && den_one(b)) {
    mpz_mul(mpq_numref(r), mpq_numref(a), mpq_numref(b));
    mpz_set_ui(mpq_denref(r), 1);
  } else {
    mpq_mul(r, a, b);
  }
}

inline void q_addto(mpq_t r, const mpq_t a) {
  if (den_one(r) && den_one(a)) {
    mpz_add(mpq_numref(r), mpq_numref(r), mpq_numref(a));
  } else {
    mpq_add(r, r, a);
  }
}

// r -= a * b
inline void q_submul(mpq_t r, const mpq_t a, const mpq_t b, mpq_t scratch) {
  if (den_one(r) && den_one(a) && den_one(b)) {
    mpz_submul(mpq_numref(r), mpq_numref(a), mpq_numref(b));
  } else {
    mpq_mul(scratch, a, b);
    mpq_sub(r, r, scratch);
  }
}

}  // namespace

// ---- Poly ------------------------------------------------------------

namespace {

const RegistryPtr& common_registry(const Poly& a, const Poly& b) {
  if (a.registry() && b.registry() && a.registry() != b.registry()) throw RegistryMismatch();
  return a.registry() ? a.registry() : b.registry();
}

void sort_terms(std::vector<Poly::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Poly::Term& x, const Poly::Term& y) { return grlex_compare(x.mono, y.mono) > 0; });
}

}  // namespace

Poly::Poly(RegistryPtr reg, std::vector<Term> terms) : reg_(std::move(reg)) {
  sort_terms(terms);
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Poly Poly::constant(RegistryPtr reg, const Rational& c) {
  Poly p(std::move(reg));
  if (c != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::var(RegistryPtr reg, VarId v, unsigned e) {
  Poly p(std::move(reg));
  p.terms_.push_back({Monomial::var(v, e), Rational(1)});
  return p;
}

Poly Poly::var(const RegistryPtr& reg, std::string_view name, unsigned e) {
  return var(reg, reg->intern(name), e);
}

Poly Poly::monomial(RegistryPtr reg, Monomial m, const Rational& c) {
  Poly p(std::move(reg));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string(*this));
  return terms_[0].coeff;
}

const Poly::Term& Poly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of zero polynomial");
  return terms_.front();
}

int Poly::total_degree() const {
  if (terms_.empty()) return kDegreeNegInf;
  return static_cast<int>(terms_.front().mono.degree());
}

std::vector<VarId> Poly::variables() const {
  std::vector<bool> seen;
  for (const auto& t : terms_) {
    auto e = t.mono.exponents();
    if (seen.size() < e.size()) seen.resize(e.size(), false);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) seen[i] = true;
    }
  }
  std::vector<VarId> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<VarId>(i));
  }
  return out;
}

bool Poly::depends_on(VarId v) const {
  for (const auto& t : terms_) {
    if (t.mono[v]) return true;
  }
  return false;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex_compare(t.mono, key) > 0; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two canonical term lists: out = a + sign*b.
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, std::span<const Poly::Term> b, int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      const auto o = grlex_compare(a[i].mono, b[j].mono);
      c = o > 0 ? 1 : (o < 0 ? -1 : 0);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  reg_ = common_registry(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, +1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  reg_ = common_registry(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const RegistryPtr& reg = common_registry(a, b);
  if (a.terms_.empty() || b.terms_.empty()) return Poly(reg);
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by a single term preserves the order.
    Poly r(reg);
    r.terms_.reserve(big.size());
    const auto& s = small.terms_[0];
    for (const auto& t : big.terms_) r.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
    return r;
  }
  PolyBuilder acc(reg, big.size() * small.size());
  Rational prod;
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) {
      q_mul(prod.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      acc.add(s.mono * t.mono, prod);
    }
  }
  return std::move(acc).build();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.registry() && b.registry() && a.registry() != b.registry()) return false;
  return a.terms_ == b.terms_;
}

// ---- PolyBuilder -----------------------------------------------------

TermTable::TermTable(std::size_t expected) {
  std::size_t cap = 16;
  const std::size_t want = std::min<std::size_t>(expected, 1u << 20) * 2;
  while (cap < want) cap <<= 1;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
  terms_.reserve(std::min<std::size_t>(expected, 1u << 20));
}

void TermTable::grow() {
  const std::size_t cap = slots_.size() * 2;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    std::size_t h = terms_[i].mono.hash() & mask_;
    while (slots_[h]) h = (h + 1) & mask_;
    slots_[h] = static_cast<std::uint32_t>(i + 1);
  }
}

Rational& TermTable::at(const Monomial& m, bool* inserted) {
  std::size_t h = m.hash() & mask_;
  while (std::uint32_t s = slots_[h]) {
    if (terms_[s - 1].mono == m) {
      if (inserted) *inserted = false;
      return terms_[s - 1].coeff;
    }
    h = (h + 1) & mask_;
  }
  if (inserted) *inserted = true;
  terms_.push_back({m, Rational()});
  slots_[h] = static_cast<std::uint32_t>(terms_.size());
  if (terms_.size() * 2 > slots_.size()) {
    grow();
  }
  return terms_.back().coeff;
}

Rational* TermTable::find(const Monomial& m) {
  std::size_t h = m.hash() & mask_;
  while (std::uint32_t s = slots_[h]) {
    if (terms_[s - 1].mono == m) return &terms_[s - 1].coeff;
    h = (h + 1) & mask_;
  }
  return nullptr;
}

void TermTable::clear() {
  terms_.clear();
  std::fill(slots_.begin(), slots_.end(), 0u);
}

PolyBuilder::PolyBuilder(RegistryPtr reg, std::size_t reserve) : reg_(std::move(reg)), acc_(reserve) {}

void PolyBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  bool inserted = false;
  Rational& slot = acc_.at(m, &inserted);
  if (inserted) {
    mpq_set(slot.get_mpq_t(), c.get_mpq_t());
  } else {
    q_addto(slot.get_mpq_t(), c.get_mpq_t());
  }
}

void PolyBuilder::add(Monomial&& m, const Rational& c) { add(static_cast<const Monomial&>(m), c); }

void PolyBuilder::add(const Poly& p, const Rational& scale) {
  if (p.registry() && reg_ && p.registry() != reg_) throw RegistryMismatch();
  if (!reg_) reg_ = p.registry();
  for (const auto& t : p.terms()) add(t.mono, t.coeff * scale);
}

Poly PolyBuilder::build() && {
  Poly p(reg_);
  auto& terms = acc_.terms();
  std::erase_if(terms, [](const Poly::Term& t) { return t.coeff == 0; });
  p.terms_ = std::move(terms);
  acc_.clear();
  sort_terms(p.terms_);
  return p;
}

// ---- free functions --------------------------------------------------

Poly add(const Poly& p, const Poly& q) { return p + q; }
Poly mul(const Poly& p, const Poly& q) { return p * q; }

Poly pow(const Poly& p, unsigned e) {
  Poly result = Poly::constant(p.registry(), 1);
  Poly base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Poly> try_exact_div(const Poly& p, const Poly& d) {
  const RegistryPtr& reg = common_registry(p, d);
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.is_zero()) return Poly(reg);
  if (d.is_constant()) {
    Poly r = p;
    r *= Rational(1 / d.constant_value());
    return r;
  }
  const auto& lead = d.leading_term();
  if (d.size() == 1) {
    std::vector<Poly::Term> q;
    q.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      q.push_back({t.mono.quotient(lead.mono), t.coeff / lead.coeff});
    }
    return Poly(reg, std::move(q));  // division by a monomial keeps order, ctor re-sorts cheaply
  }
  if (p.total_degree() < d.total_degree()) return std::nullopt;

  // Remainder terms live in a hash table; a max-heap of monomials picks
  // the leading one. Stale heap entries (zeroed or duplicated) are skipped.
  TermTable rem(p.size() * 2);
  std::vector<Monomial> heap;
  heap.reserve(p.size() * 2);
  const auto less = [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) < 0; };
  for (const auto& t : p.terms()) {
    rem.at(t.mono) = t.coeff;
    heap.push_back(t.mono);
  }
  std::make_heap(heap.begin(), heap.end(), less);
  std::vector<Poly::Term> quot;
  const Rational inv_lead = 1 / lead.coeff;
  Rational scratch;
  const auto rest = d.terms().subspan(1);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), less);
    const Monomial top = heap.back();
    heap.pop_back();
    while (!heap.empty() && heap.front() == top) {
      std::pop_heap(heap.begin(), heap.end(), less);
      heap.pop_back();
    }
    Rational* c = rem.find(top);
    if (!c || *c == 0) continue;
    if (!lead.mono.divides(top)) return std::nullopt;
    Monomial qm = top.quotient(lead.mono);
    Rational qc;
    q_mul(qc.get_mpq_t(), c->get_mpq_t(), inv_lead.get_mpq_t());
    *c = 0;
    for (const auto& t : rest) {
      const Monomial m = qm * t.mono;
      bool inserted = false;
      Rational& slot = rem.at(m, &inserted);
      const bool was_zero = inserted || slot == 0;
      q_submul(slot.get_mpq_t(), qc.get_mpq_t(), t.coeff.get_mpq_t(), scratch.get_mpq_t());
      if (was_zero) {
        heap.push_back(m);
        std::push_heap(heap.begin(), heap.end(), less);
      }
    }
    quot.push_back({std::move(qm), std::move(qc)});
  }
  return Poly(reg, std::move(quot));
}

Poly exact_div(const Poly& p, const Poly& d) {
  auto q = try_exact_div(p, d);
  if (!q) throw DivisionNotExact("nonzero remainder dividing a " + std::to_string(p.size()) + "-term polynomial by a " +
                                 std::to_string(d.size()) + "-term polynomial");
  return std::move(*q);
}

int degree_in(const Poly& p, VarId v) {
  if (p.is_zero()) return kDegreeNegInf;
  unsigned d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.mono[v]);
  return static_cast<int>(d);
}

Poly coeff_of(const Poly& p, VarId v, unsigned d) {
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    if (t.mono[v] == d) out.push_back({t.mono.without(v), t.coeff});
  }
  return Poly(p.registry(), std::move(out));
}

std::vector<Poly> coefficients_in(const Poly& p, VarId v) {
  const int deg = degree_in(p, v);
  if (deg == kDegreeNegInf) return {};
  std::vector<std::vector<Poly::Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) buckets[t.mono[v]].push_back({t.mono.without(v), t.coeff});
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(p.registry(), std::move(b));
  return out;
}

Poly from_coefficients(const RegistryPtr& reg, std::span<const Poly> coeffs, VarId v) {
  std::vector<Poly::Term> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].registry() && coeffs[i].registry() != reg) throw RegistryMismatch();
    for (const auto& t : coeffs[i].terms()) {
      if (t.mono[v]) throw DomainError("coefficient already depends on the main variable");
      out.push_back({t.mono.with(v, static_cast<unsigned>(i)), t.coeff});
    }
  }
  return Poly(reg, std::move(out));
}

std::vector<std::vector<unsigned>> extreme_monomials(const Poly& p, std::span<const VarId> vars) {
  std::set<std::vector<unsigned>, std::greater<>> support;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> a;
    a.reserve(vars.size());
    for (auto v : vars) a.push_back(t.mono[v]);
    support.insert(std::move(a));
  }
  std::vector<std::vector<unsigned>> pts(support.begin(), support.end());
  std::vector<std::vector<unsigned>> out;
  for (const auto& a : pts) {
    bool dominated = false;
    for (const auto& b : pts) {
      if (&a == &b || a == b) continue;
      bool ge = true;
      for (std::size_t i = 0; i < a.size() && ge; ++i) ge = b[i] >= a[i];
      if (ge) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

Poly coeff_of_monomial(const Poly& p, std::span<const VarId> vars, std::span<const unsigned> exps) {
  if (vars.size() != exps.size()) throw DomainError("coeff_of_monomial: arity mismatch");
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < vars.size() && match; ++i) match = t.mono[vars[i]] == exps[i];
    if (!match) continue;
    Monomial m = t.mono;
    for (auto v : vars) m = m.without(v);
    out.push_back({std::move(m), t.coeff});
  }
  return Poly(p.registry(), std::move(out));
}

Poly substitute(const Poly& p, const std::map<VarId, Poly>& assignment) {
  if (assignment.empty() || p.is_zero()) return p;
  for (const auto& [v, val] : assignment) common_registry(p, val);
  // Group terms by the exponents of substituted variables so that each
  // distinct power product is expanded once.
  std::map<std::vector<unsigned>, std::vector<Poly::Term>> groups;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> key;
    key.reserve(assignment.size());
    Monomial rest = t.mono;
    for (const auto& [v, val] : assignment) {
      key.push_back(t.mono[v]);
      rest = rest.without(v);
    }
    groups[key].push_back({std::move(rest), t.coeff});
  }
  std::map<std::pair<VarId, unsigned>, Poly> powers;
  auto power = [&](VarId v, unsigned e) -> const Poly& {
    auto key = std::make_pair(v, e);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    Poly val = pow(assignment.at(v), e);
    return powers.emplace(key, std::move(val)).first->second;
  };
  PolyBuilder acc(p.registry());
  for (auto& [key, rest_terms] : groups) {
    Poly factor = Poly::constant(p.registry(), 1);
    std::size_t i = 0;
    for (const auto& [v, val] : assignment) {
      if (key[i]) factor = factor * power(v, key[i]);
      ++i;
    }
    Poly rest(p.registry(), std::move(rest_terms));
    acc.add(factor * rest);
  }
  return std::move(acc).build();
}

Poly substitute(const Poly& p, const std::map<VarId, Rational>& assignment) {
  if (assignment.empty() || p.is_zero()) return p;
  std::map<std::pair<VarId, unsigned>, Rational> powers;
  PolyBuilder acc(p.registry(), p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m = t.mono;
    for (const auto& [v, val] : assignment) {
      const unsigned e = t.mono[v];
      if (!e) continue;
      auto key = std::make_pair(v, e);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, pow(val, e)).first;
      c *= it->second;
      m = m.without(v);
    }
    acc.add(std::move(m), c);
  }
  return std::move(acc).build();
}

Rational content(const Poly& p) {
  if (p.is_zero()) return 0;
  Integer g = 0, l = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return abs(c);
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (p.leading_term().coeff < 0) c = -c;
  return p * Rational(1 / c);
}

// ---- text ------------------------------------------------------------

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coeff < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    const bool unit = mag == 1;
    if (t.mono.is_one()) {
      out += to_string(mag);
      continue;
    }
    bool need_star = false;
    if (!unit) {
      out += to_string(mag);
      need_star = true;
    }
    const auto e = t.mono.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) out += "*";
      out += p.registry()->name(static_cast<VarId>(i));
      if (e[i] > 1) {
        out += "^";
        out += std::to_string(e[i]);
      }
      need_star = true;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const RegistryPtr& reg, std::string_view s) : reg_(reg), s_(s) {}

  Poly parse() {
    std::vector<Poly::Term> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial text");
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(sign));
    }
    return Poly(reg_, std::move(terms));
  }

 private:
  Poly::Term parse_term(int sign) {
    Rational coeff = sign;
    std::vector<Monomial::Exp> exps;
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (is_name_start(c)) {
        std::string name = parse_name();
        unsigned e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          get();
          skip_ws();
          e = parse_uint();
        }
        const VarId v = reg_->intern(name);
        if (exps.size() <= v) exps.resize(v + 1, 0);
        const unsigned total = exps[v] + e;
        if (total > std::numeric_limits<Monomial::Exp>::max()) throw error("exponent overflow");
        exps[v] = static_cast<Monomial::Exp>(total);
      } else {
        throw error("unexpected character");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        get();
        continue;
      }
      break;
    }
    if (!any) throw error("empty term");
    return {Monomial(std::move(exps)), coeff};
  }

  std::string parse_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational parse_number() {
    std::string num = parse_digits();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      std::string den = parse_digits();
      if (den.empty()) throw error("missing denominator");
      return parse_rational(num + "/" + den);
    }
    return parse_rational(num);
  }

  unsigned parse_uint() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw error("expected exponent");
    const unsigned long v = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (v > std::numeric_limits<Monomial::Exp>::max()) throw error("exponent overflow");
    return static_cast<unsigned>(v);
  }

  std::string parse_name() {
    std::size_t start = pos_;
    ++pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  static bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  ParseError error(const std::string& what) const {
    return ParseError(what + " at offset " + std::to_string(pos_) + " in polynomial text");
  }

  const RegistryPtr& reg_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RegistryPtr& reg, std::string_view text) { return PolyParser(reg, text).parse(); }

std::string digest(const Poly& p) {
  const std::string s = to_string(p);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace eisenprod
