#include "eisenprod/sysbuild.hpp"

#include <charconv>
#include <numeric>

#include "eisenprod/errors.hpp"
#include "eisenprod/qseries.hpp"

namespace eisenprod {

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned n) {
  if (n < 2) return std::nullopt;
  unsigned p = 2;
  while (p * p <= n && n % p) ++p;
  if (n % p) p = n;
  unsigned e = 0, m = n;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return std::nullopt;
  return std::make_pair(p, e);
}

bool is_prime_power(unsigned n) { return prime_power(n).has_value(); }

bool is_prime(unsigned n) {
  auto pp = prime_power(n);
  return pp && pp->second == 1;
}

std::pair<unsigned, unsigned> canonical_split(unsigned n) {
  if (n < 2 || is_prime_power(n)) throw DomainError("canonical_split: " + std::to_string(n) + " is a prime power");
  unsigned p = 2;
  while (n % p) ++p;
  unsigned x = 1;
  while (n % (x * p) == 0) x *= p;
  return {x, n / x};
}

IndexClass classify(unsigned n) {
  IndexClass c;
  c.n = n;
  c.prime_power = is_prime_power(n);
  if (!c.prime_power && n > 1) std::tie(c.x, c.y) = canonical_split(n);
  return c;
}

std::string b_name(unsigned n) { return "b" + std::to_string(n); }
std::string x_name(unsigned p) { return "x" + std::to_string(p); }

RegistryPtr make_system_registry(unsigned max_index) {
  auto reg = std::make_shared<VarRegistry>();
  for (unsigned n = 2; n <= max_index; ++n) {
    if (is_prime_power(n)) reg->intern(b_name(n));
  }
  reg->intern(x_name(0));
  for (unsigned p = 2; p <= max_index; ++p) {
    if (is_prime(p)) reg->intern(x_name(p));
  }
  return reg;
}

// ---- SymbolicSequence ----------------------------------------------------

SymbolicSequence::SymbolicSequence(RegistryPtr reg) : reg_(std::move(reg)) {}

const Poly& SymbolicSequence::y(unsigned n) {
  if (n == 0) throw DomainError("y_0 is undefined");
  if (auto it = memo_.find(n); it != memo_.end()) return it->second;
  Poly val;
  if (n == 1) {
    val = Poly::constant(reg_, 1);
  } else if (auto pp = prime_power(n)) {
    const VarId x = reg_->intern(x_name(pp->first));
    std::vector<Poly::Term> terms;
    for (unsigned i = 0; i <= pp->second; ++i) terms.push_back({Monomial::var(x, i), Rational(1)});
    val = Poly(reg_, std::move(terms));
  } else {
    auto [a, b] = canonical_split(n);
    val = y(a) * y(b);
  }
  return memo_.emplace(n, std::move(val)).first->second;
}

// ---- SystemInstance ------------------------------------------------------

Rational eisenstein_lambda(unsigned k) { return Rational(4 * k) / bernoulli(2 * k); }

Rational phi_k_x0(unsigned k) { return -1 / eisenstein_lambda(k); }

SystemInstance::SystemInstance(Mode mode, unsigned k, unsigned max_index, RegistryPtr reg)
    : mode_(mode), k_(k), max_index_(max_index), reg_(reg ? std::move(reg) : make_system_registry(max_index)) {
  if (max_index < 2) throw DomainError("max index must be at least 2");
  for (unsigned n = 2; n <= max_index; ++n) {
    if (is_prime_power(n)) {
      vars_.push_back(n);
      reg_->intern(b_name(n));
    } else {
      eq_indices_.push_back(n);
    }
  }
  if (mode == Mode::kSymbolic) {
    seq_.emplace(reg_);
  } else {
    if (k < 2) throw DomainError("numeric systems need k >= 2");
    lambda_ = eisenstein_lambda(k);
  }
}

SystemInstance SystemInstance::numeric(unsigned k, unsigned max_index, RegistryPtr reg) {
  return SystemInstance(Mode::kNumeric, k, max_index, std::move(reg));
}

SystemInstance SystemInstance::symbolic(unsigned max_index, RegistryPtr reg) {
  return SystemInstance(Mode::kSymbolic, 0, max_index, std::move(reg));
}

VarId SystemInstance::b_var(unsigned n) const {
  if (!is_prime_power(n)) throw DomainError(b_name(n) + " is not a free variable");
  return reg_->id(b_name(n));
}

Poly SystemInstance::b(unsigned n) const {
  if (n == 0) throw DomainError("b_0 is not part of the system");
  if (n == 1) return Poly::constant(reg_, 1);
  if (is_prime_power(n)) return Poly::var(reg_, b_var(n));
  auto [x, y] = canonical_split(n);
  return b(x) * b(y);
}

const Poly& SystemInstance::weight(unsigned n) {
  if (mode_ == Mode::kSymbolic) return seq_->y(n);
  if (auto it = weights_.find(n); it != weights_.end()) return it->second;
  return weights_.emplace(n, Poly::constant(reg_, Rational(sigma(2 * k_ - 1, n)))).first->second;
}

void SystemInstance::set_split(unsigned n, unsigned x, unsigned y) {
  if (x < 2 || y < 2 || x * y != n || std::gcd(x, y) != 1) {
    throw DomainError("(" + std::to_string(x) + ", " + std::to_string(y) + ") is not a coprime split of " +
                      std::to_string(n));
  }
  if (E_.count(n)) throw DomainError("E_" + std::to_string(n) + " is already built");
  splits_[n] = {x, y};
}

std::pair<unsigned, unsigned> SystemInstance::split(unsigned n) const {
  if (auto it = splits_.find(n); it != splits_.end()) return it->second;
  return canonical_split(n);
}

Poly SystemInstance::S(unsigned n) {
  if (n < 2) throw DomainError("S_n needs n >= 2");
  if (auto it = S_.find(n); it != S_.end()) return it->second;
  Poly acc(reg_);
  for (unsigned i = 1; i < n; ++i) acc += weight(i) * b(n - i);
  return S_.emplace(n, acc).first->second;
}

Poly SystemInstance::E(unsigned n) {
  if (is_prime_power(n) || n < 2) throw DomainError("E_n is defined only for non-prime-powers; got " + std::to_string(n));
  if (n > max_index_) throw DomainError("E_" + std::to_string(n) + " is beyond the system window");
  if (auto it = E_.find(n); it != E_.end()) return it->second;
  auto [x, y] = split(n);
  const Poly Sx = S(x), Sy = S(y), Sn = S(n);
  const Poly cross = b(x) * Sy + b(y) * Sx;
  Poly e;
  if (mode_ == Mode::kNumeric) {
    e = Sn - cross + lambda_ * (Sx * Sy);
  } else {
    const Poly x0 = Poly::var(reg_, x_name(0));
    e = x0 * (Sn - cross) - Sx * Sy;
  }
  return E_.emplace(n, std::move(e)).first->second;
}

const std::map<unsigned, Poly>& SystemInstance::equations() {
  if (!all_built_) {
    for (unsigned n : eq_indices_) E(n);
    all_built_ = true;
  }
  return E_;
}

nlohmann::json SystemInstance::to_json() {
  nlohmann::json j;
  j["mode"] = mode_ == Mode::kNumeric ? "numeric" : "symbolic";
  if (mode_ == Mode::kNumeric) j["k"] = k_;
  j["max_index"] = max_index_;
  j["split_rule"] = splits_.empty() ? "least-prime-factor" : "least-prime-factor+overrides";
  nlohmann::json splits = nlohmann::json::object(), eqs = nlohmann::json::object();
  for (const auto& [n, e] : equations()) {
    auto [x, y] = split(n);
    splits[std::to_string(n)] = {x, y};
    eqs[std::to_string(n)] = to_string(e);
  }
  nlohmann::json vars = nlohmann::json::array();
  for (unsigned n : vars_) vars.push_back(b_name(n));
  j["variables"] = std::move(vars);
  j["splits"] = std::move(splits);
  j["equations"] = std::move(eqs);
  return j;
}

Poly build_S(unsigned n, SystemInstance& sys) { return sys.S(n); }
Poly build_E(unsigned n, SystemInstance& sys) { return sys.E(n); }

Poly specialize_phi_k(const Poly& p, unsigned k) {
  if (k < 2) throw DomainError("phi_k needs k >= 2");
  if (!p.registry()) return p;
  std::map<VarId, Rational> assign;
  for (VarId v : p.variables()) {
    const std::string& name = p.registry()->name(v);
    if (name.size() < 2 || name[0] != 'x') continue;
    unsigned idx = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (ec != std::errc() || ptr != name.data() + name.size()) continue;
    if (idx == 0) {
      assign[v] = phi_k_x0(k);
    } else if (is_prime(idx)) {
      Integer val;
      mpz_ui_pow_ui(val.get_mpz_t(), idx, 2 * k - 1);
      assign[v] = Rational(val);
    }
  }
  return substitute(p, assign);
}

AuxiliaryPolys auxiliary_ABC(const RegistryPtr& reg) {
  return {
      parse_poly(reg,
                 "-x2^4 + 2*x2^3*x3 - x2^2*x3^2 + x2^2*x5 - x2^2 - 2*x2*x3^2 - 4*x2*x3 + 2*x2*x5 - 2*x2"
                 " - x3^2 - 2*x3 + x5 + x7"),
      parse_poly(reg, "-2*x2^3 + x2^2*x3 - 3*x2^2 + 2*x2*x3 - 2*x2 + x3 + x5"),
      parse_poly(reg, "-x2^2 - 2*x2 + x3"),
  };
}

}  // namespace eisenprod
