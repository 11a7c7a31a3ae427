#include "eisenprod/univariate.hpp"

#include <algorithm>
#include <set>

#include "eisenprod/errors.hpp"
#include "eisenprod/kernels/modp.hpp"

namespace eisenprod {

namespace {

using Residues = std::vector<std::uint32_t>;

Residues reduce(const ZPoly& a, std::uint32_t p) {
  Residues r(a.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(a[i].get_mpz_t(), p));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Monic gcd over GF(p), coefficients low to high.
Residues gcd_mod(Residues a, Residues b, std::uint32_t p) {
  using kernels::inv_mod;
  using kernels::mul_mod;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const std::uint32_t inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
      const std::uint32_t f = mul_mod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::uint32_t t = mul_mod(f, b[i], p);
        std::uint32_t& x = a[i + shift];
        x = x >= t ? x - t : x + p - t;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (a.empty()) return a;
  const std::uint32_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = mul_mod(c, inv, p);
  return a;
}

ZPoly symmetric_lift(const std::vector<Integer>& acc, const Integer& modulus) {
  const Integer half = modulus / 2;
  std::vector<Integer> out = acc;
  for (auto& c : out) {
    if (c > half) c -= modulus;
  }
  return ZPoly(std::move(out));
}

// Brown-style modular gcd. Returns nullopt when it gives up; callers then
// use the subresultant sequence.
std::optional<ZPoly> modular_gcd(const ZPoly& a, const ZPoly& b) {
  constexpr int kMaxPrimes = 400;
  Integer lc_gcd;
  mpz_gcd(lc_gcd.get_mpz_t(), a.lead().get_mpz_t(), b.lead().get_mpz_t());
  kernels::PrimeStream primes;
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<Integer> acc;
  Integer modulus = 0;
  ZPoly last;
  for (int used = 0; used < kMaxPrimes; ++used) {
    const std::uint32_t p = primes.next();
    if (mpz_fdiv_ui(a.lead().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.lead().get_mpz_t(), p) == 0) continue;
    Residues g = gcd_mod(reduce(a, p), reduce(b, p), p);
    const int d = static_cast<int>(g.size()) - 1;
    // p divides neither leading coefficient, so deg gcd(a, b) <= d.
    if (d == 0) return ZPoly::constant(1);
    if (d > best) continue;
    const auto s = static_cast<std::uint32_t>(mpz_fdiv_ui(lc_gcd.get_mpz_t(), p));
    for (auto& c : g) c = kernels::mul_mod(c, s, p);
    if (d < best) {
      best = d;
      acc.assign(g.begin(), g.end());
      modulus = p;
      last = ZPoly();
      continue;
    }
    const auto minv =
        kernels::inv_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p)), p);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const auto cur = static_cast<std::uint32_t>(mpz_fdiv_ui(acc[i].get_mpz_t(), p));
      const std::uint32_t diff = g[i] >= cur ? g[i] - cur : g[i] + p - cur;
      const std::uint32_t k = kernels::mul_mod(diff, minv, p);
      if (k) mpz_addmul_ui(acc[i].get_mpz_t(), modulus.get_mpz_t(), k);
    }
    modulus *= p;
    ZPoly lifted = symmetric_lift(acc, modulus);
    if (lifted == last) {
      ZPoly cand = primitive_part(lifted);
      if (divides(cand, a) && divides(cand, b)) return cand;
    }
    last = std::move(lifted);
  }
  return std::nullopt;
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  const ZPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() == 0 || b.degree() == 0) return ZPoly::constant(1);
  if (auto g = modular_gcd(a, b)) return *g;
  return gcd_subresultant(a, b);
}

namespace {

VarId single_variable(const Poly& p, const Poly& q) {
  std::set<VarId> vars;
  for (auto v : p.variables()) vars.insert(v);
  for (auto v : q.variables()) vars.insert(v);
  if (vars.size() > 1) throw DomainError("univariate_gcd: inputs mention more than one variable");
  return vars.empty() ? 0 : *vars.begin();
}

}  // namespace

Poly univariate_gcd(const Poly& p, const Poly& q) {
  if (p.registry() && q.registry() && p.registry() != q.registry()) throw RegistryMismatch();
  const RegistryPtr& reg = p.registry() ? p.registry() : q.registry();
  const VarId v = single_variable(p, q);
  return to_poly(gcd(to_zpoly(p, v).first, to_zpoly(q, v).first), reg, v);
}

// ---- integer factoring -------------------------------------------------

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          Integer d = abs(x - y);
          q = q * d % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n0) {
  if (n0 == 0) throw DomainError("factor_integer: zero");
  Integer n = abs(n0);
  std::map<Integer, unsigned> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  factor_into(n, out);
  return {out.begin(), out.end()};
}

// ---- rational roots ------------------------------------------------------

namespace {

std::vector<Integer> divisors(const Integer& n) {
  constexpr std::size_t kMaxDivisors = std::size_t{1} << 24;
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factor_integer(n)) {
    if (ds.size() * (e + 1) > kMaxDivisors) throw DomainError("rational_roots: too many candidate divisors");
    const std::size_t base = ds.size();
    Integer pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Cheap filter: f(num/den) mod r for a few word primes r.
bool may_be_root(const ZPoly& f, const Integer& num, const Integer& den) {
  static constexpr std::uint32_t kPrimes[] = {4294967291u, 4294967279u, 4294967231u};
  for (std::uint32_t r : kPrimes) {
    const auto d = static_cast<std::uint64_t>(mpz_fdiv_ui(den.get_mpz_t(), r));
    if (d == 0) continue;
    const std::uint64_t x =
        mpz_fdiv_ui(num.get_mpz_t(), r) * static_cast<std::uint64_t>(kernels::pow_mod(static_cast<std::uint32_t>(d), r - 2, r)) % r;
    std::uint64_t acc = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = (acc * x + mpz_fdiv_ui(f[i].get_mpz_t(), r)) % r;
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const ZPoly& p0) {
  if (p0.is_zero()) throw DomainError("rational_roots of the zero polynomial");
  ZPoly f = primitive_part(p0);
  std::vector<RationalRoot> roots;
  unsigned zero_mult = 0;
  while (f.degree() > 0 && f[0] == 0) {
    f = exact_div(f, ZPoly(std::vector<Integer>{0, 1}));
    ++zero_mult;
  }
  if (zero_mult) roots.push_back({Rational(0), zero_mult});
  if (f.degree() < 1) return roots;

  std::vector<Rational> cands;
  if (f.degree() == 1) {
    cands.push_back(Rational(-f[0], f[1]));
    cands.back().canonicalize();
  } else {
    const auto nums = divisors(f[0]);
    const auto dens = divisors(f.lead());
    for (const auto& q : dens) {
      for (const auto& n : nums) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        for (int s : {1, -1}) {
          if (may_be_root(f, n * s, q)) cands.emplace_back(Integer(n * s), q);
        }
      }
    }
  }
  for (const auto& c : cands) {
    if (f.degree() < 1) break;
    const ZPoly lin(std::vector<Integer>{-c.get_num(), c.get_den()});
    unsigned mult = 0;
    ZPoly q;
    while (f.degree() >= 1 && divides(lin, f, &q)) {
      f = std::move(q);
      ++mult;
    }
    if (mult) roots.push_back({c, mult});
  }
  std::sort(roots.begin(), roots.end(), [](const RationalRoot& x, const RationalRoot& y) { return x.value < y.value; });
  return roots;
}

std::vector<RationalRoot> rational_roots(const Poly& p) {
  const auto vars = p.variables();
  if (vars.size() > 1) throw DomainError("rational_roots: polynomial is not univariate");
  if (p.is_zero()) throw DomainError("rational_roots of the zero polynomial");
  return rational_roots(to_zpoly(p, vars.empty() ? 0 : vars[0]).first);
}

}  // namespace eisenprod
