#pragma once

// Random generators and independent oracles shared by the unit tests and
// the acceptance binary. The oracles use plain integer vectors and
// brute-force divisor sums so they do not go through the library's
// q-series code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "eisenprod/poly.hpp"

namespace testsupport {

using eisenprod::Integer;
using eisenprod::Poly;
using eisenprod::Rational;
using eisenprod::RegistryPtr;
using eisenprod::VarId;

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kSeed = 0x7e57c0de2024ull;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Nonzero rational with numerator in [-9, 9] and denominator in [1, 5].
inline Rational random_rational(Rng& rng) {
  long num = 0;
  while (num == 0) num = uniform(rng, -9, 9);
  Rational r(num, uniform(rng, 1, 5));
  r.canonicalize();
  return r;
}

/// Up to `terms` terms in the given variables with exponents <= max_exp.
inline Poly random_poly(Rng& rng, const RegistryPtr& reg, const std::vector<VarId>& vars, unsigned terms,
                        unsigned max_exp) {
  std::vector<Poly::Term> ts;
  const unsigned n = static_cast<unsigned>(uniform(rng, 1, terms));
  for (unsigned i = 0; i < n; ++i) {
    eisenprod::Monomial m;
    for (VarId v : vars) m = m * eisenprod::Monomial::var(v, static_cast<unsigned>(uniform(rng, 0, max_exp)));
    ts.push_back({m, random_rational(rng)});
  }
  return Poly(reg, std::move(ts));
}

inline Poly random_nonzero_poly(Rng& rng, const RegistryPtr& reg, const std::vector<VarId>& vars, unsigned terms,
                                unsigned max_exp) {
  for (;;) {
    Poly p = random_poly(rng, reg, vars, terms, max_exp);
    if (!p.is_zero()) return p;
  }
}

// ---- q-series oracles -------------------------------------------------

using ZSeries = std::vector<Integer>;  // index = power of q

inline Integer sigma_brute(unsigned r, unsigned n) {
  Integer s = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d == 0) {
      Integer t;
      mpz_ui_pow_ui(t.get_mpz_t(), d, r);
      s += t;
    }
  }
  return s;
}

inline ZSeries zmul(const ZSeries& a, const ZSeries& b) {
  const std::size_t N = std::min(a.size(), b.size());
  ZSeries c(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

inline ZSeries zadd(const ZSeries& a, const ZSeries& b, long scale_b = 1) {
  ZSeries c(std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + scale_b * b[i];
  return c;
}

/// 1 + c * sum sigma_r(n) q^n through q^N.
inline ZSeries eisenstein_oracle(long c, unsigned r, std::size_t N) {
  ZSeries s(N + 1, 0);
  s[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) s[n] = c * sigma_brute(r, static_cast<unsigned>(n));
  return s;
}
inline ZSeries E4(std::size_t N) { return eisenstein_oracle(240, 3, N); }
inline ZSeries E6(std::size_t N) { return eisenstein_oracle(-504, 5, N); }

/// q^shift * prod_{n>=1} (1 - q^(m n))^e through q^N.
inline ZSeries eta_like(unsigned m, unsigned e, unsigned shift, std::size_t N) {
  ZSeries s(N + 1, 0);
  s[0] = 1;
  for (std::size_t n = 1; m * n <= N; ++n) {
    for (unsigned r = 0; r < e; ++r) {
      for (std::size_t i = N; i >= m * n; --i) s[i] -= s[i - m * n];
    }
  }
  ZSeries out(N + 1, 0);
  for (std::size_t i = 0; i + shift <= N; ++i) out[i + shift] = s[i];
  return out;
}

/// q prod (1 - q^n)^24.
inline ZSeries Delta12(std::size_t N) { return eta_like(1, 24, 1, N); }
/// eta(z)^8 eta(2z)^8.
inline ZSeries Phi8(std::size_t N) { return zmul(eta_like(1, 8, 1, N), eta_like(2, 8, 0, N)); }
/// sum n sigma_3(n) q^n = q E4'/240.
inline ZSeries QdE4over240(std::size_t N) {
  ZSeries s(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) s[n] = Integer(static_cast<unsigned long>(n)) * sigma_brute(3, static_cast<unsigned>(n));
  return s;
}

/// The level-one cusp form of the given weight as E4^a E6^b Delta12.
inline ZSeries cusp_form(unsigned weight, std::size_t N) {
  ZSeries s = Delta12(N);
  unsigned rest = weight - 12;
  if (rest % 4 == 2) {
    s = zmul(s, E6(N));
    rest -= 6;
  }
  for (; rest > 0; rest -= 4) s = zmul(s, E4(N));
  return s;
}

/// E_{2k} for the weights expressible through E4 and E6 (2k in 4..14).
inline ZSeries eisenstein_oracle_weight(unsigned weight, std::size_t N) {
  ZSeries s(N + 1, 0);
  s[0] = 1;
  unsigned rest = weight;
  if (rest % 4 == 2) {
    s = E6(N);
    rest -= 6;
  }
  for (; rest > 0; rest -= 4) s = zmul(s, E4(N));
  return s;
}

/// c_{mn} == c_m c_n for coprime m, n with mn <= N, after dividing by c_1.
inline bool multiplicative(const std::vector<Rational>& c, std::size_t N, std::string* why = nullptr) {
  if (c.size() < 2 || c[1] == 0) return false;
  auto at = [&](std::size_t i) { return c[i] / c[1]; };
  for (std::size_t m = 2; m <= N; ++m) {
    for (std::size_t n = m + 1; m * n <= N && m * n < c.size(); ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (at(m * n) != at(m) * at(n)) {
        if (why) *why = "c_" + std::to_string(m * n) + " != c_" + std::to_string(m) + " c_" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

inline std::vector<Rational> to_rational(const ZSeries& s) { return {s.begin(), s.end()}; }

}  // namespace testsupport
