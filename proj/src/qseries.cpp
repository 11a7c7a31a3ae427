#include "eisenprod/qseries.hpp"

#include <mutex>
#include <numeric>

#include "eisenprod/errors.hpp"

namespace eisenprod {

Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  while (table.size() <= n) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    const auto m = static_cast<unsigned long>(table.size());
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, 0)
    for (unsigned long j = 0; j < m; ++j) {
      acc += binom * table[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    table.push_back(-acc / Rational(m + 1));
  }
  return table[n];
}

Integer sigma(unsigned r, std::uint64_t n) {
  if (n == 0) throw DomainError("sigma: n must be positive");
  Integer acc = 0, t;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), d, r);
    acc += t;
    const std::uint64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), e, r);
      acc += t;
    }
  }
  return acc;
}

// ---- QSeries ------------------------------------------------------------

QSeries::QSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("QSeries needs at least the constant term");
}

QSeries QSeries::zero(std::size_t order) { return QSeries(std::vector<Rational>(order + 1, Rational(0))); }

QSeries QSeries::one(std::size_t order) {
  QSeries s = zero(order);
  s.c_[0] = 1;
  return s;
}

QSeries QSeries::truncate(std::size_t order) const {
  if (order > this->order()) throw DomainError("QSeries::truncate beyond the known order");
  return QSeries(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a.c_[i] + b.c_[i];
  return QSeries(std::move(out));
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a.c_[i] - b.c_[i];
  return QSeries(std::move(out));
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> out(n + 1, Rational(0));
  Rational t;
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b.c_[j] == 0) continue;
      mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
      out[i + j] += t;
    }
  }
  return QSeries(std::move(out));
}

QSeries operator*(const Rational& s, const QSeries& a) {
  QSeries r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool operator==(const QSeries& a, const QSeries& b) { return !first_difference(a, b); }

std::optional<std::size_t> first_difference(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.c_[i] != b.c_[i]) return i;
  }
  return std::nullopt;
}

QSeries inverse(const QSeries& s) {
  if (s[0] == 0) throw DomainError("inverse of a series with zero constant term");
  const std::size_t n = s.order();
  std::vector<Rational> out(n + 1);
  const Rational inv0 = 1 / s[0];
  out[0] = inv0;
  for (std::size_t i = 1; i <= n; ++i) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= i; ++j) acc += s[j] * out[i - j];
    out[i] = -acc * inv0;
  }
  return QSeries(std::move(out));
}

QSeries pow(const QSeries& s, int e) {
  QSeries base = e < 0 ? inverse(s) : s;
  unsigned u = static_cast<unsigned>(e < 0 ? -e : e);
  QSeries result = QSeries::one(s.order());
  while (u) {
    if (u & 1u) result = result * base;
    u >>= 1;
    if (u) base = base * base;
  }
  return result;
}

QSeries eisenstein(unsigned k, std::size_t N) {
  if (k < 2) throw DomainError("eisenstein: k must be at least 2");
  const Rational factor = -Rational(4 * k) / bernoulli(2 * k);
  std::vector<Rational> c(N + 1);
  c[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) c[n] = factor * sigma(2 * k - 1, n);
  return QSeries(std::move(c));
}

QSeries eta_product(const std::vector<std::pair<unsigned, int>>& factors, std::size_t N) {
  long long weight24 = 0;
  for (const auto& [m, e] : factors) {
    if (m == 0) throw DomainError("eta_product: scale must be positive");
    weight24 += static_cast<long long>(m) * e;
  }
  if (weight24 < 0 || weight24 % 24 != 0) throw DomainError("eta_product: leading power of q is not a nonnegative integer");
  const auto shift = static_cast<std::size_t>(weight24 / 24);
  if (shift > N) return QSeries::zero(N);
  const std::size_t M = N - shift;
  QSeries prod = QSeries::one(M);
  for (const auto& [m, e] : factors) {
    // prod_{n >= 1} (1 - q^{mn}), multiplied in one factor at a time.
    std::vector<Rational> c(M + 1, Rational(0));
    c[0] = 1;
    for (std::size_t step = m; step <= M; step += m) {
      for (std::size_t i = M; i >= step; --i) c[i] -= c[i - step];
    }
    prod = prod * pow(QSeries(std::move(c)), e);
  }
  std::vector<Rational> out(N + 1, Rational(0));
  for (std::size_t i = 0; i <= M; ++i) out[i + shift] = prod[i];
  return QSeries(std::move(out));
}

QSeries delta_form(unsigned weight, std::size_t N) {
  switch (weight) {
    case 12:
      return eta_product({{1, 24}}, N);
    case 16:
      return eisenstein(2, N) * delta_form(12, N);
    case 18:
      return eisenstein(3, N) * delta_form(12, N);
    case 20:
      return eisenstein(2, N) * delta_form(16, N);
    case 22:
      return eisenstein(3, N) * delta_form(16, N);
    case 26:
      return eisenstein(3, N) * delta_form(20, N);
    default:
      throw DomainError("delta_form: unsupported weight " + std::to_string(weight));
  }
}

QSeries q_derivative(const QSeries& s) {
  std::vector<Rational> c(s.coeffs());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] *= static_cast<unsigned long>(n);
  return QSeries(std::move(c));
}

QSeries rescale_q(const QSeries& s, unsigned m) {
  if (m == 0) throw DomainError("rescale_q: m must be positive");
  std::vector<Rational> c(s.order() + 1, Rational(0));
  for (std::size_t n = 0; n * m <= s.order(); ++n) c[n * m] = s[n];
  return QSeries(std::move(c));
}

MultiplicativityCheck is_multiplicative(const QSeries& s, std::size_t N) {
  if (s.order() < 1 || s[1] != 1) throw DomainError("is_multiplicative: coefficient of q must be 1");
  N = std::min(N, s.order());
  for (std::uint64_t t = 6; t <= N; ++t) {
    for (std::uint64_t m = 2; m * m < t; ++m) {
      if (t % m) continue;
      const std::uint64_t n = t / m;
      if (std::gcd(m, n) != 1) continue;
      if (s[t] != s[m] * s[n]) return {false, std::make_pair(m, n)};
    }
  }
  return {};
}

std::string to_string(const QSeries& s) {
  std::string out;
  for (std::size_t n = 0; n <= s.order(); ++n) {
    const Rational& c = s[n];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational a = abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (n == 0) {
      out += to_string(a);
      continue;
    }
    if (a != 1) out += to_string(a) + "*";
    out += "q";
    if (n > 1) out += "^" + std::to_string(n);
  }
  if (!out.empty()) out += " + ";
  out += "O(q^" + std::to_string(s.order() + 1) + ")";
  return out;
}

nlohmann::json to_json(const QSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

QSeries qseries_from_json(const nlohmann::json& j) {
  try {
    const auto order = j.at("order").get<std::size_t>();
    const auto& arr = j.at("coeffs");
    if (arr.size() != order + 1) throw ParseError("series JSON: coefficient count does not match order");
    std::vector<Rational> c;
    c.reserve(arr.size());
    for (const auto& x : arr) c.push_back(parse_rational(x.get<std::string>()));
    return QSeries(std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
}

}  // namespace eisenprod
