#pragma once

// Truncated q-expansions with exact rational coefficients.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eisenprod/rational.hpp"

namespace eisenprod {

/// Exact Bernoulli number B_n (B_1 = -1/2). Memoized, thread safe.
Rational bernoulli(unsigned n);

/// sum of d^r over the divisors d of n.
Integer sigma(unsigned r, std::uint64_t n);

/// a_0 + a_1 q + ... + a_N q^N + O(q^(N+1)).
class QSeries {
 public:
  QSeries() = default;
  /// coeffs[i] multiplies q^i; the order is coeffs.size() - 1.
  explicit QSeries(std::vector<Rational> coeffs);
  static QSeries zero(std::size_t order);
  static QSeries one(std::size_t order);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return c_.at(n); }
  const std::vector<Rational>& coeffs() const { return c_; }
  QSeries truncate(std::size_t order) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const Rational& s, const QSeries& a);

  /// Compares coefficients up to the smaller of the two orders.
  friend bool operator==(const QSeries& a, const QSeries& b);
  /// Least index where the series differ (up to the common order).
  friend std::optional<std::size_t> first_difference(const QSeries& a, const QSeries& b);

 private:
  std::vector<Rational> c_{Rational(0)};
};

/// Multiplicative inverse; requires a nonzero constant term.
QSeries inverse(const QSeries& s);
QSeries pow(const QSeries& s, int e);

/// E_{2k} = 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n, through q^N.
QSeries eisenstein(unsigned k, std::size_t N);

/// prod eta(m z)^e through q^N. Throws DomainError unless
/// sum m*e/24 is a nonnegative integer.
QSeries eta_product(const std::vector<std::pair<unsigned, int>>& factors, std::size_t N);

/// Normalized cusp forms of level one for weight 12, 16, 18, 20, 22, 26.
QSeries delta_form(unsigned weight, std::size_t N);

/// q d/dq.
QSeries q_derivative(const QSeries& s);

/// q -> q^m, same order.
QSeries rescale_q(const QSeries& s, unsigned m);

struct MultiplicativityCheck {
  bool ok = true;
  /// Least failing (m, n), m < n coprime, ordered by m*n then m.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> failing;
};

/// c_{mn} == c_m c_n for coprime m < n with mn <= N (N capped at the
/// series order). Throws DomainError when c_1 != 1.
MultiplicativityCheck is_multiplicative(const QSeries& s, std::size_t N);

/// "1 + 240*q + 2160*q^2 + O(q^3)"
std::string to_string(const QSeries& s);
nlohmann::json to_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& j);

}  // namespace eisenprod
