#include <algorithm>

#include "eisenprod/eliminate.hpp"
#include "eisenprod/errors.hpp"

namespace eisenprod {

namespace {

// sigma_{2k-1}(1..n) and lambda for one k.
struct Weights {
  unsigned k;
  Rational lambda;
  std::vector<Integer> sigma{Integer(0)};

  explicit Weights(unsigned kk) : k(kk), lambda(eisenstein_lambda(kk)) {}
  const Integer& at(unsigned n) {
    while (sigma.size() <= n) sigma.push_back(eisenprod::sigma(2 * k - 1, sigma.size()));
    return sigma[n];
  }
};

Rational b_at(const std::vector<Rational>& b, unsigned n) {
  if (n == 1) return 1;
  if (is_prime_power(n)) {
    if (n >= b.size()) throw DomainError("evaluate_E: " + b_name(n) + " is not known");
    return b[n];
  }
  auto [x, y] = canonical_split(n);
  return b_at(b, x) * b_at(b, y);
}

Rational S_at(Weights& w, const std::vector<Rational>& b, unsigned n) {
  Rational acc = 0;
  for (unsigned i = 1; i < n; ++i) acc += Rational(w.at(i)) * b_at(b, n - i);
  return acc;
}

Rational E_at(Weights& w, unsigned n, const std::vector<Rational>& b) {
  auto [x, y] = canonical_split(n);
  const Rational Sx = S_at(w, b, x), Sy = S_at(w, b, y);
  return S_at(w, b, n) - (b_at(b, x) * Sy + b_at(b, y) * Sx - w.lambda * Sx * Sy);
}

bool is_power_of_two(unsigned n) { return n && !(n & (n - 1)); }

// Solves A^T u = rhs by Gaussian elimination over Q, where A has one row
// per unknown and one column per equation.
std::optional<std::vector<Rational>> solve_transposed(const std::vector<std::vector<Rational>>& A,
                                                      std::vector<Rational> rhs) {
  const std::size_t n = A.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t eq = 0; eq < n; ++eq) {
    for (std::size_t u = 0; u < n; ++u) m[eq][u] = A[u][eq];
    m[eq][n] = rhs[eq];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = m[i][n] / m[i][i];
  return out;
}

struct Case3 {
  std::vector<unsigned> unknowns, equations;
};

Case3 case3_layout(unsigned l) {
  if (is_prime(l) && is_power_of_two(l + 1)) return {{l, l + 1}, {l + 2, l + 3}};
  if (is_power_of_two(l) && is_prime(l + 1)) {
    if (!is_prime_power(l + 3)) return {{l, l + 1}, {l + 2, l + 3}};
    return {{l, l + 1, l + 3}, {l + 2, l + 4, l + 5}};
  }
  throw DomainError("b" + std::to_string(l) + ", b" + std::to_string(l + 1) +
                    " are both prime powers but l is neither Mersenne nor l+1 Fermat");
}

}  // namespace

Rational evaluate_E(unsigned k, unsigned n, const std::vector<Rational>& b) {
  if (is_prime_power(n) || n < 2) throw DomainError("E_" + std::to_string(n) + " is not defined");
  Weights w(k);
  return E_at(w, n, b);
}

std::vector<std::vector<Rational>> extension_matrix(unsigned k, unsigned l) {
  const Case3 c = case3_layout(l);
  Weights w(k);
  auto s = [&](unsigned i) { return Rational(w.at(i)); };
  if (c.unknowns.size() == 2) return {{s(2), s(3)}, {Rational(1), s(2)}};
  return {{s(2), s(4), s(5)}, {Rational(1), s(3), s(4)}, {Rational(0), Rational(1), s(2)}};
}

SolutionRecord extend_solution(SolutionRecord rec, std::size_t N) {
  if (rec.k < 2) throw DomainError("extend_solution: k must be at least 2");
  if (rec.b.size() < 9) throw DomainError("extend_solution: b_2..b_8 are required");
  const std::vector<Rational> before = rec.b;
  Weights w(rec.k);
  // Room for the look-ahead of case 3.
  std::vector<Rational> b(std::max<std::size_t>(N, 8) + 6, Rational(0));
  std::vector<bool> known(b.size(), false);
  for (unsigned n = 1; n <= 8; ++n) {
    b[n] = rec.b[n];
    known[n] = true;
  }
  for (unsigned l = 9; l <= N; ++l) {
    if (known[l]) continue;
    if (!is_prime_power(l)) {
      auto [x, y] = canonical_split(l);
      b[l] = b[x] * b[y];
    } else if (!is_prime_power(l + 1)) {
      // E_{l+1} is affine in b_l.
      b[l] = 0;
      const Rational e0 = E_at(w, l + 1, b);
      b[l] = 1;
      const Rational slope = E_at(w, l + 1, b) - e0;
      if (slope == 0) throw SingularExtension("b" + std::to_string(l) + " does not occur in E" + std::to_string(l + 1));
      b[l] = -e0 / slope;
    } else {
      const Case3 c = case3_layout(l);
      for (unsigned u : c.unknowns) b[u] = 0;
      std::vector<Rational> rhs;
      for (unsigned m : c.equations) rhs.push_back(-E_at(w, m, b));
      const auto A = extension_matrix(rec.k, l);
      auto sol = solve_transposed(A, rhs);
      if (!sol) {
        throw SingularExtension("case-3 matrix at l=" + std::to_string(l) + " is singular for k=" +
                                std::to_string(rec.k));
      }
      for (std::size_t i = 0; i < c.unknowns.size(); ++i) {
        b[c.unknowns[i]] = (*sol)[i];
        known[c.unknowns[i]] = true;
      }
      // The matrix is the closed-form one; make sure it is also the actual
      // linear part of the equations.
      for (unsigned m : c.equations) {
        if (E_at(w, m, b) != 0) {
          throw SingularExtension("case-3 solve at l=" + std::to_string(l) + " leaves E" + std::to_string(m) +
                                  " nonzero");
        }
      }
    }
    known[l] = true;
  }
  b.resize(N + 1);
  for (std::size_t n = 9; n < std::min(before.size(), b.size()); ++n) {
    if (before[n] != b[n]) {
      rec.flags.push_back("extension disagrees with replay at b" + std::to_string(n));
      break;
    }
  }
  rec.b = std::move(b);
  return rec;
}

QSeries SolutionRecord::series() const {
  std::vector<Rational> c(b.size(), Rational(0));
  for (std::size_t n = 1; n < b.size(); ++n) c[n] = b[n];
  if (c.size() > 1) c[1] = 1;
  return QSeries(std::move(c));
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::kUncertified:
      return "uncertified";
    case CertStatus::kNone:
      return "none";
    case CertStatus::kMultiplicativeG:
      return "multiplicative-g";
    case CertStatus::kMultiplicativeProduct:
      return "multiplicative-product";
    case CertStatus::kBoth:
      return "both";
  }
  return "uncertified";
}

std::vector<std::pair<std::string, QSeries>> closed_form_catalog(std::size_t N) {
  std::vector<std::pair<std::string, QSeries>> out;
  for (unsigned wt : {12u, 16u, 18u, 20u, 22u, 26u}) out.emplace_back("Δ" + std::to_string(wt), delta_form(wt, N));
  out.emplace_back("φ8", eta_product({{1, 8}, {2, 8}}, N));
  out.emplace_back("qE4'/240", Rational(1, 240) * q_derivative(eisenstein(2, N)));
  out.emplace_back("qE8'/480", Rational(1, 480) * q_derivative(eisenstein(4, N)));
  const QSeries d12 = delta_form(12, N);
  out.emplace_back("Δ12+256Δ12(q^2)", d12 + Rational(256) * rescale_q(d12, 2));
  return out;
}

namespace {

std::string match_label(const QSeries& s, const std::vector<std::pair<std::string, QSeries>>& catalog) {
  for (const auto& [name, form] : catalog) {
    if (s == form) return name;
  }
  return "unmatched";
}

}  // namespace

SolutionRecord certify(SolutionRecord rec, std::size_t N) {
  if (rec.b.size() < N + 1) throw DomainError("certify: coefficients are known only to " + std::to_string(rec.b.size() - 1));
  const QSeries g = rec.series().truncate(N);
  const QSeries prod = eisenstein(rec.k, N) * g;
  const auto mg = is_multiplicative(g, N);
  const auto mp = is_multiplicative(prod, N);
  if (mg.ok && mp.ok) {
    rec.status = CertStatus::kBoth;
  } else if (mg.ok) {
    rec.status = CertStatus::kMultiplicativeG;
  } else if (mp.ok) {
    rec.status = CertStatus::kMultiplicativeProduct;
  } else {
    rec.status = CertStatus::kNone;
  }
  rec.failing_pair = !mg.ok ? mg.failing : mp.failing;
  rec.certified_to = rec.status == CertStatus::kBoth ? N : 0;
  const auto catalog = closed_form_catalog(N);
  rec.label = match_label(g, catalog);
  rec.product_label = match_label(prod, catalog);
  return rec;
}

}  // namespace eisenprod
