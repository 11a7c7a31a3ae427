#include "eisenprod/resultant.hpp"

#include <algorithm>
#include <set>

#include "eisenprod/errors.hpp"
#include "eisenprod/kernels/modp.hpp"

namespace eisenprod {

namespace {

template <class T>
void require_square(const std::vector<std::vector<T>>& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw DomainError("determinant of a non-square matrix");
  }
}

// Sylvester rows built from descending coefficient lists.
template <class T>
std::vector<std::vector<T>> sylvester_from(const std::vector<T>& p, const std::vector<T>& q, const T& zero) {
  const std::size_t m = p.size() - 1, n = q.size() - 1, size = m + n;
  std::vector<std::vector<T>> s(size, std::vector<T>(size, zero));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j <= n; ++j) s[n + r][r + j] = q[n - j];
  }
  return s;
}

}  // namespace

PolyMatrix sylvester_matrix(const Poly& p, const Poly& q, VarId v) {
  auto pc = coefficients_in(p, v);
  auto qc = coefficients_in(q, v);
  if (pc.empty() || qc.empty()) throw DomainError("resultant of a zero polynomial");
  const RegistryPtr& reg = p.registry() ? p.registry() : q.registry();
  return sylvester_from(pc, qc, Poly(reg));
}

Poly bareiss_determinant(PolyMatrix m, const RegistryPtr& reg) {
  require_square(m);
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(reg, 1);
  bool negate = false;
  Poly prev = Poly::constant(reg, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly(reg);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) num -= m[i][k] * m[k][j];
        m[i][j] = exact_div(num, prev);
      }
      m[i][k] = Poly(reg);
    }
    prev = m[k][k];
  }
  Poly det = std::move(m[n - 1][n - 1]);
  return negate ? -det : det;
}

ZPoly bareiss_determinant(ZPolyMatrix m) {
  require_square(m);
  const std::size_t n = m.size();
  if (n == 0) return ZPoly::constant(1);
  bool negate = false;
  ZPoly prev = ZPoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ZPoly num = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) num = num - m[i][k] * m[k][j];
        if (prev.degree() == 0) {
          m[i][j] = num.div_exact(prev[0]);
        } else {
          m[i][j] = exact_div(num, prev);
        }
      }
      m[i][k] = ZPoly();
    }
    prev = m[k][k];
  }
  ZPoly det = std::move(m[n - 1][n - 1]);
  return negate ? -det : det;
}

namespace {

// Upper bound on log2 of every coefficient of det(m) (in absolute value):
// on |t| = 1 each entry is bounded by its coefficient 1-norm, so
// Hadamard's inequality bounds |det m(t)|, and Cauchy's estimate bounds
// the coefficients by the maximum on the unit circle.
std::size_t determinant_coefficient_bits(const ZPolyMatrix& m) {
  std::size_t bits = 0;
  for (const auto& row : m) {
    Integer sq = 0;
    for (const auto& e : row) {
      Integer norm = 0;
      for (const auto& c : e.coeffs()) norm += abs(c);
      sq += norm * norm;
    }
    if (sq == 0) return 0;  // zero row
    bits += (mpz_sizeinbase(sq.get_mpz_t(), 2) + 1) / 2;
  }
  return bits + 1;
}

std::size_t determinant_degree_bound(const ZPolyMatrix& m) {
  std::size_t rows = 0, cols = 0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    int rmax = 0, cmax = 0;
    for (std::size_t j = 0; j < n; ++j) {
      rmax = std::max(rmax, m[i][j].degree());
      cmax = std::max(cmax, m[j][i].degree());
    }
    rows += static_cast<std::size_t>(rmax);
    cols += static_cast<std::size_t>(cmax);
  }
  return std::min(rows, cols);
}

}  // namespace

ZPoly modular_determinant(const ZPolyMatrix& m) {
  require_square(m);
  const std::size_t n = m.size();
  if (n == 0) return ZPoly::constant(1);
  const std::size_t bits = determinant_coefficient_bits(m);
  if (bits == 0) return {};
  const std::size_t npts = determinant_degree_bound(m) + 1;
  const auto& kern = kernels::active_kernels();

  std::vector<Integer> acc(npts, 0);
  Integer modulus = 1;
  kernels::PrimeStream primes;
  std::vector<std::uint32_t> pts(npts);
  std::vector<double> ptsd(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    pts[i] = static_cast<std::uint32_t>(i);
    ptsd[i] = static_cast<double>(i);
  }
  std::vector<double> mats(n * n * npts);
  std::vector<std::uint32_t> residues;
  Integer t;
  while (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= bits + 1) {
    const std::uint32_t p = primes.next();
    const auto mod = kernels::make_modulus(p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double* dst = mats.data() + (i * n + j) * npts;
        const auto& e = m[i][j];
        if (e.is_zero()) {
          std::fill(dst, dst + npts, 0.0);
          continue;
        }
        residues.resize(e.coeffs().size());
        for (std::size_t c = 0; c < residues.size(); ++c) {
          residues[c] = static_cast<std::uint32_t>(mpz_fdiv_ui(e[c].get_mpz_t(), p));
        }
        auto vals = kernels::eval_at_points(residues, ptsd, mod, kern);
        std::copy(vals.begin(), vals.end(), dst);
      }
    }
    const auto dets = kernels::batched_det(mats, n, npts, mod, kern);
    const auto coeffs = kernels::interpolate(pts, dets, p);
    // Incremental CRT: acc <- acc + modulus * ((r - acc) / modulus mod p).
    const std::uint32_t minv = kernels::inv_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p)), p);
    for (std::size_t c = 0; c < npts; ++c) {
      const auto cur = static_cast<std::uint32_t>(mpz_fdiv_ui(acc[c].get_mpz_t(), p));
      const std::uint32_t diff = coeffs[c] >= cur ? coeffs[c] - cur : coeffs[c] + p - cur;
      const std::uint32_t k = kernels::mul_mod(diff, minv, p);
      if (k) mpz_addmul_ui(acc[c].get_mpz_t(), modulus.get_mpz_t(), k);
    }
    modulus *= p;
  }
  const Integer half = modulus / 2;
  for (auto& c : acc) {
    if (c > half) c -= modulus;
  }
  return ZPoly(std::move(acc));
}

namespace {

// Shape analysis for the automatic method choice.
std::set<VarId> coefficient_variables(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  std::set<VarId> vars;
  for (const auto* list : {&a, &b}) {
    for (const auto& c : *list) {
      for (auto v : c.variables()) vars.insert(v);
    }
  }
  return vars;
}

Poly dense_resultant(const std::vector<Poly>& pc, const std::vector<Poly>& qc, VarId w, const RegistryPtr& reg,
                     ResultantMethod method) {
  // Clear denominators separately for p and q; each scale enters the
  // determinant once per row it occupies.
  auto to_z = [&](const std::vector<Poly>& coeffs, Integer& scale) {
    scale = 1;
    for (const auto& c : coeffs) {
      for (const auto& t : c.terms()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    std::vector<ZPoly> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
      auto [z, s] = to_zpoly(c, w);
      out.push_back(z * Integer(scale / s));
    }
    std::reverse(out.begin(), out.end());
    return out;
  };
  Integer sp, sq;
  const auto pz = to_z(pc, sp);
  const auto qz = to_z(qc, sq);
  const std::size_t m = pz.size() - 1, n = qz.size() - 1;
  ZPolyMatrix syl = sylvester_from(pz, qz, ZPoly());
  const bool modular = method == ResultantMethod::kModular || (method == ResultantMethod::kAuto && m + n >= 8);
  ZPoly det = modular ? modular_determinant(syl) : bareiss_determinant(std::move(syl));
  Poly out = to_poly(det, reg, w);
  Rational denom = Rational(pow(sp, n) * pow(sq, m));
  return out * Rational(1 / denom);
}

}  // namespace

Poly resultant(const Poly& p, const Poly& q, VarId v, ResultantMethod method) {
  if (p.registry() && q.registry() && p.registry() != q.registry()) throw RegistryMismatch();
  const RegistryPtr& reg = p.registry() ? p.registry() : q.registry();
  if (p.is_zero() || q.is_zero()) throw DomainError("resultant of a zero polynomial");
  const int m = degree_in(p, v), n = degree_in(q, v);
  if (m == 0 && n == 0) throw DomainError("resultant: both inputs are constant in the eliminated variable");
  if (m == 0) return pow(p, static_cast<unsigned>(n));
  if (n == 0) return pow(q, static_cast<unsigned>(m));
  auto pc = coefficients_in(p, v);
  auto qc = coefficients_in(q, v);
  if (m == 1 && n == 1 && method != ResultantMethod::kModular) return pc[1] * qc[0] - qc[1] * pc[0];

  const auto vars = coefficient_variables(pc, qc);
  if (vars.size() <= 1 && method != ResultantMethod::kBareiss) {
    const VarId w = vars.empty() ? v : *vars.begin();
    return dense_resultant(pc, qc, w, reg, method);
  }
  if (method == ResultantMethod::kModular) {
    if (vars.size() <= 1) return dense_resultant(pc, qc, vars.empty() ? v : *vars.begin(), reg, method);
    throw DomainError("modular resultant needs coefficients in at most one variable");
  }
  std::reverse(pc.begin(), pc.end());
  std::reverse(qc.begin(), qc.end());
  return bareiss_determinant(sylvester_from(pc, qc, Poly(reg)), reg);
}

}  // namespace eisenprod
