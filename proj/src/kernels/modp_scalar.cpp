#include <cstdlib>
#include <cstring>

#include "eisenprod/errors.hpp"
#include "eisenprod/kernels/modp.hpp"

namespace eisenprod::kernels {

namespace {

inline std::uint32_t to_u(double x) { return static_cast<std::uint32_t>(x); }

void mul_scalar(double* out, const double* a, const double* b, std::size_t n, const Modulus& m) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul_mod(to_u(a[i]), to_u(b[i]), m.p);
}

void submul_scalar(double* y, const double* f, const double* x, std::size_t n, const Modulus& m) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t t = mul_mod(to_u(f[i]), to_u(x[i]), m.p);
    const std::uint32_t yi = to_u(y[i]);
    y[i] = yi >= t ? yi - t : yi + m.p - t;
  }
}

void horner_scalar(double* acc, const double* x, double c, std::size_t n, const Modulus& m) {
  const std::uint32_t cu = to_u(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t t = mul_mod(to_u(acc[i]), to_u(x[i]), m.p) + cu;
    if (t >= m.p) t -= m.p;
    acc[i] = t;
  }
}

constexpr KernelTable kScalar{"scalar", &mul_scalar, &submul_scalar, &horner_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

#ifndef EISENPROD_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("EISENPROD_KERNEL");
    if (force && std::strcmp(force, "scalar") == 0) return &kScalar;
    if (const KernelTable* v = avx2_kernels()) return v;
    return &kScalar;
  }();
  return *chosen;
}

Modulus make_modulus(std::uint32_t p) {
  if (p < 3 || p > kMaxPrime) throw DomainError("modulus out of range");
  return Modulus{p, static_cast<double>(p), 1.0 / static_cast<double>(p)};
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1u) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr) {
    const std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw DomainError("residue is not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::vector<std::uint32_t> batched_det(std::vector<double>& mats, std::size_t n, std::size_t lanes,
                                       const Modulus& m, const KernelTable& k) {
  auto at = [&](std::size_t i, std::size_t j) { return mats.data() + (i * n + j) * lanes; };
  std::vector<std::uint32_t> det(lanes, 1);
  std::vector<double> inv(lanes), factor(lanes);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t l = 0; l < lanes; ++l) {
      if (det[l] == 0) {
        inv[l] = 0;
        continue;
      }
      if (at(c, c)[l] == 0) {
        std::size_t r = c + 1;
        while (r < n && at(r, c)[l] == 0) ++r;
        if (r == n) {
          det[l] = 0;
          inv[l] = 0;
          continue;
        }
        for (std::size_t j = c; j < n; ++j) std::swap(at(c, j)[l], at(r, j)[l]);
        det[l] = det[l] ? m.p - det[l] : 0;
      }
      const auto piv = static_cast<std::uint32_t>(at(c, c)[l]);
      det[l] = mul_mod(det[l], piv, m.p);
      inv[l] = inv_mod(piv, m.p);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      k.mul(factor.data(), at(i, c), inv.data(), lanes, m);
      for (std::size_t j = c + 1; j < n; ++j) k.submul(at(i, j), factor.data(), at(c, j), lanes, m);
    }
  }
  return det;
}

std::vector<double> eval_at_points(std::span<const std::uint32_t> coeffs, std::span<const double> points,
                                   const Modulus& m, const KernelTable& k) {
  std::vector<double> acc(points.size(), 0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) k.horner_step(acc.data(), points.data(), coeffs[i], points.size(), m);
  return acc;
}

std::vector<std::uint32_t> interpolate(std::span<const std::uint32_t> points, std::span<const std::uint32_t> values,
                                       std::uint32_t p) {
  const std::size_t n = points.size();
  if (values.size() != n) throw DomainError("interpolate: size mismatch");
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<std::uint32_t> dd(values.begin(), values.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const std::uint32_t num = dd[i] >= dd[i - 1] ? dd[i] - dd[i - 1] : dd[i] + p - dd[i - 1];
      const std::uint32_t den = points[i] >= points[i - j] ? points[i] - points[i - j] : points[i] + p - points[i - j];
      dd[i] = mul_mod(num, inv_mod(den, p), p);
      if (i == j) break;
    }
  }
  std::vector<std::uint32_t> poly(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // poly = poly * (t - points[i]) + dd[i]
    const std::uint32_t neg = points[i] ? p - points[i] : 0;
    for (std::size_t d = n - 1; d > 0; --d) {
      std::uint32_t t = mul_mod(poly[d], neg, p) + poly[d - 1];
      if (t >= p) t -= p;
      poly[d] = t;
    }
    std::uint32_t t = mul_mod(poly[0], neg, p) + dd[i];
    if (t >= p) t -= p;
    poly[0] = t;
  }
  return poly;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t a : {2u, 7u, 61u}) {
    std::uint32_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1 || a % n == 0) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t PrimeStream::next() {
  do {
    if (cur_ <= 3) throw DomainError("prime stream exhausted");
    --cur_;
  } while (!is_prime_u32(cur_));
  return cur_;
}

}  // namespace eisenprod::kernels
