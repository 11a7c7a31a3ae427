#include "doctest.h"

#include <random>

#include "eisenprod/kernels/modp.hpp"

namespace k = eisenprod::kernels;

namespace {

std::vector<double> residues(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Odd lengths exercise the scalar tails of the vector loops.
constexpr std::size_t kLengths[] = {0, 1, 3, 4, 7, 64, 1001};

std::vector<std::uint32_t> test_primes() {
  k::PrimeStream ps;
  return {ps.next(), ps.next(), 3, 65521, 1000003};
}

}  // namespace

TEST_CASE("scalar kernels match plain modular arithmetic") {
  std::mt19937_64 rng(11);
  const auto& s = k::scalar_kernels();
  for (std::uint32_t p : test_primes()) {
    const k::Modulus m = k::make_modulus(p);
    auto a = residues(rng, 257, p), b = residues(rng, 257, p), y = residues(rng, 257, p);
    std::vector<double> out(257), y0 = y, acc = y;
    s.mul(out.data(), a.data(), b.data(), 257, m);
    s.submul(y.data(), a.data(), b.data(), 257, m);
    s.horner_step(acc.data(), a.data(), 5 % p, 257, m);
    for (std::size_t i = 0; i < 257; ++i) {
      const std::uint64_t ai = static_cast<std::uint64_t>(a[i]), bi = static_cast<std::uint64_t>(b[i]);
      CHECK(out[i] == static_cast<double>(ai * bi % p));
      CHECK(y[i] == static_cast<double>((static_cast<std::uint64_t>(y0[i]) + p - ai * bi % p) % p));
      CHECK(acc[i] == static_cast<double>((static_cast<std::uint64_t>(y0[i]) * ai + 5 % p) % p));
    }
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  const k::KernelTable* v = k::avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const auto& s = k::scalar_kernels();
  std::mt19937_64 rng(12);
  for (std::uint32_t p : test_primes()) {
    const k::Modulus m = k::make_modulus(p);
    for (std::size_t n : kLengths) {
      auto a = residues(rng, n, p), b = residues(rng, n, p), y = residues(rng, n, p);
      std::vector<double> o1(n), o2(n);
      s.mul(o1.data(), a.data(), b.data(), n, m);
      v->mul(o2.data(), a.data(), b.data(), n, m);
      CHECK(o1 == o2);
      auto y1 = y, y2 = y;
      s.submul(y1.data(), a.data(), b.data(), n, m);
      v->submul(y2.data(), a.data(), b.data(), n, m);
      CHECK(y1 == y2);
      auto h1 = y, h2 = y;
      s.horner_step(h1.data(), a.data(), p - 1, n, m);
      v->horner_step(h2.data(), a.data(), p - 1, n, m);
      CHECK(h1 == h2);
    }
    // Extremes of the residue range.
    std::vector<double> top(9, p - 1), o1(9), o2(9);
    s.mul(o1.data(), top.data(), top.data(), 9, m);
    v->mul(o2.data(), top.data(), top.data(), 9, m);
    CHECK(o1 == o2);
  }
}

TEST_CASE("batched determinants and evaluation agree across variants") {
  const k::KernelTable* v = k::avx2_kernels();
  const auto& s = k::scalar_kernels();
  std::mt19937_64 rng(13);
  const std::uint32_t p = test_primes().front();
  const k::Modulus m = k::make_modulus(p);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const std::size_t lanes = 13;
    auto mats = residues(rng, n * n * lanes, p);
    // Lane 0 is singular: two equal rows.
    if (n >= 2) {
      for (std::size_t j = 0; j < n; ++j) mats[(1 * n + j) * lanes] = mats[(0 * n + j) * lanes];
    }
    auto copy = mats;
    const auto d1 = k::batched_det(copy, n, lanes, m, s);
    if (n >= 2) CHECK(d1[0] == 0);
    // Lane-by-lane reference via cofactor-free elimination on integers.
    for (std::size_t l = 0; l < lanes; ++l) {
      std::vector<std::uint64_t> a(n * n);
      for (std::size_t i = 0; i < n * n; ++i) a[i] = static_cast<std::uint64_t>(mats[i * lanes + l]);
      std::uint64_t det = 1;
      for (std::size_t c = 0; c < n && det; ++c) {
        std::size_t r = c;
        while (r < n && a[r * n + c] == 0) ++r;
        if (r == n) {
          det = 0;
          break;
        }
        if (r != c) {
          for (std::size_t j = 0; j < n; ++j) std::swap(a[r * n + j], a[c * n + j]);
          det = (p - det) % p;
        }
        det = det * a[c * n + c] % p;
        const std::uint64_t inv = k::inv_mod(static_cast<std::uint32_t>(a[c * n + c]), p);
        for (std::size_t i = c + 1; i < n; ++i) {
          const std::uint64_t f = a[i * n + c] * inv % p;
          for (std::size_t j = c; j < n; ++j) a[i * n + j] = (a[i * n + j] + p - f * a[c * n + j] % p) % p;
        }
      }
      CHECK(d1[l] == det);
    }
    if (v) {
      auto copy2 = mats;
      CHECK(k::batched_det(copy2, n, lanes, m, *v) == d1);
    }
  }
  std::vector<std::uint32_t> coeffs(40);
  for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng() % p);
  const auto pts = residues(rng, 37, p);
  const auto e1 = k::eval_at_points(coeffs, pts, m, s);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * static_cast<std::uint64_t>(pts[i]) + coeffs[j]) % p;
    CHECK(e1[i] == static_cast<double>(acc));
  }
  if (v) CHECK(k::eval_at_points(coeffs, pts, m, *v) == e1);
}

TEST_CASE("interpolation inverts evaluation") {
  const std::uint32_t p = 1000003;
  const k::Modulus m = k::make_modulus(p);
  std::vector<std::uint32_t> coeffs{7, 0, 999999, 12, 1};
  std::vector<std::uint32_t> pts{1, 2, 3, 5, 8};
  std::vector<double> dpts(pts.begin(), pts.end());
  const auto vals = k::eval_at_points(coeffs, dpts, m, k::scalar_kernels());
  std::vector<std::uint32_t> uvals(vals.begin(), vals.end());
  CHECK(k::interpolate(pts, uvals, p) == coeffs);
}

TEST_CASE("modular helpers") {
  CHECK(k::is_prime_u32(65521));
  CHECK_FALSE(k::is_prime_u32(65535));
  CHECK(k::pow_mod(3, 65520, 65521) == 1);
  CHECK(k::mul_mod(k::inv_mod(12345, 65521), 12345, 65521) == 1);
  k::PrimeStream ps;
  const std::uint32_t a = ps.next(), b = ps.next();
  CHECK(a > b);
  CHECK(a <= k::kMaxPrime);
  CHECK(k::is_prime_u32(a));
}
