#pragma once

// Vectorized arithmetic modulo word-size primes.
//
// Residues are stored as doubles in [0, p) with p < 2^26, so products are
// exact in the 53-bit mantissa and the quotient estimate from a
// precomputed 1/p is off by at most one. Every kernel exists as a scalar
// reference (plain 64-bit integer arithmetic) and, where the CPU supports
// it, an AVX2+FMA variant; both produce bit-identical outputs. The
// variant is picked once at startup; EISENPROD_KERNEL=scalar forces the
// reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace eisenprod::kernels {

inline constexpr std::uint32_t kMaxPrime = (1u << 26) - 1;

struct Modulus {
  std::uint32_t p = 0;
  double pd = 0;
  double pinv = 0;
};

Modulus make_modulus(std::uint32_t p);

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
/// Inverse of a nonzero residue.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// Function table for one instruction-set variant. All spans have equal
/// length; all inputs are reduced residues.
struct KernelTable {
  std::string_view name;
  /// out[i] = a[i] * b[i] mod p
  void (*mul)(double* out, const double* a, const double* b, std::size_t n, const Modulus& m);
  /// y[i] = y[i] - f[i] * x[i] mod p
  void (*submul)(double* y, const double* f, const double* x, std::size_t n, const Modulus& m);
  /// acc[i] = acc[i] * x[i] + c mod p   (one Horner step at many points)
  void (*horner_step)(double* acc, const double* x, double c, std::size_t n, const Modulus& m);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
/// The variant selected for this process.
const KernelTable& active_kernels();

/// Determinants of `lanes` independent n-by-n matrices modulo p.
/// Storage is lane-contiguous: entry (i, j) of lane l lives at
/// mats[(i * n + j) * lanes + l]. `mats` is overwritten.
std::vector<std::uint32_t> batched_det(std::vector<double>& mats, std::size_t n, std::size_t lanes,
                                       const Modulus& m, const KernelTable& k = active_kernels());

/// Values of the polynomial sum coeffs[i] t^i at every point, mod p.
std::vector<double> eval_at_points(std::span<const std::uint32_t> coeffs, std::span<const double> points,
                                   const Modulus& m, const KernelTable& k = active_kernels());

/// Coefficients (low to high) of the unique polynomial of degree
/// < points.size() through (points[i], values[i]); points distinct mod p.
std::vector<std::uint32_t> interpolate(std::span<const std::uint32_t> points, std::span<const std::uint32_t> values,
                                       std::uint32_t p);

/// Primes below 2^26 in descending order, generated on demand.
class PrimeStream {
 public:
  std::uint32_t next();

 private:
  std::uint32_t cur_ = kMaxPrime + 1;
};

bool is_prime_u32(std::uint32_t n);

}  // namespace eisenprod::kernels
