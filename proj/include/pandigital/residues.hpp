#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace pandigital {

/// What the squarefree/valuation analysis of b-1 predicts about the
/// residue set A_b without computing it.
enum class ResiduePrediction {
  Empty,          // no residue class can hold a strict square
  ZeroOnly,       // A_b = {0}
  HalfOnly,       // A_b = {(b-1)/2}
  Unconstrained,  // analysis makes no exact claim
};

inline std::string_view prediction_name(ResiduePrediction p) {
  switch (p) {
    case ResiduePrediction::Empty: return "empty";
    case ResiduePrediction::ZeroOnly: return "zero-only";
    case ResiduePrediction::HalfOnly: return "half-only";
    case ResiduePrediction::Unconstrained: return "unconstrained";
  }
  throw std::invalid_argument("unknown prediction");
}

/// Residues mod b-1 that a square sharing the strict digit sum
/// b(b-1)/2 can occupy, together with the theoretical prediction.
struct ResidueSet {
  uint32_t base = 0;
  std::vector<uint32_t> members;  // ascending, subset of [0, b-2]
  ResiduePrediction prediction = ResiduePrediction::Unconstrained;
};

/// Exponent of 2 in n. n must be positive.
inline uint32_t two_adic_valuation(uint64_t n) {
  if (n == 0) throw std::invalid_argument("two_adic_valuation: zero input");
  return uint32_t(std::countr_zero(n));
}

/// True when no square of a prime divides n. Trial division suffices for
/// the base ranges in scope; inputs above 10^12 are rejected.
inline bool is_squarefree(uint64_t n) {
  if (n == 0) throw std::invalid_argument("is_squarefree: zero input");
  if (n > 1000000000000ull)
    throw std::invalid_argument("is_squarefree: input exceeds the supported range");
  if ((n & 3u) == 0) return false;
  while ((n & 1u) == 0) n >>= 1;
  for (uint64_t p = 3; p * p * p <= n; p += 2) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  // Any remaining cofactor is prime, a prime square, or a product of two
  // distinct primes; only the square case fails, and only if it is exact.
  if (n > 1) {
    uint64_t r = 1;
    while (r * r < n) ++r;  // n <= 10^12 / small factors, loop stays short
    if (r * r == n) return false;
  }
  return true;
}

inline ResiduePrediction aset_theory(uint32_t base);

/// A_b by exhaustive check: residues m in [0, b-2] with
/// m^2 = b(b-1)/2 (mod b-1).
inline ResidueSet aset(uint32_t base) {
  if (base < 3) throw std::invalid_argument("aset: base must be at least 3");
  const uint64_t mod = base - 1;
  // b(b-1)/2 mod (b-1): 0 for even b, (b-1)/2 for odd b.
  const uint64_t target = (base % 2 == 0) ? 0 : mod / 2;
  ResidueSet r;
  r.base = base;
  for (uint64_t m = 0; m < mod; ++m)
    if ((m * m) % mod == target) r.members.push_back(uint32_t(m));
  r.prediction = aset_theory(base);
  return r;
}

/// Prediction for A_b from the structure of b-1 alone. An odd base with
/// even 2-adic valuation of b-1 forces emptiness; squarefree b-1 pins
/// the set to {0} (b even) or {(b-1)/2} (b odd).
inline ResiduePrediction aset_theory(uint32_t base) {
  if (base < 3) throw std::invalid_argument("aset_theory: base must be at least 3");
  const uint64_t bm1 = base - 1;
  if (base % 2 == 1 && two_adic_valuation(bm1) % 2 == 0) return ResiduePrediction::Empty;
  if (!is_squarefree(bm1)) return ResiduePrediction::Unconstrained;
  return base % 2 == 0 ? ResiduePrediction::ZeroOnly : ResiduePrediction::HalfOnly;
}

}  // namespace pandigital
