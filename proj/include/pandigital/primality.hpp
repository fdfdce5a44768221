#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <vector>

#include "pandigital/bigint.hpp"

namespace pandigital {

enum class PrimeClass { Prime, Composite, ProbablePrime };
enum class PrimeMethod { TrialDivision, MillerRabin, BailliePSW };

inline std::string_view prime_class_name(PrimeClass c) {
  switch (c) {
    case PrimeClass::Prime: return "prime";
    case PrimeClass::Composite: return "composite";
    case PrimeClass::ProbablePrime: return "probable-prime";
  }
  throw std::invalid_argument("unknown prime class");
}

inline std::string_view prime_method_name(PrimeMethod m) {
  switch (m) {
    case PrimeMethod::TrialDivision: return "trial-division";
    case PrimeMethod::MillerRabin: return "miller-rabin";
    case PrimeMethod::BailliePSW: return "baillie-psw";
  }
  throw std::invalid_argument("unknown prime method");
}

/// Re-verifiable reason a number was declared composite.
struct CompositeEvidence {
  enum class Kind { Factor, MillerRabinBase, LucasParams, PerfectSquare };
  Kind kind = Kind::Factor;
  BigUint value;      // the factor, the Miller-Rabin base, or the square root
  int64_t lucas_d = 0;  // discriminant of the failed strong Lucas test (P=1, Q=(1-D)/4)
};

struct PrimalityVerdict {
  PrimeClass classification = PrimeClass::Composite;
  PrimeMethod method = PrimeMethod::TrialDivision;
  std::optional<CompositeEvidence> evidence;
};

namespace detail {

inline const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> primes = [] {
    std::vector<bool> sieve(1000, true);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i < sieve.size(); ++i) {
      if (!sieve[i]) continue;
      ps.push_back(i);
      for (uint32_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    }
    return ps;
  }();
  return primes;
}

// ---- per-type modular primitives; operands already reduced mod m ----

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  return a >= m - b && b != 0 ? a - (m - b) : a + b;
}
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return uint64_t(uint128(a) * b % m);
}

inline uint128 addmod(uint128 a, uint128 b, uint128 m) {
  return a >= m - b && b != 0 ? a - (m - b) : a + b;
}
inline uint128 submod(uint128 a, uint128 b, uint128 m) {
  return a >= b ? a - b : a + (m - b);
}
inline uint128 mulmod(uint128 a, uint128 b, uint128 m) {
  if ((a >> 64) == 0 && (b >> 64) == 0) return a * b % m;
  uint128 r = 0;
  while (b != 0) {
    if (b & 1) r = addmod(r, a, m);
    a = addmod(a, a, m);
    b >>= 1;
  }
  return r;
}

inline BigUint addmod(const BigUint& a, const BigUint& b, const BigUint& m) {
  BigUint c = a + b;
  if (c >= m) c -= m;
  return c;
}
inline BigUint submod(const BigUint& a, const BigUint& b, const BigUint& m) {
  return a >= b ? a - b : a + (m - b);
}
inline BigUint mulmod(const BigUint& a, const BigUint& b, const BigUint& m) {
  return a * b % m;
}

template <class U>
bool u_is_zero(const U& x) {
  if constexpr (std::is_same_v<U, BigUint>)
    return x.is_zero();
  else
    return x == 0;
}

template <class U>
bool u_is_even(const U& x) {
  if constexpr (std::is_same_v<U, BigUint>)
    return x.is_even();
  else
    return (x & 1) == 0;
}

template <class U>
unsigned u_low_bits(const U& x, unsigned k) {  // k <= 5
  if constexpr (std::is_same_v<U, BigUint>) {
    unsigned r = 0;
    for (unsigned i = 0; i < k; ++i) r |= unsigned(x.bit(i)) << i;
    return r;
  } else {
    return unsigned(x) & ((1u << k) - 1);
  }
}

template <class U>
std::size_t u_bit_length(const U& x) {
  if constexpr (std::is_same_v<U, BigUint>)
    return x.bit_length();
  else if constexpr (std::is_same_v<U, uint128>)
    return u128_bit_length(x);
  else
    return std::bit_width(x);
}

template <class U>
bool u_bit(const U& x, std::size_t i) {
  if constexpr (std::is_same_v<U, BigUint>)
    return x.bit(i);
  else
    return (x >> i) & 1;
}

// (x + n) / 2 mod n for odd n and x < n, without overflow.
template <class U>
U halfmod(const U& x, const U& n) {
  if (u_is_even(x)) return x >> 1;
  return (x >> 1) + (n >> 1) + U(1);
}

template <class U>
U powmod(U base, U exp, const U& m) {
  U r(1);
  base = base % m;
  while (!u_is_zero(exp)) {
    if (!u_is_even(exp)) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp = exp >> 1;
  }
  return r;
}

/// One strong Fermat round: true means "passes base a". n odd >= 3,
/// 0 < a < n.
template <class U>
bool strong_probable_prime(const U& n, const U& a) {
  U nm1 = n - U(1);
  U q = nm1;
  unsigned s = 0;
  while (u_is_even(q)) {
    q = q >> 1;
    ++s;
  }
  U x = powmod(a, q, n);
  if (x == U(1) || x == nm1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == nm1) return true;
  }
  return false;
}

/// Jacobi symbol (a/n) for odd n > 0 and 0 <= a < n.
template <class U>
int jacobi(U a, U n) {
  int s = 1;
  for (;;) {
    if (u_is_zero(a)) return n == U(1) ? s : 0;
    unsigned tz = 0;
    while (u_is_even(a)) {
      a = a >> 1;
      ++tz;
    }
    if (tz % 2 == 1) {
      unsigned nm8 = u_low_bits(n, 3);
      if (nm8 == 3 || nm8 == 5) s = -s;
    }
    if (u_low_bits(a, 2) == 3 && u_low_bits(n, 2) == 3) s = -s;
    std::swap(a, n);
    a = a % n;
  }
}

enum class LucasOutcome { ProbablePrime, Composite, FoundFactor };

struct LucasResult {
  LucasOutcome outcome = LucasOutcome::Composite;
  int64_t d = 0;        // the discriminant used
  uint64_t factor = 0;  // for FoundFactor: a nontrivial divisor of n
};

template <class U>
uint64_t u_mod_small(const U& n, uint64_t m) {
  if constexpr (std::is_same_v<U, BigUint>)
    return (n % BigUint(m)).to_u64();
  else
    return uint64_t(n % m);
}

/// Strong Lucas test with the given discriminant D (P=1, Q=(1-D)/4).
/// n odd >= 3, gcd(n, 2D) == 1.
template <class U>
bool strong_lucas_with_d(const U& n, int64_t d) {
  int64_t q_signed = (1 - d) / 4;
  U dm = d >= 0 ? U(uint64_t(d)) % n : n - U(uint64_t(-d)) % n;
  if (dm == n) dm = U(0);
  U qm = q_signed >= 0 ? U(uint64_t(q_signed)) % n : n - U(uint64_t(-q_signed)) % n;
  if (qm == n) qm = U(0);

  // n + 1 = t * 2^s with t odd, computed as 2*((n>>1)+1) to avoid overflow
  U t = (n >> 1) + U(1);
  unsigned s = 1;
  while (u_is_even(t)) {
    t = t >> 1;
    ++s;
  }

  // U_t, V_t, Q^t by an MSB-first double-and-add chain starting from
  // U_1 = 1, V_1 = P = 1.
  U u(1), v(1), qk = qm;
  std::size_t bits = u_bit_length(t);
  for (std::size_t i = bits - 1; i-- > 0;) {
    u = mulmod(u, v, n);
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    qk = mulmod(qk, qk, n);
    if (u_bit(t, i)) {
      U t1 = halfmod(addmod(u, v, n), n);
      U t2 = halfmod(addmod(mulmod(dm, u, n), v, n), n);
      u = t1;
      v = t2;
      qk = mulmod(qk, qm, n);
    }
  }
  if (u_is_zero(u) || u_is_zero(v)) return true;
  for (unsigned r = 1; r < s; ++r) {
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    qk = mulmod(qk, qk, n);
    if (u_is_zero(v)) return true;
  }
  return false;
}

/// Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
/// Caller guarantees n odd, n not a perfect square, n > 5.
template <class U>
LucasResult strong_lucas_selfridge(const U& n) {
  LucasResult res;
  int64_t d_abs = 5;
  int sign = 1;
  for (;;) {
    U dm = U(uint64_t(d_abs)) % n;
    int j = jacobi(dm, n);
    if (sign < 0 && j != 0 && u_low_bits(n, 2) == 3) j = -j;  // (-1/n) for n = 3 mod 4
    if (j == 0) {
      // |D| shares a factor with n; n exceeds |D| here, so gcd is proper.
      res.outcome = LucasOutcome::FoundFactor;
      res.d = sign * d_abs;
      res.factor = std::gcd(uint64_t(d_abs), u_mod_small(n, uint64_t(d_abs)));
      return res;
    }
    if (j == -1) break;
    d_abs += 2;
    sign = -sign;
    if (d_abs > 1000000)
      throw std::logic_error("strong_lucas_selfridge: no discriminant found (square input?)");
  }
  res.d = sign * d_abs;
  res.outcome = strong_lucas_with_d(n, res.d) ? LucasOutcome::ProbablePrime
                                              : LucasOutcome::Composite;
  return res;
}

template <class U>
bool is_perfect_square(const U& n, U* root) {
  U r;
  if constexpr (std::is_same_v<U, BigUint>)
    r = isqrt(n);
  else if constexpr (std::is_same_v<U, uint128>)
    r = isqrt_u128(n);
  else
    r = isqrt_u64(n);
  if (r * r == n) {
    *root = r;
    return true;
  }
  return false;
}

inline BigUint to_biguint(uint64_t v) { return BigUint(v); }
inline BigUint to_biguint(uint128 v) { return BigUint::from_u128(v); }
inline BigUint to_biguint(const BigUint& v) { return v; }

/// Baillie-PSW for odd n with no factor below 1000. Returns ProbablePrime
/// or Composite with evidence.
template <class U>
PrimalityVerdict bpsw_verdict(const U& n) {
  PrimalityVerdict v;
  v.method = PrimeMethod::BailliePSW;
  if (!strong_probable_prime(n, U(2))) {
    v.classification = PrimeClass::Composite;
    v.evidence = CompositeEvidence{CompositeEvidence::Kind::MillerRabinBase, BigUint(2), 0};
    return v;
  }
  U root(0);
  if (is_perfect_square(n, &root)) {
    v.classification = PrimeClass::Composite;
    v.evidence = CompositeEvidence{CompositeEvidence::Kind::PerfectSquare, to_biguint(root), 0};
    return v;
  }
  LucasResult lucas = strong_lucas_selfridge(n);
  switch (lucas.outcome) {
    case LucasOutcome::ProbablePrime:
      v.classification = PrimeClass::ProbablePrime;
      return v;
    case LucasOutcome::FoundFactor:
      v.classification = PrimeClass::Composite;
      v.evidence = CompositeEvidence{CompositeEvidence::Kind::Factor, BigUint(lucas.factor), 0};
      return v;
    case LucasOutcome::Composite:
      v.classification = PrimeClass::Composite;
      v.evidence = CompositeEvidence{CompositeEvidence::Kind::LucasParams, BigUint(), lucas.d};
      return v;
  }
  throw std::logic_error("bpsw_verdict: unreachable");
}

inline constexpr std::array<uint64_t, 7> kMillerRabinBases = {
    2, 325, 9375, 28178, 450775, 9780504, 1795265022};

}  // namespace detail

/// Primality verdict with the deciding method and, for composites past
/// trial division, re-verifiable evidence. Deterministic below 2^64;
/// Baillie-PSW (never "Prime", only "ProbablePrime") above.
inline PrimalityVerdict is_prime(uint64_t n) {
  PrimalityVerdict v;
  if (n < 2) {
    v.classification = PrimeClass::Composite;
    v.method = PrimeMethod::TrialDivision;
    return v;
  }
  for (uint32_t p : detail::small_primes()) {
    if (uint64_t(p) * p > n) break;
    if (n % p == 0) {
      v.classification = n == p ? PrimeClass::Prime : PrimeClass::Composite;
      v.method = PrimeMethod::TrialDivision;
      if (v.classification == PrimeClass::Composite)
        v.evidence = CompositeEvidence{CompositeEvidence::Kind::Factor, BigUint(p), 0};
      return v;
    }
  }
  if (n < 1000000) {  // fully covered by the divisor scan above
    v.classification = PrimeClass::Prime;
    v.method = PrimeMethod::TrialDivision;
    return v;
  }
  v.method = PrimeMethod::MillerRabin;
  for (uint64_t a : detail::kMillerRabinBases) {
    uint64_t ar = a % n;
    if (ar == 0) continue;
    if (!detail::strong_probable_prime(n, ar)) {
      v.classification = PrimeClass::Composite;
      v.evidence = CompositeEvidence{CompositeEvidence::Kind::MillerRabinBase, BigUint(a), 0};
      return v;
    }
  }
  v.classification = PrimeClass::Prime;
  return v;
}

inline PrimalityVerdict is_prime(uint128 n) {
  if (n <= std::numeric_limits<uint64_t>::max()) return is_prime(uint64_t(n));
  for (uint32_t p : detail::small_primes()) {
    if (n % p == 0) {
      PrimalityVerdict v;
      v.classification = PrimeClass::Composite;
      v.method = PrimeMethod::TrialDivision;
      v.evidence = CompositeEvidence{CompositeEvidence::Kind::Factor, BigUint(p), 0};
      return v;
    }
  }
  return detail::bpsw_verdict(n);
}

inline PrimalityVerdict is_prime(const BigUint& n) {
  if (n.fits_u128()) return is_prime(n.to_u128());
  for (uint32_t p : detail::small_primes()) {
    if ((n % BigUint(p)).is_zero()) {
      PrimalityVerdict v;
      v.classification = PrimeClass::Composite;
      v.method = PrimeMethod::TrialDivision;
      v.evidence = CompositeEvidence{CompositeEvidence::Kind::Factor, BigUint(p), 0};
      return v;
    }
  }
  return detail::bpsw_verdict(n);
}

/// Re-check a composite verdict's evidence against n.
inline bool verify_composite_evidence(const BigUint& n, const CompositeEvidence& e) {
  switch (e.kind) {
    case CompositeEvidence::Kind::Factor:
      return e.value > BigUint(1) && e.value < n && (n % e.value).is_zero();
    case CompositeEvidence::Kind::PerfectSquare:
      return e.value > BigUint(1) && e.value * e.value == n;
    case CompositeEvidence::Kind::MillerRabinBase: {
      BigUint a = e.value % n;
      if (a.is_zero()) return false;
      if (n.fits_u128())
        return !detail::strong_probable_prime(n.to_u128(), a.to_u128());
      return !detail::strong_probable_prime(n, a);
    }
    case CompositeEvidence::Kind::LucasParams:
      if (n.fits_u128()) return !detail::strong_lucas_with_d(n.to_u128(), e.lucas_d);
      return !detail::strong_lucas_with_d(n, e.lucas_d);
  }
  return false;
}

}  // namespace pandigital
