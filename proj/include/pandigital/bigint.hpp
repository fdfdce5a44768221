#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pandigital {

using uint128 = unsigned __int128;

namespace detail {

inline std::string u128_to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(char('0' + unsigned(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline unsigned u128_bit_length(uint128 v) {
  uint64_t hi = uint64_t(v >> 64);
  if (hi != 0) return 128 - std::countl_zero(hi);
  uint64_t lo = uint64_t(v);
  return lo == 0 ? 0 : 64 - std::countl_zero(lo);
}

}  // namespace detail

/// Unsigned arbitrary-precision integer on 32-bit limbs (little-endian,
/// trimmed). The fixed-width uint64/uint128 paths handle the hot loops;
/// this type covers digit strings in large bases, lower-bound constants,
/// and primality inputs past 2^128.
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v) {
    if (v != 0) {
      limbs_.push_back(uint32_t(v));
      if (uint32_t hi = uint32_t(v >> 32); hi != 0) limbs_.push_back(hi);
    }
  }

  static BigUint from_u128(uint128 v) {
    BigUint r;
    while (v != 0) {
      r.limbs_.push_back(uint32_t(v));
      v >>= 32;
    }
    return r;
  }

  static BigUint from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("BigUint: empty decimal string");
    BigUint r;
    std::size_t i = 0;
    while (i < text.size()) {
      uint32_t chunk = 0;
      uint32_t scale = 1;
      std::size_t stop = std::min(i + 9, text.size());
      for (; i < stop; ++i) {
        char c = text[i];
        if (c < '0' || c > '9')
          throw std::invalid_argument("BigUint: invalid decimal digit '" + std::string(1, c) + "'");
        chunk = chunk * 10 + uint32_t(c - '0');
        scale *= 10;
      }
      r.mul_small(scale);
      r.add_small(chunk);
    }
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  std::size_t bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - std::countl_zero(limbs_.back()));
  }

  bool bit(std::size_t i) const {
    std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
  }

  bool fits_u64() const { return limbs_.size() <= 2; }
  uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: value does not fit uint64");
    uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
  }

  bool fits_u128() const { return limbs_.size() <= 4; }
  uint128 to_u128() const {
    if (!fits_u128()) throw std::overflow_error("BigUint: value does not fit uint128");
    uint128 v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::vector<uint32_t> groups;
    while (!tmp.is_zero()) groups.push_back(uint32_t(tmp.div_small_in_place(1000000000u)));
    std::string s = std::to_string(groups.back());
    char buf[16];
    for (std::size_t i = groups.size() - 1; i-- > 0;) {
      std::snprintf(buf, sizeof buf, "%09u", groups[i]);
      s += buf;
    }
    return s;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
  friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
  }

  friend BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint r;
    std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n + 1, 0);
    uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      uint64_t cur = carry + a.limb(i) + b.limb(i);
      r.limbs_[i] = uint32_t(cur);
      carry = cur >> 32;
    }
    r.limbs_[n] = uint32_t(carry);
    r.trim();
    return r;
  }

  friend BigUint operator-(const BigUint& a, const BigUint& b) {
    if (a < b) throw std::underflow_error("BigUint: negative subtraction result");
    BigUint r;
    r.limbs_.resize(a.limbs_.size(), 0);
    int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      int64_t cur = int64_t(a.limb(i)) - int64_t(b.limb(i)) - borrow;
      borrow = cur < 0 ? 1 : 0;
      r.limbs_[i] = uint32_t(cur);
    }
    r.trim();
    return r;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      uint64_t ai = a.limbs_[i];
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = uint64_t(r.limbs_[i + j]) + ai * b.limbs_[j] + carry;
        r.limbs_[i + j] = uint32_t(cur);
        carry = cur >> 32;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry != 0) {
        uint64_t cur = uint64_t(r.limbs_[k]) + carry;
        r.limbs_[k] = uint32_t(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  /// Quotient and remainder in one pass; r < b, q*b + r == a.
  static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b) {
    if (b.is_zero()) throw std::domain_error("BigUint: division by zero");
    if (b.limbs_.size() <= 2) {
      BigUint q = a;
      uint64_t rem = q.div_in_place_u64(b.to_u64());
      return {std::move(q), BigUint(rem)};
    }
    if (a < b) return {BigUint(), a};
    return divmod_knuth(a, b);
  }

  friend BigUint operator/(const BigUint& a, const BigUint& b) { return divmod(a, b).first; }
  friend BigUint operator%(const BigUint& a, const BigUint& b) { return divmod(a, b).second; }

  friend BigUint operator<<(const BigUint& a, std::size_t s) {
    if (a.is_zero() || s == 0) return a;
    std::size_t limb_shift = s / 32, bit_shift = s % 32;
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t cur = uint64_t(a.limbs_[i]) << bit_shift;
      r.limbs_[i + limb_shift] |= uint32_t(cur);
      r.limbs_[i + limb_shift + 1] |= uint32_t(cur >> 32);
    }
    r.trim();
    return r;
  }

  friend BigUint operator>>(const BigUint& a, std::size_t s) {
    if (a.is_zero() || s == 0) return a;
    std::size_t limb_shift = s / 32, bit_shift = s % 32;
    if (limb_shift >= a.limbs_.size()) return BigUint();
    BigUint r;
    r.limbs_.assign(a.limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
      uint64_t cur = a.limbs_[i + limb_shift];
      if (bit_shift != 0) {
        cur >>= bit_shift;
        if (i + limb_shift + 1 < a.limbs_.size())
          cur |= uint64_t(a.limbs_[i + limb_shift + 1]) << (32 - bit_shift);
      }
      r.limbs_[i] = uint32_t(cur);
    }
    r.trim();
    return r;
  }

  BigUint& operator+=(const BigUint& b) { return *this = *this + b; }
  BigUint& operator-=(const BigUint& b) { return *this = *this - b; }
  BigUint& operator*=(const BigUint& b) { return *this = *this * b; }
  BigUint& operator/=(const BigUint& b) { return *this = *this / b; }
  BigUint& operator%=(const BigUint& b) { return *this = *this % b; }
  BigUint& operator<<=(std::size_t s) { return *this = *this << s; }
  BigUint& operator>>=(std::size_t s) { return *this = *this >> s; }

 private:
  std::vector<uint32_t> limbs_;

  uint32_t limb(std::size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  void mul_small(uint32_t f) {
    uint64_t carry = 0;
    for (auto& l : limbs_) {
      uint64_t cur = uint64_t(l) * f + carry;
      l = uint32_t(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(uint32_t(carry));
  }

  void add_small(uint32_t v) {
    uint64_t carry = v;
    for (std::size_t i = 0; carry != 0 && i < limbs_.size(); ++i) {
      uint64_t cur = uint64_t(limbs_[i]) + carry;
      limbs_[i] = uint32_t(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(uint32_t(carry));
  }

  // Divide in place by a 32-bit divisor, returning the remainder.
  uint64_t div_small_in_place(uint32_t d) {
    uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = uint32_t(cur / d);
      rem = cur % d;
    }
    trim();
    return rem;
  }

  // Divide in place by a 64-bit divisor, returning the remainder.
  uint64_t div_in_place_u64(uint64_t d) {
    if (d == 0) throw std::domain_error("BigUint: division by zero");
    if (d <= std::numeric_limits<uint32_t>::max()) return div_small_in_place(uint32_t(d));
    uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      uint128 cur = (uint128(rem) << 32) | limbs_[i];
      limbs_[i] = uint32_t(cur / d);
      rem = uint64_t(cur % d);
    }
    trim();
    return rem;
  }

  // Knuth algorithm D; requires b normalized-capable (>= 3 limbs) and a >= b.
  static std::pair<BigUint, BigUint> divmod_knuth(const BigUint& a, const BigUint& b) {
    const std::size_t n = b.limbs_.size();
    const std::size_t m = a.limbs_.size() - n;
    const unsigned s = std::countl_zero(b.limbs_.back());

    std::vector<uint32_t> v(n);
    for (std::size_t i = n; i-- > 0;) {
      uint64_t cur = uint64_t(b.limbs_[i]) << s;
      if (s != 0 && i > 0) cur |= b.limbs_[i - 1] >> (32 - s);
      v[i] = uint32_t(cur);
    }
    std::vector<uint32_t> u(a.limbs_.size() + 1, 0);
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      uint64_t cur = uint64_t(a.limbs_[i]) << s;
      u[i] |= uint32_t(cur);
      u[i + 1] |= uint32_t(cur >> 32);
    }

    BigUint q;
    q.limbs_.assign(m + 1, 0);
    const uint64_t base = uint64_t(1) << 32;
    for (std::size_t j = m + 1; j-- > 0;) {
      uint64_t num = (uint64_t(u[j + n]) << 32) | u[j + n - 1];
      uint64_t qhat = num / v[n - 1];
      uint64_t rhat = num % v[n - 1];
      while (qhat >= base || qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
        --qhat;
        rhat += v[n - 1];
        if (rhat >= base) break;
      }
      uint64_t carry = 0;
      int64_t borrow = 0;
      for (std::size_t i = 0; i < n; ++i) {
        uint64_t p = qhat * v[i] + carry;
        carry = p >> 32;
        int64_t t = int64_t(u[i + j]) - borrow - int64_t(uint32_t(p));
        u[i + j] = uint32_t(t);
        borrow = t < 0 ? 1 : 0;
      }
      int64_t t = int64_t(u[j + n]) - borrow - int64_t(carry);
      u[j + n] = uint32_t(t);
      if (t < 0) {
        --qhat;
        uint64_t c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          uint64_t cur = uint64_t(u[i + j]) + v[i] + c2;
          u[i + j] = uint32_t(cur);
          c2 = cur >> 32;
        }
        u[j + n] = uint32_t(uint64_t(u[j + n]) + c2);
      }
      q.limbs_[j] = uint32_t(qhat);
    }
    q.trim();

    BigUint r;
    r.limbs_.assign(u.begin(), u.begin() + n);
    r.trim();
    r = r >> s;
    return {std::move(q), std::move(r)};
  }
};

inline BigUint pow(BigUint base, uint64_t exp) {
  BigUint r(1);
  while (exp != 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

/// Largest r with r*r <= n, exact for all inputs.
inline BigUint isqrt(const BigUint& n) {
  if (n <= BigUint(1)) return n;
  BigUint x = BigUint(1) << ((n.bit_length() + 1) / 2);
  for (;;) {
    BigUint y = (x + n / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  return x;
}

inline uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  auto r = uint64_t(std::sqrt(double(n)));
  while (r > 0 && uint128(r) * r > n) --r;
  while (uint128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline uint128 isqrt_u128(uint128 n) {
  if (n <= std::numeric_limits<uint64_t>::max()) return isqrt_u64(uint64_t(n));
  uint128 x = uint128(1) << ((detail::u128_bit_length(n) + 1) / 2);
  for (;;) {
    uint128 y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  return x;
}

}  // namespace pandigital
