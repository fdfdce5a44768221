#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "pandigital/bigint.hpp"

namespace pandigital {

/// The four digit-content families. "Sub" variants exclude the top digit
/// b-1; "penholodigital" variants exclude 0.
enum class Family {
  Pandigital,
  Penholodigital,
  Subpandigital,
  Subpenholodigital,
};

inline constexpr Family kAllFamilies[] = {
    Family::Pandigital,
    Family::Penholodigital,
    Family::Subpandigital,
    Family::Subpenholodigital,
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Pandigital: return "pandigital";
    case Family::Penholodigital: return "penholodigital";
    case Family::Subpandigital: return "subpandigital";
    case Family::Subpenholodigital: return "subpenholodigital";
  }
  throw std::invalid_argument("unknown family");
}

inline std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  return std::nullopt;
}

/// Smallest digit a member may contain: 0 for the pandigital families,
/// 1 for the zero-free ones.
inline uint32_t family_min_digit(Family f) {
  return (f == Family::Penholodigital || f == Family::Subpenholodigital) ? 1 : 0;
}

/// Largest digit a member may contain in base b.
inline uint32_t family_max_digit(Family f, uint32_t base) {
  bool sub = f == Family::Subpandigital || f == Family::Subpenholodigital;
  return sub ? base - 2 : base - 1;
}

/// A family is defined in base b when its required digit set is nonempty.
inline bool family_defined(Family f, uint32_t base) {
  if (base < 2) return false;
  return family_max_digit(f, base) >= family_min_digit(f) &&
         family_max_digit(f, base) < base;
}

/// Digits every member must contain at least once (a contiguous range).
inline std::vector<uint32_t> required_digits(Family f, uint32_t base) {
  std::vector<uint32_t> r;
  for (uint32_t d = family_min_digit(f); d <= family_max_digit(f, base); ++d)
    r.push_back(d);
  return r;
}

/// Sum of the required digits, i.e. the digit sum of any strict member.
inline uint64_t strict_digit_sum(Family f, uint32_t base) {
  uint64_t lo = family_min_digit(f), hi = family_max_digit(f, base);
  return (hi * (hi + 1) - lo * (lo - 1)) / 2;
}

struct DigitClass {
  Family family;
  bool strict;
  friend bool operator==(const DigitClass&, const DigitClass&) = default;
};

/// Positional representation, most significant digit first, no leading
/// zeros except the single-digit zero itself.
struct DigitString {
  uint32_t base = 10;
  std::vector<uint32_t> digits;
  friend bool operator==(const DigitString&, const DigitString&) = default;
};

inline void validate(const DigitString& ds) {
  if (ds.base < 2) throw std::invalid_argument("digit string: base must be at least 2");
  if (ds.digits.empty()) throw std::invalid_argument("digit string: no digits");
  if (ds.digits.size() > 1 && ds.digits.front() == 0)
    throw std::invalid_argument("digit string: leading zero");
  for (uint32_t d : ds.digits)
    if (d >= ds.base)
      throw std::invalid_argument("digit string: digit " + std::to_string(d) +
                                  " out of range for base " + std::to_string(ds.base));
}

template <class UInt>
DigitString to_digits(UInt n, uint32_t base) {
  if (base < 2) throw std::invalid_argument("to_digits: base must be at least 2");
  DigitString ds;
  ds.base = base;
  if constexpr (std::is_same_v<UInt, BigUint>) {
    if (n.is_zero()) {
      ds.digits.push_back(0);
      return ds;
    }
    auto rest = n;
    BigUint b(base);
    while (!rest.is_zero()) {
      auto [q, r] = BigUint::divmod(rest, b);
      ds.digits.push_back(uint32_t(r.to_u64()));
      rest = std::move(q);
    }
  } else {
    if (n == 0) {
      ds.digits.push_back(0);
      return ds;
    }
    while (n != 0) {
      ds.digits.push_back(uint32_t(n % base));
      n /= base;
    }
  }
  std::reverse(ds.digits.begin(), ds.digits.end());
  return ds;
}

template <class UInt>
UInt from_digits(const DigitString& ds) {
  validate(ds);
  if constexpr (std::is_same_v<UInt, BigUint>) {
    BigUint v;
    BigUint b(ds.base);
    for (uint32_t d : ds.digits) v = v * b + BigUint(d);
    return v;
  } else {
    UInt v = 0;
    const UInt max = std::numeric_limits<UInt>::max();
    for (uint32_t d : ds.digits) {
      if (v > (max - d) / ds.base)
        throw std::overflow_error("from_digits: value does not fit the requested type");
      v = v * ds.base + d;
    }
    return v;
  }
}

inline uint64_t digit_sum(const DigitString& ds) {
  validate(ds);
  uint64_t s = 0;
  for (uint32_t d : ds.digits) s += d;
  return s;
}

/// All family labels the digit string satisfies, strict before loose
/// within each family, families in declaration order.
inline std::vector<DigitClass> classify(const DigitString& ds) {
  validate(ds);
  std::vector<uint32_t> count(ds.base, 0);
  for (uint32_t d : ds.digits) ++count[d];
  std::vector<DigitClass> out;
  for (Family f : kAllFamilies) {
    if (!family_defined(f, ds.base)) continue;
    uint32_t lo = family_min_digit(f), hi = family_max_digit(f, ds.base);
    bool ok = true;
    for (uint32_t d = 0; d < ds.base && ok; ++d) {
      if (d >= lo && d <= hi)
        ok = count[d] >= 1;
      else
        ok = count[d] == 0;
    }
    if (!ok) continue;
    if (ds.digits.size() == std::size_t(hi - lo + 1)) out.push_back({f, true});
    out.push_back({f, false});
  }
  return out;
}

enum class DigitNotation {
  Alphanumeric,  // 0-9 then a-z, bases up to 36
  Dotted,        // decimal digit values joined by '.'
};

inline constexpr std::string_view kDigitAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

inline std::string render(const DigitString& ds, DigitNotation mode) {
  validate(ds);
  std::string s;
  if (mode == DigitNotation::Alphanumeric) {
    for (uint32_t d : ds.digits) {
      if (d >= kDigitAlphabet.size())
        throw std::invalid_argument("render: digit too large for alphanumeric notation");
      s.push_back(kDigitAlphabet[d]);
    }
  } else {
    for (std::size_t i = 0; i < ds.digits.size(); ++i) {
      if (i != 0) s.push_back('.');
      s += std::to_string(ds.digits[i]);
    }
  }
  return s;
}

inline std::string render(const DigitString& ds) {
  return render(ds, ds.base <= 36 ? DigitNotation::Alphanumeric : DigitNotation::Dotted);
}

/// Inverse of render. Dotted notation is detected by a '.' separator;
/// bases above 36 accept only dotted (a lone number is one digit).
inline DigitString parse_digits(std::string_view text, uint32_t base) {
  if (base < 2) throw std::invalid_argument("parse_digits: base must be at least 2");
  if (text.empty()) throw std::invalid_argument("parse_digits: empty input");
  DigitString ds;
  ds.base = base;
  bool dotted = text.find('.') != std::string_view::npos || base > 36;
  if (dotted) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
      if (tok.empty()) throw std::invalid_argument("parse_digits: empty digit token");
      uint64_t v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9')
          throw std::invalid_argument("parse_digits: invalid character in digit token");
        v = v * 10 + uint64_t(c - '0');
        if (v >= base) throw std::invalid_argument("parse_digits: digit out of range");
      }
      ds.digits.push_back(uint32_t(v));
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  } else {
    for (char c : text) {
      uint32_t d;
      if (c >= '0' && c <= '9')
        d = uint32_t(c - '0');
      else if (c >= 'a' && c <= 'z')
        d = uint32_t(c - 'a') + 10;
      else if (c >= 'A' && c <= 'Z')
        d = uint32_t(c - 'A') + 10;
      else
        throw std::invalid_argument("parse_digits: invalid character");
      if (d >= base) throw std::invalid_argument("parse_digits: digit out of range");
      ds.digits.push_back(d);
    }
  }
  validate(ds);
  return ds;
}

}  // namespace pandigital
