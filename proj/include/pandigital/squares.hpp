#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "pandigital/bigint.hpp"
#include "pandigital/digits.hpp"
#include "pandigital/residues.hpp"

namespace pandigital {

struct ScanOptions {
  bool residue_filter = true;    // skip roots outside A_b mod b-1
  bool shortcircuit_empty = true;  // A_b empty: return without iterating
  uint64_t budget = 2000000000;  // max digit checks (or iterations, unfiltered)
  unsigned jobs = 1;
  uint64_t chunk = 1u << 18;  // roots per work unit; fixed => jobs never affect output
};

struct SquareScanResult {
  uint32_t base = 0;
  Family family = Family::Pandigital;
  std::vector<uint64_t> roots;  // ascending
  uint64_t count = 0;           // roots.size()
  uint64_t scanned = 0;         // roots that reached the digit check
  BigUint filtered;             // roots the residue filter (or short circuit) excluded
};

struct ScanBudgetExceeded : std::runtime_error {
  BigUint estimated;
  uint64_t budget;
  ScanBudgetExceeded(BigUint est, uint64_t bud)
      : std::runtime_error("square scan needs about " + est.to_decimal() +
                           " digit checks, over the budget of " + std::to_string(bud)),
        estimated(std::move(est)),
        budget(bud) {}
};

/// Smallest and largest strict member of the family, as values.
inline std::pair<BigUint, BigUint> strict_value_range(uint32_t base, Family family) {
  bool sub = family == Family::Subpandigital || family == Family::Subpenholodigital;
  if (base < (sub ? 3u : 2u))
    throw std::invalid_argument("strict_value_range: base too small for this family");
  uint32_t dmin = family_min_digit(family), dmax = family_max_digit(family, base);
  DigitString lo{base, {}}, hi{base, {}};
  for (uint32_t d = dmin; d <= dmax; ++d) lo.digits.push_back(d);
  if (lo.digits.size() >= 2 && lo.digits[0] == 0) std::swap(lo.digits[0], lo.digits[1]);
  for (uint32_t d = dmax + 1; d-- > dmin;) hi.digits.push_back(d);
  return {from_digits<BigUint>(lo), from_digits<BigUint>(hi)};
}

namespace detail {

/// True when v is a strict family member: every digit in [dmin, dmin+len)
/// exactly once and nothing else. full_mask == (1 << len) - 1.
template <class UInt>
bool strict_digit_check(UInt v, uint32_t base, uint32_t dmin, uint64_t full_mask) {
  uint64_t seen = 0;
  while (v != 0) {
    uint32_t d = uint32_t(v % base);
    v /= base;
    if (d < dmin) return false;
    uint64_t bit = uint64_t(1) << (d - dmin);
    if ((bit & ~full_mask) != 0 || (seen & bit) != 0) return false;
    seen |= bit;
  }
  return seen == full_mask;
}

struct ScanChunk {
  std::vector<uint64_t> roots;
  uint64_t scanned = 0;
  uint64_t filtered = 0;
};

template <class UInt>
void scan_chunk(uint64_t r0, uint64_t r1, uint32_t base, uint32_t dmin, uint64_t full_mask,
                const std::vector<uint8_t>& residue_ok, ScanChunk& out) {
  const uint32_t mod = base - 1;
  const bool filtering = !residue_ok.empty();
  uint32_t res = uint32_t(r0 % mod);
  for (uint64_t r = r0;; ++r) {
    if (!filtering || residue_ok[res]) {
      ++out.scanned;
      UInt v = UInt(r) * UInt(r);
      if (strict_digit_check(v, base, dmin, full_mask)) out.roots.push_back(r);
    } else {
      ++out.filtered;
    }
    if (r == r1) break;
    if (++res == mod) res = 0;
  }
}

template <class UInt>
void scan_root_range(uint64_t rlo, uint64_t rhi, uint32_t base, uint32_t dmin,
                     uint64_t full_mask, const std::vector<uint8_t>& residue_ok,
                     const ScanOptions& opt, SquareScanResult& res) {
  const uint64_t width = rhi - rlo + 1;
  const uint64_t chunk = opt.chunk == 0 ? width : opt.chunk;
  const uint64_t nchunks = (width + chunk - 1) / chunk;
  std::vector<ScanChunk> chunks(nchunks);

  auto run = [&](uint64_t c) {
    uint64_t r0 = rlo + c * chunk;
    uint64_t r1 = c + 1 == nchunks ? rhi : r0 + chunk - 1;
    scan_chunk<UInt>(r0, r1, base, dmin, full_mask, residue_ok, chunks[c]);
  };

  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1 || nchunks == 1) {
    for (uint64_t c = 0; c < nchunks; ++c) run(c);
  } else {
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        uint64_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        run(c);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<uint64_t>(jobs, nchunks); ++t)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& c : chunks) {
    res.roots.insert(res.roots.end(), c.roots.begin(), c.roots.end());
    res.scanned += c.scanned;
    res.filtered += BigUint(c.filtered);
  }
  res.count = res.roots.size();
}

}  // namespace detail

/// All strict squares of the family in base b, by scanning the root
/// interval of the strict value range with the residue-class filter.
inline SquareScanResult enumerate_strict_squares(uint32_t base, Family family,
                                                 const ScanOptions& opt = {}) {
  if (base > 64)
    throw std::invalid_argument("enumerate_strict_squares: bases above 64 are unsupported");
  auto [lo, hi] = strict_value_range(base, family);

  SquareScanResult res;
  res.base = base;
  res.family = family;

  BigUint rlo_big = lo.is_zero() ? BigUint(0) : isqrt(lo - BigUint(1)) + BigUint(1);
  BigUint rhi_big = isqrt(hi);
  if (rlo_big > rhi_big) return res;
  BigUint width = rhi_big - rlo_big + BigUint(1);

  const bool filtering = opt.residue_filter && base >= 3;
  std::vector<uint32_t> allowed;
  if (filtering) allowed = aset(base).members;

  // Projected digit checks; with the filter on, only |A_b| residue
  // classes out of b-1 survive. An all-rejecting filter still has to
  // iterate, so it is costed like an unfiltered pass over the range.
  BigUint cost;
  if (!filtering)
    cost = width;
  else if (allowed.empty())
    cost = opt.shortcircuit_empty ? BigUint(0) : width;
  else
    cost = (width * BigUint(allowed.size()) + BigUint(base - 2)) / BigUint(base - 1);
  if (cost > BigUint(opt.budget)) throw ScanBudgetExceeded(cost, opt.budget);

  if (filtering && allowed.empty() && opt.shortcircuit_empty) {
    res.filtered = width;
    return res;
  }

  std::vector<uint8_t> residue_ok;
  if (filtering) {
    residue_ok.assign(base - 1, 0);
    for (uint32_t m : allowed) residue_ok[m] = 1;
  }

  uint64_t rlo = rlo_big.to_u64();
  uint64_t rhi = rhi_big.to_u64();
  uint32_t dmin = family_min_digit(family);
  uint32_t len = family_max_digit(family, base) - dmin + 1;
  uint64_t full_mask = len >= 64 ? ~uint64_t(0) : (uint64_t(1) << len) - 1;

  res.filtered = BigUint(0);
  if (hi.fits_u64())
    detail::scan_root_range<uint64_t>(rlo, rhi, base, dmin, full_mask, residue_ok, opt, res);
  else
    detail::scan_root_range<uint128>(rlo, rhi, base, dmin, full_mask, residue_ok, opt, res);
  return res;
}

inline uint64_t count_strict_squares(uint32_t base, Family family, const ScanOptions& opt = {}) {
  return enumerate_strict_squares(base, family, opt).count;
}

/// Existence of strict squares versus the "even base or odd valuation"
/// prediction, for the pandigital/penholodigital pair (sub == false) or
/// the sub pair (sub == true). Mismatches are reported, never asserted.
struct ExistenceRow {
  uint32_t base = 0;
  bool first_exists = false;   // pandigital or subpandigital
  bool second_exists = false;  // penholodigital or subpenholodigital
  bool predicted = false;
  bool match = false;
};

inline std::vector<ExistenceRow> square_existence_report(bool sub, uint32_t lo, uint32_t hi,
                                                         const ScanOptions& opt = {}) {
  if (lo < 3 || hi < lo)
    throw std::invalid_argument("square_existence_report: need 3 <= lo <= hi");
  std::vector<ExistenceRow> rows;
  for (uint32_t b = lo; b <= hi; ++b) {
    ExistenceRow row;
    row.base = b;
    row.first_exists =
        count_strict_squares(b, sub ? Family::Subpandigital : Family::Pandigital, opt) > 0;
    row.second_exists =
        count_strict_squares(b, sub ? Family::Subpenholodigital : Family::Penholodigital, opt) >
        0;
    row.predicted = b % 2 == 0 || two_adic_valuation(b - 1) % 2 == 1;
    row.match = row.first_exists == row.predicted && row.second_exists == row.predicted;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pandigital
