#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "pandigital/bigint.hpp"
#include "pandigital/digits.hpp"
#include "pandigital/primality.hpp"

namespace pandigital {

// ---------------------------------------------------------------------------
// Lower bounds for the smallest prime of a family
// ---------------------------------------------------------------------------

/// Which extra digit the bound pattern inserts over the required set. The
/// strict digit sum s makes every shorter member composite; digit-sum s+1
/// works except when the base is 3 mod 4 (s+1 is even there), where the
/// first viable sum is s+2.
enum class BoundRule { SumPlusOne, SumPlusTwo };

inline std::string_view bound_rule_name(BoundRule r) {
  return r == BoundRule::SumPlusOne ? "digit-sum+1" : "digit-sum+2";
}

struct BoundSpec {
  uint32_t base = 0;
  Family family = Family::Pandigital;
  BigUint bound_value;      // value of the bound pattern
  DigitString bound_digits;
  BoundRule rule = BoundRule::SumPlusOne;
  BigUint closed_form_value;       // exact closed form; equals bound_value
  bool simple_form_exact = true;   // naive prefactor divides evenly
  BigUint simple_form_floor;       // floor of the naive prefactor route
  uint64_t simple_form_remainder = 0;  // nonzero marks the non-integral naive form
};

/// Smallest possible prime of the family in base b > 3: the minimal
/// arrangement of the required digits plus one extra 1 (or extra 2 when
/// b = 3 mod 4).
inline BoundSpec lower_bound(uint32_t base, Family family) {
  if (base < 4) throw std::invalid_argument("lower_bound: base must be at least 4");
  BoundSpec spec;
  spec.base = base;
  spec.family = family;
  spec.rule = base % 4 == 3 ? BoundRule::SumPlusTwo : BoundRule::SumPlusOne;
  uint32_t extra = spec.rule == BoundRule::SumPlusTwo ? 2 : 1;

  uint32_t dmin = family_min_digit(family), dmax = family_max_digit(family, base);
  std::vector<uint32_t> digits;
  for (uint32_t d = dmin; d <= dmax; ++d) digits.push_back(d);
  digits.push_back(extra);
  std::sort(digits.begin(), digits.end());
  auto nz = std::find_if(digits.begin(), digits.end(), [](uint32_t d) { return d != 0; });
  std::rotate(digits.begin(), nz, nz + 1);
  spec.bound_digits = DigitString{base, digits};
  spec.bound_value = from_digits<BigUint>(spec.bound_digits);

  // Closed form: lead power + (for the +2 rule) one displaced power +
  // the 123..-style tail constant.
  bool sub = family == Family::Subpandigital || family == Family::Subpenholodigital;
  bool zeroful = family == Family::Pandigital || family == Family::Subpandigital;
  BigUint b(base);
  BigUint bm1sq = BigUint(base - 1) * BigUint(base - 1);
  uint32_t lead_exp = (sub ? base - 1 : base) - (zeroful ? 0 : 1);
  BigUint tail_num = sub ? pow(b, base - 1) - BigUint(uint64_t(base) * base - 2 * base + 2)
                         : pow(b, base) - BigUint(uint64_t(base) * base - base + 1);
  auto [tail, tail_rem] = BigUint::divmod(tail_num, bm1sq);
  if (!tail_rem.is_zero())
    throw std::logic_error("lower_bound: tail constant must divide evenly");
  spec.closed_form_value = pow(b, lead_exp) + tail;
  if (spec.rule == BoundRule::SumPlusTwo)
    spec.closed_form_value += pow(b, sub ? base - 3 : base - 2);
  if (spec.closed_form_value != spec.bound_value)
    throw std::logic_error("lower_bound: closed form disagrees with the digit pattern");

  // The prefactor as usually quoted: exact for the full families, but the
  // sub variants circulate as (b^(b-1) - b)/(b-1)^2, which leaves remainder
  // (b-1)(b-2). Its floor still lands on the true pattern value.
  if (sub) {
    auto [naive_floor, naive_rem] = BigUint::divmod(pow(b, base - 1) - b, bm1sq);
    spec.simple_form_exact = false;
    spec.simple_form_remainder = naive_rem.to_u64();
    spec.simple_form_floor = pow(b, lead_exp) + naive_floor;
    if (spec.rule == BoundRule::SumPlusTwo) spec.simple_form_floor += pow(b, base - 3);
  } else {
    spec.simple_form_exact = true;
    spec.simple_form_remainder = 0;
    spec.simple_form_floor = spec.closed_form_value;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Candidate streams
// ---------------------------------------------------------------------------

struct PruneDecision {
  bool keep = true;
  uint64_t divisor = 0;  // the shared factor with b-1 when dropped
};

/// A digit multiset can be dropped without testing when d = gcd(b-1,
/// digit sum) exceeds 1 and even the smallest arrangement exceeds d:
/// every arrangement is then a multiple of d bigger than d.
inline PruneDecision prune_multiset(uint32_t base, const std::vector<uint32_t>& digits) {
  if (digits.empty()) throw std::invalid_argument("prune_multiset: empty multiset");
  uint64_t sum = std::accumulate(digits.begin(), digits.end(), uint64_t(0));
  uint64_t d = std::gcd(uint64_t(base - 1), sum);
  if (d <= 1) return {true, 0};
  if (digits.size() == 1 && uint64_t(digits[0]) <= d) return {true, 0};
  return {false, d};
}

namespace detail {

/// Non-decreasing digit vector plus the pending (not yet emitted)
/// arrangement of it.
struct MultisetCursor {
  std::vector<uint32_t> multiset;     // sorted ascending
  std::vector<uint32_t> arrangement;  // next value to emit
};

/// Smallest arrangement without a leading zero; empty if none exists
/// (all digits zero).
inline std::optional<std::vector<uint32_t>> initial_arrangement(
    std::vector<uint32_t> sorted_digits) {
  if (sorted_digits.front() == 0) {
    auto nz = std::find_if(sorted_digits.begin(), sorted_digits.end(),
                           [](uint32_t d) { return d != 0; });
    if (nz == sorted_digits.end()) return std::nullopt;
    std::swap(sorted_digits.front(), *nz);
  }
  return sorted_digits;
}

/// All digit multisets of size k for the family: the required digits once
/// each plus extras drawn (non-decreasing) from the allowed range.
inline std::vector<std::vector<uint32_t>> multisets_for(uint32_t base, Family family,
                                                        uint32_t k) {
  uint32_t dmin = family_min_digit(family), dmax = family_max_digit(family, base);
  uint32_t required = dmax - dmin + 1;
  if (k < required) throw std::invalid_argument("multisets_for: fewer digits than required");
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> extras(k - required, dmin);
  for (;;) {
    std::vector<uint32_t> m;
    for (uint32_t d = dmin; d <= dmax; ++d) m.push_back(d);
    m.insert(m.end(), extras.begin(), extras.end());
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
    // next non-decreasing extras vector
    std::size_t i = extras.size();
    while (i > 0 && extras[i - 1] == dmax) --i;
    if (i == 0) break;
    uint32_t v = extras[i - 1] + 1;
    for (std::size_t j = i - 1; j < extras.size(); ++j) extras[j] = v;
  }
  return out;
}

}  // namespace detail

/// Merged ascending stream of k-digit loose members, one lexicographic
/// permutation walk per digit multiset, k-way merged by value.
template <class UInt>
class CandidateStream {
 public:
  CandidateStream(uint32_t base, Family family, uint32_t k)
      : CandidateStream(base, from_multisets(detail::multisets_for(base, family, k))) {}

  CandidateStream(uint32_t base, std::vector<detail::MultisetCursor> cursors)
      : base_(base), cursors_(std::move(cursors)) {
    for (std::size_t i = 0; i < cursors_.size(); ++i)
      heap_.push_back({value_of(cursors_[i].arrangement), i});
    std::make_heap(heap_.begin(), heap_.end(), ByValueDesc{});
  }

  /// Next candidate in ascending order, or nothing when exhausted.
  std::optional<UInt> next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), ByValueDesc{});
    auto [value, idx] = heap_.back();
    heap_.pop_back();
    auto& arr = cursors_[idx].arrangement;
    if (std::next_permutation(arr.begin(), arr.end()))
      {
        heap_.push_back({value_of(arr), idx});
        std::push_heap(heap_.begin(), heap_.end(), ByValueDesc{});
      }
    else
      exhausted_.push_back(idx);
    return value;
  }

  bool empty() const { return heap_.empty(); }

  /// Pending cursors (multiset plus next arrangement), in multiset order;
  /// exactly what a resumed stream needs.
  std::vector<detail::MultisetCursor> pending() const {
    std::vector<detail::MultisetCursor> out;
    std::vector<std::size_t> idx;
    for (const auto& h : heap_) idx.push_back(h.second);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back(cursors_[i]);
    return out;
  }

  static std::vector<detail::MultisetCursor> from_multisets(
      std::vector<std::vector<uint32_t>> multisets) {
    std::vector<detail::MultisetCursor> cursors;
    for (auto& m : multisets) {
      auto arr = detail::initial_arrangement(m);
      if (arr) cursors.push_back({std::move(m), std::move(*arr)});
    }
    return cursors;
  }

 private:
  using HeapEntry = std::pair<UInt, std::size_t>;
  struct ByValueDesc {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const { return b.first < a.first; }
  };

  UInt value_of(const std::vector<uint32_t>& arr) const {
    UInt v(0);
    for (uint32_t d : arr) v = v * UInt(base_) + UInt(d);
    return v;
  }

  uint32_t base_;
  std::vector<detail::MultisetCursor> cursors_;
  std::vector<HeapEntry> heap_;
  std::vector<std::size_t> exhausted_;
};

// ---------------------------------------------------------------------------
// Smallest-prime search
// ---------------------------------------------------------------------------

struct SearchOptions {
  uint64_t budget = 100000000;  // primality tests before giving up
  unsigned jobs = 1;
  unsigned batch = 64;  // per-job candidates per parallel round
};

struct SearchReport {
  uint32_t base = 0;
  Family family = Family::Pandigital;
  BigUint prime;
  DigitString digits;
  uint64_t prime_digit_sum = 0;
  uint32_t digit_length = 0;
  PrimalityVerdict verdict;
  uint64_t candidates_tested = 0;  // 1-based position of the prime in the stream
  uint64_t multisets_pruned = 0;
};

/// Everything needed to pick an interrupted search back up.
struct SearchState {
  uint32_t version = 1;
  uint32_t base = 0;
  Family family = Family::Pandigital;
  uint32_t k = 0;  // digit length being searched
  uint64_t candidates_tested = 0;
  uint64_t multisets_pruned = 0;
  std::vector<detail::MultisetCursor> cursors;
};

struct SearchBudgetExhausted : std::runtime_error {
  SearchState state;
  explicit SearchBudgetExhausted(SearchState s)
      : std::runtime_error("prime search stopped after " +
                           std::to_string(s.candidates_tested) +
                           " tests with digit length " + std::to_string(s.k) +
                           " unfinished"),
        state(std::move(s)) {}
};

namespace detail {

enum class KOutcome { Found, Exhausted, Budget };

template <class UInt>
PrimalityVerdict test_candidate(const UInt& v) {
  return is_prime(v);
}

template <class UInt>
KOutcome run_digit_length(uint32_t base, Family family, uint32_t k,
                          std::vector<MultisetCursor> cursors, uint64_t& tested,
                          uint64_t pruned, const SearchOptions& opt, SearchReport& out,
                          SearchState& state_out) {
  CandidateStream<UInt> stream(base, std::move(cursors));
  auto capture = [&] {
    state_out = SearchState{1, base, family, k, tested, pruned, stream.pending()};
  };
  auto report = [&](const UInt& v, PrimalityVerdict verdict) {
    out.base = base;
    out.family = family;
    out.prime = to_biguint(v);
    out.digits = to_digits(out.prime, base);
    out.prime_digit_sum = digit_sum(out.digits);
    out.digit_length = uint32_t(out.digits.digits.size());
    out.verdict = verdict;
    out.candidates_tested = tested;
    out.multisets_pruned = pruned;
  };

  const unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    for (;;) {
      if (stream.empty()) return KOutcome::Exhausted;
      if (tested == opt.budget) {
        capture();
        return KOutcome::Budget;
      }
      UInt v = *stream.next();
      ++tested;
      PrimalityVerdict verdict = test_candidate(v);
      if (verdict.classification != PrimeClass::Composite) {
        report(v, verdict);
        return KOutcome::Found;
      }
    }
  }

  std::vector<UInt> batch;
  std::vector<PrimalityVerdict> verdicts;
  for (;;) {
    if (stream.empty()) return KOutcome::Exhausted;
    if (tested == opt.budget) {
      capture();
      return KOutcome::Budget;
    }
    batch.clear();
    uint64_t want = std::min<uint64_t>(uint64_t(jobs) * opt.batch, opt.budget - tested);
    while (batch.size() < want) {
      auto v = stream.next();
      if (!v) break;
      batch.push_back(*v);
    }
    verdicts.assign(batch.size(), {});
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, batch.size()); ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < batch.size(); i += jobs)
          verdicts[i] = test_candidate(batch[i]);
      });
    for (auto& th : pool) th.join();
    // earliest prime wins; counters stay batch-size independent
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (verdicts[i].classification != PrimeClass::Composite) {
        tested += i + 1;
        report(batch[i], verdicts[i]);
        return KOutcome::Found;
      }
    }
    tested += batch.size();
  }
}

inline SearchReport run_search(uint32_t base, Family family, uint32_t k_start,
                               std::optional<SearchState> resume, const SearchOptions& opt) {
  bool sub = family == Family::Subpandigital || family == Family::Subpenholodigital;
  if (base < (sub ? 3u : 2u))
    throw std::invalid_argument("prime search: base too small for this family");

  uint64_t tested = resume ? resume->candidates_tested : 0;
  uint64_t pruned = resume ? resume->multisets_pruned : 0;
  SearchReport out;
  SearchState state;
  for (uint32_t k = resume ? resume->k : k_start;; ++k) {
    std::vector<MultisetCursor> cursors;
    if (resume && k == resume->k) {
      cursors = std::move(resume->cursors);
    } else {
      for (auto& m : multisets_for(base, family, k)) {
        auto pd = prune_multiset(base, m);
        if (!pd.keep) {
          ++pruned;
          continue;
        }
        auto arr = initial_arrangement(m);
        if (arr) cursors.push_back({std::move(m), std::move(*arr)});
      }
    }
    BigUint cap = pow(BigUint(base), k);
    KOutcome res;
    if (cap.fits_u64())
      res = run_digit_length<uint64_t>(base, family, k, std::move(cursors), tested, pruned,
                                       opt, out, state);
    else if (cap.fits_u128())
      res = run_digit_length<uint128>(base, family, k, std::move(cursors), tested, pruned,
                                      opt, out, state);
    else
      res = run_digit_length<BigUint>(base, family, k, std::move(cursors), tested, pruned,
                                      opt, out, state);
    if (res == KOutcome::Found) return out;
    if (res == KOutcome::Budget) throw SearchBudgetExhausted(std::move(state));
  }
}

}  // namespace detail

/// Smallest prime with the family's digit content, scanning digit lengths
/// from the required-set size upward with multiset pruning. Throws
/// SearchBudgetExhausted (carrying a resumable state) past the budget.
inline SearchReport smallest_prime(uint32_t base, Family family,
                                   const SearchOptions& opt = {}) {
  uint32_t k0 = family_max_digit(family, base) - family_min_digit(family) + 1;
  return detail::run_search(base, family, k0, std::nullopt, opt);
}

/// Continue a search from a captured state.
inline SearchReport resume_search(SearchState state, const SearchOptions& opt = {}) {
  if (state.version != 1)
    throw std::invalid_argument("resume_search: unsupported state version");
  uint32_t base = state.base;
  Family family = state.family;
  return detail::run_search(base, family, state.k, std::move(state), opt);
}

// ---------------------------------------------------------------------------
// Digit-sum conjecture report
// ---------------------------------------------------------------------------

struct ConjectureSumRow {
  uint32_t base = 0;
  BigUint prime;
  DigitString digits;
  uint64_t found_sum = 0;
  uint64_t predicted_sum = 0;
  bool match = false;
};

/// Digit sums of the smallest primes against the predicted
/// strict-sum-plus-increment pattern. Reported, never asserted.
inline std::vector<ConjectureSumRow> conjecture_digit_sum_report(
    Family family, uint32_t lo, uint32_t hi, const SearchOptions& opt = {}) {
  if (lo < 4 || hi < lo)
    throw std::invalid_argument("conjecture_digit_sum_report: need 4 <= lo <= hi");
  std::vector<ConjectureSumRow> rows;
  for (uint32_t b = lo; b <= hi; ++b) {
    SearchReport rep = smallest_prime(b, family, opt);
    ConjectureSumRow row;
    row.base = b;
    row.prime = rep.prime;
    row.digits = rep.digits;
    row.found_sum = rep.prime_digit_sum;
    row.predicted_sum = strict_digit_sum(family, b) + (b % 4 == 3 ? 2 : 1);
    row.match = row.found_sum == row.predicted_sum;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pandigital
