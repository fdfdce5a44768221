#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pandigital/bigint.hpp"

namespace pandigital {

struct BfileEntry {
  int64_t index = 0;
  BigUint value;
  friend bool operator==(const BfileEntry&, const BfileEntry&) = default;
};

/// A parsed OEIS b-file: strictly increasing indices, nonnegative values.
struct BfileSeq {
  std::string sequence_id;
  std::vector<BfileEntry> entries;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline int64_t parse_index(std::string_view tok, std::size_t lineno) {
  bool neg = !tok.empty() && tok.front() == '-';
  std::string_view body = neg ? tok.substr(1) : tok;
  if (body.empty() || body.size() > 18)
    throw std::invalid_argument("b-file line " + std::to_string(lineno) +
                                ": bad index '" + std::string(tok) + "'");
  int64_t v = 0;
  for (char c : body) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("b-file line " + std::to_string(lineno) +
                                  ": bad index '" + std::string(tok) + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

}  // namespace detail

/// Parse b-file text: one "index value" pair per line, '#' comments and
/// blank lines ignored. Malformed input reports the 1-based line number.
inline BfileSeq parse_bfile(std::string_view text, std::string sequence_id) {
  BfileSeq seq;
  seq.sequence_id = std::move(sequence_id);
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? text.size() - pos
                                                 : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks.front().front() == '#') continue;
    if (toks.size() != 2)
      throw std::invalid_argument("b-file line " + std::to_string(lineno) +
                                  ": expected 'index value'");
    BfileEntry e;
    e.index = detail::parse_index(toks[0], lineno);
    if (!seq.entries.empty() && e.index <= seq.entries.back().index)
      throw std::invalid_argument("b-file line " + std::to_string(lineno) +
                                  ": index does not increase");
    try {
      e.value = BigUint::from_decimal(toks[1]);
    } catch (const std::exception&) {
      throw std::invalid_argument("b-file line " + std::to_string(lineno) +
                                  ": bad value '" + std::string(toks[1]) + "'");
    }
    seq.entries.push_back(std::move(e));
  }
  return seq;
}

inline std::string serialize_bfile(const BfileSeq& seq) {
  std::string out;
  for (const auto& e : seq.entries) {
    out += std::to_string(e.index);
    out += ' ';
    out += e.value.to_decimal();
    out += '\n';
  }
  return out;
}

struct CompareRow {
  int64_t index = 0;
  std::optional<BigUint> computed;   // missing when only the reference has it
  std::optional<BigUint> reference;  // missing when only the computed side has it
  bool match = false;
};

struct CompareReport {
  std::string sequence_id;
  int64_t first_index = 0;  // intersection of the two index ranges
  int64_t last_index = 0;
  uint64_t compared = 0;
  uint64_t matched = 0;
  std::vector<CompareRow> mismatches;
  bool all_match = false;
};

/// Per-index diff over the intersection of the two index ranges. An index
/// present on only one side inside that window counts as a mismatch.
inline CompareReport compare(const std::vector<BfileEntry>& computed,
                             const BfileSeq& reference) {
  if (computed.empty() || reference.entries.empty())
    throw std::invalid_argument("compare: both sequences must be nonempty");
  for (std::size_t i = 1; i < computed.size(); ++i)
    if (computed[i].index <= computed[i - 1].index)
      throw std::invalid_argument("compare: computed indices must increase");
  for (std::size_t i = 1; i < reference.entries.size(); ++i)
    if (reference.entries[i].index <= reference.entries[i - 1].index)
      throw std::invalid_argument("compare: reference indices must increase");

  CompareReport rep;
  rep.sequence_id = reference.sequence_id;
  rep.first_index = std::max(computed.front().index, reference.entries.front().index);
  rep.last_index = std::min(computed.back().index, reference.entries.back().index);
  if (rep.first_index > rep.last_index)
    throw std::invalid_argument("compare: index ranges do not overlap");

  std::size_t a = 0, b = 0;
  while (a < computed.size() || b < reference.entries.size()) {
    int64_t ia = a < computed.size() ? computed[a].index : INT64_MAX;
    int64_t ib = b < reference.entries.size() ? reference.entries[b].index : INT64_MAX;
    int64_t idx = std::min(ia, ib);
    if (idx == INT64_MAX) break;
    CompareRow row;
    row.index = idx;
    if (ia == idx) row.computed = computed[a++].value;
    if (ib == idx) row.reference = reference.entries[b++].value;
    if (idx < rep.first_index || idx > rep.last_index) continue;
    row.match = row.computed && row.reference && *row.computed == *row.reference;
    ++rep.compared;
    if (row.match)
      ++rep.matched;
    else
      rep.mismatches.push_back(std::move(row));
  }
  rep.all_match = rep.mismatches.empty();
  return rep;
}

}  // namespace pandigital
