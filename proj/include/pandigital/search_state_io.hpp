#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pandigital/search.hpp"

namespace pandigital {

inline nlohmann::json search_state_to_json(const SearchState& s) {
  nlohmann::json cursors = nlohmann::json::array();
  for (const auto& c : s.cursors)
    cursors.push_back({{"multiset", c.multiset}, {"arrangement", c.arrangement}});
  return nlohmann::json{{"version", s.version},
                        {"base", s.base},
                        {"family", std::string(family_name(s.family))},
                        {"digit_length", s.k},
                        {"candidates_tested", s.candidates_tested},
                        {"multisets_pruned", s.multisets_pruned},
                        {"cursors", std::move(cursors)}};
}

inline SearchState search_state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("search state: not a JSON object");
  for (const char* key : {"version", "base", "family", "digit_length", "candidates_tested",
                          "multisets_pruned", "cursors"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("search state: missing field ") + key);
  SearchState s;
  s.version = j.at("version").get<uint32_t>();
  if (s.version != 1)
    throw std::invalid_argument("search state: unsupported version " +
                                std::to_string(s.version));
  s.base = j.at("base").get<uint32_t>();
  if (s.base < 2) throw std::invalid_argument("search state: base must be at least 2");
  auto fam = family_from_name(j.at("family").get<std::string>());
  if (!fam) throw std::invalid_argument("search state: unknown family name");
  s.family = *fam;
  s.k = j.at("digit_length").get<uint32_t>();
  s.candidates_tested = j.at("candidates_tested").get<uint64_t>();
  s.multisets_pruned = j.at("multisets_pruned").get<uint64_t>();
  for (const auto& jc : j.at("cursors")) {
    detail::MultisetCursor c;
    c.multiset = jc.at("multiset").get<std::vector<uint32_t>>();
    c.arrangement = jc.at("arrangement").get<std::vector<uint32_t>>();
    if (c.multiset.size() != s.k || c.arrangement.size() != s.k)
      throw std::invalid_argument("search state: cursor size disagrees with digit_length");
    if (!std::is_sorted(c.multiset.begin(), c.multiset.end()))
      throw std::invalid_argument("search state: multiset must be sorted");
    auto sorted = c.arrangement;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != c.multiset)
      throw std::invalid_argument("search state: arrangement is not a permutation of its multiset");
    if (c.arrangement.front() == 0)
      throw std::invalid_argument("search state: arrangement has a leading zero");
    for (uint32_t d : c.multiset)
      if (d >= s.base) throw std::invalid_argument("search state: digit out of range");
    s.cursors.push_back(std::move(c));
  }
  return s;
}

inline std::string serialize_search_state(const SearchState& s) {
  return search_state_to_json(s).dump(2) + "\n";
}

inline SearchState parse_search_state(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("search state: invalid JSON");
  return search_state_from_json(j);
}

}  // namespace pandigital
