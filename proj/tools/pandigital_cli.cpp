// Command-line front end: classification, residue sets, square scans,
// smallest-prime searches, lower bounds, conjecture reports, and OEIS
// b-file cross-checks, with plain, JSON, and CSV output.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pandigital/pandigital.hpp"
#include "pandigital/search_state_io.hpp"

using nlohmann::json;
using namespace pandigital;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitBudget = 3;

enum class Format { Plain, Json, Csv };

const std::map<std::string, Format> kFormatMap = {
    {"plain", Format::Plain}, {"json", Format::Json}, {"csv", Format::Csv}};

const std::map<std::string, Family> kFamilyMap = {
    {"pandigital", Family::Pandigital},
    {"penholodigital", Family::Penholodigital},
    {"subpandigital", Family::Subpandigital},
    {"subpenholodigital", Family::Subpenholodigital}};

unsigned env_jobs() {
  const char* s = std::getenv("PANDIGITAL_JOBS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end && !*end && v >= 1 && v <= 4096) return unsigned(v);
  return 1;
}

struct BaseRange {
  uint32_t lo = 0, hi = 0;
};

BaseRange parse_base_range(const std::string& text) {
  auto sep = text.find("..");
  if (sep == std::string::npos)
    throw std::invalid_argument("--bases expects LO..HI, got '" + text + "'");
  BaseRange r;
  try {
    std::size_t used = 0;
    r.lo = uint32_t(std::stoul(text.substr(0, sep), &used));
    if (used != sep) throw std::invalid_argument("");
    std::string hi = text.substr(sep + 2);
    r.hi = uint32_t(std::stoul(hi, &used));
    if (used != hi.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("--bases expects LO..HI, got '" + text + "'");
  }
  if (r.lo > r.hi)
    throw std::invalid_argument("--bases range is empty: '" + text + "'");
  return r;
}

json base_record(const char* command) {
  return json{{"command", command},
              {"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion}};
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void print_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    return out;
  };
  std::cout << line(header) << "\n";
  for (const auto& row : rows) std::cout << line(row) << "\n";
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string verdict_label(const PrimalityVerdict& v) {
  return v.classification == PrimeClass::Prime ? "prime" : "probable-prime";
}

// ---------------------------------------------------------------------------
// aset
// ---------------------------------------------------------------------------

int run_aset(uint32_t base, Format format) {
  ResidueSet set = aset(base);
  if (format == Format::Plain) {
    std::cout << "A_" << base << " = {";
    for (std::size_t i = 0; i < set.members.size(); ++i)
      std::cout << (i ? ", " : "") << set.members[i];
    std::cout << "} (theory: " << prediction_name(set.prediction) << ")\n";
  } else if (format == Format::Json) {
    json j = base_record("aset");
    j["base"] = base;
    j["members"] = set.members;
    j["prediction"] = std::string(prediction_name(set.prediction));
    print_json(j);
  } else {
    std::vector<std::string> members;
    std::string joined;
    for (std::size_t i = 0; i < set.members.size(); ++i)
      joined += (i ? ";" : "") + std::to_string(set.members[i]);
    print_csv({"base", "members", "prediction"},
              {{std::to_string(base), joined, std::string(prediction_name(set.prediction))}});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(uint32_t base, const std::string& value, Format format) {
  DigitString ds = parse_digits(value, base);
  auto labels = classify(ds);
  BigUint n = from_digits<BigUint>(ds);
  if (format == Format::Plain) {
    if (labels.empty()) {
      std::cout << "no family labels\n";
    } else {
      for (const auto& c : labels)
        std::cout << family_name(c.family) << " (" << (c.strict ? "strict" : "loose")
                  << ")\n";
    }
  } else if (format == Format::Json) {
    json j = base_record("classify");
    j["base"] = base;
    j["value"] = n.to_decimal();
    j["rendering"] = render(ds);
    json arr = json::array();
    for (const auto& c : labels)
      arr.push_back({{"family", std::string(family_name(c.family))},
                     {"strict", c.strict}});
    j["labels"] = arr;
    print_json(j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : labels)
      rows.push_back({std::to_string(base), n.to_decimal(), render(ds),
                      std::string(family_name(c.family)),
                      c.strict ? "strict" : "loose"});
    print_csv({"base", "value", "rendering", "family", "strictness"}, rows);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// squares
// ---------------------------------------------------------------------------

int run_squares(uint32_t base, Family family, bool list, bool count_only,
                const ScanOptions& opt, Format format) {
  SquareScanResult res;
  try {
    res = enumerate_strict_squares(base, family, opt);
  } catch (const ScanBudgetExceeded& e) {
    std::cerr << "error: scan budget exhausted: estimated " << e.estimated.to_decimal()
              << " candidate roots exceed the budget of " << e.budget
              << " (raise --budget)\n";
    return kExitBudget;
  }
  if (format == Format::Plain) {
    std::cout << "strict " << family_name(family) << " squares in base " << base << ": "
              << res.count << "\n";
    if (!count_only)
      std::cout << "scanned " << res.scanned << " roots, filtered "
                << res.filtered.to_decimal() << " by residue class\n";
    if (list) {
      for (uint64_t r : res.roots) {
        BigUint sq = BigUint(r) * BigUint(r);
        std::cout << r << " " << sq.to_decimal() << " "
                  << quoted(render(to_digits(sq, base))) << "\n";
      }
    }
  } else if (format == Format::Json) {
    json j = base_record("squares");
    j["base"] = base;
    j["family"] = std::string(family_name(family));
    j["strict"] = true;
    j["count"] = res.count;
    if (!count_only) {
      j["scanned"] = res.scanned;
      j["filtered"] = res.filtered.to_decimal();
    }
    if (list) {
      json arr = json::array();
      for (uint64_t r : res.roots) {
        BigUint sq = BigUint(r) * BigUint(r);
        arr.push_back({{"root", r},
                       {"square", sq.to_decimal()},
                       {"rendering", render(to_digits(sq, base))}});
      }
      j["roots"] = arr;
    }
    print_json(j);
  } else {
    if (list) {
      std::vector<std::vector<std::string>> rows;
      for (uint64_t r : res.roots) {
        BigUint sq = BigUint(r) * BigUint(r);
        rows.push_back(
            {std::to_string(r), sq.to_decimal(), render(to_digits(sq, base))});
      }
      print_csv({"root", "square", "rendering"}, rows);
    } else {
      print_csv({"base", "family", "count", "scanned", "filtered"},
                {{std::to_string(base), std::string(family_name(family)),
                  std::to_string(res.count), std::to_string(res.scanned),
                  res.filtered.to_decimal()}});
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// prime-search
// ---------------------------------------------------------------------------

void print_search_report(const SearchReport& rep, Format format) {
  std::string rendering = render(rep.digits);
  if (format == Format::Plain) {
    std::cout << "smallest " << family_name(rep.family) << " prime in base " << rep.base
              << ": " << rep.prime.to_decimal() << " (" << quoted(rendering) << ")\n";
    std::cout << "digit sum " << rep.prime_digit_sum << ", " << rep.digit_length
              << " digits, verdict " << verdict_label(rep.verdict) << " ("
              << prime_method_name(rep.verdict.method) << ")\n";
    std::cout << rep.candidates_tested << " candidates tested, " << rep.multisets_pruned
              << " multisets pruned\n";
  } else if (format == Format::Json) {
    json j = base_record("prime-search");
    j["base"] = rep.base;
    j["family"] = std::string(family_name(rep.family));
    j["prime"] = rep.prime.to_decimal();
    j["rendering"] = rendering;
    j["digit_sum"] = rep.prime_digit_sum;
    j["digit_length"] = rep.digit_length;
    j["verdict"] = verdict_label(rep.verdict);
    j["method"] = std::string(prime_method_name(rep.verdict.method));
    j["candidates_tested"] = rep.candidates_tested;
    j["multisets_pruned"] = rep.multisets_pruned;
    print_json(j);
  } else {
    print_csv({"base", "family", "prime", "rendering", "digit_sum", "digit_length",
               "verdict", "candidates_tested", "multisets_pruned"},
              {{std::to_string(rep.base), std::string(family_name(rep.family)),
                rep.prime.to_decimal(), rendering, std::to_string(rep.prime_digit_sum),
                std::to_string(rep.digit_length), verdict_label(rep.verdict),
                std::to_string(rep.candidates_tested),
                std::to_string(rep.multisets_pruned)}});
  }
}

int run_prime_search(std::optional<uint32_t> base, std::optional<Family> family,
                     const std::string& resume_path, const std::string& state_out,
                     const SearchOptions& opt, Format format) {
  SearchReport rep;
  try {
    if (!resume_path.empty()) {
      std::ifstream in(resume_path);
      if (!in) throw std::invalid_argument("cannot read state file '" + resume_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      SearchState state = parse_search_state(buf.str());
      if (base && *base != state.base)
        throw std::invalid_argument("--base disagrees with the state file");
      if (family && *family != state.family)
        throw std::invalid_argument("--family disagrees with the state file");
      rep = resume_search(std::move(state), opt);
    } else {
      if (!base || !family)
        throw std::invalid_argument("prime-search needs --base and --family (or --resume)");
      rep = smallest_prime(*base, *family, opt);
    }
  } catch (const SearchBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!state_out.empty()) {
      std::ofstream out(state_out);
      if (!out) {
        std::cerr << "error: cannot write state file '" << state_out << "'\n";
        return kExitUsage;
      }
      out << serialize_search_state(e.state);
      std::cerr << "search state written to " << state_out << "\n";
    } else {
      std::cerr << "rerun with --state-out FILE to capture a resumable state\n";
    }
    return kExitBudget;
  }
  print_search_report(rep, format);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int run_bounds(uint32_t base, Family family, Format format) {
  BoundSpec spec = lower_bound(base, family);
  std::string rendering = render(spec.bound_digits);
  if (format == Format::Plain) {
    std::cout << "lower bound for " << family_name(family) << " primes in base " << base
              << ": " << spec.bound_value.to_decimal() << " (" << quoted(rendering)
              << ")\n";
    std::cout << "rule: " << bound_rule_name(spec.rule) << "\n";
    std::cout << "closed form: " << spec.closed_form_value.to_decimal() << " (exact)\n";
    if (!spec.simple_form_exact)
      std::cout << "note: the usual prefactor (b^(b-1)-b)/(b-1)^2 is not an integer "
                << "(remainder " << spec.simple_form_remainder
                << "); its floor still gives the same bound\n";
  } else if (format == Format::Json) {
    json j = base_record("bounds");
    j["base"] = base;
    j["family"] = std::string(family_name(family));
    j["bound"] = spec.bound_value.to_decimal();
    j["rendering"] = rendering;
    j["rule"] = std::string(bound_rule_name(spec.rule));
    j["closed_form"] = spec.closed_form_value.to_decimal();
    j["simple_form_exact"] = spec.simple_form_exact;
    j["simple_form_floor"] = spec.simple_form_floor.to_decimal();
    j["simple_form_remainder"] = spec.simple_form_remainder;
    print_json(j);
  } else {
    print_csv({"base", "family", "bound", "rendering", "rule", "closed_form",
               "simple_form_exact", "simple_form_floor", "simple_form_remainder"},
              {{std::to_string(base), std::string(family_name(family)),
                spec.bound_value.to_decimal(), rendering,
                std::string(bound_rule_name(spec.rule)),
                spec.closed_form_value.to_decimal(),
                spec.simple_form_exact ? "true" : "false",
                spec.simple_form_floor.to_decimal(),
                std::to_string(spec.simple_form_remainder)}});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// conjectures
// ---------------------------------------------------------------------------

// The square-existence conjectures are stated for b > 4 (plain) and
// b > 7 (sub); the digit-sum ones for b > 3 and b > 4. Rows outside
// those ranges are still reported, they just may not match.
uint32_t stated_above(int which) {
  switch (which) {
    case 1: return 4;
    case 2: return 3;
    case 3: return 7;
    default: return 4;
  }
}

int run_conjecture_existence(int which, const BaseRange& range, const ScanOptions& opt,
                             Format format) {
  bool sub = which == 3;
  auto rows = square_existence_report(sub, range.lo, range.hi, opt);
  const char* first = sub ? "subpandigital" : "pandigital";
  const char* second = sub ? "subpenholodigital" : "penholodigital";
  uint64_t mismatches = 0;
  for (const auto& r : rows)
    if (!r.match) ++mismatches;
  if (format == Format::Plain) {
    std::cout << "conjecture " << which << " (stated for b > " << stated_above(which)
              << "): strict " << first << "/" << second
              << " squares exist exactly when b is even or v2(b-1) is odd\n";
    for (const auto& r : rows)
      std::cout << "b=" << r.base << ": " << first << "=" << (r.first_exists ? "yes" : "no")
                << " " << second << "=" << (r.second_exists ? "yes" : "no")
                << " predicted=" << (r.predicted ? "yes" : "no")
                << (r.match ? " match" : " MISMATCH") << "\n";
    std::cout << "result: " << rows.size() << " bases, " << mismatches << " mismatches\n";
  } else if (format == Format::Json) {
    json j = base_record("conjectures");
    j["which"] = which;
    j["bases"] = {range.lo, range.hi};
    j["stated_for_bases_above"] = stated_above(which);
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"base", r.base},
                     {std::string(first) + "_exists", r.first_exists},
                     {std::string(second) + "_exists", r.second_exists},
                     {"predicted", r.predicted},
                     {"match", r.match}});
    j["rows"] = arr;
    j["mismatches"] = mismatches;
    print_json(j);
  } else {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
      out.push_back({std::to_string(r.base), r.first_exists ? "yes" : "no",
                     r.second_exists ? "yes" : "no", r.predicted ? "yes" : "no",
                     r.match ? "true" : "false"});
    print_csv({"base", std::string(first) + "_exists", std::string(second) + "_exists",
               "predicted", "match"},
              out);
  }
  return kExitOk;
}

int run_conjecture_sums(int which, const BaseRange& range, const SearchOptions& opt,
                        Format format) {
  Family fams[2] = {which == 2 ? Family::Pandigital : Family::Subpandigital,
                    which == 2 ? Family::Penholodigital : Family::Subpenholodigital};
  struct Row {
    Family family;
    ConjectureSumRow data;
  };
  std::vector<Row> rows;
  for (Family f : fams)
    for (auto& r : conjecture_digit_sum_report(f, range.lo, range.hi, opt))
      rows.push_back({f, std::move(r)});
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (a.data.base != b.data.base) return a.data.base < b.data.base;
    return a.family == fams[0] && b.family != fams[0];
  });
  uint64_t mismatches = 0;
  for (const auto& r : rows)
    if (!r.data.match) ++mismatches;
  if (format == Format::Plain) {
    std::cout << "conjecture " << which << " (stated for b > " << stated_above(which)
              << "): smallest-prime digit sum = strict sum + 1, or + 2 when b = 3 mod 4\n";
    for (const auto& r : rows)
      std::cout << "b=" << r.data.base << " " << family_name(r.family) << ": prime "
                << r.data.prime.to_decimal() << " (" << quoted(render(r.data.digits))
                << ") sum " << r.data.found_sum << " predicted " << r.data.predicted_sum
                << (r.data.match ? " match" : " MISMATCH") << "\n";
    std::cout << "result: " << rows.size() << " rows, " << mismatches << " mismatches\n";
  } else if (format == Format::Json) {
    json j = base_record("conjectures");
    j["which"] = which;
    j["bases"] = {range.lo, range.hi};
    j["stated_for_bases_above"] = stated_above(which);
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"base", r.data.base},
                     {"family", std::string(family_name(r.family))},
                     {"prime", r.data.prime.to_decimal()},
                     {"rendering", render(r.data.digits)},
                     {"digit_sum", r.data.found_sum},
                     {"predicted_sum", r.data.predicted_sum},
                     {"match", r.data.match}});
    j["rows"] = arr;
    j["mismatches"] = mismatches;
    print_json(j);
  } else {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
      out.push_back({std::to_string(r.data.base), std::string(family_name(r.family)),
                     r.data.prime.to_decimal(), render(r.data.digits),
                     std::to_string(r.data.found_sum),
                     std::to_string(r.data.predicted_sum),
                     r.data.match ? "true" : "false"});
    print_csv({"base", "family", "prime", "rendering", "digit_sum", "predicted_sum",
               "match"},
              out);
  }
  return kExitOk;
}

int run_conjectures(int which, const BaseRange& range, uint64_t budget, unsigned jobs,
                    Format format) {
  try {
    if (which == 1 || which == 3) {
      ScanOptions opt;
      if (budget) opt.budget = budget;
      opt.jobs = jobs;
      return run_conjecture_existence(which, range, opt, format);
    }
    SearchOptions opt;
    if (budget) opt.budget = budget;
    opt.jobs = jobs;
    return run_conjecture_sums(which, range, opt, format);
  } catch (const ScanBudgetExceeded& e) {
    std::cerr << "error: scan budget exhausted: estimated " << e.estimated.to_decimal()
              << " exceeds " << e.budget << " (raise --budget)\n";
    return kExitBudget;
  } catch (const SearchBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << " (raise --budget)\n";
    return kExitBudget;
  }
}

// ---------------------------------------------------------------------------
// oeis-check
// ---------------------------------------------------------------------------

int run_oeis_check(const std::string& bfile_path, const std::string& seq_id,
                   const std::string& what, Family family, const BaseRange& range,
                   uint64_t budget, unsigned jobs, Format format) {
  std::ifstream in(bfile_path);
  if (!in) throw std::invalid_argument("cannot read b-file '" + bfile_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  BfileSeq reference = parse_bfile(buf.str(), seq_id);

  std::vector<BfileEntry> computed;
  try {
    for (uint32_t b = range.lo; b <= range.hi; ++b) {
      if (what == "square-counts") {
        ScanOptions opt;
        if (budget) opt.budget = budget;
        opt.jobs = jobs;
        computed.push_back({int64_t(b), BigUint(count_strict_squares(b, family, opt))});
      } else {
        SearchOptions opt;
        if (budget) opt.budget = budget;
        opt.jobs = jobs;
        computed.push_back({int64_t(b), smallest_prime(b, family, opt).prime});
      }
    }
  } catch (const ScanBudgetExceeded& e) {
    std::cerr << "error: scan budget exhausted: estimated " << e.estimated.to_decimal()
              << " exceeds " << e.budget << " (raise --budget)\n";
    return kExitBudget;
  } catch (const SearchBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << " (raise --budget)\n";
    return kExitBudget;
  }

  CompareReport rep = compare(computed, reference);
  auto cell = [](const std::optional<BigUint>& v) {
    return v ? v->to_decimal() : std::string("(none)");
  };
  if (format == Format::Plain) {
    std::cout << rep.sequence_id << " (" << what << ", " << family_name(family)
              << ") vs computed bases " << range.lo << ".." << range.hi << "\n";
    for (const auto& m : rep.mismatches)
      std::cout << "index " << m.index << ": computed " << cell(m.computed)
                << " != reference " << cell(m.reference) << "\n";
    std::cout << "compared " << rep.compared << " indices in [" << rep.first_index << ", "
              << rep.last_index << "]: " << rep.matched << " matched, "
              << rep.mismatches.size() << " mismatched\n";
  } else if (format == Format::Json) {
    json j = base_record("oeis-check");
    j["sequence"] = rep.sequence_id;
    j["what"] = what;
    j["family"] = std::string(family_name(family));
    j["first_index"] = rep.first_index;
    j["last_index"] = rep.last_index;
    j["compared"] = rep.compared;
    j["matched"] = rep.matched;
    json arr = json::array();
    for (const auto& m : rep.mismatches)
      arr.push_back(
          {{"index", m.index},
           {"computed", m.computed ? json(m.computed->to_decimal()) : json(nullptr)},
           {"reference", m.reference ? json(m.reference->to_decimal()) : json(nullptr)}});
    j["mismatches"] = arr;
    j["all_match"] = rep.all_match;
    print_json(j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : rep.mismatches)
      rows.push_back({std::to_string(m.index),
                      m.computed ? m.computed->to_decimal() : "",
                      m.reference ? m.reference->to_decimal() : ""});
    print_csv({"index", "computed", "reference"}, rows);
  }
  return rep.all_match ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pandigital number toolkit: classification, squares, primes, bounds"};
  app.require_subcommand(1);
  app.footer("Environment: PANDIGITAL_JOBS sets the default worker count.\n"
             "Exit codes: 0 ok, 1 usage error, 2 oeis-check mismatch, 3 budget exhausted.\n"
             "Output schemas are versioned; see README (schema_version 1).");

  int exit_code = kExitOk;
  Format format = Format::Plain;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->transform(CLI::CheckedTransformer(kFormatMap, CLI::ignore_case))
        ->default_str("plain");
  };

  std::string family_name_arg;
  auto add_family = [&](CLI::App* sub) {
    return sub->add_option("--family", family_name_arg, "digit family")
        ->check(CLI::IsMember({"pandigital", "penholodigital", "subpandigital",
                               "subpenholodigital"}));
  };
  auto family_of = [&]() { return kFamilyMap.at(family_name_arg); };

  bool strict_flag = false, loose_flag = false;
  auto add_strictness = [&](CLI::App* sub) {
    sub->add_flag("--strict", strict_flag, "strict digit semantics");
    sub->add_flag("--loose", loose_flag, "loose digit semantics");
  };

  // aset
  uint32_t aset_base = 0;
  auto* aset_cmd = app.add_subcommand("aset", "residue classes allowed for square roots");
  aset_cmd->add_option("--base", aset_base, "base, at least 3")->required();
  add_format(aset_cmd);
  aset_cmd->callback([&] { exit_code = run_aset(aset_base, format); });

  // classify
  uint32_t classify_base = 0;
  std::string classify_value;
  auto* classify_cmd = app.add_subcommand("classify", "family labels of a number");
  classify_cmd->add_option("--base", classify_base, "base, at least 2")->required();
  classify_cmd
      ->add_option("value", classify_value,
                   "the number written in base-b digits (0-9a-z, or dot-separated "
                   "for bases over 36)")
      ->required();
  add_format(classify_cmd);
  classify_cmd->callback(
      [&] { exit_code = run_classify(classify_base, classify_value, format); });

  // squares
  uint32_t squares_base = 0;
  bool squares_list = false, squares_count = false;
  uint64_t squares_budget = 0;
  unsigned squares_jobs = env_jobs();
  auto* squares_cmd =
      app.add_subcommand("squares", "enumerate strict family squares in a base");
  squares_cmd->add_option("--base", squares_base, "base, 2 to 64")->required();
  add_family(squares_cmd)->required();
  auto* list_opt = squares_cmd->add_flag("--list", squares_list, "print every root");
  squares_cmd->add_flag("--count", squares_count, "print only the count")
      ->excludes(list_opt);
  squares_cmd->add_option("--budget", squares_budget, "max candidate roots to scan");
  squares_cmd->add_option("--jobs", squares_jobs, "worker threads");
  add_strictness(squares_cmd);
  add_format(squares_cmd);
  squares_cmd->callback([&] {
    if (loose_flag) {
      std::cerr << "error: square enumeration is strict-only; loose squares are not "
                   "a studied family here\n";
      exit_code = kExitUsage;
      return;
    }
    ScanOptions opt;
    if (squares_budget) opt.budget = squares_budget;
    opt.jobs = squares_jobs;
    exit_code = run_squares(squares_base, family_of(), squares_list, squares_count, opt,
                            format);
  });

  // prime-search
  uint32_t search_base = 0;
  uint64_t search_budget = 0;
  unsigned search_jobs = env_jobs();
  std::string resume_path, state_out;
  auto* search_cmd =
      app.add_subcommand("prime-search", "find the smallest prime of a family");
  auto* search_base_opt = search_cmd->add_option("--base", search_base, "base");
  auto* search_family_opt = add_family(search_cmd);
  search_cmd->add_option("--budget", search_budget, "max primality tests");
  search_cmd->add_option("--jobs", search_jobs, "worker threads");
  search_cmd->add_option("--resume", resume_path, "resume from a saved state file");
  search_cmd->add_option("--state-out", state_out,
                         "where to write the state on budget exhaustion");
  add_strictness(search_cmd);
  add_format(search_cmd);
  search_cmd->callback([&] {
    if (strict_flag) {
      std::cerr << "error: strict members are never prime beyond base 3; the search "
                   "is loose-only\n";
      exit_code = kExitUsage;
      return;
    }
    SearchOptions opt;
    if (search_budget) opt.budget = search_budget;
    opt.jobs = search_jobs;
    std::optional<uint32_t> base;
    std::optional<Family> family;
    if (search_base_opt->count()) base = search_base;
    if (search_family_opt->count()) family = family_of();
    exit_code = run_prime_search(base, family, resume_path, state_out, opt, format);
  });

  // bounds
  uint32_t bounds_base = 0;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "lower bound for the smallest family prime");
  bounds_cmd->add_option("--base", bounds_base, "base, at least 4")->required();
  add_family(bounds_cmd)->required();
  add_format(bounds_cmd);
  bounds_cmd->callback([&] { exit_code = run_bounds(bounds_base, family_of(), format); });

  // conjectures
  int which = 0;
  std::string bases_arg;
  uint64_t conj_budget = 0;
  unsigned conj_jobs = env_jobs();
  auto* conj_cmd = app.add_subcommand("conjectures", "verify conjecture predictions");
  conj_cmd->add_option("--which", which, "1/3: square existence, 2/4: prime digit sums")
      ->required()
      ->check(CLI::Range(1, 4));
  conj_cmd->add_option("--bases", bases_arg, "base range LO..HI")->required();
  conj_cmd->add_option("--budget", conj_budget, "scan or test budget");
  conj_cmd->add_option("--jobs", conj_jobs, "worker threads");
  add_format(conj_cmd);
  conj_cmd->callback([&] {
    exit_code =
        run_conjectures(which, parse_base_range(bases_arg), conj_budget, conj_jobs, format);
  });

  // oeis-check
  std::string bfile_path, seq_id, what_arg;
  uint64_t oeis_budget = 0;
  unsigned oeis_jobs = env_jobs();
  auto* oeis_cmd =
      app.add_subcommand("oeis-check", "diff computed values against an OEIS b-file");
  oeis_cmd->add_option("--bfile", bfile_path, "path to a local b-file")->required();
  oeis_cmd->add_option("--seq", seq_id, "sequence id, e.g. A185122")->required();
  oeis_cmd->add_option("--what", what_arg, "square-counts or smallest-primes")
      ->required()
      ->check(CLI::IsMember({"square-counts", "smallest-primes"}));
  add_family(oeis_cmd)->required();
  oeis_cmd->add_option("--bases", bases_arg, "bases the b-file indices stand for, LO..HI")
      ->required();
  oeis_cmd->add_option("--budget", oeis_budget, "scan or test budget");
  oeis_cmd->add_option("--jobs", oeis_jobs, "worker threads");
  add_format(oeis_cmd);
  oeis_cmd->callback([&] {
    exit_code = run_oeis_check(bfile_path, seq_id, what_arg, family_of(),
                               parse_base_range(bases_arg), oeis_budget, oeis_jobs, format);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
