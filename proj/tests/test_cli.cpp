// End-to-end tests for the command line tool. Each case launches the real
// binary through the shell and checks bytes and exit status.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(PANDIGITAL_CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int rc = pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  res.status = WEXITSTATUS(rc);
  return res;
}

RunResult run_with_env(const std::string& env, const std::string& args) {
  std::string cmd = env + " " + std::string(PANDIGITAL_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int rc = pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  res.status = WEXITSTATUS(rc);
  return res;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

}  // namespace

TEST_CASE("aset output is byte exact") {
  auto r = run_cli("aset --base 10");
  CHECK(r.status == 0);
  CHECK(r.out == "A_10 = {0, 3, 6} (theory: unconstrained)\n");

  r = run_cli("aset --base 5");
  CHECK(r.status == 0);
  CHECK(r.out == "A_5 = {} (theory: empty)\n");

  r = run_cli("aset --base 13");
  CHECK(r.status == 0);
  CHECK(r.out == "A_13 = {} (theory: empty)\n");

  r = run_cli("aset --base 9");
  CHECK(r.status == 0);
  CHECK(r.out == "A_9 = {2, 6} (theory: unconstrained)\n");

  r = run_cli("aset --base 12");
  CHECK(r.status == 0);
  CHECK(r.out == "A_12 = {0} (theory: zero-only)\n");

  r = run_cli("aset --base 13 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "base,members,prediction\n13,,empty\n");
}

TEST_CASE("classify output is byte exact") {
  auto r = run_cli("classify --base 10 1323546789");
  CHECK(r.status == 0);
  CHECK(r.out == "penholodigital (loose)\n");

  r = run_cli("classify --base 10 1026753849");
  CHECK(r.status == 0);
  CHECK(r.out == "pandigital (strict)\npandigital (loose)\n");

  r = run_cli("classify --base 10 120345687");
  CHECK(r.status == 0);
  CHECK(r.out == "subpandigital (strict)\nsubpandigital (loose)\n");

  r = run_cli("classify --base 10 5");
  CHECK(r.status == 0);
  CHECK(r.out == "no family labels\n");

  // dotted digits for wide bases
  r = run_cli("classify --base 40 1.0.2");
  CHECK(r.status == 0);
  CHECK(r.out == "no family labels\n");
}

TEST_CASE("prime-search plain output is byte exact") {
  auto r = run_cli("prime-search --base 10 --family subpandigital");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "smallest subpandigital prime in base 10: 1012356487 (\"1012356487\")\n"
        "digit sum 37, 10 digits, verdict prime (miller-rabin)\n"
        "32 candidates tested, 4 multisets pruned\n");

  r = run_cli("prime-search --base 10 --family subpenholodigital");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "smallest subpenholodigital prime in base 10: 112345687 (\"112345687\")\n"
        "digit sum 37, 9 digits, verdict prime (miller-rabin)\n"
        "2 candidates tested, 3 multisets pruned\n");
}

TEST_CASE("bounds plain output is byte exact") {
  auto r = run_cli("bounds --base 11 --family subpandigital");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "lower bound for subpandigital primes in base 11: 26411157727 "
        "(\"10223456789\")\n"
        "rule: digit-sum+2\n"
        "closed form: 26411157727 (exact)\n"
        "note: the usual prefactor (b^(b-1)-b)/(b-1)^2 is not an integer "
        "(remainder 90); its floor still gives the same bound\n");

  r = run_cli("bounds --base 10 --family pandigital");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "lower bound for pandigital primes in base 10: 10123456789 "
        "(\"10123456789\")\n"
        "rule: digit-sum+1\n"
        "closed form: 10123456789 (exact)\n");
}

TEST_CASE("exit codes") {
  CHECK(run_cli("").status == 1);
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("aset --help").status == 0);
  CHECK(run_cli("aset").status == 1);
  CHECK(run_cli("frobnicate").status == 1);
  CHECK(run_cli("aset --base ten").status == 1);
  CHECK(run_cli("classify --base 10 19x!").status == 1);
  CHECK(run_cli("squares --base 10 --family nosuch").status == 1);
  CHECK(run_cli("conjectures --which 7 --bases 4..5").status == 1);
  CHECK(run_cli("conjectures --which 2 --bases 9..4").status == 1);
  CHECK(run_cli("conjectures --which 2 --bases 5-8").status == 1);
  CHECK(run_cli("prime-search --resume /does/not/exist.json").status == 1);
  CHECK(run_cli("prime-search --family subpandigital").status == 1);
}

TEST_CASE("squares is strict only and search is loose only") {
  auto r = run_cli("squares --base 10 --family pandigital --loose", true);
  CHECK(r.status == 1);
  CHECK(r.out.find("strict-only") != std::string::npos);

  r = run_cli("prime-search --base 10 --family pandigital --strict", true);
  CHECK(r.status == 1);
  CHECK(r.out.find("loose-only") != std::string::npos);

  // the redundant flags matching the defaults are accepted
  CHECK(run_cli("squares --base 6 --family pandigital --strict").status == 0);
  CHECK(run_cli("prime-search --base 6 --family pandigital --loose").status == 0);
}

TEST_CASE("json output parses and is round trip stable") {
  auto r = run_cli("prime-search --base 10 --family subpandigital --format json");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "prime-search");
  CHECK(j["schema_version"] == 1);
  CHECK(j["prime"] == "1012356487");
  CHECK(j["rendering"] == "1012356487");
  CHECK(j["digit_sum"] == 37);
  CHECK(j["verdict"] == "prime");
  CHECK(j["candidates_tested"] == 32);
  // parse then re-dump reproduces the emitted bytes
  CHECK(j.dump(2) + "\n" == r.out);

  r = run_cli("squares --base 10 --family pandigital --list --format json");
  CHECK(r.status == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 87);
  CHECK(j["roots"].size() == 87);
  CHECK(j["roots"][0]["root"] == 32043);
  CHECK(j["roots"][0]["square"] == "1026753849");
  CHECK(j.dump(2) + "\n" == r.out);

  r = run_cli("bounds --base 11 --family subpandigital --format json");
  CHECK(r.status == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["bound"] == "26411157727");
  CHECK(j["simple_form_exact"] == false);
  CHECK(j["simple_form_remainder"] == 90);
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("csv output is byte exact") {
  auto r = run_cli("prime-search --base 10 --family subpandigital --format csv");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "base,family,prime,rendering,digit_sum,digit_length,verdict,"
        "candidates_tested,multisets_pruned\n"
        "10,subpandigital,1012356487,1012356487,37,10,prime,32,4\n");

  r = run_cli("squares --base 6 --family pandigital --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "base,family,count,scanned,filtered\n6,pandigital,1,24,96\n");
}

TEST_CASE("jobs never changes the bytes") {
  auto a = run_cli("squares --base 9 --family penholodigital --list --jobs 1");
  auto b = run_cli("squares --base 9 --family penholodigital --list --jobs 8");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);

  a = run_cli("prime-search --base 12 --family subpenholodigital --jobs 1");
  b = run_cli("prime-search --base 12 --family subpenholodigital --jobs 8");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);

  // the env var only sets the default; bytes stay put
  auto c = run_with_env("PANDIGITAL_JOBS=8",
                        "prime-search --base 12 --family subpenholodigital");
  CHECK(c.status == 0);
  CHECK(c.out == a.out);
  c = run_with_env("PANDIGITAL_JOBS=bogus",
                   "prime-search --base 12 --family subpenholodigital");
  CHECK(c.status == 0);
  CHECK(c.out == a.out);
}

TEST_CASE("budget exhaustion exits 3 and the state file resumes") {
  std::string state = "/tmp/pandigital_cli_state.json";
  std::remove(state.c_str());

  auto r = run_cli("prime-search --base 12 --family subpenholodigital --budget 10 "
                   "--state-out " + state);
  CHECK(r.status == 3);

  auto full = run_cli("prime-search --base 12 --family subpenholodigital");
  auto resumed = run_cli("prime-search --resume " + state);
  CHECK(resumed.status == 0);
  CHECK(resumed.out == full.out);

  // flags that contradict the saved state are rejected
  CHECK(run_cli("prime-search --resume " + state + " --base 13").status == 1);
  CHECK(run_cli("prime-search --resume " + state + " --family pandigital").status == 1);
  // matching flags are fine
  CHECK(run_cli("prime-search --resume " + state +
                " --base 12 --family subpenholodigital")
            .status == 0);

  // without --state-out the failure is still exit 3
  CHECK(run_cli("prime-search --base 12 --family subpenholodigital --budget 10")
            .status == 3);
  std::remove(state.c_str());
}

TEST_CASE("oeis-check matches give 0 and mismatches give 2") {
  std::string good = "/tmp/pandigital_cli_good.bfile";
  std::string bad = "/tmp/pandigital_cli_bad.bfile";
  write_file(good, "# smallest subpenholodigital primes\n"
                   "3 13\n4 37\n5 163\n6 1861\n7 22481\n8 304949\n");
  write_file(bad, "3 13\n4 37\n5 163\n6 999983\n7 22481\n8 304949\n");

  auto r = run_cli("oeis-check --bfile " + good +
                   " --seq A999001 --what smallest-primes "
                   "--family subpenholodigital --bases 3..8");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "A999001 (smallest-primes, subpenholodigital) vs computed bases 3..8\n"
        "compared 6 indices in [3, 8]: 6 matched, 0 mismatched\n");

  r = run_cli("oeis-check --bfile " + bad +
              " --seq A999001 --what smallest-primes "
              "--family subpenholodigital --bases 3..8");
  CHECK(r.status == 2);
  CHECK(r.out.find("index 6: computed 1861 != reference 999983\n") != std::string::npos);

  r = run_cli("oeis-check --bfile " + bad +
              " --seq A999001 --what smallest-primes "
              "--family subpenholodigital --bases 3..8 --format json");
  CHECK(r.status == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["all_match"] == false);
  CHECK(j["mismatches"].size() == 1);
  CHECK(j["mismatches"][0]["computed"] == "1861");

  // square counts against a hand-built reference
  std::string counts = "/tmp/pandigital_cli_counts.bfile";
  write_file(counts, "3 0\n4 1\n5 0\n6 1\n7 3\n8 4\n");
  r = run_cli("oeis-check --bfile " + counts +
              " --seq A999002 --what square-counts --family pandigital --bases 3..8");
  CHECK(r.status == 0);

  // malformed b-file is a usage error
  std::string mangled = "/tmp/pandigital_cli_mangled.bfile";
  write_file(mangled, "3 13 77\n");
  CHECK(run_cli("oeis-check --bfile " + mangled +
                " --seq A999003 --what smallest-primes "
                "--family subpenholodigital --bases 3..8")
            .status == 1);
  CHECK(run_cli("oeis-check --bfile /does/not/exist --seq A999003 "
                "--what smallest-primes --family subpenholodigital --bases 3..8")
            .status == 1);

  std::remove(good.c_str());
  std::remove(bad.c_str());
  std::remove(counts.c_str());
  std::remove(mangled.c_str());
}

TEST_CASE("conjecture reports run clean on their stated ranges") {
  auto r = run_cli("conjectures --which 2 --bases 5..9");
  CHECK(r.status == 0);
  CHECK(r.out.find("result: 10 rows, 0 mismatches\n") != std::string::npos);

  r = run_cli("conjectures --which 4 --bases 5..9");
  CHECK(r.status == 0);
  CHECK(r.out.find("result: 10 rows, 0 mismatches\n") != std::string::npos);

  r = run_cli("conjectures --which 1 --bases 5..10");
  CHECK(r.status == 0);
  CHECK(r.out.find("result: 6 bases, 0 mismatches\n") != std::string::npos);

  // outside the stated range mismatches are reported, not fatal
  r = run_cli("conjectures --which 1 --bases 3..5");
  CHECK(r.status == 0);
  CHECK(r.out.find("MISMATCH") != std::string::npos);

  r = run_cli("conjectures --which 2 --bases 5..9 --format json");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["mismatches"] == 0);
  CHECK(j["rows"].size() == 10);
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("search budget failures in bulk commands exit 3") {
  CHECK(run_cli("conjectures --which 4 --bases 12..12 --budget 3").status == 3);
  std::string bf = "/tmp/pandigital_cli_budget.bfile";
  write_file(bf, "12 749149003087\n");
  CHECK(run_cli("oeis-check --bfile " + bf +
                " --seq A999004 --what smallest-primes "
                "--family subpandigital --bases 12..12 --budget 5")
            .status == 3);
  std::remove(bf.c_str());
}
