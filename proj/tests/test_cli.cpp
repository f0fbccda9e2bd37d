// End-to-end command line tests.  The binary under test comes from the
// SIMSMOOTH_CLI environment variable; every case shells out through popen and
// checks exit status plus captured stdout.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "simsmooth/capi.h"

using nlohmann::ordered_json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* path = std::getenv("SIMSMOOTH_CLI");
    REQUIRE_MESSAGE(path != nullptr, "SIMSMOOTH_CLI must point at the binary under test");
    return path;
}

RunResult run(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buffer;
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

// ---------- global surface ----------

TEST_CASE("version flag prints the library version") {
    RunResult r = run("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1.0.0\n");
}

TEST_CASE("bare invocation prints help and signals misuse") {
    RunResult r = run("");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("smooth") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("unknown options are usage errors") {
    CHECK(run("smooth --frobnicate").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}

// ---------- smooth ----------

TEST_CASE("smooth emits a JSON report for a generated input") {
    RunResult r = run("smooth --dims 2,2 --kind classical --seed 5 --subsets '1;1,2' "
                      "--epsilon 0.1 --out -");
    REQUIRE(r.exit_code == 0);
    ordered_json doc = ordered_json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["epsilon"] == 0.1);
    CHECK(doc["method"] == "classical");
    CHECK(doc["per_subset"].size() == 2);
}

TEST_CASE("smooth writes a loadable smoothed state") {
    const char* sigma_path = "/tmp/simsmooth_cli_sigma.json";
    RunResult r = run(std::string("smooth --dims 2,2 --kind classical --seed 6 ") +
                      "--subsets '1,2' --epsilon 0.2 --out /dev/null --sigma-out " + sigma_path);
    REQUIRE(r.exit_code == 0);
    ss_state* sigma = nullptr;
    REQUIRE(ss_state_load(sigma_path, &sigma) == SS_OK);
    CHECK(ss_state_total_dim(sigma) == 4);
    // The full-set cap removes mass, so the output is strictly subnormalized.
    CHECK(ss_state_trace(sigma) < 1.0);
    ss_state_free(sigma);
    std::remove(sigma_path);
}

TEST_CASE("smooth requires an input source") {
    RunResult r = run("smooth --subsets '1' --epsilon 0.1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("overlapping families exit with the analysis code") {
    RunResult r = run("smooth --dims 2,2,2 --kind mixed --seed 7 --subsets '1,2;2,3' "
                      "--epsilon 0.05");
    CHECK(r.exit_code == 1);
}

TEST_CASE("smooth output is deterministic for a fixed seed") {
    const std::string args = "smooth --dims 2,3 --kind mixed --seed 42 --subsets '1;2' "
                             "--epsilon 0.05 --format csv --out -";
    RunResult a = run(args);
    RunResult b = run(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("subset,hmin_before", 0) == 0);
}

// ---------- verify ----------

TEST_CASE("verify --list names every suite") {
    RunResult r = run("verify --list");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "lemma1\nlemma3\nlemma4\nlemma5\nmetric\npurified\ntheorem2\ntheorem4\ntheorem5\n");
}

TEST_CASE("verify runs a named suite and reports rows") {
    RunResult r = run("verify lemma1 --trials 4 --seed 7 --threads 1 --format csv --out -");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("trial,seed,violation,pass,note\n", 0) == 0);
    int rows = 0;
    for (char c : r.out) rows += c == '\n';
    CHECK(rows == 5);
}

TEST_CASE("verify without a suite name is a usage error") {
    CHECK(run("verify").exit_code == 2);
    CHECK(run("verify lemma2 --trials 2").exit_code == 2);
}

// ---------- worstcase ----------

TEST_CASE("worstcase emits the sweep CSV") {
    RunResult r = run("worstcase --n-min 2 --n-max 3 --epsilon 0.05 --format csv --out -");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("n,d_iterative,d_oracle,bound,gap\n2,", 0) == 0);
    CHECK(r.out.find("\n3,") != std::string::npos);
}

TEST_CASE("worstcase rejects a radius the claim cannot survive") {
    RunResult r = run("worstcase --n-min 2 --n-max 2 --epsilon 0.34");
    CHECK(r.exit_code == 2);
}

// ---------- explore ----------

TEST_CASE("explore reports deficits for the overlapping family") {
    RunResult r = run("explore --dims 2,2,2 --kind classical --trials 2 --seed 3 --threads 1 "
                      "--out -");
    REQUIRE(r.exit_code == 0);
    ordered_json doc = ordered_json::parse(r.out);
    CHECK(doc["trials"] == 2);
    CHECK(doc["rows"].size() == 2);
    // Classical inputs have commuting marginals, so nothing is missed.
    CHECK(doc["max_deficit"].get<double>() <= 1e-8);
}
