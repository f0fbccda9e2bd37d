// Named randomized verification suites, the adversarial-grid sweep, and the
// overlapping-family probe, with JSON and CSV emitters for each.  Every trial
// derives its own seed from the suite seed, so single failures reproduce in
// isolation.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simsmooth/random.hpp"
#include "simsmooth/smoother.hpp"

namespace simsmooth {

struct SuiteConfig {
    std::string name;
    std::vector<int> dims;  // empty: use the suite's default or rotating profiles
    double epsilon = -1.0;  // negative: use the suite's default grid
    int trials = 0;         // nonpositive: use the suite's default
    uint64_t seed = 1;
    int threads = 0;        // nonpositive: hardware count; SIMSMOOTH_THREADS caps
};

struct TrialRow {
    int trial = 0;
    uint64_t seed = 0;
    // Worst tolerance-adjusted excess over the trial's checks; pass iff <= 0.
    // Floored at -1 so comfortable margins stay representable.
    double violation = 0.0;
    bool pass = false;
    std::string note;  // nonempty only when the trial threw
};

struct SuiteResult {
    std::string name;
    std::string description;
    std::vector<double> epsilons;
    int trials = 0;
    bool pass = false;
    double max_violation = 0.0;
    int first_fail_trial = -1;     // -1 when everything passed
    uint64_t first_fail_seed = 0;
    std::vector<TrialRow> rows;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const SuiteConfig& config);
std::string suite_result_to_json(const SuiteResult& result);
std::string suite_result_to_csv(const SuiteResult& result);

// ---------- adversarial grid sweep ----------

struct SweepRow {
    int n = 0;
    double d_iterative = 0.0;  // distance reached by the channel smoother
    double d_oracle = 0.0;     // optimal distance from the linear program
    double bound = 0.0;        // |K| * eps
    double gap = 0.0;          // bound - d_oracle
    bool claim_pass = false;   // oracle within 1e-7 of the bound
};

struct SweepResult {
    double epsilon = 0.0;
    std::vector<PartySet> active;
    std::vector<SweepRow> rows;
};

// Requires 2 <= n_min <= n_max and eps < 1/|active|.
SweepResult worstcase_sweep(int n_min, int n_max, const std::vector<PartySet>& active, double eps);
std::string sweep_to_json(const SweepResult& result);
std::string sweep_to_csv(const SweepResult& result);

// ---------- overlapping-family probe ----------

struct ExploreConfig {
    DimProfile profile = DimProfile({2, 2, 2});  // exactly three parties
    StateKind kind = StateKind::mixed;
    double epsilon = 0.05;
    int trials = 100;
    uint64_t seed = 1;
    int threads = 0;
};

struct ExploreRow {
    int trial = 0;
    uint64_t seed = 0;
    double deficit_front = 0.0;  // missed bits on A1A2
    double deficit_back = 0.0;   // missed bits on A2A3
    double purified_distance = 0.0;
};

struct ExploreResult {
    ExploreConfig config;
    std::vector<ExploreRow> rows;
    double max_deficit = 0.0;
    double mean_deficit = 0.0;  // averaged over both subsets and all trials
    double max_purified = 0.0;
    double mean_purified = 0.0;
};

ExploreResult run_explore(const ExploreConfig& config);
std::string explore_to_json(const ExploreResult& result);
std::string explore_to_csv(const ExploreResult& result);

// ---------- shared plumbing ----------

// Decorrelated per-trial seed derived from the suite seed.
uint64_t trial_seed(uint64_t seed, int trial);

// Requested count (nonpositive: hardware), capped by SIMSMOOTH_THREADS when
// that is set, clamped to [1, jobs].
int resolve_thread_count(int requested, int jobs);

}  // namespace simsmooth
