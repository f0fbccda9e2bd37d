#include "simsmooth/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "simsmooth/distance.hpp"
#include "simsmooth/entropy.hpp"
#include "simsmooth/io.hpp"
#include "simsmooth/random.hpp"
#include "simsmooth/smoother.hpp"
#include "simsmooth/suites.hpp"
#include "simsmooth/worstcase.hpp"

using namespace simsmooth;

struct ss_state {
    StateVariant value;
};

struct ss_report {
    SmoothingReport report;
    std::string method;
};

namespace {

thread_local std::string g_last_error;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

template <typename F>
ss_status guarded(F&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SS_OK;
    } catch (const UnsupportedFamilyError& e) {
        g_last_error = e.what();
        return SS_ERR_UNSUPPORTED_FAMILY;
    } catch (const OversizeError& e) {
        g_last_error = e.what();
        return SS_ERR_TOO_LARGE;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return SS_ERR_PARSE;
    } catch (const ValidationError& e) {
        g_last_error = e.what();
        return SS_ERR_INVALID_STATE;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return SS_ERR_IO;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return SS_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    require(out != nullptr, "out of memory");
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

PartySet whole_system(const DimProfile& profile) {
    std::vector<int> members;
    for (size_t p = 0; p < profile.dims().size(); ++p) members.push_back(static_cast<int>(p));
    return PartySet(members);
}

PartySet subset_or_whole(const StateVariant& v, const char* subset) {
    const DimProfile& profile = state_profile(v);
    if (subset == nullptr || *subset == '\0') return whole_system(profile);
    PartySet s = parse_subset(subset);
    check_parties_in_profile(s, profile, "subset");
    return s;
}

Metric metric_or(const char* metric, Metric fallback) {
    if (metric == nullptr || *metric == '\0') return fallback;
    return parse_metric(metric);
}

std::string normalized_format(const char* format) {
    std::string f = (format == nullptr || *format == '\0') ? "json" : format;
    require(f == "json" || f == "csv", "format must be 'json' or 'csv'");
    return f;
}

std::vector<PartySet> active_or_default(const char* active) {
    if (active == nullptr || *active == '\0') {
        return {PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})};
    }
    return parse_subsets(active);
}

}  // namespace

extern "C" {

const char* ss_status_name(ss_status status) {
    switch (status) {
        case SS_OK: return "ok";
        case SS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SS_ERR_PARSE: return "parse error";
        case SS_ERR_INVALID_STATE: return "invalid state";
        case SS_ERR_UNSUPPORTED_FAMILY: return "unsupported family";
        case SS_ERR_TOO_LARGE: return "too large";
        case SS_ERR_IO: return "io error";
        case SS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ss_last_error(void) { return g_last_error.c_str(); }

const char* ss_version(void) { return "1.0.0"; }

void ss_string_free(char* text) { std::free(text); }

void ss_state_free(ss_state* state) { delete state; }

void ss_report_free(ss_report* report) { delete report; }

/* ---------- states ---------- */

ss_status ss_state_from_json(const char* text, ss_state** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "ss_state_from_json: null argument");
        *out = new ss_state{state_from_json(text)};
    });
}

ss_status ss_state_load(const char* path, ss_state** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "ss_state_load: null argument");
        *out = new ss_state{load_state_file(path)};
    });
}

ss_status ss_state_to_json(const ss_state* state, char** out) {
    return guarded([&] {
        require(state != nullptr && out != nullptr, "ss_state_to_json: null argument");
        *out = dup_string(state_to_json(state->value));
    });
}

ss_status ss_state_save(const ss_state* state, const char* path) {
    return guarded([&] {
        require(state != nullptr && path != nullptr, "ss_state_save: null argument");
        save_state_file(state->value, path);
    });
}

ss_status ss_state_random(const char* dims, const char* kind, uint64_t seed, ss_state** out) {
    return guarded([&] {
        require(dims != nullptr && out != nullptr, "ss_state_random: null argument");
        DimProfile profile = parse_dims(dims);
        StateKind k = parse_state_kind(kind == nullptr || *kind == '\0' ? "mixed" : kind);
        if (k == StateKind::classical || k == StateKind::classical_sparse) {
            *out = new ss_state{
                StateVariant(random_classical(profile, seed, k == StateKind::classical_sparse))};
        } else {
            *out = new ss_state{StateVariant(random_state(profile, k, seed))};
        }
    });
}

ss_status ss_state_worst_case(int n, const char* active, ss_state** out) {
    return guarded([&] {
        require(out != nullptr, "ss_state_worst_case: null argument");
        WorstCaseParams params;
        params.n = n;
        params.active = active_or_default(active);
        params.validate();
        *out = new ss_state{StateVariant(build_worst_case(params))};
    });
}

int ss_state_party_count(const ss_state* state) {
    if (state == nullptr) return 0;
    return static_cast<int>(state_profile(state->value).dims().size());
}

long ss_state_total_dim(const ss_state* state) {
    if (state == nullptr) return 0;
    return state_profile(state->value).total_dim();
}

double ss_state_trace(const ss_state* state) {
    if (state == nullptr) return 0.0;
    return state_trace(state->value);
}

int ss_state_is_classical(const ss_state* state) {
    if (state == nullptr) return 0;
    return std::holds_alternative<ClassicalState>(state->value) ? 1 : 0;
}

/* ---------- entropies ---------- */

ss_status ss_min_entropy(const ss_state* state, const char* subset, double* bits, int* infinite) {
    return guarded([&] {
        require(state != nullptr && bits != nullptr && infinite != nullptr,
                "ss_min_entropy: null argument");
        PartySet s = subset_or_whole(state->value, subset);
        EntropyValue h;
        if (std::holds_alternative<ClassicalState>(state->value)) {
            h = min_entropy(std::get<ClassicalState>(state->value).marginal(s));
        } else {
            h = min_entropy(partial_trace(std::get<DensityOperator>(state->value), s));
        }
        *bits = h.bits;
        *infinite = h.infinite ? 1 : 0;
    });
}

ss_status ss_smooth_min_entropy(const ss_state* state, const char* subset, double eps,
                                const char* metric, double* bits, int* infinite) {
    return guarded([&] {
        require(state != nullptr && bits != nullptr && infinite != nullptr,
                "ss_smooth_min_entropy: null argument");
        PartySet s = subset_or_whole(state->value, subset);
        Metric m = metric_or(metric, Metric::trace);
        DensityOperator part =
            std::holds_alternative<ClassicalState>(state->value)
                ? std::get<ClassicalState>(state->value).marginal(s).to_density()
                : partial_trace(std::get<DensityOperator>(state->value), s);
        EntropyValue h = m == Metric::trace ? smooth_min_entropy_trace(part, eps)
                                            : smooth_min_entropy_purified(part, eps);
        *bits = h.bits;
        *infinite = h.infinite ? 1 : 0;
    });
}

/* ---------- smoothing ---------- */

ss_status ss_smooth(const ss_state* state, const char* subsets, double eps, const char* metric,
                    ss_state** sigma_out, ss_report** report_out) {
    return guarded([&] {
        require(state != nullptr && subsets != nullptr, "ss_smooth: null argument");
        std::vector<PartySet> family_sets = parse_subsets(subsets);
        const bool metric_given = metric != nullptr && *metric != '\0';
        StateVariant sigma_value = state->value;  // placeholder, replaced below
        SmoothingReport report;
        std::string method;
        if (std::holds_alternative<ClassicalState>(state->value)) {
            SubsetFamily family{family_sets, eps, metric_or(metric, Metric::trace)};
            auto smoothed = smooth_classical(std::get<ClassicalState>(state->value), family);
            sigma_value = StateVariant(std::move(smoothed.first));
            report = std::move(smoothed.second);
            method = smooth_method_name(SmoothMethod::classical);
        } else {
            const DensityOperator& rho = std::get<DensityOperator>(state->value);
            SubsetFamily family{family_sets, eps, metric_or(metric, Metric::trace)};
            SmoothOutcome outcome = smooth_auto(rho, family);
            if (!metric_given && outcome.method != SmoothMethod::classical) {
                family.metric = Metric::purified;
                outcome.report = verify(rho, outcome.sigma, family);
            }
            method = smooth_method_name(outcome.method);
            report = std::move(outcome.report);
            sigma_value = StateVariant(std::move(outcome.sigma));
        }
        if (sigma_out != nullptr) *sigma_out = new ss_state{std::move(sigma_value)};
        if (report_out != nullptr) *report_out = new ss_report{std::move(report), std::move(method)};
    });
}

ss_status ss_verify_pair(const ss_state* rho, const ss_state* sigma, const char* subsets,
                         double eps, const char* metric, ss_report** report_out) {
    return guarded([&] {
        require(rho != nullptr && sigma != nullptr && subsets != nullptr &&
                    report_out != nullptr,
                "ss_verify_pair: null argument");
        std::vector<PartySet> family_sets = parse_subsets(subsets);
        const bool both_classical = std::holds_alternative<ClassicalState>(rho->value) &&
                                    std::holds_alternative<ClassicalState>(sigma->value);
        if (both_classical) {
            SubsetFamily family{family_sets, eps, metric_or(metric, Metric::trace)};
            SmoothingReport report = verify(std::get<ClassicalState>(rho->value),
                                            std::get<ClassicalState>(sigma->value), family);
            *report_out = new ss_report{std::move(report), ""};
            return;
        }
        DensityOperator a = std::holds_alternative<ClassicalState>(rho->value)
                                ? std::get<ClassicalState>(rho->value).to_density()
                                : std::get<DensityOperator>(rho->value);
        DensityOperator b = std::holds_alternative<ClassicalState>(sigma->value)
                                ? std::get<ClassicalState>(sigma->value).to_density()
                                : std::get<DensityOperator>(sigma->value);
        Metric fallback = Metric::purified;
        if (metric == nullptr || *metric == '\0') {
            SubsetFamily probe{family_sets, eps, Metric::trace};
            probe.validate(a.profile());
            if (check_commuting_marginals(a, probe)) fallback = Metric::trace;
        }
        SubsetFamily family{family_sets, eps, metric_or(metric, fallback)};
        SmoothingReport report = verify(a, b, family);
        *report_out = new ss_report{std::move(report), ""};
    });
}

/* ---------- reports ---------- */

ss_status ss_report_to_json(const ss_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "ss_report_to_json: null argument");
        *out = dup_string(report_to_json(report->report, report->method));
    });
}

ss_status ss_report_to_csv(const ss_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "ss_report_to_csv: null argument");
        *out = dup_string(report_to_csv(report->report, report->method));
    });
}

int ss_report_entropy_pass(const ss_report* report) {
    if (report == nullptr) return 0;
    return report->report.entropy_pass ? 1 : 0;
}

int ss_report_distance_pass(const ss_report* report) {
    if (report == nullptr) return 0;
    return report->report.distance_pass ? 1 : 0;
}

/* ---------- batch drivers ---------- */

ss_status ss_suite_names(char** out) {
    return guarded([&] {
        require(out != nullptr, "ss_suite_names: null argument");
        std::string joined;
        for (const std::string& name : suite_names()) {
            if (!joined.empty()) joined += '\n';
            joined += name;
        }
        *out = dup_string(joined);
    });
}

ss_status ss_run_suite(const char* name, const char* dims, double eps, int trials, uint64_t seed,
                       int threads, const char* format, char** out, int* all_pass,
                       uint64_t* first_fail_seed) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "ss_run_suite: null argument");
        SuiteConfig cfg;
        cfg.name = name;
        if (dims != nullptr && *dims != '\0') cfg.dims = parse_dims(dims).dims();
        cfg.epsilon = eps;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        std::string fmt = normalized_format(format);
        SuiteResult result = run_suite(cfg);
        *out = dup_string(fmt == "json" ? suite_result_to_json(result)
                                        : suite_result_to_csv(result));
        if (all_pass != nullptr) *all_pass = result.pass ? 1 : 0;
        if (first_fail_seed != nullptr) {
            *first_fail_seed = result.first_fail_trial >= 0 ? result.first_fail_seed : 0;
        }
    });
}

ss_status ss_worstcase_sweep(int n_min, int n_max, const char* active, double eps,
                             const char* format, char** out) {
    return guarded([&] {
        require(out != nullptr, "ss_worstcase_sweep: null argument");
        std::string fmt = normalized_format(format);
        SweepResult result = worstcase_sweep(n_min, n_max, active_or_default(active), eps);
        *out = dup_string(fmt == "json" ? sweep_to_json(result) : sweep_to_csv(result));
    });
}

ss_status ss_explore(const char* dims, const char* kind, double eps, int trials, uint64_t seed,
                     int threads, const char* format, char** out) {
    return guarded([&] {
        require(out != nullptr, "ss_explore: null argument");
        ExploreConfig cfg;
        if (dims != nullptr && *dims != '\0') cfg.profile = parse_dims(dims);
        if (kind != nullptr && *kind != '\0') cfg.kind = parse_state_kind(kind);
        if (eps >= 0.0) cfg.epsilon = eps;
        if (trials > 0) cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        std::string fmt = normalized_format(format);
        ExploreResult result = run_explore(cfg);
        *out = dup_string(fmt == "json" ? explore_to_json(result) : explore_to_csv(result));
    });
}

}  // extern "C"
