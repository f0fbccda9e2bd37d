#include "simsmooth/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "simsmooth/channel.hpp"
#include "simsmooth/distance.hpp"
#include "simsmooth/entropy.hpp"
#include "simsmooth/io.hpp"
#include "simsmooth/oracle.hpp"
#include "simsmooth/spectrum.hpp"
#include "simsmooth/worstcase.hpp"

namespace simsmooth {

using ordered_json = nlohmann::ordered_json;

// ---------- shared plumbing ----------

uint64_t trial_seed(uint64_t seed, int trial) {
    return splitmix64(seed ^ splitmix64(0x9E3779B97F4A7C15ULL * (static_cast<uint64_t>(trial) + 1)));
}

int resolve_thread_count(int requested, int jobs) {
    long count = requested > 0 ? requested : static_cast<long>(std::thread::hardware_concurrency());
    if (count < 1) count = 1;
    if (const char* env = std::getenv("SIMSMOOTH_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) count = std::min(count, cap);
    }
    count = std::min(count, static_cast<long>(std::max(1, jobs)));
    return static_cast<int>(std::max(1L, count));
}

namespace {

// Runs fn(0..jobs-1) over a worker pool; rethrows the first failure after the
// pool drains.  Trial order is irrelevant since every job is independent.
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::string first_error;
    auto body = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= jobs) break;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> guard(err_mutex);
                if (first_error.empty()) first_error = e.what();
            } catch (...) {
                std::lock_guard<std::mutex> guard(err_mutex);
                if (first_error.empty()) first_error = "unknown error";
            }
        }
    };
    if (threads <= 1 || jobs <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(body);
        for (std::thread& th : pool) th.join();
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);
}

// Accumulates the worst tolerance-adjusted excess; a trial passes iff <= 0.
struct Checks {
    double worst = -1.0;

    void le(double value, double bound, double tol) { worst = std::max(worst, value - bound - tol); }
    void ge(double value, double bound, double tol) { le(bound, value, tol); }
    void near(double a, double b, double tol) { le(std::abs(a - b), 0.0, tol); }
    void require(bool ok) {
        if (!ok) worst = std::max(worst, 1.0);
    }
};

// target - achieved with the +inf sentinel ordered above every finite value.
double entropy_deficit(const EntropyValue& target, const EntropyValue& achieved) {
    if (achieved.infinite) return -1.0;
    if (target.infinite) return std::numeric_limits<double>::infinity();
    return target.bits - achieved.bits;
}

std::vector<PartySet> all_subsets(int parties) {
    std::vector<PartySet> out;
    for (int mask = 1; mask < (1 << parties); ++mask) {
        std::vector<int> members;
        for (int p = 0; p < parties; ++p) {
            if (mask & (1 << p)) members.push_back(p);
        }
        out.emplace_back(std::move(members));
    }
    return out;
}

const std::vector<std::vector<int>>& rotation_profiles() {
    static const std::vector<std::vector<int>> profiles = {
        {2},     {3},      {4},  {2, 2},    {5},  {2, 3},    {7},  {2, 2, 2},
        {3, 3},  {2, 2, 2, 2}, {16}, {3, 5},    {2, 4}, {11},   {2, 2, 3}, {13}};
    return profiles;
}

DimProfile rotating_profile(const SuiteConfig& cfg, int trial) {
    if (!cfg.dims.empty()) return DimProfile(cfg.dims);
    const auto& rot = rotation_profiles();
    return DimProfile(rot[static_cast<size_t>(trial) % rot.size()]);
}

DimProfile fixed_profile(const SuiteConfig& cfg, std::vector<int> fallback) {
    return DimProfile(cfg.dims.empty() ? std::move(fallback) : cfg.dims);
}

DensityOperator scale_state(const DensityOperator& t, double s) {
    return DensityOperator::trusted(t.profile(), t.matrix() * s);
}

double smallest_eigenvalue(const Matrix& m) {
    RealVector vals = hermitian_eigenvalues(m);
    return vals(vals.size() - 1);
}

// Deficits against the recomputed trace targets plus the metric-appropriate
// distance bound and the two pass flags.
void check_report(Checks& c, const SmoothingReport& rep) {
    for (const SubsetRecord& r : rep.records) {
        c.le(entropy_deficit(r.target_trace, r.hmin_after), 0.0, 1e-9);
    }
    const bool purified = rep.metric == Metric::purified;
    c.le(purified ? rep.distance_purified : rep.distance_trace,
         purified ? rep.bound_purified : rep.bound_trace, 1e-9);
    c.require(rep.entropy_pass);
    c.require(rep.distance_pass);
}

// ---------- suite trial bodies ----------

double suite_lemma1(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                    uint64_t seed) {
    static const StateKind kinds[] = {StateKind::mixed, StateKind::pure, StateKind::classical};
    DimProfile profile = rotating_profile(cfg, trial);
    DensityOperator rho = random_state(profile, kinds[trial % 3], seed);
    Checks c;
    for (double eps : eps_list) {
        DensityOperator sigma = smoothed_state_trace(rho, eps);
        c.le(trace_distance(rho, sigma), eps, 1e-10);
        EntropyValue h = smooth_min_entropy_trace(rho, eps);
        double peak = hermitian_eigenvalues(sigma.matrix())(0);
        if (h.infinite) {
            c.le(peak, 0.0, 1e-12);
        } else {
            c.near(peak, std::exp2(-h.bits), 1e-12);
        }
    }
    return c.worst;
}

double suite_lemma3(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                    uint64_t seed) {
    DimProfile profile = fixed_profile(cfg, {2, 3, 2});
    const int parties = static_cast<int>(profile.dims().size());
    DensityOperator rho = random_classical(profile, seed, trial % 2 == 1).to_density();
    std::vector<PartySet> subsets = all_subsets(parties);
    Checks c;
    for (double eps : eps_list) {
        std::vector<SmoothingChannel> chans;
        chans.reserve(subsets.size());
        for (const PartySet& s : subsets) {
            chans.push_back(build_smoothing_channel(partial_trace(rho, s), s, eps));
        }
        for (size_t i = 0; i < chans.size(); ++i) {
            for (size_t j = i + 1; j < chans.size(); ++j) {
                DensityOperator ab = apply_extended(chans[j], apply_extended(chans[i], rho));
                DensityOperator ba = apply_extended(chans[i], apply_extended(chans[j], rho));
                c.le(max_abs_entry(ab.matrix() - ba.matrix()), 0.0, 1e-10);
            }
        }
        DensityOperator omega = rho;
        for (const SmoothingChannel& ch : chans) {
            DensityOperator stepped = apply_extended(ch, omega);
            c.ge(smallest_eigenvalue(omega.matrix() - stepped.matrix()), 0.0, 1e-10);
            c.le(trace_distance(omega, stepped), eps, 1e-10);
            c.le(hermitian_eigenvalues(stepped.matrix())(0),
                 hermitian_eigenvalues(omega.matrix())(0), 1e-10);
            omega = stepped;
        }
    }
    return c.worst;
}

double suite_theorem2(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                      uint64_t seed) {
    DimProfile profile = fixed_profile(cfg, {2, 3, 2});
    const int parties = static_cast<int>(profile.dims().size());
    std::vector<PartySet> subsets = all_subsets(parties);
    ClassicalState p = random_classical(profile, seed, trial % 4 == 3);
    const bool dense = trial % 2 == 0 && profile.total_dim() <= 32;
    Checks c;
    for (double eps : eps_list) {
        SubsetFamily family{subsets, eps, Metric::trace};
        if (dense) {
            DensityOperator rho = p.to_density();
            auto smoothed = smooth_classical(rho, family);
            check_report(c, smoothed.second);
            std::vector<SmoothingChannel> chans;
            for (const PartySet& s : subsets) {
                chans.push_back(build_smoothing_channel(partial_trace(rho, s), s, eps));
            }
            DensityOperator reversed = rho;
            for (auto it = chans.rbegin(); it != chans.rend(); ++it) {
                reversed = apply_extended(*it, reversed);
            }
            c.le(max_abs_entry(reversed.matrix() - smoothed.first.matrix()), 0.0, 1e-9);
        } else {
            auto smoothed = smooth_classical(p, family);
            check_report(c, smoothed.second);
            std::vector<ClassicalChannel> chans;
            for (const PartySet& s : subsets) chans.push_back(build_classical_channel(p, s, eps));
            ClassicalState reversed = p;
            for (auto it = chans.rbegin(); it != chans.rend(); ++it) {
                reversed = apply_extended(*it, reversed);
            }
            ClassicalState rotated = p;
            const size_t k = chans.size();
            for (size_t i = 0; i < k; ++i) rotated = apply_extended(chans[(i + k / 2) % k], rotated);
            double diff = 0.0;
            for (long i = 0; i < p.dim(); ++i) {
                diff = std::max(diff, std::abs(reversed.probs()[i] - smoothed.first.probs()[i]));
                diff = std::max(diff, std::abs(rotated.probs()[i] - smoothed.first.probs()[i]));
            }
            c.le(diff, 0.0, 1e-9);
        }
    }
    return c.worst;
}

double suite_theorem4(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                      uint64_t seed) {
    DimProfile profile = fixed_profile(cfg, {3, 3});
    DensityOperator rho =
        random_state(profile, trial % 3 == 1 ? StateKind::pure : StateKind::mixed, seed);
    Checks c;
    for (double eps : eps_list) {
        SubsetFamily family{{PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})}, eps,
                            Metric::purified};
        auto smoothed = smooth_two_party(rho, family);
        check_report(c, smoothed.second);
    }
    return c.worst;
}

double suite_theorem5(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                      uint64_t seed) {
    DimProfile profile = fixed_profile(cfg, {2, 2, 2});
    const bool pure = trial % 2 == 1;
    DensityOperator rho = random_state(profile, pure ? StateKind::pure : StateKind::mixed, seed);
    Checks c;
    for (double eps : eps_list) {
        SubsetFamily family{{PartySet::of({0, 1, 2}), PartySet::of({0, 1}), PartySet::of({2})},
                            eps, Metric::purified};
        auto smoothed = smooth_laminar(rho, family);
        check_report(c, smoothed.second);
        if (pure && smoothed.first.dim() > 1) {
            c.le(hermitian_eigenvalues(smoothed.first.matrix())(1), 0.0, 1e-9);
        }
    }
    return c.worst;
}

double suite_lemma4(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                    uint64_t seed) {
    (void)trial;
    DimProfile profile = fixed_profile(cfg, {3, 3});
    DensityOperator rho = random_state(profile, StateKind::mixed, seed);
    PartySet s = PartySet::of({0});
    DensityOperator marginal = partial_trace(rho, s);
    Checks c;
    for (double eps : eps_list) {
        SmoothingChannel ch = build_smoothing_channel(marginal, s, eps);
        DensityOperator local = apply_local(ch, marginal);
        DensityOperator global = apply_extended(ch, rho);
        c.near(purified_distance(rho, global), purified_distance(marginal, local), 1e-8);
        // No equality in trace distance: the conjugation commutes with the
        // marginal only, so the global move can exceed the marginal move.
        c.ge(trace_distance(rho, global), trace_distance(marginal, local), 1e-10);
    }
    return c.worst;
}

double suite_lemma5(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                    uint64_t seed) {
    (void)eps_list;
    (void)trial;
    DimProfile profile = fixed_profile(cfg, {3, 3});
    const int parties = static_cast<int>(profile.dims().size());
    DensityOperator rho = random_state(profile, StateKind::mixed, seed);
    std::vector<int> others;
    long rest_dim = 1;
    for (int p = 1; p < parties; ++p) {
        others.push_back(p);
        rest_dim *= profile.dims()[p];
    }
    PartySet rest(others);
    Rng rng(seed, 7);
    Matrix k = random_contraction(rest_dim, rng);
    Matrix embedded = embed_local(k, rest, profile);
    DensityOperator sigma =
        DensityOperator::trusted(profile, embedded * rho.matrix() * embedded.adjoint());
    PartySet first = PartySet::of({0});
    DensityOperator ra = partial_trace(rho, first);
    DensityOperator sa = partial_trace(sigma, first);
    Checks c;
    c.ge(smallest_eigenvalue(ra.matrix() - sa.matrix()), 0.0, 1e-10);
    c.le(hermitian_eigenvalues(sa.matrix())(0), hermitian_eigenvalues(ra.matrix())(0), 1e-10);
    return c.worst;
}

double suite_metric(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                    uint64_t seed) {
    (void)eps_list;
    static const std::vector<std::vector<int>> small = {{2},    {3},    {2, 2},    {4},
                                                        {2, 3}, {2, 2, 2}, {5},    {7}};
    DimProfile profile = cfg.dims.empty()
                             ? DimProfile(small[static_cast<size_t>(trial) % small.size()])
                             : DimProfile(cfg.dims);
    DensityOperator a =
        random_state(profile, trial % 2 == 1 ? StateKind::pure : StateKind::mixed, seed);
    DensityOperator b = random_state(profile, StateKind::mixed, splitmix64(seed) + 1);
    Rng rng(seed, 3);
    if (trial % 3 == 0) a = scale_state(a, 0.3 + 0.7 * rng.uniform());
    if (trial % 3 == 1) b = scale_state(b, 0.3 + 0.7 * rng.uniform());
    const double d = trace_distance(a, b);
    const double p = purified_distance(a, b);
    Checks c;
    c.le(d, p, 1e-9);
    c.le(p, std::sqrt(2.0 * d), 1e-9);
    c.near(generalized_fidelity(a, b), generalized_fidelity(b, a), 1e-12);
    c.le(trace_distance(a, a), 0.0, 1e-12);
    c.le(purified_distance(a, a), 0.0, 1e-6);
    if (profile.dims().size() > 1) {
        PartySet keep = PartySet::of({0});
        c.le(trace_distance(partial_trace(a, keep), partial_trace(b, keep)), d, 1e-9);
        c.le(purified_distance(partial_trace(a, keep), partial_trace(b, keep)), p, 1e-9);
    }
    Matrix k = random_contraction(profile.total_dim(), rng);
    DensityOperator ak = DensityOperator::trusted(profile, k * a.matrix() * k.adjoint());
    DensityOperator bk = DensityOperator::trusted(profile, k * b.matrix() * k.adjoint());
    c.le(trace_distance(ak, bk), d, 1e-9);
    c.le(purified_distance(ak, bk), p, 1e-9);
    return c.worst;
}

double suite_purified(const SuiteConfig& cfg, const std::vector<double>& eps_list, int trial,
                      uint64_t seed) {
    static const StateKind kinds[] = {StateKind::mixed, StateKind::pure, StateKind::classical};
    const StateKind kind = kinds[trial % 3];
    DimProfile profile = rotating_profile(cfg, trial);
    DensityOperator rho = random_state(profile, kind, seed);
    std::vector<double> grid = eps_list;
    std::sort(grid.begin(), grid.end());
    EntropyValue h0 = min_entropy(rho);
    Checks c;
    EntropyValue prev_trace;
    EntropyValue prev_purified;
    bool have_prev = false;
    for (double eps : grid) {
        EntropyValue hd = smooth_min_entropy_trace(rho, eps);
        EntropyValue hp = smooth_min_entropy_purified(rho, eps);
        EntropyValue hd_small = smooth_min_entropy_trace(rho, 0.5 * eps * eps);
        c.le(entropy_deficit(hp, hd), 0.0, 1e-8);        // purified ball inside trace ball
        c.le(entropy_deficit(hd_small, hp), 0.0, 1e-8);  // eps^2/2 trace ball inside it
        c.le(entropy_deficit(h0, hd), 0.0, 1e-8);        // smoothing never loses bits
        if (have_prev) {
            c.le(entropy_deficit(prev_trace, hd), 0.0, 1e-8);  // monotone in eps
            c.le(entropy_deficit(prev_purified, hp), 0.0, 1e-8);
        }
        if (kind == StateKind::pure) {
            if (hp.infinite) {
                c.require(false);
            } else {
                c.near(hp.bits, -std::log2(1.0 - eps * eps), 1e-8);
            }
        }
        prev_trace = hd;
        prev_purified = hp;
        have_prev = true;
    }
    return c.worst;
}

// ---------- suite registry ----------

struct SuiteSpec {
    const char* description;
    std::vector<double> default_eps;
    int default_trials;
    double (*run)(const SuiteConfig&, const std::vector<double>&, int, uint64_t);
    void (*check_dims)(const DimProfile&);
};

void dims_any_small(const DimProfile& p) {
    if (p.total_dim() > 64) {
        throw std::invalid_argument("suite dims: total dimension above 64 is not supported");
    }
}

void dims_family_small(const DimProfile& p) {
    if (p.dims().size() > 4 || p.total_dim() > 4096) {
        throw std::invalid_argument(
            "suite dims: the all-subsets family needs at most 4 parties and 4096 cells");
    }
}

void dims_two_parties(const DimProfile& p) {
    if (p.dims().size() != 2 || p.total_dim() > 64) {
        throw std::invalid_argument("suite dims: exactly two parties (total dimension <= 64)");
    }
}

void dims_three_parties(const DimProfile& p) {
    if (p.dims().size() != 3 || p.total_dim() > 64) {
        throw std::invalid_argument("suite dims: exactly three parties (total dimension <= 64)");
    }
}

void dims_multi_party(const DimProfile& p) {
    if (p.dims().size() < 2 || p.total_dim() > 64) {
        throw std::invalid_argument("suite dims: at least two parties (total dimension <= 64)");
    }
}

const std::map<std::string, SuiteSpec>& suite_table() {
    static const std::map<std::string, SuiteSpec> table = {
        {"lemma1",
         {"capped-spectrum smoother stays within eps and attains the smoothed entropy",
          {0.01, 0.05, 0.2},
          100,
          suite_lemma1,
          dims_any_small}},
        {"lemma3",
         {"smoothing channels commute, decrease the state, and step at most eps",
          {0.05},
          100,
          suite_lemma3,
          dims_family_small}},
        {"lemma4",
         {"half-smoothing conjugation moves the whole state exactly as far as the marginal",
          {0.1},
          100,
          suite_lemma4,
          dims_multi_party}},
        {"lemma5",
         {"contractions on the complement never raise a marginal or its peak",
          {},
          100,
          suite_lemma5,
          dims_multi_party}},
        {"metric",
         {"distance sandwich and contractivity for the trace and purified metrics",
          {},
          200,
          suite_metric,
          dims_any_small}},
        {"purified",
         {"purified-ball entropy sits between the matching trace-ball entropies",
          {0.1, 0.3, 0.6},
          100,
          suite_purified,
          dims_any_small}},
        {"theorem2",
         {"commuting-marginals smoothing: targets met, distance at most |K| eps, order free",
          {0.01, 0.05, 0.1},
          100,
          suite_theorem2,
          dims_family_small}},
        {"theorem4",
         {"two-party smoothing: targets met, purified distance at most |K| sqrt(2 eps)",
          {0.01, 0.05},
          100,
          suite_theorem4,
          dims_two_parties}},
        {"theorem5",
         {"laminar smoothing: targets met, purified bound holds, purity preserved",
          {0.01, 0.05},
          100,
          suite_theorem5,
          dims_three_parties}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : suite_table()) out.push_back(entry.first);
        return out;
    }();
    return names;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    const auto& table = suite_table();
    auto it = table.find(cfg.name);
    if (it == table.end()) {
        std::string names;
        for (const auto& entry : table) {
            if (!names.empty()) names += ", ";
            names += entry.first;
        }
        throw std::invalid_argument("run_suite: unknown suite '" + cfg.name +
                                    "'; available: " + names);
    }
    const SuiteSpec& spec = it->second;
    if (!cfg.dims.empty()) spec.check_dims(DimProfile(cfg.dims));

    SuiteResult res;
    res.name = cfg.name;
    res.description = spec.description;
    res.epsilons = cfg.epsilon >= 0.0 ? std::vector<double>{cfg.epsilon} : spec.default_eps;
    for (double eps : res.epsilons) {
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw std::invalid_argument("run_suite: epsilon must lie in [0, 1)");
        }
    }
    res.trials = cfg.trials > 0 ? cfg.trials : spec.default_trials;
    res.rows.assign(res.trials, TrialRow{});

    const int threads = resolve_thread_count(cfg.threads, res.trials);
    parallel_for(res.trials, threads, [&](int i) {
        TrialRow row;
        row.trial = i;
        row.seed = trial_seed(cfg.seed, i);
        try {
            row.violation = spec.run(cfg, res.epsilons, i, row.seed);
        } catch (const std::exception& e) {
            row.violation = std::numeric_limits<double>::infinity();
            row.note = e.what();
        }
        row.pass = row.violation <= 0.0;
        res.rows[i] = std::move(row);
    });

    res.pass = true;
    res.max_violation = -1.0;
    for (const TrialRow& row : res.rows) {
        res.max_violation = std::max(res.max_violation, row.violation);
        if (!row.pass && res.first_fail_trial < 0) {
            res.first_fail_trial = row.trial;
            res.first_fail_seed = row.seed;
        }
        res.pass = res.pass && row.pass;
    }
    return res;
}

// ---------- serialization ----------

namespace {

ordered_json finite_or_sentinel(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

ordered_json subset_json(const PartySet& s) {
    ordered_json arr = ordered_json::array();
    for (int p : s.members()) arr.push_back(p + 1);  // 1-based on the wire
    return arr;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

}  // namespace

std::string suite_result_to_json(const SuiteResult& r) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["suite"] = r.name;
    doc["description"] = r.description;
    doc["epsilons"] = r.epsilons;
    doc["trials"] = r.trials;
    doc["pass"] = r.pass;
    doc["max_violation"] = finite_or_sentinel(r.max_violation);
    doc["first_fail_trial"] = r.first_fail_trial;
    doc["first_fail_seed"] = r.first_fail_seed;
    ordered_json rows = ordered_json::array();
    for (const TrialRow& row : r.rows) {
        ordered_json j;
        j["trial"] = row.trial;
        j["seed"] = row.seed;
        j["violation"] = finite_or_sentinel(row.violation);
        j["pass"] = row.pass;
        if (!row.note.empty()) j["note"] = row.note;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2);
}

std::string suite_result_to_csv(const SuiteResult& r) {
    std::string out = "trial,seed,violation,pass,note\n";
    for (const TrialRow& row : r.rows) {
        out += std::to_string(row.trial);
        out += ',' + std::to_string(row.seed);
        out += ',' + format_double(row.violation);
        out += row.pass ? ",1" : ",0";
        out += ',' + csv_quote(row.note);
        out += '\n';
    }
    return out;
}

// ---------- adversarial grid sweep ----------

SweepResult worstcase_sweep(int n_min, int n_max, const std::vector<PartySet>& active,
                            double eps) {
    if (n_min < 2 || n_max < n_min) {
        throw std::invalid_argument("worstcase_sweep: need 2 <= n_min <= n_max");
    }
    SweepResult res;
    res.epsilon = eps;
    res.active = active;
    for (int n = n_min; n <= n_max; ++n) {
        WorstCaseParams params;
        params.n = n;
        params.active = active;
        params.validate();
        ClassicalState p = build_worst_case(params);
        SubsetFamily family{active, eps, Metric::trace};
        auto smoothed = smooth_classical(p, family);
        OracleResult oracle = optimal_classical_smoother(p, family);
        ClaimVerdict verdict = verify_claim_one(params, eps, oracle.distance);
        SweepRow row;
        row.n = n;
        row.d_iterative = smoothed.second.distance_trace;
        row.d_oracle = oracle.distance;
        row.bound = static_cast<double>(active.size()) * eps;
        row.gap = verdict.gap;
        row.claim_pass = verdict.pass;
        res.rows.push_back(row);
    }
    return res;
}

std::string sweep_to_json(const SweepResult& r) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["epsilon"] = r.epsilon;
    ordered_json active = ordered_json::array();
    for (const PartySet& s : r.active) active.push_back(subset_json(s));
    doc["active"] = std::move(active);
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : r.rows) {
        ordered_json j;
        j["n"] = row.n;
        j["d_iterative"] = row.d_iterative;
        j["d_oracle"] = row.d_oracle;
        j["bound"] = row.bound;
        j["gap"] = row.gap;
        j["claim_pass"] = row.claim_pass;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2);
}

std::string sweep_to_csv(const SweepResult& r) {
    std::string out = "n,d_iterative,d_oracle,bound,gap\n";
    for (const SweepRow& row : r.rows) {
        out += std::to_string(row.n);
        out += ',' + format_double(row.d_iterative);
        out += ',' + format_double(row.d_oracle);
        out += ',' + format_double(row.bound);
        out += ',' + format_double(row.gap);
        out += '\n';
    }
    return out;
}

// ---------- overlapping-family probe ----------

ExploreResult run_explore(const ExploreConfig& cfg) {
    if (cfg.profile.dims().size() != 3) {
        throw std::invalid_argument("run_explore: exactly three parties required");
    }
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
        throw std::invalid_argument("run_explore: epsilon must lie in [0, 1)");
    }
    if (cfg.trials < 1) throw std::invalid_argument("run_explore: at least one trial required");

    ExploreResult res{cfg, {}, 0.0, 0.0, 0.0, 0.0};
    res.rows.assign(cfg.trials, ExploreRow{});
    const int threads = resolve_thread_count(cfg.threads, cfg.trials);
    parallel_for(cfg.trials, threads, [&](int i) {
        ExploreRow row;
        row.trial = i;
        row.seed = trial_seed(cfg.seed, i);
        DensityOperator rho = random_state(cfg.profile, cfg.kind, row.seed);
        DeficitRecord rec = explore_overlapping(rho, cfg.epsilon);
        row.deficit_front = rec.entries[0].deficit_bits;
        row.deficit_back = rec.entries[1].deficit_bits;
        row.purified_distance = rec.purified_distance;
        res.rows[i] = row;
    });

    double deficit_sum = 0.0;
    double purified_sum = 0.0;
    for (const ExploreRow& row : res.rows) {
        res.max_deficit = std::max({res.max_deficit, row.deficit_front, row.deficit_back});
        res.max_purified = std::max(res.max_purified, row.purified_distance);
        deficit_sum += row.deficit_front + row.deficit_back;
        purified_sum += row.purified_distance;
    }
    res.mean_deficit = deficit_sum / (2.0 * static_cast<double>(res.rows.size()));
    res.mean_purified = purified_sum / static_cast<double>(res.rows.size());
    return res;
}

std::string explore_to_json(const ExploreResult& r) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["dims"] = r.config.profile.dims();
    doc["kind"] = state_kind_name(r.config.kind);
    doc["epsilon"] = r.config.epsilon;
    doc["trials"] = r.config.trials;
    doc["seed"] = r.config.seed;
    doc["max_deficit"] = r.max_deficit;
    doc["mean_deficit"] = r.mean_deficit;
    doc["max_purified"] = r.max_purified;
    doc["mean_purified"] = r.mean_purified;
    ordered_json rows = ordered_json::array();
    for (const ExploreRow& row : r.rows) {
        ordered_json j;
        j["trial"] = row.trial;
        j["seed"] = row.seed;
        j["deficit_front"] = row.deficit_front;
        j["deficit_back"] = row.deficit_back;
        j["purified_distance"] = row.purified_distance;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2);
}

std::string explore_to_csv(const ExploreResult& r) {
    std::string out = "trial,seed,deficit_front,deficit_back,purified_distance\n";
    for (const ExploreRow& row : r.rows) {
        out += std::to_string(row.trial);
        out += ',' + std::to_string(row.seed);
        out += ',' + format_double(row.deficit_front);
        out += ',' + format_double(row.deficit_back);
        out += ',' + format_double(row.purified_distance);
        out += '\n';
    }
    return out;
}

}  // namespace simsmooth
