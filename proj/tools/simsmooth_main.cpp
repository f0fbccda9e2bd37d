// Command line front end; everything goes through the C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "simsmooth/capi.h"

namespace {

struct StateHandle {
    ss_state* p = nullptr;
    ~StateHandle() { ss_state_free(p); }
};

struct ReportHandle {
    ss_report* p = nullptr;
    ~ReportHandle() { ss_report_free(p); }
};

struct StringHandle {
    char* p = nullptr;
    ~StringHandle() { ss_string_free(p); }
};

int fail(ss_status status) {
    std::cerr << "error (" << ss_status_name(status) << "): " << ss_last_error() << "\n";
    return status == SS_ERR_UNSUPPORTED_FAMILY ? 1 : 2;
}

int write_output(const std::string& path, const char* text) {
    std::string body = text == nullptr ? "" : text;
    if (!body.empty() && body.back() != '\n') body += '\n';
    if (path.empty() || path == "-") {
        std::cout << body;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error (io error): cannot open " << path << "\n";
        return 2;
    }
    out << body;
    out.flush();
    if (!out) {
        std::cerr << "error (io error): write failure on " << path << "\n";
        return 2;
    }
    return 0;
}

struct SmoothArgs {
    std::string input;
    std::string dims;
    std::string kind = "mixed";
    uint64_t seed = 1;
    std::string subsets;
    double epsilon = 0.0;
    std::string metric;
    std::string format = "json";
    std::string out = "-";
    std::string sigma_out;
};

int run_smooth(const SmoothArgs& a) {
    StateHandle state;
    ss_status st;
    if (!a.input.empty()) {
        st = ss_state_load(a.input.c_str(), &state.p);
    } else if (!a.dims.empty()) {
        st = ss_state_random(a.dims.c_str(), a.kind.c_str(), a.seed, &state.p);
    } else {
        std::cerr << "error (invalid argument): provide --input or --dims\n";
        return 2;
    }
    if (st != SS_OK) return fail(st);

    StateHandle sigma;
    ReportHandle report;
    st = ss_smooth(state.p, a.subsets.c_str(), a.epsilon,
                   a.metric.empty() ? nullptr : a.metric.c_str(), &sigma.p, &report.p);
    if (st != SS_OK) return fail(st);

    StringHandle text;
    st = a.format == "csv" ? ss_report_to_csv(report.p, &text.p)
                           : ss_report_to_json(report.p, &text.p);
    if (st != SS_OK) return fail(st);
    int rc = write_output(a.out, text.p);
    if (rc != 0) return rc;

    if (!a.sigma_out.empty()) {
        st = ss_state_save(sigma.p, a.sigma_out.c_str());
        if (st != SS_OK) return fail(st);
    }
    return 0;
}

struct VerifyArgs {
    std::string suite;
    bool list = false;
    std::string dims;
    double epsilon = -1.0;
    int trials = 0;
    uint64_t seed = 1;
    int threads = 0;
    std::string format = "json";
    std::string out = "-";
};

int run_verify(const VerifyArgs& a) {
    if (a.list) {
        StringHandle names;
        ss_status st = ss_suite_names(&names.p);
        if (st != SS_OK) return fail(st);
        return write_output("-", names.p);
    }
    if (a.suite.empty()) {
        std::cerr << "error (invalid argument): name a suite or pass --list\n";
        return 2;
    }
    StringHandle text;
    int all_pass = 0;
    uint64_t first_fail_seed = 0;
    ss_status st = ss_run_suite(a.suite.c_str(), a.dims.c_str(), a.epsilon, a.trials, a.seed,
                                a.threads, a.format.c_str(), &text.p, &all_pass, &first_fail_seed);
    if (st != SS_OK) return fail(st);
    int rc = write_output(a.out, text.p);
    if (rc != 0) return rc;
    if (all_pass == 0) {
        std::cerr << "suite " << a.suite << " failed; first failing seed " << first_fail_seed
                  << "\n";
        return 1;
    }
    return 0;
}

struct WorstcaseArgs {
    int n_min = 2;
    int n_max = 4;
    std::string subsets = "1;2;1,2";
    double epsilon = 0.05;
    std::string format = "json";
    std::string out = "-";
};

int run_worstcase(const WorstcaseArgs& a) {
    StringHandle text;
    ss_status st = ss_worstcase_sweep(a.n_min, a.n_max, a.subsets.c_str(), a.epsilon,
                                      a.format.c_str(), &text.p);
    if (st != SS_OK) return fail(st);
    return write_output(a.out, text.p);
}

struct ExploreArgs {
    std::string dims = "2,2,2";
    std::string kind = "mixed";
    double epsilon = 0.05;
    int trials = 100;
    uint64_t seed = 1;
    int threads = 0;
    std::string format = "json";
    std::string out = "-";
};

int run_explore(const ExploreArgs& a) {
    StringHandle text;
    ss_status st = ss_explore(a.dims.c_str(), a.kind.c_str(), a.epsilon, a.trials, a.seed,
                              a.threads, a.format.c_str(), &text.p);
    if (st != SS_OK) return fail(st);
    return write_output(a.out, text.p);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simultaneous min-entropy smoothing toolkit"};
    app.set_version_flag("--version", std::string(ss_version()));
    app.require_subcommand(0, 1);

    const std::vector<std::string> kinds = {"pure", "mixed", "classical", "classical-sparse"};
    const std::vector<std::string> formats = {"json", "csv"};
    const std::vector<std::string> metrics = {"trace", "purified"};

    SmoothArgs sa;
    CLI::App* smooth = app.add_subcommand(
        "smooth", "smooth a state so every requested marginal meets its entropy target");
    smooth->add_option("--input", sa.input, "state JSON file")->check(CLI::ExistingFile);
    smooth->add_option("--dims", sa.dims, "generate a random input with these dimensions, e.g. 2,3,2");
    smooth->add_option("--kind", sa.kind, "random input kind")->check(CLI::IsMember(kinds));
    smooth->add_option("--seed", sa.seed, "random input seed");
    smooth->add_option("--subsets", sa.subsets, "subset family, 1-based, e.g. '1;2;1,2'")
        ->required();
    smooth->add_option("--epsilon", sa.epsilon, "smoothing radius")->required();
    smooth->add_option("--metric", sa.metric, "distance metric for the report (default: automatic)")
        ->check(CLI::IsMember(metrics));
    smooth->add_option("--format", sa.format, "report format")->check(CLI::IsMember(formats));
    smooth->add_option("--out", sa.out, "report destination ('-' for stdout)");
    smooth->add_option("--sigma-out", sa.sigma_out, "write the smoothed state JSON here");

    VerifyArgs va;
    CLI::App* verify =
        app.add_subcommand("verify", "run one of the named randomized verification suites");
    verify->add_option("suite", va.suite, "suite name (see --list)");
    verify->add_flag("--list", va.list, "print the available suite names");
    verify->add_option("--dims", va.dims, "override the suite's default dimensions");
    verify->add_option("--epsilon", va.epsilon, "override the suite's epsilon grid");
    verify->add_option("--trials", va.trials, "trial count (default: per suite)");
    verify->add_option("--seed", va.seed, "suite seed");
    verify->add_option("--threads", va.threads, "worker threads (0: hardware count)");
    verify->add_option("--format", va.format, "output format")->check(CLI::IsMember(formats));
    verify->add_option("--out", va.out, "output destination ('-' for stdout)");

    WorstcaseArgs wa;
    CLI::App* worstcase = app.add_subcommand(
        "worstcase", "sweep the adversarial grid and compare smoother, optimum, and bound");
    worstcase->add_option("--n-min", wa.n_min, "smallest grid scale")->check(CLI::Range(2, 100));
    worstcase->add_option("--n-max", wa.n_max, "largest grid scale")->check(CLI::Range(2, 100));
    worstcase->add_option("--subsets", wa.subsets, "active subsets among '1;2;1,2'");
    worstcase->add_option("--epsilon", wa.epsilon, "smoothing radius");
    worstcase->add_option("--format", wa.format, "output format")->check(CLI::IsMember(formats));
    worstcase->add_option("--out", wa.out, "output destination ('-' for stdout)");

    ExploreArgs ea;
    CLI::App* explore = app.add_subcommand(
        "explore", "probe the overlapping family {A1A2, A2A3} and record target deficits");
    explore->add_option("--dims", ea.dims, "three-party dimensions");
    explore->add_option("--kind", ea.kind, "random state kind")->check(CLI::IsMember(kinds));
    explore->add_option("--epsilon", ea.epsilon, "smoothing radius");
    explore->add_option("--trials", ea.trials, "trial count");
    explore->add_option("--seed", ea.seed, "probe seed");
    explore->add_option("--threads", ea.threads, "worker threads (0: hardware count)");
    explore->add_option("--format", ea.format, "output format")->check(CLI::IsMember(formats));
    explore->add_option("--out", ea.out, "output destination ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*smooth) return run_smooth(sa);
    if (*verify) return run_verify(va);
    if (*worstcase) return run_worstcase(wa);
    if (*explore) return run_explore(ea);
    std::cout << app.help();
    return 2;
}
