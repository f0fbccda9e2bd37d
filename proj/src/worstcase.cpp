#include "simsmooth/worstcase.hpp"

#include <algorithm>
#include <cmath>

#include "simsmooth/entropy.hpp"

namespace simsmooth {

namespace {

const PartySet kRow = PartySet::of({0});        // A1: weight on the center row
const PartySet kCol = PartySet::of({1});        // A2: weight on the center column
const PartySet kDiag = PartySet::of({0, 1});    // A1A2: weight on a diagonal

}  // namespace

void WorstCaseParams::validate() const {
    if (n < 2) throw std::invalid_argument("WorstCaseParams: n must be >= 2");
    if (active.empty()) throw std::invalid_argument("WorstCaseParams: no active subsets");
    for (size_t i = 0; i < active.size(); ++i) {
        if (active[i] != kRow && active[i] != kCol && active[i] != kDiag) {
            throw std::invalid_argument("WorstCaseParams: subset " + active[i].to_string() +
                                        " is not one of A1, A2, A1A2");
        }
        for (size_t j = i + 1; j < active.size(); ++j) {
            if (active[i] == active[j]) {
                throw std::invalid_argument("WorstCaseParams: duplicate subset " + active[i].to_string());
            }
        }
    }
    if (cells() > kWorstCaseCellLimit) {
        throw OversizeError("WorstCaseParams: grid has " + std::to_string(cells()) +
                            " cells, above the limit of " + std::to_string(kWorstCaseCellLimit));
    }
}

ClassicalState build_worst_case(const WorstCaseParams& params) {
    params.validate();
    const long d = params.side();
    const long n = params.n;
    const long c = n * n;  // center index, 0-based
    const double weight = 1.0 / static_cast<double>(params.active.size());
    std::vector<double> p(d * d, 0.0);

    const bool row_on = std::find(params.active.begin(), params.active.end(), kRow) != params.active.end();
    const bool col_on = std::find(params.active.begin(), params.active.end(), kCol) != params.active.end();
    const bool diag_on = std::find(params.active.begin(), params.active.end(), kDiag) != params.active.end();

    // Row and column carry their weight uniformly over 2n^2 cells, skipping
    // the shared center cell; the diagonal carries its weight over the 2n
    // cells at 0-based index kn - 1, k = 1..2n (every n-th cell, 1-based).
    // The three supports are pairwise disjoint: kn - 1 = n^2 would need n to
    // divide 1, impossible for n >= 2.
    if (row_on) {
        const double per = weight / static_cast<double>(2 * n * n);
        for (long j = 0; j < d; ++j) {
            if (j != c) p[c * d + j] += per;
        }
    }
    if (col_on) {
        const double per = weight / static_cast<double>(2 * n * n);
        for (long i = 0; i < d; ++i) {
            if (i != c) p[i * d + c] += per;
        }
    }
    if (diag_on) {
        const double per = weight / static_cast<double>(2 * n);
        for (long k = 1; k <= 2 * n; ++k) {
            const long i = k * n - 1;
            p[i * d + i] += per;
        }
    }
    return ClassicalState::trusted(DimProfile({static_cast<int>(d), static_cast<int>(d)}), std::move(p));
}

ClaimVerdict verify_claim_one(const WorstCaseParams& params, double eps, double oracle_distance) {
    params.validate();
    if (!(eps >= 0.0)) throw std::invalid_argument("verify_claim_one: eps must be >= 0");
    const double limit = 1.0 / static_cast<double>(params.active.size());
    if (eps >= limit) {
        throw std::invalid_argument("verify_claim_one: eps must be below 1/|active| = " +
                                    std::to_string(limit));
    }
    const double bound = static_cast<double>(params.active.size()) * eps;
    ClaimVerdict v;
    v.gap = bound - oracle_distance;
    v.pass = oracle_distance >= bound - 1e-7;
    return v;
}

double obstruction_factor(long d, double eps) {
    if (d < 1) throw std::invalid_argument("obstruction_factor: d must be >= 1");
    if (!(eps >= 0.0) || eps >= 1.0) {
        throw std::invalid_argument("obstruction_factor: eps must lie in [0, 1)");
    }
    const double floor = (1.0 - eps) / static_cast<double>(d);
    std::vector<double> spectrum(d, floor);
    spectrum[0] += eps;
    const CapSolution cs = trace_cap_level(std::span<const double>(spectrum), eps);
    return cs.infinite ? 0.0 : cs.cap / spectrum[0];
}

}  // namespace simsmooth
