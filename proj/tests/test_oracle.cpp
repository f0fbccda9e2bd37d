// Oracle tests: the LP's optimum against hand values, dominance over the
// iterative smoother, feasibility of the returned tensor, and the agreement
// between the reduced and literal formulations.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <span>
#include <vector>

#include "simsmooth/distance.hpp"
#include "simsmooth/entropy.hpp"
#include "simsmooth/oracle.hpp"
#include "simsmooth/random.hpp"
#include "simsmooth/worstcase.hpp"

using namespace simsmooth;

namespace {

SubsetFamily family_of(std::vector<PartySet> subsets, double eps) {
    SubsetFamily f;
    f.subsets = std::move(subsets);
    f.epsilon = eps;
    return f;
}

std::vector<double> caps_for(const ClassicalState& p, const std::vector<PartySet>& subsets,
                             double eps) {
    std::vector<double> caps;
    for (const PartySet& s : subsets) {
        const ClassicalState marg = p.marginal(s);
        const CapSolution cs = trace_cap_level(std::span<const double>(marg.probs()), eps);
        caps.push_back(cs.infinite ? 0.0 : cs.cap);
    }
    return caps;
}

}  // namespace

// ---------- exact small cases ----------

TEST_CASE("eps zero keeps the input as the optimum") {
    ClassicalState p = random_classical(DimProfile({2, 3}), 61, false);
    OracleResult r = optimal_classical_smoother(
        p, family_of({PartySet::of({0}), PartySet::of({1})}, 0.0));
    CHECK(r.distance <= 1e-10);
    CHECK(r.lp_objective <= 1e-10);
    for (long k = 0; k < p.dim(); ++k) CHECK(std::abs(r.q.probs()[k] - p.probs()[k]) <= 1e-10);
}

TEST_CASE("a single-party state pays exactly eps") {
    ClassicalState p = ClassicalState::validated(DimProfile({3}), {0.5, 0.25, 0.25});
    OracleResult r = optimal_classical_smoother(p, family_of({PartySet::of({0})}, 0.1));
    CHECK(std::abs(r.distance - 0.1) <= 1e-9);
    CHECK(std::abs(r.lp_objective - r.distance) <= 1e-9);
    // The optimal tensor meets the cap exactly.
    const CapSolution cs = trace_cap_level(std::span<const double>(p.probs()), 0.1);
    for (long k = 0; k < 3; ++k) CHECK(r.q.probs()[k] <= cs.cap + 1e-9);
}

TEST_CASE("single-subset instances always cost exactly the removed mass") {
    for (int trial = 0; trial < 15; ++trial) {
        ClassicalState p = random_classical(DimProfile({4}), 100 + trial, false);
        const double eps = 0.07;
        OracleResult r = optimal_classical_smoother(p, family_of({PartySet::of({0})}, eps));
        const CapSolution cs = trace_cap_level(std::span<const double>(p.probs()), eps);
        CHECK(std::abs(r.distance - cs.removed_mass) <= 1e-8);
    }
}

TEST_CASE("the uniform two-bit state with both singleton caps pays eps") {
    // Caps 0.45 per party allow shifting instead of pure removal; the optimum
    // moves 0.05 of mass and adds nothing, hence distance 0.1 at eps 0.1.
    ClassicalState p = ClassicalState::validated(DimProfile({2, 2}), {0.25, 0.25, 0.25, 0.25});
    OracleResult r = optimal_classical_smoother(
        p, family_of({PartySet::of({0}), PartySet::of({1})}, 0.1));
    CHECK(r.distance <= 0.1 + 1e-9);
    ClassicalState m1 = r.q.marginal(PartySet::of({0}));
    CHECK(m1.probs()[0] <= 0.45 + 1e-9);
    CHECK(m1.probs()[1] <= 0.45 + 1e-9);
}

TEST_CASE("the worst-case grid at eps 0.05 pays three eps") {
    WorstCaseParams params;
    params.n = 2;
    params.active = {PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})};
    ClassicalState p = build_worst_case(params);
    OracleResult r = optimal_classical_smoother(
        p, family_of({PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})}, 0.05));
    CHECK(std::abs(r.distance - 0.15) <= 1e-9);
}

// ---------- invariants ----------

TEST_CASE("the oracle never does worse than the iterative smoother") {
    for (int trial = 0; trial < 20; ++trial) {
        ClassicalState p = random_classical(DimProfile({3, 3}), 200 + trial, trial % 2 == 0);
        SubsetFamily f = family_of(
            {PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})}, 0.08);
        OracleResult r = optimal_classical_smoother(p, f);
        auto [sigma, report] = smooth_classical(p, f);
        CHECK(r.distance <= trace_distance(p, sigma) + 1e-8);
    }
}

TEST_CASE("the returned tensor satisfies every marginal cap") {
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalState p = random_classical(DimProfile({2, 2, 2}), 300 + trial, false);
        std::vector<PartySet> subsets = {PartySet::of({0}), PartySet::of({1, 2}),
                                         PartySet::of({0, 1, 2})};
        const double eps = 0.1;
        OracleResult r = optimal_classical_smoother(p, family_of(subsets, eps));
        const std::vector<double> caps = caps_for(p, subsets, eps);
        for (size_t si = 0; si < subsets.size(); ++si) {
            ClassicalState marg = r.q.marginal(subsets[si]);
            for (long a = 0; a < marg.dim(); ++a) CHECK(marg.probs()[a] <= caps[si] + 1e-10);
        }
        CHECK(std::abs(trace_distance(p, r.q) - r.distance) <= 1e-12);
        CHECK(std::abs(r.distance - r.lp_objective) <= 1e-8);
    }
}

TEST_CASE("the reduced and literal formulations agree") {
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalState p = random_classical(DimProfile({3, 2}), 400 + trial, false);
        std::vector<PartySet> subsets = {PartySet::of({0}), PartySet::of({0, 1})};
        const std::vector<double> caps = caps_for(p, subsets, 0.12);
        SmootherLp reduced = build_smoother_lp(p, subsets, caps, false);
        SmootherLp literal = build_smoother_lp(p, subsets, caps, true);
        CHECK(!reduced.literal);
        CHECK(literal.literal);
        CHECK(reduced.cells == p.dim());
        const double a = lp_solve(reduced.lp).objective;
        const double b = lp_solve(literal.lp).objective;
        CHECK(std::abs(a - b) <= 1e-8);
    }
}

TEST_CASE("full-set caps become variable bounds instead of rows") {
    ClassicalState p = random_classical(DimProfile({2, 2}), 62, false);
    std::vector<PartySet> subsets = {PartySet::of({0, 1})};
    const std::vector<double> caps = caps_for(p, subsets, 0.1);
    SmootherLp built = build_smoother_lp(p, subsets, caps, false);
    CHECK(built.subset_rows == 0);
    for (long k = 0; k < p.dim(); ++k) CHECK(built.lp.upper[k] <= caps[0] + 1e-15);
}

// ---------- errors and guards ----------

TEST_CASE("the purified metric is rejected") {
    ClassicalState p = random_classical(DimProfile({2, 2}), 63, false);
    SubsetFamily f = family_of({PartySet::of({0})}, 0.1);
    f.metric = Metric::purified;
    CHECK_THROWS_AS(optimal_classical_smoother(p, f), std::invalid_argument);
}

TEST_CASE("oversized tensors are rejected with a pointer to the smoother") {
    ClassicalState p = random_classical(DimProfile({80, 80}), 64, true);
    SubsetFamily f = family_of({PartySet::of({0})}, 0.1);
    try {
        optimal_classical_smoother(p, f);
        FAIL("expected OversizeError");
    } catch (const OversizeError& e) {
        CHECK(std::string(e.what()).find("iterative") != std::string::npos);
    }
}

TEST_CASE("an invalid family is rejected before solving") {
    ClassicalState p = random_classical(DimProfile({2, 2}), 65, false);
    CHECK_THROWS_AS(optimal_classical_smoother(p, family_of({}, 0.1)), std::invalid_argument);
    CHECK_THROWS_AS(optimal_classical_smoother(p, family_of({PartySet::of({0})}, -0.2)),
                    std::invalid_argument);
}

// ---------- saturated caps ----------

TEST_CASE("an eps above the total mass forces an empty optimum") {
    ClassicalState p = ClassicalState::validated(DimProfile({2}), {0.2, 0.1});
    OracleResult r = optimal_classical_smoother(p, family_of({PartySet::of({0})}, 0.5));
    // The cap collapses to zero, so all mass must go; the distance is the mass.
    CHECK(std::abs(r.distance - 0.3) <= 1e-9);
    for (long k = 0; k < 2; ++k) CHECK(r.q.probs()[k] <= 1e-10);
}
