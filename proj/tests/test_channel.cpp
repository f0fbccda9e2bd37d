// Smoothing-channel tests: the single Kraus operator caps the chosen marginal,
// extends by identity, and keeps the purified distance of the extension equal
// to that of the marginal action.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "simsmooth/channel.hpp"
#include "simsmooth/distance.hpp"
#include "simsmooth/random.hpp"
#include "simsmooth/spectrum.hpp"

using namespace simsmooth;

namespace {

DensityOperator diag_state(std::vector<int> dims, std::vector<double> values) {
    DimProfile profile(std::move(dims));
    Matrix m = Matrix::Zero(profile.total_dim(), profile.total_dim());
    for (size_t k = 0; k < values.size(); ++k) m(k, k) = values[k];
    return DensityOperator::validated(profile, m);
}

DensityOperator bell_state() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityOperator::validated(DimProfile({2, 2}), m);
}


}  // namespace

// ---------- multiplier field ----------

TEST_CASE("cap multiplier caps above and passes below") {
    CHECK(cap_multiplier(0.5, 0.4) == 0.8);
    CHECK(cap_multiplier(0.3, 0.4) == 1.0);
    CHECK(cap_multiplier(0.4, 0.4) == 1.0);
    CHECK(cap_multiplier(0.0, 0.4) == 1.0);      // kernel entries stay put
    CHECK(cap_multiplier(1e-15, 0.0) == 1.0);    // floor beats a zero cap
    CHECK(cap_multiplier(0.5, 0.0) == 0.0);
}

// ---------- construction ----------

TEST_CASE("channel on a diagonal marginal caps exactly the top value") {
    DensityOperator rho = diag_state({3}, {0.5, 0.25, 0.25});
    SmoothingChannel ch = build_smoothing_channel(rho, PartySet::of({0}), 0.1);
    CHECK(std::abs(ch.cap.cap - 0.4) <= 1e-15);
    DensityOperator out = apply_local(ch, rho);
    CHECK(std::abs(out.matrix()(0, 0).real() - 0.4) <= 1e-12);
    CHECK(std::abs(out.matrix()(1, 1).real() - 0.25) <= 1e-12);
    CHECK(std::abs(out.matrix()(2, 2).real() - 0.25) <= 1e-12);
    CHECK(max_abs_entry(out.matrix() - out.matrix().diagonal().asDiagonal().toDenseMatrix()) <= 1e-12);
    CHECK(std::abs(trace_distance(rho, out) - 0.1) <= 1e-12);
}

TEST_CASE("eps zero builds the identity channel on any state") {
    DensityOperator rho = random_state(DimProfile({4}), StateKind::mixed, 11);
    SmoothingChannel ch = build_smoothing_channel(rho, PartySet::of({0}), 0.0);
    CHECK(max_abs_entry(ch.kraus - Matrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("pure marginal shrinks uniformly to 1 - eps") {
    DensityOperator rho = random_state(DimProfile({3}), StateKind::pure, 12);
    SmoothingChannel ch = build_smoothing_channel(rho, PartySet::of({0}), 0.2);
    DensityOperator out = apply_local(ch, rho);
    CHECK(max_abs_entry(out.matrix() - 0.8 * rho.matrix()) <= 1e-10);
}

TEST_CASE("eps at or above the marginal mass annihilates") {
    DensityOperator rho = diag_state({2}, {0.2, 0.1});
    SmoothingChannel ch = build_smoothing_channel(rho, PartySet::of({0}), 0.5);
    CHECK(ch.cap.infinite);
    CHECK(max_abs_entry(ch.kraus) == 0.0);
    CHECK(max_abs_entry(apply_local(ch, rho).matrix()) == 0.0);
}

TEST_CASE("construction rejects bad arguments") {
    DensityOperator rho = random_state(DimProfile({2, 2}), StateKind::mixed, 13);
    CHECK_THROWS_AS(build_smoothing_channel(rho, PartySet::of({0}), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_smoothing_channel(rho, PartySet(), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_smoothing_channel(rho, PartySet::of({0, 1}), -0.1), std::invalid_argument);
    SmoothingChannel ch = build_smoothing_channel(partial_trace(rho, PartySet::of({0})),
                                                  PartySet::of({0}), 0.1);
    CHECK_THROWS_AS(apply_local(ch, rho), std::invalid_argument);
    DensityOperator wide = random_state(DimProfile({3}), StateKind::mixed, 14);
    CHECK_THROWS_AS(apply_extended(ch, wide), std::invalid_argument);
}

// ---------- operator properties ----------

TEST_CASE("the kraus operator is a contraction commuting with its source") {
    for (int trial = 0; trial < 20; ++trial) {
        DensityOperator rho = random_state(DimProfile({2, 3}), StateKind::mixed, 100 + trial);
        DensityOperator marg = partial_trace(rho, PartySet::of({1}));
        SmoothingChannel ch = build_smoothing_channel(marg, PartySet::of({1}), 0.15);
        const RealVector sq = hermitian_eigenvalues(ch.kraus.adjoint() * ch.kraus);
        CHECK(sq(0) <= 1.0 + 1e-12);
        CHECK(sq(sq.size() - 1) >= -1e-12);
        CHECK(max_abs_entry(ch.kraus * marg.matrix() - marg.matrix() * ch.kraus) <= 1e-10);
    }
}

TEST_CASE("the extended action traces back to the capped marginal") {
    for (int trial = 0; trial < 10; ++trial) {
        DensityOperator rho = random_state(DimProfile({2, 2, 2}), StateKind::mixed, 200 + trial);
        const PartySet s = PartySet::of({0, 2});
        DensityOperator marg = partial_trace(rho, s);
        SmoothingChannel ch = build_smoothing_channel(marg, s, 0.1);
        DensityOperator out = apply_extended(ch, rho);
        Matrix got = partial_trace(out, s).matrix();
        Matrix want = apply_local(ch, marg).matrix();
        CHECK(max_abs_entry(got - want) <= 1e-10);
        CHECK(max_abs_entry(want - smoothed_state_trace(marg, 0.1).matrix()) <= 1e-10);
    }
}

TEST_CASE("maximally entangled input shrinks globally by 1 - eps") {
    DensityOperator rho = bell_state();
    SmoothingChannel ch = build_smoothing_channel(partial_trace(rho, PartySet::of({0})),
                                                  PartySet::of({0}), 0.2);
    DensityOperator out = apply_extended(ch, rho);
    CHECK(max_abs_entry(out.matrix() - 0.8 * rho.matrix()) <= 1e-12);
}

TEST_CASE("the extension preserves the purified distance of the marginal action") {
    for (int trial = 0; trial < 15; ++trial) {
        DensityOperator rho = random_state(DimProfile({2, 3}), StateKind::mixed, 300 + trial);
        const PartySet s = PartySet::of({0});
        DensityOperator marg = partial_trace(rho, s);
        SmoothingChannel ch = build_smoothing_channel(marg, s, 0.1);
        DensityOperator out = apply_extended(ch, rho);
        const double p_ext = purified_distance(rho, out);
        const double p_marg = purified_distance(marg, apply_local(ch, marg));
        CHECK(std::abs(p_ext - p_marg) <= 1e-8);
        CHECK(p_ext <= std::sqrt(2.0 * 0.1) + 1e-9);
        // Trace distance only dominates one way under the extension.
        CHECK(trace_distance(rho, out) >= trace_distance(marg, apply_local(ch, marg)) - 1e-10);
    }
}

// ---------- classical channel ----------

TEST_CASE("classical channel multiplies the targeted cells uniformly") {
    ClassicalState p = ClassicalState::validated(DimProfile({2, 2}), {0.25, 0.25, 0.25, 0.25});
    ClassicalChannel ch = build_classical_channel(p, PartySet::of({0}), 0.1);
    REQUIRE(ch.multiplier.size() == 2);
    CHECK(std::abs(ch.multiplier[0] - 0.9) <= 1e-15);
    CHECK(std::abs(ch.multiplier[1] - 0.9) <= 1e-15);
    ClassicalState out = apply_extended(ch, p);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(out.probs()[k] - 0.9 * 0.25) <= 1e-15);
}

TEST_CASE("classical and dense channel actions agree on classical states") {
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalState p = random_classical(DimProfile({2, 3}), 400 + trial, false);
        const PartySet s = PartySet::of({1});
        ClassicalChannel cc = build_classical_channel(p, s, 0.15);
        ClassicalState out_c = apply_extended(cc, p);

        DensityOperator dense = p.to_density();
        SmoothingChannel dc = build_smoothing_channel(partial_trace(dense, s), s, 0.15);
        DensityOperator out_d = apply_extended(dc, dense);
        for (long k = 0; k < dense.dim(); ++k) {
            CHECK(std::abs(out_c.probs()[k] - out_d.matrix()(k, k).real()) <= 1e-12);
        }
    }
}

TEST_CASE("classical channel drops only removed mass") {
    ClassicalState p = random_classical(DimProfile({3, 2}), 55, false);
    ClassicalChannel ch = build_classical_channel(p, PartySet::of({0}), 0.2);
    ClassicalState out = apply_extended(ch, p);
    CHECK(std::abs((p.mass() - out.mass()) - ch.cap.removed_mass) <= 1e-12);
    CHECK(trace_distance(p, out) <= 0.2 + 1e-12);
    for (long k = 0; k < p.dim(); ++k) CHECK(out.probs()[k] <= p.probs()[k] + 1e-15);
}

TEST_CASE("annihilating classical channel zeroes every multiplier") {
    ClassicalState p = ClassicalState::validated(DimProfile({2}), {0.2, 0.1});
    ClassicalChannel ch = build_classical_channel(p, PartySet::of({0}), 0.9);
    CHECK(ch.cap.infinite);
    for (double f : ch.multiplier) CHECK(f == 0.0);
    CHECK(apply_extended(ch, p).mass() == 0.0);
}
