// Operator algebra tests: profiles, tensor structure, partial traces,
// spectra, spectral calculus, and the three distance measures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "simsmooth/distance.hpp"
#include "simsmooth/random.hpp"
#include "simsmooth/spectrum.hpp"
#include "simsmooth/state.hpp"
#include "simsmooth/worstcase.hpp"

using namespace simsmooth;

namespace {

// ---------- helpers ----------

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

double lambda_max(const DensityOperator& t) { return hermitian_eigenvalues(t.matrix())(0); }

}  // namespace

// ---------- profiles and party sets ----------

TEST_CASE("dim profile invariants") {
    DimProfile p({2, 3, 2});
    CHECK(p.party_count() == 3);
    CHECK(p.total_dim() == 12);
    CHECK(p.to_string() == "(2,3,2)");
    CHECK_THROWS_AS(DimProfile({}), std::invalid_argument);
    CHECK_THROWS_AS(DimProfile({2, 0}), std::invalid_argument);
}

TEST_CASE("party sets are sorted and duplicate-free") {
    PartySet s(std::vector<int>{2, 0, 2});
    CHECK(s.members() == std::vector<int>{0, 2});
    CHECK(s.to_string() == "A1A3");
    CHECK(s.contains(2));
    CHECK(!s.contains(1));
    CHECK(s.complement(4) == PartySet::of({1, 3}));
    CHECK(PartySet::of({0}).subset_of(PartySet::of({0, 1})));
    CHECK(PartySet::of({0}).disjoint_from(PartySet::of({1, 2})));
    CHECK_THROWS_AS(PartySet(std::vector<int>{-1}), std::invalid_argument);
}

TEST_CASE("restricted profile picks the kept dimensions in order") {
    DimProfile p({2, 3, 5});
    CHECK(restricted_profile(p, PartySet::of({0, 2})).dims() == std::vector<int>{2, 5});
    CHECK(restricted_profile(p, PartySet()).dims() == std::vector<int>{1});
}

// ---------- tensor product ----------

TEST_CASE("tensor product of uniform qubits is the uniform two-qubit state") {
    DensityOperator half = diag_state({2}, {0.5, 0.5});
    DensityOperator prod = tensor_product(half, half);
    CHECK(prod.profile().dims() == std::vector<int>{2, 2});
    for (int k = 0; k < 4; ++k) CHECK(std::abs(prod.matrix()(k, k).real() - 0.25) <= 1e-15);
    CHECK(std::abs(prod.trace() - 1.0) <= 1e-14);
}

TEST_CASE("tensor product with a trivial party appends it") {
    DensityOperator a = diag_state({2}, {0.7, 0.3});
    DensityOperator one = diag_state({1}, {1.0});
    DensityOperator out = tensor_product(a, one);
    CHECK(out.profile().dims() == std::vector<int>{2, 1});
    CHECK(max_abs_entry(out.matrix() - a.matrix()) <= 1e-15);
}

TEST_CASE("tensor product follows the Kronecker layout") {
    DensityOperator a = diag_state({2}, {0.5, 0.5});
    DensityOperator b = diag_state({2}, {0.9, 0.1});
    DensityOperator out = tensor_product(a, b);
    const double want[4] = {0.45, 0.05, 0.45, 0.05};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(out.matrix()(k, k).real() - want[k]) <= 1e-15);
}

TEST_CASE("largest eigenvalue is multiplicative under tensor products") {
    DensityOperator a = random_state(DimProfile({3}), StateKind::mixed, 11);
    DensityOperator b = random_state(DimProfile({2, 2}), StateKind::mixed, 12);
    DensityOperator ab = tensor_product(a, b);
    CHECK(std::abs(lambda_max(ab) - lambda_max(a) * lambda_max(b)) <= 1e-12);
}

// ---------- partial trace ----------

TEST_CASE("Bell state marginal is maximally mixed") {
    DensityOperator marg = partial_trace(bell_state(), PartySet::of({0}));
    CHECK(marg.profile().dims() == std::vector<int>{2});
    CHECK(std::abs(marg.matrix()(0, 0).real() - 0.5) <= 1e-14);
    CHECK(std::abs(marg.matrix()(1, 1).real() - 0.5) <= 1e-14);
    CHECK(std::abs(marg.matrix()(0, 1)) <= 1e-14);
}

TEST_CASE("partial trace of a product recovers the kept factor") {
    DensityOperator a = random_state(DimProfile({3}), StateKind::mixed, 21);
    DensityOperator b = random_state(DimProfile({2}), StateKind::mixed, 22);
    DensityOperator kept = partial_trace(tensor_product(a, b), PartySet::of({0}));
    CHECK(max_abs_entry(kept.matrix() - a.matrix()) <= 1e-12);
}

TEST_CASE("worst case marginal carries weight 1/3 at the center") {
    WorstCaseParams params;
    params.n = 2;
    params.active = {PartySet::of({0}), PartySet::of({1}), PartySet::of({0, 1})};
    DensityOperator dense = build_worst_case(params).to_density();
    DensityOperator marg = partial_trace(dense, PartySet::of({0}));
    CHECK(std::abs(marg.matrix()(4, 4).real() - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(marg.trace() - 1.0) <= 1e-12);
}

TEST_CASE("partial trace composes along chains") {
    DensityOperator t = random_state(DimProfile({2, 3, 2}), StateKind::mixed, 23);
    DensityOperator two_step = partial_trace(partial_trace(t, PartySet::of({0, 2})), PartySet::of({0}));
    DensityOperator one_step = partial_trace(t, PartySet::of({0}));
    CHECK(max_abs_entry(two_step.matrix() - one_step.matrix()) <= 1e-10);
}

TEST_CASE("partial trace handles the degenerate and invalid keep sets") {
    DensityOperator t = random_state(DimProfile({2, 2}), StateKind::mixed, 24);
    DensityOperator total = partial_trace(t, PartySet());
    CHECK(total.dim() == 1);
    CHECK(std::abs(total.trace() - t.trace()) <= 1e-12);
    CHECK_THROWS_AS(partial_trace(t, PartySet::of({2})), std::invalid_argument);
}

// ---------- embed_local ----------

TEST_CASE("embedding the identity gives the identity") {
    DimProfile profile({2, 3});
    Matrix em = embed_local(Matrix::Identity(3, 3), PartySet::of({1}), profile);
    CHECK(max_abs_entry(em - Matrix::Identity(6, 6)) <= 1e-15);
}

TEST_CASE("embedding on all parties is a no-op") {
    DensityOperator t = random_state(DimProfile({2, 2}), StateKind::mixed, 31);
    Matrix em = embed_local(t.matrix(), PartySet::of({0, 1}), t.profile());
    CHECK(max_abs_entry(em - t.matrix()) <= 1e-15);
}

TEST_CASE("embedding a projector on party 2 interleaves it") {
    Matrix proj = Matrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    Matrix em = embed_local(proj, PartySet::of({1}), DimProfile({2, 2}));
    const double want[4] = {1.0, 0.0, 1.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(em(k, k).real() - want[k]) <= 1e-15);
    }
}

TEST_CASE("embedding is adjoint to the partial trace") {
    Rng rng(41, 0);
    for (int trial = 0; trial < 10; ++trial) {
        DensityOperator tau = random_state(DimProfile({2, 3}), StateKind::mixed, 100 + trial);
        DensityOperator m_s = random_state(DimProfile({3}), StateKind::mixed, 200 + trial);
        Matrix em = embed_local(m_s.matrix(), PartySet::of({1}), tau.profile());
        std::complex<double> lhs = (em * tau.matrix()).trace();
        DensityOperator tau_s = partial_trace(tau, PartySet::of({1}));
        std::complex<double> rhs = (m_s.matrix() * tau_s.matrix()).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
    CHECK_THROWS_AS(embed_local(Matrix::Identity(3, 3), PartySet::of({0}), DimProfile({2, 2})),
                    std::invalid_argument);
}

// ---------- eigendecomposition ----------

TEST_CASE("uniform state has a flat spectrum") {
    Spectrum s = eigen_decompose(diag_state({4}, {0.25, 0.25, 0.25, 0.25}));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.values(k) - 0.25) <= 1e-14);
}

TEST_CASE("eigenvalues are sorted descending") {
    Spectrum s = eigen_decompose(diag_state({3}, {0.25, 0.5, 0.25}));
    CHECK(std::abs(s.values(0) - 0.5) <= 1e-14);
    CHECK(std::abs(s.values(1) - 0.25) <= 1e-14);
    CHECK(std::abs(s.values(2) - 0.25) <= 1e-14);
}

TEST_CASE("plus state is a rank one projector") {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    Spectrum s = eigen_decompose(DensityOperator::validated(DimProfile({2}), m));
    CHECK(std::abs(s.values(0) - 1.0) <= 1e-12);
    CHECK(std::abs(s.values(1)) <= 1e-12);
}

TEST_CASE("decomposition reconstructs the matrix and repeats identically") {
    DensityOperator t = random_state(DimProfile({2, 3}), StateKind::mixed, 51);
    Spectrum s1 = eigen_decompose(t);
    Spectrum s2 = eigen_decompose(t);
    Matrix rebuilt = s1.basis * s1.values.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                     s1.basis.adjoint();
    CHECK(max_abs_entry(rebuilt - t.matrix()) <= 1e-9);
    CHECK(max_abs_entry(s1.basis - s2.basis) == 0.0);
}

TEST_CASE("non-Hermitian input is rejected") {
    Matrix m(2, 2);
    m << 1.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(eigen_decompose_matrix(m), std::invalid_argument);
}

// ---------- spectral calculus ----------

TEST_CASE("identity function leaves the state unchanged") {
    DensityOperator t = random_state(DimProfile({3}), StateKind::mixed, 61);
    DensityOperator out = apply_spectral_function(t, [](double x) { return x; });
    CHECK(max_abs_entry(out.matrix() - t.matrix()) <= 1e-10);
}

TEST_CASE("constant one maps every state to the identity") {
    DensityOperator t = random_state(DimProfile({3}), StateKind::pure, 62);
    DensityOperator out = apply_spectral_function(t, [](double) { return 1.0; });
    CHECK(max_abs_entry(out.matrix() - Matrix::Identity(3, 3)) <= 1e-10);
}

TEST_CASE("capping the top eigenvalue matches the hand formula") {
    DensityOperator t = diag_state({3}, {0.5, 0.25, 0.25});
    DensityOperator out = apply_spectral_function(t, [](double x) { return std::min(x, 0.4); });
    const double want[3] = {0.4, 0.25, 0.25};
    for (int k = 0; k < 3; ++k) CHECK(std::abs(out.matrix()(k, k).real() - want[k]) <= 1e-12);
}

TEST_CASE("psd square root squares back") {
    DensityOperator t = random_state(DimProfile({3}), StateKind::mixed, 63);
    Matrix r = psd_sqrt(t.matrix());
    CHECK(max_abs_entry(r * r - t.matrix()) <= 1e-10);
}

// ---------- trace distance ----------

TEST_CASE("trace distance separates states and vanishes on equality") {
    DensityOperator a = diag_state({2}, {1.0, 0.0});
    DensityOperator b = diag_state({2}, {0.5, 0.5});
    CHECK(trace_distance(a, a) == 0.0);
    CHECK(std::abs(trace_distance(a, b) - 0.5) <= 1e-14);
    CHECK(std::abs(trace_distance(a, b) - trace_distance(b, a)) <= 1e-15);
}

TEST_CASE("subnormalized ordered pair reduces to the trace gap") {
    DensityOperator a = diag_state({1}, {0.5});
    DensityOperator b = diag_state({1}, {0.3});
    CHECK(std::abs(trace_distance(a, b) - 0.2) <= 1e-15);
}

TEST_CASE("trace distance rejects profile mismatches") {
    DensityOperator a = diag_state({2}, {0.5, 0.5});
    DensityOperator b = diag_state({2, 1}, {0.5, 0.5});
    CHECK_THROWS_AS(trace_distance(a, b), std::invalid_argument);
}

// ---------- fidelity and purified distance ----------

TEST_CASE("generalized fidelity on the frozen examples") {
    DensityOperator a = diag_state({2}, {1.0, 0.0});
    DensityOperator b = diag_state({2}, {0.5, 0.5});
    CHECK(std::abs(generalized_fidelity(a, a) - 1.0) <= 1e-12);
    CHECK(std::abs(generalized_fidelity(a, b) - std::sqrt(0.5)) <= 1e-12);
    DensityOperator zero = diag_state({2}, {0.0, 0.0});
    CHECK(std::abs(generalized_fidelity(zero, zero) - 1.0) <= 1e-12);
    CHECK(std::abs(generalized_fidelity(a, b) - generalized_fidelity(b, a)) <= 1e-12);
}

TEST_CASE("purified distance on the frozen examples") {
    DensityOperator a = diag_state({2}, {1.0, 0.0});
    DensityOperator b = diag_state({2}, {0.5, 0.5});
    CHECK(purified_distance(a, a) <= 1e-7);
    CHECK(std::abs(purified_distance(a, b) - std::sqrt(0.5)) <= 1e-12);
}

TEST_CASE("metric sandwich and contractivity hold on random pairs") {
    for (int trial = 0; trial < 30; ++trial) {
        DensityOperator a = random_state(DimProfile({2, 2}), StateKind::mixed, 300 + trial);
        DensityOperator b = random_state(DimProfile({2, 2}), trial % 2 ? StateKind::pure : StateKind::mixed,
                                         400 + trial);
        const double d = trace_distance(a, b);
        const double p = purified_distance(a, b);
        CHECK(d <= p + 1e-9);
        CHECK(p <= std::sqrt(2.0 * d) + 1e-9);

        // partial trace contracts both metrics
        DensityOperator am = partial_trace(a, PartySet::of({0}));
        DensityOperator bm = partial_trace(b, PartySet::of({0}));
        CHECK(trace_distance(am, bm) <= d + 1e-9);
        CHECK(purified_distance(am, bm) <= p + 1e-9);

        // random single-Kraus contraction contracts both metrics
        Rng rng(500 + trial, 0);
        Matrix k = random_contraction(4, rng);
        DensityOperator ka = DensityOperator::trusted(a.profile(), k * a.matrix() * k.adjoint());
        DensityOperator kb = DensityOperator::trusted(b.profile(), k * b.matrix() * k.adjoint());
        CHECK(trace_distance(ka, kb) <= d + 1e-9);
        CHECK(purified_distance(ka, kb) <= p + 1e-9);
    }
}

// ---------- random states and invariant validation ----------

TEST_CASE("random state kinds have the advertised shape") {
    DensityOperator pure = random_state(DimProfile({3}), StateKind::pure, 71);
    CHECK(std::abs(pure.trace() - 1.0) <= 1e-12);
    RealVector vals = hermitian_eigenvalues(pure.matrix());
    CHECK(std::abs(vals(0) - 1.0) <= 1e-10);
    CHECK(std::abs(vals(1)) <= 1e-10);

    DensityOperator cls = random_state(DimProfile({2, 2}), StateKind::classical, 72);
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) off = std::max(off, std::abs(cls.matrix()(i, j)));
        }
    }
    CHECK(off == 0.0);

    DensityOperator again = random_state(DimProfile({3}), StateKind::pure, 71);
    CHECK(max_abs_entry(again.matrix() - pure.matrix()) == 0.0);
}

TEST_CASE("validation rejects malformed density operators") {
    Matrix nonherm(2, 2);
    nonherm << 0.5, 0.5, 0.0, 0.5;
    CHECK_THROWS_AS(DensityOperator::validated(DimProfile({2}), nonherm), std::invalid_argument);

    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 0.8;
    negative(1, 1) = -0.1;
    CHECK_THROWS_AS(DensityOperator::validated(DimProfile({2}), negative), std::invalid_argument);

    Matrix heavy = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator::validated(DimProfile({2}), heavy), std::invalid_argument);

    Matrix wrong = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(DensityOperator::validated(DimProfile({2}), wrong), std::invalid_argument);
}

TEST_CASE("classical states validate entries and mass") {
    CHECK_THROWS_AS(ClassicalState::validated(DimProfile({2}), {0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(ClassicalState::validated(DimProfile({2}), {0.8, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(ClassicalState::validated(DimProfile({2}), {0.5}), std::invalid_argument);

    ClassicalState p = ClassicalState::validated(DimProfile({2, 2}), {0.4, 0.1, 0.3, 0.2});
    ClassicalState m = p.marginal(PartySet::of({0}));
    CHECK(std::abs(m.probs()[0] - 0.5) <= 1e-15);
    CHECK(std::abs(m.probs()[1] - 0.5) <= 1e-15);
    CHECK(std::abs(p.mass() - 1.0) <= 1e-15);

    DensityOperator dense = p.to_density();
    ClassicalState back = to_classical(dense);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(back.probs()[k] - p.probs()[k]) <= 1e-15);
}
