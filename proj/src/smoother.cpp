#include "simsmooth/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simsmooth/distance.hpp"
#include "simsmooth/entropy.hpp"

namespace simsmooth {

std::string metric_name(Metric m) {
    return m == Metric::trace ? "trace" : "purified";
}

Metric parse_metric(const std::string& name) {
    if (name == "trace") return Metric::trace;
    if (name == "purified") return Metric::purified;
    throw std::invalid_argument("parse_metric: unknown metric '" + name + "'");
}

std::string smooth_method_name(SmoothMethod m) {
    switch (m) {
        case SmoothMethod::classical: return "classical";
        case SmoothMethod::two_party: return "two_party";
        case SmoothMethod::laminar: return "laminar";
    }
    throw std::invalid_argument("smooth_method_name: bad enum value");
}

void SubsetFamily::validate(const DimProfile& profile) const {
    if (subsets.empty()) throw std::invalid_argument("SubsetFamily: no subsets given");
    if (!(epsilon >= 0.0) || epsilon >= 1.0) {
        throw std::invalid_argument("SubsetFamily: eps must lie in [0, 1)");
    }
    for (size_t i = 0; i < subsets.size(); ++i) {
        if (subsets[i].empty()) throw std::invalid_argument("SubsetFamily: empty subset");
        check_parties_in_profile(subsets[i], profile, "SubsetFamily");
        for (size_t j = i + 1; j < subsets.size(); ++j) {
            if (subsets[i] == subsets[j]) {
                throw std::invalid_argument("SubsetFamily: duplicate subset " + subsets[i].to_string());
            }
        }
    }
}

namespace {

// Largest first, ties lexicographic; the canonical channel application order.
std::vector<PartySet> descending_size_order(std::vector<PartySet> subsets) {
    std::sort(subsets.begin(), subsets.end(), [](const PartySet& a, const PartySet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return subsets;
}

EntropyValue classical_min_entropy_of_marginal(const ClassicalState& t, const PartySet& s) {
    return min_entropy(t.marginal(s));
}

void fill_passes(SmoothingReport& r, int family_size) {
    r.bound_trace = static_cast<double>(family_size) * r.epsilon;
    r.bound_purified = static_cast<double>(family_size) * std::sqrt(2.0 * r.epsilon);
    r.entropy_pass = true;
    for (const SubsetRecord& rec : r.records) {
        if (!rec.hmin_after.at_least(rec.target_trace, kReportSlack)) r.entropy_pass = false;
    }
    const double dist = r.metric == Metric::trace ? r.distance_trace : r.distance_purified;
    const double bound = r.metric == Metric::trace ? r.bound_trace : r.bound_purified;
    r.distance_pass = dist <= bound + kReportSlack;
}

}  // namespace

bool check_commuting_marginals(const DensityOperator& rho, const SubsetFamily& family) {
    family.validate(rho.profile());
    std::vector<Matrix> embedded;
    embedded.reserve(family.subsets.size());
    for (const PartySet& s : family.subsets) {
        embedded.push_back(embed_local(partial_trace(rho, s).matrix(), s, rho.profile()));
    }
    for (size_t i = 0; i < embedded.size(); ++i) {
        for (size_t j = i + 1; j < embedded.size(); ++j) {
            const Matrix comm = embedded[i] * embedded[j] - embedded[j] * embedded[i];
            if (max_abs_entry(comm) > kCommuteTol) return false;
        }
    }
    return true;
}

// ---------- verification ----------

SmoothingReport verify(const DensityOperator& rho, const DensityOperator& sigma,
                       const SubsetFamily& family) {
    family.validate(rho.profile());
    if (rho.profile() != sigma.profile()) {
        throw std::invalid_argument("verify: state profiles differ");
    }
    SmoothingReport r;
    r.epsilon = family.epsilon;
    r.metric = family.metric;
    for (const PartySet& s : family.subsets) {
        const DensityOperator rho_s = partial_trace(rho, s);
        const DensityOperator sigma_s = partial_trace(sigma, s);
        SubsetRecord rec;
        rec.subset = s;
        rec.hmin_before = min_entropy(rho_s);
        rec.target_trace = smooth_min_entropy_trace(rho_s, family.epsilon);
        rec.target_purified = smooth_min_entropy_purified(rho_s, family.epsilon);
        rec.hmin_after = min_entropy(sigma_s);
        r.records.push_back(std::move(rec));
    }
    r.distance_trace = trace_distance(rho, sigma);
    r.distance_purified = purified_distance(rho, sigma);
    fill_passes(r, static_cast<int>(family.subsets.size()));
    return r;
}

SmoothingReport verify(const ClassicalState& rho, const ClassicalState& sigma,
                       const SubsetFamily& family) {
    family.validate(rho.profile());
    if (rho.profile() != sigma.profile()) {
        throw std::invalid_argument("verify: state profiles differ");
    }
    SmoothingReport r;
    r.epsilon = family.epsilon;
    r.metric = family.metric;
    for (const PartySet& s : family.subsets) {
        const ClassicalState rho_s = rho.marginal(s);
        SubsetRecord rec;
        rec.subset = s;
        rec.hmin_before = min_entropy(rho_s);
        rec.target_trace = smooth_min_entropy_trace(std::span<const double>(rho_s.probs()), family.epsilon);
        rec.target_purified =
            smooth_min_entropy_purified(std::span<const double>(rho_s.probs()), family.epsilon);
        rec.hmin_after = classical_min_entropy_of_marginal(sigma, s);
        r.records.push_back(std::move(rec));
    }
    r.distance_trace = trace_distance(rho, sigma);
    r.distance_purified = purified_distance(rho, sigma);
    fill_passes(r, static_cast<int>(family.subsets.size()));
    return r;
}

// ---------- commuting-marginals strategy ----------

std::pair<DensityOperator, SmoothingReport> smooth_classical(const DensityOperator& rho,
                                                             const SubsetFamily& family) {
    if (!check_commuting_marginals(rho, family)) {
        throw std::invalid_argument(
            "smooth_classical: marginals do not commute; use the two-party or laminar smoother");
    }
    DensityOperator sigma = rho;
    for (const PartySet& s : descending_size_order(family.subsets)) {
        const SmoothingChannel ch = build_smoothing_channel(partial_trace(rho, s), s, family.epsilon);
        sigma = apply_extended(ch, sigma);
    }
    SmoothingReport report = verify(rho, sigma, family);
    return {std::move(sigma), std::move(report)};
}

std::pair<ClassicalState, SmoothingReport> smooth_classical(const ClassicalState& rho,
                                                            const SubsetFamily& family) {
    family.validate(rho.profile());
    ClassicalState sigma = rho;
    for (const PartySet& s : descending_size_order(family.subsets)) {
        const ClassicalChannel ch = build_classical_channel(rho, s, family.epsilon);
        sigma = apply_extended(ch, sigma);
    }
    SmoothingReport report = verify(rho, sigma, family);
    return {std::move(sigma), std::move(report)};
}

// ---------- two-party strategy ----------

std::pair<DensityOperator, SmoothingReport> smooth_two_party(const DensityOperator& rho,
                                                             const SubsetFamily& family) {
    family.validate(rho.profile());
    if (rho.profile().party_count() != 2) {
        throw std::invalid_argument("smooth_two_party: exactly two parties required");
    }
    // Fixed order: both parties first, then A2, then A1; absent subsets keep
    // identity channels.
    const PartySet order[3] = {PartySet::of({0, 1}), PartySet::of({1}), PartySet::of({0})};
    DensityOperator sigma = rho;
    for (const PartySet& s : order) {
        if (std::find(family.subsets.begin(), family.subsets.end(), s) == family.subsets.end()) continue;
        const SmoothingChannel ch = build_smoothing_channel(partial_trace(rho, s), s, family.epsilon);
        sigma = apply_extended(ch, sigma);
    }
    SmoothingReport report = verify(rho, sigma, family);
    return {std::move(sigma), std::move(report)};
}

// ---------- laminar strategy ----------

std::vector<PartySet> order_laminar(const SubsetFamily& family) {
    for (size_t i = 0; i < family.subsets.size(); ++i) {
        for (size_t j = i + 1; j < family.subsets.size(); ++j) {
            const PartySet& a = family.subsets[i];
            const PartySet& b = family.subsets[j];
            if (!a.disjoint_from(b) && !a.subset_of(b) && !b.subset_of(a)) {
                throw UnsupportedFamilyError("order_laminar: subsets " + a.to_string() + " and " +
                                             b.to_string() + " overlap without nesting");
            }
        }
    }
    return descending_size_order(family.subsets);
}

std::pair<DensityOperator, SmoothingReport> smooth_laminar(const DensityOperator& rho,
                                                           const SubsetFamily& family) {
    family.validate(rho.profile());
    DensityOperator sigma = rho;
    for (const PartySet& s : order_laminar(family)) {
        const SmoothingChannel ch = build_smoothing_channel(partial_trace(rho, s), s, family.epsilon);
        sigma = apply_extended(ch, sigma);
    }
    SmoothingReport report = verify(rho, sigma, family);
    return {std::move(sigma), std::move(report)};
}

// ---------- dispatch ----------

SmoothOutcome smooth_auto(const DensityOperator& rho, const SubsetFamily& family) {
    family.validate(rho.profile());
    if (check_commuting_marginals(rho, family)) {
        auto [sigma, report] = smooth_classical(rho, family);
        return {std::move(sigma), std::move(report), SmoothMethod::classical};
    }
    if (rho.profile().party_count() == 2) {
        auto [sigma, report] = smooth_two_party(rho, family);
        return {std::move(sigma), std::move(report), SmoothMethod::two_party};
    }
    // order_laminar throws UnsupportedFamilyError naming the offending pair.
    auto [sigma, report] = smooth_laminar(rho, family);
    return {std::move(sigma), std::move(report), SmoothMethod::laminar};
}

// ---------- overlapping-pair probe ----------

DeficitRecord explore_overlapping(const DensityOperator& rho, double eps) {
    if (rho.profile().party_count() != 3) {
        throw std::invalid_argument("explore_overlapping: exactly three parties required");
    }
    if (!(eps >= 0.0) || eps >= 1.0) {
        throw std::invalid_argument("explore_overlapping: eps must lie in [0, 1)");
    }
    const PartySet front = PartySet::of({0, 1});  // A1A2
    const PartySet back = PartySet::of({1, 2});   // A2A3
    const SmoothingChannel ch_back = build_smoothing_channel(partial_trace(rho, back), back, eps);
    const SmoothingChannel ch_front = build_smoothing_channel(partial_trace(rho, front), front, eps);
    const DensityOperator sigma = apply_extended(ch_front, apply_extended(ch_back, rho));

    DeficitRecord rec;
    for (const PartySet& s : {front, back}) {
        DeficitEntry e;
        e.subset = s;
        e.target = smooth_min_entropy_trace(partial_trace(rho, s), eps);
        e.achieved = min_entropy(partial_trace(sigma, s));
        if (e.target.infinite) {
            e.deficit_bits = e.achieved.infinite ? 0.0 : std::numeric_limits<double>::infinity();
        } else if (e.achieved.infinite) {
            e.deficit_bits = 0.0;
        } else {
            e.deficit_bits = std::max(0.0, e.target.bits - e.achieved.bits);
        }
        rec.entries.push_back(std::move(e));
    }
    rec.purified_distance = purified_distance(rho, sigma);
    return rec;
}

}  // namespace simsmooth
