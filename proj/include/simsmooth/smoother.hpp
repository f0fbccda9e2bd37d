// Simultaneous smoothing: apply one smoothing channel per requested subset so
// every smoothed min-entropy target is met at once, with a certified distance
// bound, plus the verifier that recomputes every claim from scratch.

#pragma once

#include <utility>
#include <vector>

#include "simsmooth/channel.hpp"
#include "simsmooth/state.hpp"

namespace simsmooth {

enum class Metric { trace, purified };

std::string metric_name(Metric m);
Metric parse_metric(const std::string& name);

// Thrown when a subset family fits none of the supported strategies.
struct UnsupportedFamilyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SubsetFamily {
    std::vector<PartySet> subsets;
    double epsilon = 0.0;
    Metric metric = Metric::trace;

    // Nonempty, duplicate-free subsets within the profile; eps in [0, 1).
    void validate(const DimProfile& profile) const;
};

struct SubsetRecord {
    PartySet subset;
    EntropyValue hmin_before;
    EntropyValue target_trace;
    EntropyValue target_purified;
    EntropyValue hmin_after;
};

struct SmoothingReport {
    double epsilon = 0.0;
    Metric metric = Metric::trace;
    std::vector<SubsetRecord> records;
    double distance_trace = 0.0;
    double distance_purified = 0.0;
    double bound_trace = 0.0;      // |K| * eps
    double bound_purified = 0.0;   // |K| * sqrt(2 eps)
    bool entropy_pass = false;     // after >= trace target - 1e-9, every subset
    bool distance_pass = false;    // metric-appropriate distance <= bound + 1e-9
};

inline constexpr double kReportSlack = 1e-9;
inline constexpr double kCommuteTol = 1e-9;

// True iff all embedded marginals rho_S (x) 1 commute pairwise within tolerance.
bool check_commuting_marginals(const DensityOperator& rho, const SubsetFamily& family);

// Recompute entropies, targets, distances, and pass flags from the two states.
SmoothingReport verify(const DensityOperator& rho, const DensityOperator& sigma,
                       const SubsetFamily& family);
SmoothingReport verify(const ClassicalState& rho, const ClassicalState& sigma,
                       const SubsetFamily& family);

// Commuting-marginals strategy: channels built from the input's marginals,
// applied largest subset first (ties lexicographic).  For classical states,
// and more generally whenever the marginals also commute with the state, this
// meets every trace target with total trace distance <= |K| * eps; the report
// recomputes both claims for the instance at hand.
std::pair<DensityOperator, SmoothingReport> smooth_classical(const DensityOperator& rho,
                                                             const SubsetFamily& family);
std::pair<ClassicalState, SmoothingReport> smooth_classical(const ClassicalState& rho,
                                                            const SubsetFamily& family);

// Two-party strategy: fixed order A1A2, then A2, then A1 (absent subsets keep
// identity channels).  Guarantees trace targets and purified distance
// <= |K| * sqrt(2 eps).
std::pair<DensityOperator, SmoothingReport> smooth_two_party(const DensityOperator& rho,
                                                             const SubsetFamily& family);

// Application order for a laminar family (any two subsets nested or disjoint):
// descending size, ties lexicographic.  Throws UnsupportedFamilyError naming
// the offending pair otherwise.
std::vector<PartySet> order_laminar(const SubsetFamily& family);

// Laminar strategy; same guarantees as the two-party case, and pure inputs
// stay pure (single total Kraus operator).
std::pair<DensityOperator, SmoothingReport> smooth_laminar(const DensityOperator& rho,
                                                           const SubsetFamily& family);

// Dispatch: commuting marginals, then two parties, then laminar; otherwise
// throws UnsupportedFamilyError naming an overlapping non-nested pair.
enum class SmoothMethod { classical, two_party, laminar };
std::string smooth_method_name(SmoothMethod m);

struct SmoothOutcome {
    DensityOperator sigma;
    SmoothingReport report;
    SmoothMethod method;
};
SmoothOutcome smooth_auto(const DensityOperator& rho, const SubsetFamily& family);

// Overlapping-pair probe on three parties with K = {A1A2, A2A3}: smooth both
// subsets anyway and record how far each target is missed.
struct DeficitEntry {
    PartySet subset;
    EntropyValue target;    // trace-ball smoothed entropy of the input marginal
    EntropyValue achieved;  // min-entropy of the output marginal
    double deficit_bits = 0.0;  // max(0, target - achieved)
};

struct DeficitRecord {
    std::vector<DeficitEntry> entries;
    double purified_distance = 0.0;
};

DeficitRecord explore_overlapping(const DensityOperator& rho, double eps);

}  // namespace simsmooth
