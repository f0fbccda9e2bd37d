// Party-indexed dimension profiles, subsystem selections, and mixed-radix indexing.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace simsmooth {

// Thrown when an instance exceeds a documented size limit.
struct OversizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Ordered local dimensions (d_1, ..., d_m), one entry per party.
// Party indices are 0-based in code; user-facing text and JSON are 1-based.
class DimProfile {
public:
    explicit DimProfile(std::vector<int> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw std::invalid_argument("DimProfile: at least one party required");
        long total = 1;
        for (int d : dims_) {
            if (d < 1) throw std::invalid_argument("DimProfile: dimensions must be >= 1");
            if (total > (1L << 40) / d) throw std::invalid_argument("DimProfile: total dimension too large");
            total *= d;
        }
        total_ = total;
    }

    int party_count() const { return static_cast<int>(dims_.size()); }
    int dim(int party) const { return dims_.at(party); }
    long total_dim() const { return total_; }
    const std::vector<int>& dims() const { return dims_; }

    bool operator==(const DimProfile& o) const { return dims_ == o.dims_; }
    bool operator!=(const DimProfile& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s = "(";
        for (size_t k = 0; k < dims_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(dims_[k]);
        }
        return s + ")";
    }

private:
    std::vector<int> dims_;
    long total_ = 1;
};

// Subset of parties, stored sorted and duplicate-free (0-based).
class PartySet {
public:
    PartySet() = default;

    explicit PartySet(std::vector<int> members) : members_(std::move(members)) {
        for (int p : members_) {
            if (p < 0) throw std::invalid_argument("PartySet: party indices must be >= 0");
        }
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    static PartySet of(std::initializer_list<int> parties) {
        return PartySet(std::vector<int>(parties));
    }

    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    const std::vector<int>& members() const { return members_; }

    bool contains(int p) const {
        return std::binary_search(members_.begin(), members_.end(), p);
    }

    bool subset_of(const PartySet& o) const {
        return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
    }

    bool disjoint_from(const PartySet& o) const {
        for (int p : members_) {
            if (o.contains(p)) return false;
        }
        return true;
    }

    PartySet complement(int party_count) const {
        std::vector<int> rest;
        for (int p = 0; p < party_count; ++p) {
            if (!contains(p)) rest.push_back(p);
        }
        return PartySet(std::move(rest));
    }

    bool operator==(const PartySet& o) const { return members_ == o.members_; }
    bool operator!=(const PartySet& o) const { return !(*this == o); }
    bool operator<(const PartySet& o) const { return members_ < o.members_; }

    // User-facing label, 1-based: {0, 2} -> "A1A3".
    std::string to_string() const {
        std::string s;
        for (int p : members_) s += "A" + std::to_string(p + 1);
        return s.empty() ? std::string("(empty)") : s;
    }

private:
    std::vector<int> members_;
};

inline void check_parties_in_profile(const PartySet& s, const DimProfile& profile, const char* where) {
    if (s.empty()) return;
    if (s.members().back() >= profile.party_count()) {
        throw std::invalid_argument(std::string(where) + ": subset " + s.to_string() +
                                    " exceeds party count " + std::to_string(profile.party_count()));
    }
}

// Row-major cell indexing with party 1 most significant.  For a subset S the
// global index splits as sub_offset[a] + comp_offset[e], where a enumerates
// the S-cells and e the complement cells; the two offset sets use disjoint
// digit positions, so every (a, e) pair addresses a distinct global cell.
struct SubsetIndexer {
    long sub_dim = 1;
    long comp_dim = 1;
    std::vector<long> sub_offset;
    std::vector<long> comp_offset;
};

inline SubsetIndexer make_indexer(const DimProfile& profile, const PartySet& keep) {
    check_parties_in_profile(keep, profile, "make_indexer");
    const int m = profile.party_count();
    std::vector<long> stride(m, 1);
    for (int k = m - 2; k >= 0; --k) stride[k] = stride[k + 1] * profile.dim(k + 1);

    std::vector<int> kept, traced;
    for (int p = 0; p < m; ++p) {
        (keep.contains(p) ? kept : traced).push_back(p);
    }

    auto offsets_for = [&](const std::vector<int>& parties) {
        long n = 1;
        for (int p : parties) n *= profile.dim(p);
        std::vector<long> off(n, 0);
        for (long idx = 0; idx < n; ++idx) {
            long rem = idx;
            long o = 0;
            for (auto it = parties.rbegin(); it != parties.rend(); ++it) {
                const int d = profile.dim(*it);
                o += (rem % d) * stride[*it];
                rem /= d;
            }
            off[idx] = o;
        }
        return off;
    };

    SubsetIndexer ix;
    ix.sub_offset = offsets_for(kept);
    ix.comp_offset = offsets_for(traced);
    ix.sub_dim = static_cast<long>(ix.sub_offset.size());
    ix.comp_dim = static_cast<long>(ix.comp_offset.size());
    return ix;
}

inline DimProfile restricted_profile(const DimProfile& profile, const PartySet& keep) {
    if (keep.empty()) return DimProfile({1});
    check_parties_in_profile(keep, profile, "restricted_profile");
    std::vector<int> dims;
    for (int p : keep.members()) dims.push_back(profile.dim(p));
    return DimProfile(std::move(dims));
}

}  // namespace simsmooth
