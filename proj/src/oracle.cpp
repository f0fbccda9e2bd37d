#include "simsmooth/oracle.hpp"

#include <algorithm>

#include "simsmooth/distance.hpp"
#include "simsmooth/entropy.hpp"

namespace simsmooth {

SmootherLp build_smoother_lp(const ClassicalState& p, const std::vector<PartySet>& subsets,
                             const std::vector<double>& caps, bool literal) {
    if (subsets.size() != caps.size()) {
        throw std::invalid_argument("build_smoother_lp: one cap per subset required");
    }
    const long cells = p.dim();
    if (cells > kOracleCellLimit) {
        throw OversizeError("build_smoother_lp: " + std::to_string(cells) +
                            " cells exceed the oracle limit of " +
                            std::to_string(kOracleCellLimit) +
                            "; use the iterative smoother instead");
    }

    SmootherLp out;
    out.cells = cells;
    out.literal = literal;

    // Per-cell upper bound from any subset whose marginal rows would be
    // single-cell (complement dimension 1); typically the full party set.
    std::vector<double> cell_cap(cells, kLpInfinity);
    struct MarginalRows {
        SubsetIndexer ix;
        double cap;
    };
    std::vector<MarginalRows> row_groups;
    for (size_t s = 0; s < subsets.size(); ++s) {
        check_parties_in_profile(subsets[s], p.profile(), "build_smoother_lp");
        SubsetIndexer ix = make_indexer(p.profile(), subsets[s]);
        if (ix.comp_dim == 1) {
            for (long c = 0; c < cells; ++c) cell_cap[c] = std::min(cell_cap[c], caps[s]);
        } else {
            row_groups.push_back({std::move(ix), caps[s]});
        }
    }

    const double mass = p.mass();
    LinearProgram& lp = out.lp;

    if (!literal) {
        // Variables: q (cells), s_c for cells with p_c > 0, then w.
        std::vector<int> slack_of(cells, -1);
        int next = static_cast<int>(cells);
        for (long c = 0; c < cells; ++c) {
            if (p.probs()[c] > 0.0) slack_of[c] = next++;
        }
        const int w = next++;
        lp.num_vars = next;
        lp.objective.assign(lp.num_vars, 0.0);
        lp.upper.assign(lp.num_vars, kLpInfinity);
        for (long c = 0; c < cells; ++c) {
            lp.upper[c] = cell_cap[c];
            lp.objective[c] = slack_of[c] < 0 ? 1.0 : 0.0;  // overshoot on empty cells is pure cost
            if (slack_of[c] >= 0) lp.objective[slack_of[c]] = 1.0;
        }
        lp.objective[w] = 1.0;

        for (const MarginalRows& g : row_groups) {
            for (long a = 0; a < g.ix.sub_dim; ++a) {
                std::vector<double> row(lp.num_vars, 0.0);
                for (long e = 0; e < g.ix.comp_dim; ++e) {
                    row[g.ix.sub_offset[a] + g.ix.comp_offset[e]] = 1.0;
                }
                lp.add_row(std::move(row), RowSense::le, g.cap);
            }
        }
        for (long c = 0; c < cells; ++c) {
            if (slack_of[c] < 0) continue;
            std::vector<double> row(lp.num_vars, 0.0);
            row[c] = 1.0;
            row[slack_of[c]] = -1.0;
            lp.add_row(std::move(row), RowSense::le, p.probs()[c]);
        }
        std::vector<double> mass_row(lp.num_vars, 0.0);
        for (long c = 0; c < cells; ++c) mass_row[c] = 1.0;
        mass_row[w] = 1.0;
        lp.add_row(std::move(mass_row), RowSense::ge, mass);
    } else {
        // Variables: q (cells), t (cells), u, v.
        const int t0 = static_cast<int>(cells);
        const int u = 2 * static_cast<int>(cells);
        const int v = u + 1;
        lp.num_vars = v + 1;
        lp.objective.assign(lp.num_vars, 0.0);
        lp.upper.assign(lp.num_vars, kLpInfinity);
        for (long c = 0; c < cells; ++c) {
            lp.upper[c] = cell_cap[c];
            lp.objective[t0 + c] = 0.5;
        }
        lp.objective[u] = 0.5;
        lp.objective[v] = 0.5;

        for (const MarginalRows& g : row_groups) {
            for (long a = 0; a < g.ix.sub_dim; ++a) {
                std::vector<double> row(lp.num_vars, 0.0);
                for (long e = 0; e < g.ix.comp_dim; ++e) {
                    row[g.ix.sub_offset[a] + g.ix.comp_offset[e]] = 1.0;
                }
                lp.add_row(std::move(row), RowSense::le, g.cap);
            }
        }
        for (long c = 0; c < cells; ++c) {
            std::vector<double> above(lp.num_vars, 0.0);
            above[c] = 1.0;
            above[t0 + c] = -1.0;
            lp.add_row(std::move(above), RowSense::le, p.probs()[c]);
            std::vector<double> below(lp.num_vars, 0.0);
            below[c] = 1.0;
            below[t0 + c] = 1.0;
            lp.add_row(std::move(below), RowSense::ge, p.probs()[c]);
        }
        std::vector<double> mass_row(lp.num_vars, 0.0);
        for (long c = 0; c < cells; ++c) mass_row[c] = 1.0;
        mass_row[u] = 1.0;
        mass_row[v] = -1.0;
        lp.add_row(std::move(mass_row), RowSense::eq, mass);
    }
    out.subset_rows = 0;
    for (const MarginalRows& g : row_groups) out.subset_rows += static_cast<int>(g.ix.sub_dim);
    return out;
}

OracleResult optimal_classical_smoother(const ClassicalState& p, const SubsetFamily& family) {
    family.validate(p.profile());
    if (family.metric != Metric::trace) {
        throw std::invalid_argument("optimal_classical_smoother: only the trace metric is supported");
    }
    std::vector<double> caps;
    caps.reserve(family.subsets.size());
    for (const PartySet& s : family.subsets) {
        const ClassicalState marg = p.marginal(s);
        const CapSolution cs = trace_cap_level(std::span<const double>(marg.probs()), family.epsilon);
        caps.push_back(cs.infinite ? 0.0 : cs.cap);
    }
    const SmootherLp prog = build_smoother_lp(p, family.subsets, caps, false);
    const LpSolution sol = lp_solve(prog.lp);

    std::vector<double> q(sol.x.begin(), sol.x.begin() + p.dim());
    OracleResult out{ClassicalState::trusted(p.profile(), std::move(q)), 0.0, sol.objective};
    out.distance = trace_distance(p, out.q);
    return out;
}

}  // namespace simsmooth
