#include "simsmooth/channel.hpp"

#include <cmath>

namespace simsmooth {

SmoothingChannel build_smoothing_channel(const DensityOperator& rho_s, const PartySet& s, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("build_smoothing_channel: eps must be >= 0");
    if (s.empty()) throw std::invalid_argument("build_smoothing_channel: subsystem must be nonempty");
    if (rho_s.profile().party_count() != s.size()) {
        throw std::invalid_argument("build_smoothing_channel: marginal profile does not match subset " +
                                    s.to_string());
    }
    SmoothingChannel ch;
    ch.subsystem = s;
    ch.epsilon = eps;
    ch.source = eigen_decompose(rho_s);
    ch.cap = trace_cap_level(ch.source, eps);
    if (ch.cap.infinite) {
        // eps swallows the whole marginal; the channel annihilates.
        ch.kraus = Matrix::Zero(rho_s.dim(), rho_s.dim());
        return ch;
    }
    const double cap = ch.cap.cap;
    ch.kraus = spectral_matrix(ch.source,
                               [cap](double x) { return std::sqrt(cap_multiplier(x, cap)); });
    return ch;
}

DensityOperator apply_local(const SmoothingChannel& ch, const DensityOperator& t_s) {
    if (t_s.dim() != ch.kraus.rows()) {
        throw std::invalid_argument("apply_local: state dimension does not match channel");
    }
    return DensityOperator::trusted(t_s.profile(), ch.kraus * t_s.matrix() * ch.kraus.adjoint());
}

DensityOperator apply_extended(const SmoothingChannel& ch, const DensityOperator& t) {
    check_parties_in_profile(ch.subsystem, t.profile(), "apply_extended");
    const SubsetIndexer ix = make_indexer(t.profile(), ch.subsystem);
    if (ix.sub_dim != ch.kraus.rows()) {
        throw std::invalid_argument("apply_extended: channel dimension does not match subset " +
                                    ch.subsystem.to_string());
    }
    const Matrix k_full = embed_local(ch.kraus, ch.subsystem, t.profile());
    return DensityOperator::trusted(t.profile(), k_full * t.matrix() * k_full.adjoint());
}

ClassicalChannel build_classical_channel(const ClassicalState& p, const PartySet& s, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("build_classical_channel: eps must be >= 0");
    if (s.empty()) throw std::invalid_argument("build_classical_channel: subsystem must be nonempty");
    check_parties_in_profile(s, p.profile(), "build_classical_channel");
    const ClassicalState marg = p.marginal(s);
    ClassicalChannel ch;
    ch.subsystem = s;
    ch.epsilon = eps;
    ch.cap = trace_cap_level(std::span<const double>(marg.probs()), eps);
    ch.multiplier.resize(marg.dim());
    for (long a = 0; a < marg.dim(); ++a) {
        ch.multiplier[a] = ch.cap.infinite ? 0.0 : cap_multiplier(marg.probs()[a], ch.cap.cap);
    }
    return ch;
}

ClassicalState apply_extended(const ClassicalChannel& ch, const ClassicalState& t) {
    check_parties_in_profile(ch.subsystem, t.profile(), "apply_extended");
    const SubsetIndexer ix = make_indexer(t.profile(), ch.subsystem);
    if (ix.sub_dim != static_cast<long>(ch.multiplier.size())) {
        throw std::invalid_argument("apply_extended: channel dimension does not match subset " +
                                    ch.subsystem.to_string());
    }
    std::vector<double> out(t.probs());
    for (long a = 0; a < ix.sub_dim; ++a) {
        const double f = ch.multiplier[a];
        if (f == 1.0) continue;
        for (long e = 0; e < ix.comp_dim; ++e) out[ix.sub_offset[a] + ix.comp_offset[e]] *= f;
    }
    return ClassicalState::trusted(t.profile(), std::move(out));
}

}  // namespace simsmooth
