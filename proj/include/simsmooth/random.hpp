// Seeded random state generation.  All draws go through mt19937_64 with a
// fixed uniform/Gaussian mapping, so outputs are stable across platforms.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "simsmooth/state.hpp"

namespace simsmooth {

enum class StateKind { pure, mixed, classical, classical_sparse };

StateKind parse_state_kind(const std::string& name);
std::string state_kind_name(StateKind kind);

// Deterministic generator; (seed, stream) pairs give decorrelated sequences,
// used to derive independent per-trial streams from one suite seed.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0);

    // Uniform in [0, 1), 53-bit resolution.
    double uniform();
    // Standard normal via Box-Muller (pairs cached).
    double gaussian();
    std::complex<double> complex_gaussian();
    uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

uint64_t splitmix64(uint64_t x);

// Random subnormalized-free states (all outputs have trace 1): pure and mixed
// are dense, classical kinds are diagonal probability tensors.
DensityOperator random_state(const DimProfile& profile, StateKind kind, uint64_t seed);
ClassicalState random_classical(const DimProfile& profile, uint64_t seed, bool sparse);

// Random complex K with K^dag K <= 1 (strict contraction in general).
Matrix random_contraction(long dim, Rng& rng);

}  // namespace simsmooth
