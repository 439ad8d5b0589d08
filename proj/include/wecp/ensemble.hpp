// Monte Carlo runs of the full multi-round pipeline with resource pools.

#pragma once

#include "wecp/cavity.hpp"
#include "wecp/ecp.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wecp {

/// How a step-1 even success (two two-photon states) enters the pool.
enum class PairCounting {
    CountOne,   ///< one pool entry per success; matches xi = min(P1o, P1e)
    CountBoth,  ///< both a0b0 and a1b1 are pooled
};

struct EnsembleConfig {
    WParams w = WParams::uniform();
    std::uint64_t n_pairs = 1000;  ///< step-1 input pairs, at least 2
    int n_rounds = 1;
    InteractionMode mode = InteractionMode::ideal();
    std::uint64_t seed = 1;
    PairCounting counting = PairCounting::CountOne;
    /// true: exact branch sums instead of sampling (counts stay zero).
    bool enumerate = false;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct RoundLedger {
    int round_index = 1;
    /// Round 1: step-1 input pairs. Later rounds: pairs of three-photon
    /// resources sent through the split and step 2.
    std::uint64_t consumed = 0;
    std::uint64_t successes = 0;
    /// Next-generation three-photon resources.
    std::uint64_t recycled_three_photon = 0;
    /// Two-photon resources entering step 2 (round 1: pooled from step 1;
    /// later rounds: split outcomes R).
    std::uint64_t recycled_two_photon = 0;
    std::uint64_t discarded = 0;
    std::uint64_t losses = 0;
    /// Pool entries left without a partner this round.
    std::uint64_t surplus_three_photon = 0;
    std::uint64_t surplus_two_photon = 0;
    std::uint64_t step2_attempts = 0;
    std::map<std::string, double> empirical_probabilities;

    /// successes / consumed.
    [[nodiscard]] double empirical_p() const;
};

/// Throws ParameterError for n_pairs < 2 or a round count outside the
/// supported range.
std::vector<RoundLedger> run_ensemble(const EnsembleConfig& config);

/// Deterministic per-trajectory seed from (master, round, stage, index).
std::uint64_t trajectory_seed(std::uint64_t master, int round, int stage, std::uint64_t index);

}  // namespace wecp
