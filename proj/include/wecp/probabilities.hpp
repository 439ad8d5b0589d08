// Success-probability tables: the analytic expressions, and the same table
// read off the simulated branch trees.

#pragma once

#include "wecp/cavity.hpp"
#include "wecp/ecp.hpp"

#include <utility>
#include <vector>

namespace wecp {

inline constexpr int kMaxRounds = 30;

struct ProbabilityTable {
    double p1o = 0.0;
    double p1e = 0.0;
    double p1o_prime = 0.0;
    double p1e_prime = 0.0;
    /// (p_no, p_ne) for n = 2 .. n_rounds.
    std::vector<std::pair<double, double>> per_round;
    double xi = 0.0;
    double total = 0.0;
};

/// xi * [P'1o + P'1e (P2o + P2e (P3o + ...))] over the rounds present in the table.
double chain_total(const ProbabilityTable& t);

/// Throws ParameterError when n_rounds is outside [1, kMaxRounds].
ProbabilityTable closed_form(const WParams& w, int n_rounds);

/// Real non-negative parameters with P1o = P1e at |beta|^2 = beta_sq in (0, 2/3].
WParams balanced_alpha(double beta_sq);

/// Branch sums of the simulated protocol. Each stage is fed the states the
/// previous stage actually produced. Deep generations need the amplitudes
/// to stay representable, so n_rounds is capped at 5 here.
ProbabilityTable exact_table(const WParams& w, int n_rounds,
                             const InteractionMode& mode = InteractionMode::ideal());

inline constexpr int kMaxExactRounds = 5;

}  // namespace wecp
