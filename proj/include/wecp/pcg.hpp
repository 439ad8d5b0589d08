// Parity-check gate on two photon polarizations, mediated by one QD spin and
// a probe photon read out in the +-45 degree basis.

#pragma once

#include "wecp/cavity.hpp"
#include "wecp/statevec.hpp"

#include <variant>
#include <vector>

namespace wecp {

enum class Parity { Even, Odd };
enum class ProbeState { Plus45, Minus45 };
enum class SpinOutcome { Up, Down };

struct ParityOutcome {
    Parity parity = Parity::Even;
    ProbeState probe = ProbeState::Plus45;
    SpinOutcome spin = SpinOutcome::Down;

    static ParityOutcome even() { return {Parity::Even, ProbeState::Plus45, SpinOutcome::Down}; }
    static ParityOutcome odd() { return {Parity::Odd, ProbeState::Minus45, SpinOutcome::Up}; }
};

struct GateResult {
    ParityOutcome outcome;
    /// Probability of this probe outcome given that no photon was lost.
    double probability = 0.0;
    /// The two signal photons plus spectators, spin and probe removed.
    /// Normalized unless `probability` is zero.
    StateVector collapsed;
    /// Probability that all three photons survived the reflections.
    double retained_norm = 1.0;
};

struct GateLoss {
    double loss_probability = 0.0;
};

using GateSample = std::variant<GateResult, GateLoss>;

struct GateMetrics {
    double fidelity_even = 0.0;
    double fidelity_odd = 0.0;
    double efficiency = 0.0;
};

/// Both branches, Even first. Ideal-mode collapsed states are exactly
/// psi_RR|RR> - psi_LL|LL> and psi_RL|RL> + psi_LR|LR> (normalized).
std::vector<GateResult> parity_check_enumerate(const StateVector& state, const QubitId& p1,
                                               const QubitId& p2, const InteractionMode& mode);

/// One branch chosen with a single uniform draw. In lossy mode draws at or
/// above the survival probability report a GateLoss.
GateSample parity_check_sample(const StateVector& state, const QubitId& p1, const QubitId& p2,
                               const InteractionMode& mode, double rand);

/// Gate fidelity per branch and photon-survival efficiency on the canonical
/// input (|R> + |L>)/sqrt2 for both signal photons.
GateMetrics gate_metrics(const CavityParams& params, LossyPhase phase = LossyPhase::Ideal);

}  // namespace wecp
