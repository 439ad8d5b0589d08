#include "wecp/pcg.hpp"

#include <cmath>

namespace wecp {

namespace {

const QubitId kSpin = QubitId::spin("pcg.spin");
const QubitId kProbe = QubitId::photon("pcg.probe");

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Reflected {
    StateVector state;  // signal photons, spectators, spin, probe
    double survival;    // retained norm^2 relative to the input
};

// Runs photons 1, 2, the spin Hadamard and the probe through the cavity.
Reflected reflect_all(const StateVector& input, const QubitId& p1, const QubitId& p2,
                      const InteractionMode& mode) {
    if (input.contains(kSpin.label) || input.contains(kProbe.label)) {
        throw StateError("parity check: input already holds the gate's ancilla labels");
    }
    const QubitId& q1 = input.qubit(p1.label);
    const QubitId& q2 = input.qubit(p2.label);
    if (q1.kind != QubitKind::Photon || q2.kind != QubitKind::Photon) {
        throw StateError("parity check acts on photons only");
    }
    if (q1.label == q2.label) {
        throw StateError("parity check needs two distinct photons");
    }
    const double n0 = input.norm_squared();
    if (n0 <= 0.0) {
        throw StateError("parity check on a zero-norm state");
    }

    StateVector s = tensor(input, StateVector::single(kSpin, kInvSqrt2, kInvSqrt2));
    s = photon_spin_interact(s, q1, kSpin, mode);
    s = photon_spin_interact(s, q2, kSpin, mode);
    s = apply_single(s, kSpin, gates::hadamard());
    s = tensor(s, StateVector::single(kProbe, kInvSqrt2, kInvSqrt2));
    s = photon_spin_interact(s, kProbe, kSpin, mode);
    const double survival = s.norm_squared() / n0;
    return {std::move(s), survival};
}

// Ideal-mode phase picked up by each branch (+i for Even, -i for Odd); removed
// so the collapsed states carry the textbook signs.
Amplitude branch_phase_fix(Parity parity) {
    return parity == Parity::Even ? Amplitude{0.0, -1.0} : Amplitude{0.0, 1.0};
}

ParityOutcome outcome_of(Parity parity) {
    return parity == Parity::Even ? ParityOutcome::even() : ParityOutcome::odd();
}

StateVector probe_component(const Reflected& r, Parity parity) {
    const int probe_outcome = outcome_of(parity).probe == ProbeState::Plus45 ? 0 : 1;
    return project(r.state, kProbe, Basis::Diagonal, probe_outcome);
}

GateResult collapse(const Reflected& r, Parity parity, const StateVector& probe_proj) {
    const ParityOutcome outcome = outcome_of(parity);
    const int spin_outcome = outcome.spin == SpinOutcome::Up ? 0 : 1;

    const double total = r.state.norm_squared();
    GateResult result;
    result.outcome = outcome;
    result.retained_norm = r.survival;
    result.probability = total > 0.0 ? probe_proj.norm_squared() / total : 0.0;

    // The spin is never read out; it is projected onto the value the probe implies.
    StateVector branch = project(probe_proj, kSpin, Basis::SpinZ, spin_outcome)
                             .scaled(branch_phase_fix(parity));
    result.collapsed = branch.norm_squared() > 0.0 ? branch.normalized() : branch;
    return result;
}

GateResult collapse(const Reflected& r, Parity parity) {
    return collapse(r, parity, probe_component(r, parity));
}

}  // namespace

std::vector<GateResult> parity_check_enumerate(const StateVector& state, const QubitId& p1,
                                               const QubitId& p2, const InteractionMode& mode) {
    const Reflected r = reflect_all(state, p1, p2, mode);
    return {collapse(r, Parity::Even), collapse(r, Parity::Odd)};
}

GateSample parity_check_sample(const StateVector& state, const QubitId& p1, const QubitId& p2,
                               const InteractionMode& mode, double rand) {
    if (!(rand >= 0.0 && rand < 1.0)) {
        throw StateError("parity check random number must lie in [0, 1)");
    }
    const Reflected r = reflect_all(state, p1, p2, mode);
    double u = rand;
    if (!mode.is_ideal()) {
        if (u >= r.survival) {
            return GateLoss{1.0 - r.survival};
        }
        u /= r.survival;
    }
    const StateVector even = probe_component(r, Parity::Even);
    if (u < even.norm_squared() / r.state.norm_squared()) {
        return collapse(r, Parity::Even, even);
    }
    return collapse(r, Parity::Odd);
}

GateMetrics gate_metrics(const CavityParams& params, LossyPhase phase) {
    const QubitId p1 = QubitId::photon("1");
    const QubitId p2 = QubitId::photon("2");
    const StateVector input = tensor(StateVector::single(p1, kInvSqrt2, kInvSqrt2),
                                     StateVector::single(p2, kInvSqrt2, kInvSqrt2));

    const auto ideal = parity_check_enumerate(input, p1, p2, InteractionMode::ideal());
    const auto real = parity_check_enumerate(input, p1, p2, InteractionMode::lossy(params, phase));

    GateMetrics m;
    m.fidelity_even = fidelity(real[0].collapsed, ideal[0].collapsed);
    m.fidelity_odd = fidelity(real[1].collapsed, ideal[1].collapsed);
    // Retained norm is shared by both branches; the ideal gate retains 1.
    m.efficiency = (real[0].retained_norm * real[0].probability +
                    real[1].retained_norm * real[1].probability) /
                   (ideal[0].probability + ideal[1].probability);
    return m;
}

}  // namespace wecp
