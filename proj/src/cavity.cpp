#include "wecp/cavity.hpp"

#include <cmath>

namespace wecp {

void CavityParams::validate() const {
    if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
    if (!(g >= 0.0)) throw ParameterError("g must be non-negative");
    if (!(kappa_s >= 0.0)) throw ParameterError("kappa_s must be non-negative");
    if (!(gamma >= 0.0)) throw ParameterError("gamma must be non-negative");
    if (!std::isfinite(omega) || !std::isfinite(omega_c) || !std::isfinite(omega_x)) {
        throw ParameterError("frequencies must be finite");
    }
}

CavityParams CavityParams::operating_point(double g_ratio, double ks_ratio, double gamma) {
    CavityParams p;
    p.kappa = 1.0;
    p.kappa_s = ks_ratio;
    p.g = g_ratio * (p.kappa + p.kappa_s);
    p.gamma = gamma;
    p.omega_c = 0.0;
    p.omega_x = 0.0;
    p.omega = 0.5;
    p.validate();
    return p;
}

ReflectionPair reflection(const CavityParams& p) {
    p.validate();
    const Amplitude i{0.0, 1.0};
    const Amplitude exciton = i * (p.omega_x - p.omega) + p.gamma / 2.0;
    const Amplitude cavity = i * (p.omega_c - p.omega) + p.kappa / 2.0 + p.kappa_s / 2.0;

    ReflectionPair out;
    out.r_hot = 1.0 - p.kappa * exciton / (exciton * cavity + p.g * p.g);
    out.r_cold = (i * (p.omega_c - p.omega) - p.kappa / 2.0 + p.kappa_s / 2.0) / cavity;
    out.phi_hot = std::arg(out.r_hot);
    out.phi_cold = std::arg(out.r_cold);
    // std::arg returns [-pi, pi]; fold -pi onto +pi.
    if (out.phi_hot <= -M_PI) out.phi_hot = M_PI;
    if (out.phi_cold <= -M_PI) out.phi_cold = M_PI;
    return out;
}

double faraday_rotation(const CavityParams& params) {
    const ReflectionPair r = reflection(params);
    return (r.phi_cold - r.phi_hot) / 2.0;
}

InteractionMode InteractionMode::lossy(const CavityParams& params, LossyPhase phase) {
    const ReflectionPair r = reflection(params);
    InteractionMode mode;
    mode.ideal_ = false;
    mode.params_ = params;
    mode.phase_ = phase;
    if (phase == LossyPhase::FullComplex) {
        mode.hot_ = r.r_hot;
        mode.cold_ = r.r_cold;
    } else {
        mode.hot_ = std::abs(r.r_hot) * Amplitude{1.0, 0.0};
        mode.cold_ = std::abs(r.r_cold) * Amplitude{0.0, -1.0};
    }
    return mode;
}

Matrix2 interaction_table(const InteractionMode& mode) {
    // photon bit 0 = R, spin bit 0 = up; hot when the bits differ.
    return {{{mode.cold(), mode.hot()}, {mode.hot(), mode.cold()}}};
}

StateVector photon_spin_interact(const StateVector& state, const QubitId& photon,
                                 const QubitId& spin, const InteractionMode& mode) {
    const QubitId& p = state.qubit(photon.label);
    const QubitId& s = state.qubit(spin.label);
    if (p.kind != QubitKind::Photon || s.kind != QubitKind::Spin) {
        throw StateError("photon_spin_interact: expected (photon, spin), got kinds swapped");
    }
    return apply_diagonal_pair(state, p, s, interaction_table(mode));
}

}  // namespace wecp
