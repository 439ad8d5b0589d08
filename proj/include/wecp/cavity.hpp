// One-sided QD-cavity optics: hot/cold reflection coefficients and the
// photon-spin reflection operator built from them.
//
// All rates and frequencies are expressed in units of kappa. Frequencies are
// detunings; only their differences enter.

#pragma once

#include "wecp/statevec.hpp"

#include <stdexcept>

namespace wecp {

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CavityParams {
    double g = 2.4;        ///< X- / cavity coupling
    double kappa = 1.0;    ///< cavity decay rate, the reference unit
    double kappa_s = 0.0;  ///< side leakage
    double gamma = 0.1;    ///< X- decay rate
    double omega_c = 0.0;
    double omega_x = 0.0;
    double omega = 0.5;    ///< probe; omega - omega_c = kappa/2 gives the pi/2 phase contrast

    /// Throws ParameterError unless kappa > 0 and g, kappa_s, gamma >= 0.
    void validate() const;

    /// Protocol operating point with g = g_ratio * (kappa + kappa_s),
    /// kappa = 1, omega - omega_c = 1/2 and omega_c = omega_x.
    static CavityParams operating_point(double g_ratio, double ks_ratio, double gamma = 0.1);
};

struct ReflectionPair {
    Amplitude r_hot;
    Amplitude r_cold;
    double phi_hot = 0.0;   ///< arg(r_hot) in (-pi, pi]
    double phi_cold = 0.0;  ///< arg(r_cold) in (-pi, pi]
};

ReflectionPair reflection(const CavityParams& params);

/// (phi_cold - phi_hot) / 2; identical for both spin states.
double faraday_rotation(const CavityParams& params);

/// How the lossy rules treat the reflection phases.
enum class LossyPhase {
    Ideal,        ///< |r| prefactor times the ideal phase (the published lossy rules)
    FullComplex,  ///< the complex r_hot / r_cold themselves
};

class InteractionMode {
public:
    static InteractionMode ideal() { return InteractionMode{}; }
    static InteractionMode lossy(const CavityParams& params, LossyPhase phase = LossyPhase::Ideal);

    [[nodiscard]] bool is_ideal() const { return ideal_; }
    [[nodiscard]] const CavityParams& params() const { return params_; }
    [[nodiscard]] LossyPhase phase() const { return phase_; }

    /// Factor applied to a hot branch (|L,up>, |R,down>).
    [[nodiscard]] Amplitude hot() const { return hot_; }
    /// Factor applied to a cold branch (|R,up>, |L,down>).
    [[nodiscard]] Amplitude cold() const { return cold_; }

private:
    InteractionMode() = default;

    bool ideal_ = true;
    CavityParams params_{};
    LossyPhase phase_ = LossyPhase::Ideal;
    Amplitude hot_{1.0, 0.0};
    Amplitude cold_{0.0, -1.0};
};

/// Reflection operator as a 2x2 diagonal table indexed [photon bit][spin bit].
Matrix2 interaction_table(const InteractionMode& mode);

/// Reflects `photon` off the cavity holding `spin`. Never increases the norm.
StateVector photon_spin_interact(const StateVector& state, const QubitId& photon,
                                 const QubitId& spin, const InteractionMode& mode);

}  // namespace wecp
