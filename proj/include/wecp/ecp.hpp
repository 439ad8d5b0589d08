// Entanglement concentration for three-photon W-class states.
//
// Resource conventions: three-photon states live on photons "a", "b", "c";
// two-photon states on "a", "b". A generation-n resource carries the
// amplitudes (beta^(2^n), gamma^(2^n)), i.e. generation 0 is the
// nu (beta|RRL> + beta|RLR> + gamma|LRR>) state produced by step 1.

#pragma once

#include "wecp/cavity.hpp"
#include "wecp/pcg.hpp"
#include "wecp/statevec.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace wecp {

struct WParams {
    Amplitude alpha{1.0, 0.0};
    Amplitude beta{0.0, 0.0};
    Amplitude gamma{0.0, 0.0};

    /// Throws ParameterError unless |alpha|^2 + |beta|^2 + |gamma|^2 = 1 +- 1e-12.
    void validate() const;

    /// Real non-negative amplitudes from the three weights |.|^2.
    static WParams from_weights(double alpha_sq, double beta_sq, double gamma_sq);
    static WParams uniform();

    [[nodiscard]] double alpha_sq() const { return std::norm(alpha); }
    [[nodiscard]] double beta_sq() const { return std::norm(beta); }
    [[nodiscard]] double gamma_sq() const { return std::norm(gamma); }
};

std::array<QubitId, 3> triple_labels(const std::string& a = "a", const std::string& b = "b",
                                     const std::string& c = "c");

/// alpha|RRL> + beta|RLR> + gamma|LRR>.
StateVector make_w_input(const WParams& w, const std::array<QubitId, 3>& labels = triple_labels());

/// (|RRL> + |RLR> + |LRR>)/sqrt3.
StateVector w_plus(const std::array<QubitId, 3>& labels = triple_labels());

/// nu (b|RRL> + b|RLR> + c|LRR>) with b = beta^(2^n), c = gamma^(2^n).
StateVector generation_form(const WParams& w, int generation,
                            const std::array<QubitId, 3>& labels = triple_labels());

/// (b|RL> + c|LR>) normalized, same b, c as generation_form.
StateVector pair_form(const WParams& w, int generation);

struct Resource {
    StateVector state;
    int generation = 0;
};

enum class Fate {
    ThreePhoton,  ///< step 1 odd path: one generation-0 three-photon state
    TwoPhoton,    ///< step 1 even path: two two-photon states
    WState,       ///< a standard W state
    Recycled,     ///< next-generation three-photon resource
    Discarded,
    Lost,         ///< a photon was absorbed or leaked in a gate
};

const char* to_string(Fate fate);

struct Branch {
    Fate fate = Fate::Discarded;
    /// Enumeration: exact leaf probability. Sampling: probability of the
    /// sampled path.
    double probability = 1.0;
    /// Measurement record, e.g. "pcg=odd a1=R b1c1=RL".
    std::string path;
    std::vector<Resource> outputs;
    bool phase_flipped = false;
};

/// Uniform draw in [0, 1).
double uniform01(std::mt19937_64& rng);

// Each step comes in an exact form (every branch with its probability) and a
// sampled form (one branch, measurements drawn from `rng`).

/// Step 1 on two copies: gate on c0, c1, then the odd or even clean-up.
std::vector<Branch> step1_enumerate(const Resource& first, const Resource& second,
                                    const InteractionMode& mode);
Branch step1_sample(const Resource& first, const Resource& second, const InteractionMode& mode,
                    std::mt19937_64& rng);

/// Step 2 on a three-photon and a two-photon resource of the same generation.
std::vector<Branch> step2_enumerate(const Resource& three_photon, const Resource& two_photon,
                                    const InteractionMode& mode);
Branch step2_sample(const Resource& three_photon, const Resource& two_photon,
                    const InteractionMode& mode, std::mt19937_64& rng);

/// Measures photon c of a three-photon resource; outcome R leaves the
/// same-generation two-photon resource on a, b (Fate::TwoPhoton, one output).
std::vector<Branch> split_enumerate(const Resource& three_photon);
Branch split_sample(const Resource& three_photon, std::mt19937_64& rng);

/// A later round on two same-generation three-photon resources: the second is
/// split into a two-photon resource and step 2 runs on the pair.
std::vector<Branch> round_enumerate(const Resource& first, const Resource& second,
                                    const InteractionMode& mode);
Branch round_sample(const Resource& first, const Resource& second, const InteractionMode& mode,
                    std::mt19937_64& rng);

}  // namespace wecp
