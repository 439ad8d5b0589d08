// Dense pure-state engine over labelled two-level systems.
//
// Basis convention: bit 0 is |R> for photons and |up> for spins, bit 1 is
// |L> / |down>. The first qubit of a register is the most significant bit of
// the amplitude index, so index bits read left to right in register order.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wecp {

using Amplitude = std::complex<double>;

/// Square-norm slack allowed above 1 for sub-normalized (lossy) states.
inline constexpr double kNormSlack = 1e-9;

class StateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class QubitKind { Photon, Spin };

struct QubitId {
    std::string label;
    QubitKind kind = QubitKind::Photon;

    static QubitId photon(std::string label) { return {std::move(label), QubitKind::Photon}; }
    static QubitId spin(std::string label) { return {std::move(label), QubitKind::Spin}; }

    friend bool operator==(const QubitId&, const QubitId&) = default;
};

enum class Basis {
    RL,        ///< {|R>, |L>}
    Diagonal,  ///< {|+45> = (|L> + i|R>)/sqrt2, |-45> = (|L> - i|R>)/sqrt2}
    SpinZ,     ///< {|up>, |down>}
    SpinX,     ///< {(|up> + |down>)/sqrt2, (|up> - |down>)/sqrt2}
};

struct MeasurementRecord {
    QubitId qubit;
    Basis basis = Basis::RL;
    int outcome = 0;
    double probability = 0.0;
};

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

namespace gates {
Matrix2 identity();
Matrix2 hadamard();
/// |R><R| - |L><L| (equivalently |up><up| - |down><down|).
Matrix2 sigma_z();
Matrix2 sigma_x();
}  // namespace gates

/// Immutable state vector. Operations below return new states.
class StateVector {
public:
    StateVector() = default;
    StateVector(std::vector<QubitId> qubits, std::vector<Amplitude> amplitudes);

    /// alpha|0> + beta|1> on a single qubit (not normalized for you).
    static StateVector single(QubitId qubit, Amplitude zero, Amplitude one);
    /// Computational basis state; `bits` uses R/L/u/d/0/1 per qubit.
    static StateVector basis(std::vector<QubitId> qubits, std::string_view bits);

    [[nodiscard]] const std::vector<QubitId>& qubits() const { return qubits_; }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::size_t size() const { return qubits_.size(); }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }

    [[nodiscard]] bool contains(std::string_view label) const;
    /// Register position of `label`; throws StateError when absent.
    [[nodiscard]] std::size_t position(std::string_view label) const;
    [[nodiscard]] const QubitId& qubit(std::string_view label) const;
    [[nodiscard]] std::vector<std::string> labels() const;

    /// Amplitude of the basis state spelled in register order, e.g. "RRL".
    [[nodiscard]] Amplitude amplitude(std::string_view bits) const;
    [[nodiscard]] Amplitude operator[](std::size_t index) const { return amplitudes_[index]; }

    [[nodiscard]] double norm_squared() const;

    [[nodiscard]] StateVector scaled(Amplitude factor) const;
    [[nodiscard]] StateVector normalized() const;
    /// Same state with qubits permuted into `order` (labels).
    [[nodiscard]] StateVector reordered(std::span<const std::string> order) const;
    /// Same amplitudes with labels renamed pairwise (from, to).
    [[nodiscard]] StateVector relabeled(
        std::span<const std::pair<std::string, std::string>> renames) const;

private:
    std::vector<QubitId> qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// a's qubits followed by b's. Throws on a shared label.
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply_single(const StateVector& state, const QubitId& q, const Matrix2& m);
/// Row-major 2x2 matrix given as a flat span; any other size is rejected.
StateVector apply_single(const StateVector& state, const QubitId& q, std::span<const Amplitude> m);

/// Multiplies each basis amplitude by `phases[bit(q1)][bit(q2)]`.
StateVector apply_diagonal_pair(const StateVector& state, const QubitId& q1, const QubitId& q2,
                                const Matrix2& phases);

/// Unnormalized component <outcome|_q |state> with q removed.
StateVector project(const StateVector& state, const QubitId& q, Basis basis, int outcome);

/// Destructive projective measurement. Outcome 0 iff rand < p0.
std::pair<MeasurementRecord, StateVector> measure(const StateVector& state, const QubitId& q,
                                                  Basis basis, double rand);

/// <a|b>; registers must hold the same labels (any order).
Amplitude inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2). Insensitive to global phase and to qubit order.
double fidelity(const StateVector& a, const StateVector& b);

/// Splits a product state into (factor on `keep`, factor on the rest).
/// Both factors are normalized. Throws if the state is not a product
/// across that cut to within `tolerance`.
std::pair<StateVector, StateVector> factorize(const StateVector& state,
                                              std::span<const std::string> keep,
                                              double tolerance = 1e-9);

}  // namespace wecp
