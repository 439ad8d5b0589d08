#include "wecp/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wecp {

namespace {

constexpr std::size_t kMaxQubits = 20;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int bit_from_char(char c) {
    switch (c) {
        case 'R': case 'r': case 'u': case 'U': case '0': return 0;
        case 'L': case 'l': case 'd': case 'D': case '1': return 1;
        default: throw StateError(std::string("bad basis character '") + c + "'");
    }
}

std::size_t shift_of(std::size_t n, std::size_t pos) { return n - 1 - pos; }

// Basis vectors of a measurement basis, as components on (|0>, |1>).
std::array<Amplitude, 2> basis_vector(Basis basis, int outcome) {
    const Amplitude i{0.0, 1.0};
    switch (basis) {
        case Basis::RL:
        case Basis::SpinZ:
            return outcome == 0 ? std::array<Amplitude, 2>{1.0, 0.0}
                                : std::array<Amplitude, 2>{0.0, 1.0};
        case Basis::Diagonal:
            // (|L> +- i|R>)/sqrt2 with |R> = |0>
            return outcome == 0 ? std::array<Amplitude, 2>{i * kInvSqrt2, kInvSqrt2}
                                : std::array<Amplitude, 2>{-i * kInvSqrt2, kInvSqrt2};
        case Basis::SpinX:
            return outcome == 0 ? std::array<Amplitude, 2>{kInvSqrt2, kInvSqrt2}
                                : std::array<Amplitude, 2>{kInvSqrt2, -kInvSqrt2};
    }
    throw StateError("unknown basis");
}

void check_finite(std::span<const Amplitude> amps) {
    for (const auto& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw StateError("non-finite amplitude");
        }
    }
}

// Removes bit at `shift` from index, keeping the higher bits above it.
std::size_t drop_bit(std::size_t index, std::size_t shift) {
    const std::size_t low = index & ((std::size_t{1} << shift) - 1);
    const std::size_t high = index >> (shift + 1);
    return (high << shift) | low;
}

}  // namespace

namespace gates {

Matrix2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Matrix2 hadamard() {
    return {{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}};
}

Matrix2 sigma_z() { return {{{1.0, 0.0}, {0.0, -1.0}}}; }

Matrix2 sigma_x() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }

}  // namespace gates

StateVector::StateVector(std::vector<QubitId> qubits, std::vector<Amplitude> amplitudes)
    : qubits_(std::move(qubits)), amplitudes_(std::move(amplitudes)) {
    if (qubits_.size() > kMaxQubits) {
        throw StateError("register too large");
    }
    if (amplitudes_.size() != (std::size_t{1} << qubits_.size())) {
        throw StateError("amplitude count must be 2^(qubit count)");
    }
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        for (std::size_t j = i + 1; j < qubits_.size(); ++j) {
            if (qubits_[i].label == qubits_[j].label) {
                throw StateError("duplicate qubit label '" + qubits_[i].label + "'");
            }
        }
    }
    check_finite(amplitudes_);
}

StateVector StateVector::single(QubitId qubit, Amplitude zero, Amplitude one) {
    return StateVector({std::move(qubit)}, {zero, one});
}

StateVector StateVector::basis(std::vector<QubitId> qubits, std::string_view bits) {
    if (bits.size() != qubits.size()) {
        throw StateError("basis string length does not match register");
    }
    std::vector<Amplitude> amps(std::size_t{1} << qubits.size());
    std::size_t index = 0;
    for (char c : bits) {
        index = (index << 1) | static_cast<std::size_t>(bit_from_char(c));
    }
    amps[index] = 1.0;
    return StateVector(std::move(qubits), std::move(amps));
}

bool StateVector::contains(std::string_view label) const {
    return std::any_of(qubits_.begin(), qubits_.end(),
                       [&](const QubitId& q) { return q.label == label; });
}

std::size_t StateVector::position(std::string_view label) const {
    for (std::size_t k = 0; k < qubits_.size(); ++k) {
        if (qubits_[k].label == label) return k;
    }
    throw StateError("unknown qubit '" + std::string(label) + "'");
}

const QubitId& StateVector::qubit(std::string_view label) const {
    return qubits_[position(label)];
}

std::vector<std::string> StateVector::labels() const {
    std::vector<std::string> out;
    out.reserve(qubits_.size());
    for (const auto& q : qubits_) out.push_back(q.label);
    return out;
}

Amplitude StateVector::amplitude(std::string_view bits) const {
    if (bits.size() != qubits_.size()) {
        throw StateError("basis string length does not match register");
    }
    std::size_t index = 0;
    for (char c : bits) {
        index = (index << 1) | static_cast<std::size_t>(bit_from_char(c));
    }
    return amplitudes_[index];
}

double StateVector::norm_squared() const {
    return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                           [](double acc, const Amplitude& a) { return acc + std::norm(a); });
}

StateVector StateVector::scaled(Amplitude factor) const {
    std::vector<Amplitude> amps(amplitudes_.begin(), amplitudes_.end());
    for (auto& a : amps) a *= factor;
    return StateVector(qubits_, std::move(amps));
}

StateVector StateVector::normalized() const {
    const double n2 = norm_squared();
    if (n2 <= 0.0) {
        throw StateError("cannot normalize a zero-norm state");
    }
    return scaled(1.0 / std::sqrt(n2));
}

StateVector StateVector::reordered(std::span<const std::string> order) const {
    const std::size_t n = qubits_.size();
    if (order.size() != n) {
        throw StateError("reorder: register mismatch");
    }
    std::vector<std::size_t> src(n);
    std::vector<QubitId> qubits;
    qubits.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        src[k] = position(order[k]);
        qubits.push_back(qubits_[src[k]]);
    }
    std::vector<Amplitude> amps(amplitudes_.size());
    for (std::size_t idx = 0; idx < amplitudes_.size(); ++idx) {
        std::size_t out = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t bit = (idx >> shift_of(n, src[k])) & 1U;
            out |= bit << shift_of(n, k);
        }
        amps[out] = amplitudes_[idx];
    }
    return StateVector(std::move(qubits), std::move(amps));
}

StateVector StateVector::relabeled(
    std::span<const std::pair<std::string, std::string>> renames) const {
    std::vector<QubitId> qubits = qubits_;
    std::vector<bool> done(qubits.size(), false);
    for (const auto& [from, to] : renames) {
        const std::size_t k = position(from);
        if (done[k]) {
            throw StateError("relabel: '" + from + "' renamed twice");
        }
        qubits[k].label = to;
        done[k] = true;
    }
    return StateVector(std::move(qubits), amplitudes_);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    for (const auto& q : b.qubits()) {
        if (a.contains(q.label)) {
            throw StateError("tensor: label collision on '" + q.label + "'");
        }
    }
    std::vector<QubitId> qubits = a.qubits();
    qubits.insert(qubits.end(), b.qubits().begin(), b.qubits().end());
    const auto amps_a = a.amplitudes();
    const auto amps_b = b.amplitudes();
    std::vector<Amplitude> amps(amps_a.size() * amps_b.size());
    for (std::size_t i = 0; i < amps_a.size(); ++i) {
        for (std::size_t j = 0; j < amps_b.size(); ++j) {
            amps[i * amps_b.size() + j] = amps_a[i] * amps_b[j];
        }
    }
    return StateVector(std::move(qubits), std::move(amps));
}

StateVector apply_single(const StateVector& state, const QubitId& q, const Matrix2& m) {
    const std::size_t n = state.size();
    const std::size_t shift = shift_of(n, state.position(q.label));
    const std::size_t mask = std::size_t{1} << shift;
    const auto in = state.amplitudes();
    std::vector<Amplitude> out(in.begin(), in.end());
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        if (idx & mask) continue;
        const Amplitude a0 = in[idx];
        const Amplitude a1 = in[idx | mask];
        out[idx] = m[0][0] * a0 + m[0][1] * a1;
        out[idx | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
    return StateVector(state.qubits(), std::move(out));
}

StateVector apply_single(const StateVector& state, const QubitId& q,
                         std::span<const Amplitude> m) {
    if (m.size() != 4) {
        throw StateError("single-qubit operator must be 2x2");
    }
    return apply_single(state, q, Matrix2{{{m[0], m[1]}, {m[2], m[3]}}});
}

StateVector apply_diagonal_pair(const StateVector& state, const QubitId& q1, const QubitId& q2,
                                const Matrix2& phases) {
    const std::size_t n = state.size();
    const std::size_t s1 = shift_of(n, state.position(q1.label));
    const std::size_t s2 = shift_of(n, state.position(q2.label));
    if (s1 == s2) {
        throw StateError("diagonal pair needs two distinct qubits");
    }
    const auto in = state.amplitudes();
    std::vector<Amplitude> out(in.size());
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        out[idx] = in[idx] * phases[(idx >> s1) & 1U][(idx >> s2) & 1U];
    }
    return StateVector(state.qubits(), std::move(out));
}

StateVector project(const StateVector& state, const QubitId& q, Basis basis, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw StateError("measurement outcome must be 0 or 1");
    }
    const std::size_t n = state.size();
    const std::size_t pos = state.position(q.label);
    const std::size_t shift = shift_of(n, pos);
    const auto v = basis_vector(basis, outcome);
    const Amplitude c0 = std::conj(v[0]);
    const Amplitude c1 = std::conj(v[1]);

    std::vector<QubitId> qubits = state.qubits();
    qubits.erase(qubits.begin() + static_cast<std::ptrdiff_t>(pos));
    const auto in = state.amplitudes();
    std::vector<Amplitude> out(in.size() / 2);
    const std::size_t mask = std::size_t{1} << shift;
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        if (idx & mask) continue;
        out[drop_bit(idx, shift)] = c0 * in[idx] + c1 * in[idx | mask];
    }
    return StateVector(std::move(qubits), std::move(out));
}

std::pair<MeasurementRecord, StateVector> measure(const StateVector& state, const QubitId& q,
                                                  Basis basis, double rand) {
    if (!(rand >= 0.0 && rand < 1.0)) {
        throw StateError("measurement random number must lie in [0, 1)");
    }
    const double total = state.norm_squared();
    if (total <= 0.0) {
        throw StateError("cannot measure a zero-norm state");
    }
    StateVector zero = project(state, q, basis, 0);
    const double p0 = zero.norm_squared() / total;
    const QubitId& id = state.qubit(q.label);
    if (rand < p0) {
        return {MeasurementRecord{id, basis, 0, p0}, zero.normalized()};
    }
    StateVector one = project(state, q, basis, 1);
    const double p1 = one.norm_squared() / total;
    return {MeasurementRecord{id, basis, 1, p1}, one.normalized()};
}

Amplitude inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) {
        throw StateError("inner product: registers differ");
    }
    const StateVector* bb = &b;
    StateVector reordered;
    if (a.labels() != b.labels()) {
        const auto order = a.labels();
        for (const auto& label : order) {
            if (!b.contains(label)) {
                throw StateError("inner product: registers differ on '" + label + "'");
            }
        }
        reordered = b.reordered(order);
        bb = &reordered;
    }
    Amplitude acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = bb->amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (na <= 0.0 || nb <= 0.0) {
        throw StateError("fidelity of a zero-norm state");
    }
    return std::norm(inner(a, b)) / (na * nb);
}

std::pair<StateVector, StateVector> factorize(const StateVector& state,
                                              std::span<const std::string> keep,
                                              double tolerance) {
    std::vector<std::string> order(keep.begin(), keep.end());
    std::vector<std::string> rest;
    for (const auto& label : state.labels()) {
        if (std::find(order.begin(), order.end(), label) == order.end()) rest.push_back(label);
    }
    if (order.empty() || rest.empty()) {
        throw StateError("factorize: both sides of the cut must be non-empty");
    }
    const std::size_t keep_count = order.size();
    order.insert(order.end(), rest.begin(), rest.end());
    const StateVector s = state.reordered(order);
    const auto amps = s.amplitudes();
    const std::size_t rows = std::size_t{1} << keep_count;
    const std::size_t cols = amps.size() / rows;

    // Row/column through the largest entry span a rank-1 matrix.
    const auto it = std::max_element(amps.begin(), amps.end(),
                                     [](const Amplitude& x, const Amplitude& y) {
                                         return std::norm(x) < std::norm(y);
                                     });
    if (std::norm(*it) == 0.0) {
        throw StateError("factorize: zero state");
    }
    const auto pivot = static_cast<std::size_t>(it - amps.begin());
    const std::size_t pr = pivot / cols;
    const std::size_t pc = pivot % cols;
    std::vector<Amplitude> left(rows), right(cols);
    for (std::size_t r = 0; r < rows; ++r) left[r] = amps[r * cols + pc];
    for (std::size_t c = 0; c < cols; ++c) right[c] = amps[pr * cols + c] / amps[pivot];

    double residual = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            residual += std::norm(amps[r * cols + c] - left[r] * right[c]);
        }
    }
    if (residual > tolerance * tolerance * s.norm_squared()) {
        throw StateError("factorize: state is entangled across the requested cut");
    }
    const auto& qs = s.qubits();
    std::vector<QubitId> kq(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(keep_count));
    std::vector<QubitId> rq(qs.begin() + static_cast<std::ptrdiff_t>(keep_count), qs.end());
    return {StateVector(std::move(kq), std::move(left)).normalized(),
            StateVector(std::move(rq), std::move(right)).normalized()};
}

}  // namespace wecp
