// Sparse ket algebra used as a test oracle. A ket maps basis strings (one
// character per qubit: R/L for photons, u/d for spins) to amplitudes. It
// shares no code with the library's dense state vector.

#pragma once

#include "wecp/statevec.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Ket = std::map<std::string, C>;

inline const double kS = 1.0 / std::sqrt(2.0);
inline const C kI{0.0, 1.0};

inline char flip(char c) {
    switch (c) {
        case 'R': return 'L';
        case 'L': return 'R';
        case 'u': return 'd';
        case 'd': return 'u';
    }
    throw std::logic_error("bad basis char");
}

inline bool is_zero_char(char c) { return c == 'R' || c == 'u'; }

inline Ket prune(const Ket& k) {
    Ket out;
    for (const auto& [s, a] : k) {
        if (std::abs(a) > 1e-15) out[s] = a;
    }
    return out;
}

inline Ket product(const Ket& a, const Ket& b) {
    Ket out;
    for (const auto& [sa, ca] : a) {
        for (const auto& [sb, cb] : b) out[sa + sb] += ca * cb;
    }
    return prune(out);
}

inline double norm2(const Ket& k) {
    double n = 0.0;
    for (const auto& [s, a] : k) n += std::norm(a);
    return n;
}

inline Ket scaled(const Ket& k, C f) {
    Ket out;
    for (const auto& [s, a] : k) out[s] = a * f;
    return prune(out);
}

inline Ket normalized(const Ket& k) { return scaled(k, 1.0 / std::sqrt(norm2(k))); }

inline C overlap(const Ket& a, const Ket& b) {
    C sum = 0.0;
    for (const auto& [s, ca] : a) {
        auto it = b.find(s);
        if (it != b.end()) sum += std::conj(ca) * it->second;
    }
    return sum;
}

inline double fidelity(const Ket& a, const Ket& b) {
    return std::norm(overlap(a, b)) / (norm2(a) * norm2(b));
}

/// Multiplies every term by f(basis string).
inline Ket map_terms(const Ket& k, const std::function<C(const std::string&)>& f) {
    Ket out;
    for (const auto& [s, a] : k) out[s] = a * f(s);
    return prune(out);
}

/// Keeps terms whose character at `pos` is `value` and deletes that position.
inline Ket select(const Ket& k, std::size_t pos, char value) {
    Ket out;
    for (const auto& [s, a] : k) {
        if (s[pos] != value) continue;
        std::string t = s;
        t.erase(pos, 1);
        out[t] += a;
    }
    return prune(out);
}

/// Hadamard at `pos`: zero -> (zero + one)/sqrt2, one -> (zero - one)/sqrt2.
inline Ket hadamard(const Ket& k, std::size_t pos) {
    Ket out;
    for (const auto& [s, a] : k) {
        std::string z = s;
        std::string o = s;
        const bool zero = is_zero_char(s[pos]);
        if (zero) {
            o[pos] = flip(s[pos]);
        } else {
            z[pos] = flip(s[pos]);
        }
        out[z] += a * kS;
        out[o] += a * (zero ? kS : -kS);
    }
    return prune(out);
}

inline Ket sigma_z(const Ket& k, std::size_t pos) {
    return map_terms(k, [pos](const std::string& s) { return is_zero_char(s[pos]) ? 1.0 : -1.0; });
}

/// <+45| or <-45| at `pos` (|+-45> = (|L> +- i|R>)/sqrt2), position removed.
inline Ket diagonal(const Ket& k, std::size_t pos, bool plus) {
    const C on_r = plus ? -kI * kS : kI * kS;
    Ket out;
    for (const auto& [s, a] : k) {
        std::string t = s;
        t.erase(pos, 1);
        out[t] += a * (s[pos] == 'R' ? on_r : C{kS});
    }
    return prune(out);
}

/// Reorders characters: position k of the result takes source position order[k].
inline Ket permute(const Ket& k, const std::vector<std::size_t>& order) {
    Ket out;
    for (const auto& [s, a] : k) {
        std::string t;
        for (std::size_t p : order) t += s[p];
        out[t] += a;
    }
    return out;
}

/// Reads a library state into a ket in its own register order.
inline Ket from_state(const wecp::StateVector& state) {
    Ket out;
    const std::size_t n = state.size();
    for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
        const C a = state[idx];
        if (std::abs(a) <= 1e-15) continue;
        std::string s;
        for (std::size_t q = 0; q < n; ++q) {
            const bool one = (idx >> (n - 1 - q)) & 1U;
            const bool spin = state.qubits()[q].kind == wecp::QubitKind::Spin;
            s += spin ? (one ? 'd' : 'u') : (one ? 'L' : 'R');
        }
        out[s] = a;
    }
    return out;
}

/// Ideal parity projection on positions p, q. Even keeps RR and LL with LL
/// negated; odd keeps RL and LR unchanged.
inline Ket parity(const Ket& k, std::size_t p, std::size_t q, bool even) {
    Ket out;
    for (const auto& [s, a] : k) {
        const bool same = s[p] == s[q];
        if (same != even) continue;
        out[s] = (even && s[p] == 'L') ? -a : a;
    }
    return prune(out);
}

/// alpha|RRL> + beta|RLR> + gamma|LRR>.
inline Ket w_ket(C alpha, C beta, C gamma) {
    return prune(Ket{{"RRL", alpha}, {"RLR", beta}, {"LRR", gamma}});
}

}  // namespace oracle
