#include "wecp/probabilities.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace wecp {

namespace {

void check_rounds(int n_rounds, int cap) {
    if (n_rounds < 1 || n_rounds > cap) {
        throw ParameterError("n_rounds must lie in [1, " + std::to_string(cap) + "], got " +
                             std::to_string(n_rounds) + "; truncate the iteration");
    }
}

// P_no and P_ne with x = |beta|^(2^n), y = |gamma|^(2^n), evaluated through
// the ratio x/y so that deep rounds do not underflow.
std::pair<double, double> round_pair(double beta_sq, double gamma_sq, int n) {
    if (beta_sq == 0.0 && gamma_sq == 0.0) return {0.0, 1.0};
    if (beta_sq == 0.0) return {0.0, 1.0};
    if (gamma_sq == 0.0) return {0.0, 0.5};
    const double d = std::ldexp(std::log(beta_sq) - std::log(gamma_sq), n - 1);
    if (d <= 0.0) {
        const double t = std::exp(d);
        const double den = (2.0 * t + 1.0) * (2.0 * t + 1.0);
        return {3.0 * t / den, (2.0 * t * t + 1.0) / den};
    }
    const double s = std::exp(-d);
    const double den = (2.0 + s) * (2.0 + s);
    return {3.0 * s / den, (2.0 + s * s) / den};
}

struct Sums {
    double p[6] = {};
    std::optional<Resource> first_of[6];
};

Sums collect(const std::vector<Branch>& branches) {
    Sums s;
    for (const auto& b : branches) {
        const auto k = static_cast<std::size_t>(b.fate);
        s.p[k] += b.probability;
        if (!s.first_of[k] && !b.outputs.empty()) s.first_of[k] = b.outputs.front();
    }
    return s;
}

double of(const Sums& s, Fate f) { return s.p[static_cast<std::size_t>(f)]; }
const std::optional<Resource>& out(const Sums& s, Fate f) {
    return s.first_of[static_cast<std::size_t>(f)];
}

}  // namespace

double chain_total(const ProbabilityTable& t) {
    double tail = 0.0;
    for (auto it = t.per_round.rbegin(); it != t.per_round.rend(); ++it) {
        tail = it->first + it->second * tail;
    }
    return t.xi * (t.p1o_prime + t.p1e_prime * tail);
}

ProbabilityTable closed_form(const WParams& w, int n_rounds) {
    w.validate();
    check_rounds(n_rounds, kMaxRounds);
    const double a = w.alpha_sq();
    const double b = w.beta_sq();
    const double g = w.gamma_sq();

    ProbabilityTable t;
    t.p1o = a * (g + 2.0 * b);
    t.p1e = (g + b) * (g + b);
    const double den = (g + 2.0 * b) * (g + b);
    if (den > 0.0) {
        t.p1o_prime = 3.0 * b * g / den;
        t.p1e_prime = (g * g + 2.0 * b * b) / den;
    } else {
        t.p1o_prime = 0.0;
        t.p1e_prime = 1.0;
    }
    for (int n = 2; n <= n_rounds; ++n) t.per_round.push_back(round_pair(b, g, n));
    t.xi = std::min(t.p1o, t.p1e);
    t.total = chain_total(t);
    return t;
}

WParams balanced_alpha(double beta_sq) {
    if (!(beta_sq > 0.0 && beta_sq <= 2.0 / 3.0 + 1e-15)) {
        throw ParameterError("beta_sq = " + std::to_string(beta_sq) +
                             " is outside the feasible interval (0, 2/3]");
    }
    const double b = beta_sq;
    const double s = ((1.0 - b) + std::sqrt(b * b + 6.0 * b + 1.0)) / 4.0;
    const double gamma_sq = std::max(0.0, s - b);
    const double alpha_sq = std::max(0.0, 1.0 - b - gamma_sq);
    return WParams{std::sqrt(alpha_sq), std::sqrt(b), std::sqrt(gamma_sq)};
}

ProbabilityTable exact_table(const WParams& w, int n_rounds, const InteractionMode& mode) {
    w.validate();
    check_rounds(n_rounds, kMaxExactRounds);

    ProbabilityTable t;
    const Resource input{make_w_input(w), 0};
    const Sums s1 = collect(step1_enumerate(input, input, mode));
    t.p1o = of(s1, Fate::ThreePhoton);
    t.p1e = of(s1, Fate::TwoPhoton);
    t.xi = std::min(t.p1o, t.p1e);

    // Step 2 does not depend on alpha. If step 1 never produced one of the
    // resources, the canonical generation-0 forms stand in for it.
    std::optional<Resource> three = out(s1, Fate::ThreePhoton);
    std::optional<Resource> two = out(s1, Fate::TwoPhoton);
    const bool degenerate = w.beta_sq() == 0.0 && w.gamma_sq() == 0.0;
    if (degenerate) {
        t.p1o_prime = 0.0;
        t.p1e_prime = 1.0;
        t.per_round.assign(static_cast<std::size_t>(n_rounds - 1), {0.0, 1.0});
        t.total = chain_total(t);
        return t;
    }
    if (!three) three = Resource{generation_form(w, 0), 0};
    if (!two) two = Resource{pair_form(w, 0), 0};

    const Sums s2 = collect(step2_enumerate(*three, *two, mode));
    t.p1o_prime = of(s2, Fate::WState);
    t.p1e_prime = of(s2, Fate::Recycled);

    std::optional<Resource> current = out(s2, Fate::Recycled);
    for (int n = 2; n <= n_rounds; ++n) {
        if (!current) {
            t.per_round.emplace_back(0.0, 0.0);
            continue;
        }
        const Sums sn = collect(round_enumerate(*current, *current, mode));
        t.per_round.emplace_back(of(sn, Fate::WState), of(sn, Fate::Recycled));
        current = out(sn, Fate::Recycled);
    }
    t.total = chain_total(t);
    return t;
}

}  // namespace wecp
