#include "wecp/analysis.hpp"

#include "wecp/pcg.hpp"
#include "wecp/probabilities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace wecp {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_row(std::ostream& out, std::initializer_list<double> fields) {
    bool first = true;
    for (double f : fields) {
        if (!first) out << ',';
        out << format_number(f);
        first = false;
    }
    out << '\n';
}

InteractionMode cavity_mode(const SweepConfig& c) {
    return InteractionMode::lossy(CavityParams::operating_point(c.g_point, c.ks_point, c.gamma),
                                  c.phase);
}

struct Check {
    std::string name;
    double closed = kNaN;
    double exact = kNaN;
    double mc = kNaN;
    double sigma = kNaN;
};

// Random weights on the simplex with a random phase on beta.
WParams random_triple(std::mt19937_64& rng) {
    double u = uniform01(rng);
    double v = uniform01(rng);
    if (u > v) std::swap(u, v);
    const double phase = 2.0 * M_PI * uniform01(rng);
    WParams w = WParams::from_weights(u, v - u, 1.0 - v);
    w.beta *= std::polar(1.0, phase);
    return w;
}

}  // namespace

void Grid::validate(const std::string& name) const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
        throw ParameterError(name + " grid must be finite");
    }
    if (!(step > 0.0)) throw ParameterError(name + " grid step must be positive");
    if (max < min) throw ParameterError(name + " grid is empty (max < min)");
}

std::vector<double> Grid::values() const {
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(count);
    for (std::size_t k = 0; k < count; ++k) v.push_back(min + static_cast<double>(k) * step);
    return v;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int cmd_fig5(const SweepConfig& c, std::ostream& out, std::ostream& err) {
    c.beta_sq.validate("beta_sq");
    out << "beta_sq,alpha_sq,gamma_sq,p_total_n1,p_total_n2,p_total_n3\n";
    for (double b : c.beta_sq.values()) {
        WParams w;
        try {
            w = balanced_alpha(b);
        } catch (const ParameterError& e) {
            err << "fig5: row beta_sq=" << format_number(b) << " flagged: " << e.what() << '\n';
            write_row(out, {b, kNaN, kNaN, kNaN, kNaN, kNaN});
            continue;
        }
        const ProbabilityTable t = closed_form(w, 3);
        ProbabilityTable partial = t;
        partial.per_round.clear();
        const double n1 = chain_total(partial);
        partial.per_round.push_back(t.per_round[0]);
        const double n2 = chain_total(partial);
        write_row(out, {b, w.alpha_sq(), w.gamma_sq(), n1, n2, t.total});
    }
    return kExitOk;
}

int cmd_fig6(const SweepConfig& c, std::ostream& out, std::ostream&) {
    c.g_ratio.validate("g_ratio");
    c.ks_ratio.validate("ks_ratio");
    out << "g_over_ks_plus_k,ks_over_k,fidelity_even,fidelity_odd,efficiency\n";
    for (double g : c.g_ratio.values()) {
        for (double ks : c.ks_ratio.values()) {
            const GateMetrics m = gate_metrics(CavityParams::operating_point(g, ks, c.gamma), c.phase);
            write_row(out, {g, ks, m.fidelity_even, m.fidelity_odd, m.efficiency});
        }
    }
    return kExitOk;
}

int cmd_metrics(const SweepConfig& c, std::ostream& out, std::ostream&) {
    const GateMetrics m =
        gate_metrics(CavityParams::operating_point(c.g_point, c.ks_point, c.gamma), c.phase);
    out << "F_even " << format_number(m.fidelity_even) << '\n';
    out << "F_odd " << format_number(m.fidelity_odd) << '\n';
    out << "eta " << format_number(m.efficiency) << '\n';
    return kExitOk;
}

int cmd_run(const SweepConfig& c, std::ostream& out, std::ostream& err) {
    EnsembleConfig e;
    e.w = WParams::from_weights(c.alpha_sq, c.beta_sq_point, c.gamma_sq_point);
    e.n_pairs = c.n_trajectories;
    e.n_rounds = c.n_rounds;
    e.mode = c.lossy ? cavity_mode(c) : InteractionMode::ideal();
    e.seed = c.seed;
    e.counting = c.counting;
    e.enumerate = c.enumerate;
    e.threads = c.threads;
    const auto ledgers = run_ensemble(e);
    out << "round,consumed,successes,recycled3,recycled2,discarded,losses,empirical_p\n";
    for (const auto& l : ledgers) {
        const double p = c.enumerate ? l.empirical_probabilities.at("success_rate") : l.empirical_p();
        out << l.round_index << ',' << l.consumed << ',' << l.successes << ','
            << l.recycled_three_photon << ',' << l.recycled_two_photon << ',' << l.discarded << ','
            << l.losses << ',' << format_number(p) << '\n';
        for (const auto& [key, value] : l.empirical_probabilities) {
            err << "round " << l.round_index << ' ' << key << ' ' << format_number(value) << '\n';
        }
    }
    return kExitOk;
}

int cmd_compare(const SweepConfig& c, std::ostream& out, std::ostream& err) {
    if (c.n_trajectories < 10000) {
        throw ParameterError("compare needs at least 10^4 trajectories");
    }
    if (c.compare_samples < 1) throw ParameterError("compare needs at least one sample");
    std::mt19937_64 rng(trajectory_seed(c.seed, 0, 0, 0));
    double worst_exact = 0.0;
    double worst_sigmas = 0.0;
    bool failed = false;

    for (int k = 0; k < c.compare_samples; ++k) {
        const WParams w = k == 0 ? WParams::uniform() : random_triple(rng);
        const ProbabilityTable cf = closed_form(w, 3);
        const ProbabilityTable ex = exact_table(w, 3);

        EnsembleConfig e;
        e.w = w;
        e.n_pairs = c.n_trajectories;
        e.n_rounds = 1;
        e.seed = c.seed + static_cast<std::uint64_t>(k);
        e.threads = c.threads;
        const RoundLedger mc = run_ensemble(e).front();
        const auto& m = mc.empirical_probabilities;
        const auto n = static_cast<double>(c.n_trajectories);
        const auto attempts = static_cast<double>(mc.step2_attempts);
        auto binom = [](double p, double count) {
            return count > 0.0 ? std::sqrt(p * (1.0 - p) / count) : kNaN;
        };

        ProbabilityTable p1 = cf;
        p1.per_round.clear();
        ProbabilityTable e1 = ex;
        e1.per_round.clear();
        ProbabilityTable p2 = p1;
        p2.per_round.push_back(cf.per_round[0]);
        ProbabilityTable e2 = e1;
        e2.per_round.push_back(ex.per_round[0]);

        const std::vector<Check> checks{
            {"p1o", cf.p1o, ex.p1o, m.at("p1o"), binom(cf.p1o, n)},
            {"p1e", cf.p1e, ex.p1e, m.at("p1e"), binom(cf.p1e, n)},
            {"p1o_prime", cf.p1o_prime, ex.p1o_prime, m.at("p1o_prime"),
             binom(cf.p1o_prime, attempts)},
            {"p1e_prime", cf.p1e_prime, ex.p1e_prime, m.at("p1e_prime"),
             binom(cf.p1e_prime, attempts)},
            {"total_n1", chain_total(p1), chain_total(e1), mc.empirical_p(),
             binom(chain_total(p1), n)},
            {"total_n2", chain_total(p2), chain_total(e2), kNaN, kNaN},
            {"total_n3", cf.total, ex.total, kNaN, kNaN},
        };

        out << "sample " << k << ": alpha_sq=" << format_number(w.alpha_sq())
            << " beta_sq=" << format_number(w.beta_sq()) << " gamma_sq=" << format_number(w.gamma_sq())
            << " beta_phase=" << format_number(std::arg(w.beta)) << '\n';
        out << "  quantity      closed_form     exact           monte_carlo     |exact-closed|  mc_sigmas\n";
        for (const auto& ch : checks) {
            const double dev = std::abs(ch.exact - ch.closed);
            worst_exact = std::max(worst_exact, dev);
            double sigmas = kNaN;
            if (!std::isnan(ch.mc)) {
                const double diff = std::abs(ch.mc - ch.closed);
                if (ch.sigma > 0.0) {
                    sigmas = diff / ch.sigma;
                } else if (!std::isnan(ch.sigma)) {
                    sigmas = diff > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
                }
                if (!std::isnan(sigmas)) worst_sigmas = std::max(worst_sigmas, sigmas);
            }
            if (dev > 1e-8 || sigmas > 5.0) failed = true;
            char line[160];
            std::snprintf(line, sizeof line, "  %-13s %-15.10g %-15.10g %-15.10g %-15.3g %.3g\n",
                          ch.name.c_str(), ch.closed, ch.exact, ch.mc, dev, sigmas);
            out << line;
        }
    }
    out << "max |exact-closed| = " << format_number(worst_exact) << '\n';
    out << "max Monte Carlo deviation (sigma) = " << format_number(worst_sigmas) << '\n';
    if (failed) {
        err << "compare: oracle deviation beyond tolerance\n";
        return kExitOracle;
    }
    return kExitOk;
}

}  // namespace wecp
