#include "wecp/ecp.hpp"

#include <cmath>
#include <functional>

namespace wecp {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Walks measurement outcomes: the enumerator follows every outcome with
// non-zero weight, the sampler follows exactly one.
class Explorer {
public:
    // outcome -1 marks a photon-loss event (parity gate only).
    using Visit = std::function<void(int outcome, const StateVector& state, double probability)>;

    virtual ~Explorer() = default;
    virtual void measure(const StateVector& s, const QubitId& q, Basis basis,
                         const Visit& visit) = 0;
    virtual void parity(const StateVector& s, const QubitId& p1, const QubitId& p2,
                        const InteractionMode& mode, const Visit& visit) = 0;
};

int parity_index(Parity p) { return p == Parity::Even ? 0 : 1; }

class Enumerator final : public Explorer {
public:
    void measure(const StateVector& s, const QubitId& q, Basis basis,
                 const Visit& visit) override {
        const double total = s.norm_squared();
        for (int outcome = 0; outcome < 2; ++outcome) {
            const StateVector component = project(s, q, basis, outcome);
            const double p = component.norm_squared() / total;
            if (p > 0.0) visit(outcome, component.normalized(), p);
        }
    }

    void parity(const StateVector& s, const QubitId& p1, const QubitId& p2,
                const InteractionMode& mode, const Visit& visit) override {
        const auto results = parity_check_enumerate(s, p1, p2, mode);
        const double survival = results.front().retained_norm;
        if (!mode.is_ideal() && survival < 1.0) {
            visit(-1, StateVector{}, 1.0 - survival);
        }
        for (const auto& r : results) {
            if (r.probability > 0.0) {
                visit(parity_index(r.outcome.parity), r.collapsed, survival * r.probability);
            }
        }
    }
};

class Sampler final : public Explorer {
public:
    explicit Sampler(std::mt19937_64& rng) : rng_(rng) {}

    void measure(const StateVector& s, const QubitId& q, Basis basis,
                 const Visit& visit) override {
        auto [record, post] = wecp::measure(s, q, basis, uniform01(rng_));
        visit(record.outcome, post, record.probability);
    }

    void parity(const StateVector& s, const QubitId& p1, const QubitId& p2,
                const InteractionMode& mode, const Visit& visit) override {
        const GateSample sample = parity_check_sample(s, p1, p2, mode, uniform01(rng_));
        if (const auto* loss = std::get_if<GateLoss>(&sample)) {
            visit(-1, StateVector{}, loss->loss_probability);
            return;
        }
        const auto& r = std::get<GateResult>(sample);
        visit(parity_index(r.outcome.parity), r.collapsed, r.retained_norm * r.probability);
    }

private:
    std::mt19937_64& rng_;
};

const char* rl(int bit) { return bit == 0 ? "R" : "L"; }

StateVector as_triple(const StateVector& s, const std::string& a, const std::string& b,
                      const std::string& c) {
    const std::vector<std::pair<std::string, std::string>> renames{{a, "a"}, {b, "b"}, {c, "c"}};
    const std::vector<std::string> order{"a", "b", "c"};
    return s.relabeled(renames).reordered(order);
}

Branch leaf(Fate fate, double probability, std::string path) {
    Branch b;
    b.fate = fate;
    b.probability = probability;
    b.path = std::move(path);
    return b;
}

void require_same_generation(const Resource& x, const Resource& y) {
    if (x.generation != y.generation) {
        throw ParameterError("resources from different generations (" +
                             std::to_string(x.generation) + " vs " +
                             std::to_string(y.generation) + ")");
    }
}

void require_labels(const StateVector& s, std::initializer_list<const char*> labels) {
    if (s.size() != labels.size()) {
        throw StateError("resource has the wrong number of photons");
    }
    for (const char* label : labels) {
        if (!s.contains(label)) {
            throw StateError(std::string("resource is missing photon '") + label + "'");
        }
    }
}

void run_step1(Explorer& ex, const Resource& first, const Resource& second,
               const InteractionMode& mode, std::vector<Branch>& out) {
    require_same_generation(first, second);
    require_labels(first.state, {"a", "b", "c"});
    require_labels(second.state, {"a", "b", "c"});
    const int gen = first.generation;

    const std::vector<std::pair<std::string, std::string>> r0{{"a", "a0"}, {"b", "b0"}, {"c", "c0"}};
    const std::vector<std::pair<std::string, std::string>> r1{{"a", "a1"}, {"b", "b1"}, {"c", "c1"}};
    const StateVector six = tensor(first.state.relabeled(r0), second.state.relabeled(r1));

    const QubitId a1 = QubitId::photon("a1");
    const QubitId b1 = QubitId::photon("b1");
    const QubitId c0 = QubitId::photon("c0");
    const QubitId c1 = QubitId::photon("c1");

    ex.parity(six, c0, c1, mode, [&](int parity, const StateVector& g, double pg) {
        if (parity < 0) {
            out.push_back(leaf(Fate::Lost, pg, "pcg=loss"));
            return;
        }
        if (parity == 1) {
            ex.measure(g, a1, Basis::RL, [&](int a, const StateVector& sa, double pa) {
                std::string path = std::string("pcg=odd a1=") + rl(a);
                if (a == 1) {
                    out.push_back(leaf(Fate::Discarded, pg * pa, path));
                    return;
                }
                StateVector h = apply_single(sa, b1, gates::hadamard());
                h = apply_single(h, c1, gates::hadamard());
                ex.measure(h, b1, Basis::RL, [&](int b, const StateVector& sb, double pb) {
                    ex.measure(sb, c1, Basis::RL, [&](int c, const StateVector& sc, double pc) {
                        Branch br = leaf(Fate::ThreePhoton, pg * pa * pb * pc,
                                         path + " b1c1=" + rl(b) + rl(c));
                        StateVector w = sc;
                        if (b != c) {
                            w = apply_single(w, c0, gates::sigma_z());
                            br.phase_flipped = true;
                        }
                        br.outputs.push_back({as_triple(w, "a0", "b0", "c0"), gen});
                        out.push_back(std::move(br));
                    });
                });
            });
            return;
        }
        ex.measure(g, c0, Basis::RL, [&](int x, const StateVector& sx, double px) {
            ex.measure(sx, c1, Basis::RL, [&](int y, const StateVector& sy, double py) {
                std::string path = std::string("pcg=even c0c1=") + rl(x) + rl(y);
                if (x != 0 || y != 0) {
                    out.push_back(leaf(Fate::Discarded, pg * px * py, path));
                    return;
                }
                const std::vector<std::string> keep{"a0", "b0"};
                auto [p0, p1] = factorize(sy, keep);
                const std::vector<std::string> order{"a", "b"};
                const std::vector<std::pair<std::string, std::string>> n0{{"a0", "a"}, {"b0", "b"}};
                const std::vector<std::pair<std::string, std::string>> n1{{"a1", "a"}, {"b1", "b"}};
                Branch br = leaf(Fate::TwoPhoton, pg * px * py, path);
                br.outputs.push_back({p0.relabeled(n0).reordered(order), gen});
                br.outputs.push_back({p1.relabeled(n1).reordered(order), gen});
                out.push_back(std::move(br));
            });
        });
    });
}

void run_step2(Explorer& ex, const Resource& three, const Resource& two,
               const InteractionMode& mode, double prefix_p, const std::string& prefix,
               std::vector<Branch>& out) {
    require_same_generation(three, two);
    require_labels(three.state, {"a", "b", "c"});
    require_labels(two.state, {"a", "b"});
    const int gen = three.generation;

    const std::vector<std::pair<std::string, std::string>> bar{{"a", "abar"}, {"b", "bbar"}};
    const StateVector five = tensor(three.state, two.state.relabeled(bar));
    const QubitId a = QubitId::photon("a");
    const QubitId abar = QubitId::photon("abar");
    const QubitId bbar = QubitId::photon("bbar");

    ex.parity(five, a, abar, mode, [&](int parity, const StateVector& g, double pg) {
        if (parity < 0) {
            out.push_back(leaf(Fate::Lost, prefix_p * pg, prefix + "pcg=loss"));
            return;
        }
        StateVector h = apply_single(g, abar, gates::hadamard());
        h = apply_single(h, bbar, gates::hadamard());
        ex.measure(h, abar, Basis::RL, [&](int x, const StateVector& sx, double px) {
            ex.measure(sx, bbar, Basis::RL, [&](int y, const StateVector& sy, double py) {
                const bool odd = parity == 1;
                const bool same = x == y;
                Branch br = leaf(odd ? Fate::WState : Fate::Recycled, prefix_p * pg * px * py,
                                 prefix + (odd ? "pcg=odd" : "pcg=even") + " abar,bbar=" + rl(x) +
                                     rl(y));
                // Odd gate: W+ on equal outcomes. Even gate: next generation on
                // unequal outcomes. The other case needs sigma_z on a.
                StateVector w = sy;
                if (odd != same) {
                    w = apply_single(w, a, gates::sigma_z());
                    br.phase_flipped = true;
                }
                br.outputs.push_back({w.reordered(std::vector<std::string>{"a", "b", "c"}),
                                      odd ? gen : gen + 1});
                out.push_back(std::move(br));
            });
        });
    });
}

void run_split(Explorer& ex, const Resource& three, std::vector<Branch>& out) {
    require_labels(three.state, {"a", "b", "c"});
    ex.measure(three.state, QubitId::photon("c"), Basis::RL,
               [&](int c, const StateVector& s, double p) {
                   Branch br = leaf(c == 0 ? Fate::TwoPhoton : Fate::Discarded, p,
                                    std::string("c=") + rl(c));
                   if (c == 0) {
                       br.outputs.push_back(
                           {s.reordered(std::vector<std::string>{"a", "b"}), three.generation});
                   }
                   out.push_back(std::move(br));
               });
}

void run_round(Explorer& ex, const Resource& first, const Resource& second,
               const InteractionMode& mode, std::vector<Branch>& out) {
    require_same_generation(first, second);
    std::vector<Branch> split;
    run_split(ex, second, split);
    for (const auto& s : split) {
        if (s.fate != Fate::TwoPhoton) {
            out.push_back(s);
            continue;
        }
        run_step2(ex, first, s.outputs.front(), mode, s.probability, s.path + " ", out);
    }
}

Branch single(std::vector<Branch>&& branches) {
    if (branches.size() != 1) {
        throw std::logic_error("sampled protocol step produced " +
                               std::to_string(branches.size()) + " branches");
    }
    return std::move(branches.front());
}

Amplitude power_of_two(Amplitude x, int n) {
    for (int k = 0; k < n; ++k) x *= x;
    return x;
}

}  // namespace

void WParams::validate() const {
    for (const auto& a : {alpha, beta, gamma}) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ParameterError("W parameters must be finite");
        }
    }
    const double total = alpha_sq() + beta_sq() + gamma_sq();
    if (std::abs(total - 1.0) > 1e-12) {
        throw ParameterError("W parameters are not normalized: |alpha|^2+|beta|^2+|gamma|^2 = " +
                             std::to_string(total));
    }
}

WParams WParams::from_weights(double alpha_sq, double beta_sq, double gamma_sq) {
    if (alpha_sq < 0.0 || beta_sq < 0.0 || gamma_sq < 0.0) {
        throw ParameterError("W weights must be non-negative");
    }
    WParams w{std::sqrt(alpha_sq), std::sqrt(beta_sq), std::sqrt(gamma_sq)};
    w.validate();
    return w;
}

WParams WParams::uniform() {
    const double x = 1.0 / std::sqrt(3.0);
    return WParams{x, x, x};
}

std::array<QubitId, 3> triple_labels(const std::string& a, const std::string& b,
                                     const std::string& c) {
    return {QubitId::photon(a), QubitId::photon(b), QubitId::photon(c)};
}

StateVector make_w_input(const WParams& w, const std::array<QubitId, 3>& labels) {
    w.validate();
    std::vector<Amplitude> amps(8);
    amps[0b001] = w.alpha;  // RRL
    amps[0b010] = w.beta;   // RLR
    amps[0b100] = w.gamma;  // LRR
    return StateVector({labels.begin(), labels.end()}, std::move(amps));
}

StateVector w_plus(const std::array<QubitId, 3>& labels) {
    return make_w_input(WParams::uniform(), labels);
}

StateVector generation_form(const WParams& w, int generation,
                            const std::array<QubitId, 3>& labels) {
    if (generation < 0) throw ParameterError("generation must be non-negative");
    const Amplitude b = power_of_two(w.beta, generation);
    const Amplitude c = power_of_two(w.gamma, generation);
    std::vector<Amplitude> amps(8);
    amps[0b001] = b;
    amps[0b010] = b;
    amps[0b100] = c;
    return StateVector({labels.begin(), labels.end()}, std::move(amps)).normalized();
}

StateVector pair_form(const WParams& w, int generation) {
    if (generation < 0) throw ParameterError("generation must be non-negative");
    const Amplitude b = power_of_two(w.beta, generation);
    const Amplitude c = power_of_two(w.gamma, generation);
    return StateVector({QubitId::photon("a"), QubitId::photon("b")}, {0.0, b, c, 0.0})
        .normalized();
}

const char* to_string(Fate fate) {
    switch (fate) {
        case Fate::ThreePhoton: return "three-photon";
        case Fate::TwoPhoton: return "two-photon";
        case Fate::WState: return "W";
        case Fate::Recycled: return "recycled";
        case Fate::Discarded: return "discarded";
        case Fate::Lost: return "lost";
    }
    return "?";
}

double uniform01(std::mt19937_64& rng) {
    // 53 random mantissa bits; never returns 1.0.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Branch> step1_enumerate(const Resource& first, const Resource& second,
                                    const InteractionMode& mode) {
    Enumerator ex;
    std::vector<Branch> out;
    run_step1(ex, first, second, mode, out);
    return out;
}

Branch step1_sample(const Resource& first, const Resource& second, const InteractionMode& mode,
                    std::mt19937_64& rng) {
    Sampler ex(rng);
    std::vector<Branch> out;
    run_step1(ex, first, second, mode, out);
    return single(std::move(out));
}

std::vector<Branch> step2_enumerate(const Resource& three_photon, const Resource& two_photon,
                                    const InteractionMode& mode) {
    Enumerator ex;
    std::vector<Branch> out;
    run_step2(ex, three_photon, two_photon, mode, 1.0, "", out);
    return out;
}

Branch step2_sample(const Resource& three_photon, const Resource& two_photon,
                    const InteractionMode& mode, std::mt19937_64& rng) {
    Sampler ex(rng);
    std::vector<Branch> out;
    run_step2(ex, three_photon, two_photon, mode, 1.0, "", out);
    return single(std::move(out));
}

std::vector<Branch> split_enumerate(const Resource& three_photon) {
    Enumerator ex;
    std::vector<Branch> out;
    run_split(ex, three_photon, out);
    return out;
}

Branch split_sample(const Resource& three_photon, std::mt19937_64& rng) {
    Sampler ex(rng);
    std::vector<Branch> out;
    run_split(ex, three_photon, out);
    return single(std::move(out));
}

std::vector<Branch> round_enumerate(const Resource& first, const Resource& second,
                                    const InteractionMode& mode) {
    Enumerator ex;
    std::vector<Branch> out;
    run_round(ex, first, second, mode, out);
    return out;
}

Branch round_sample(const Resource& first, const Resource& second, const InteractionMode& mode,
                    std::mt19937_64& rng) {
    Sampler ex(rng);
    std::vector<Branch> out;
    run_round(ex, first, second, mode, out);
    return single(std::move(out));
}

}  // namespace wecp
