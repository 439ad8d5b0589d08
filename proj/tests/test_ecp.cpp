#include "support/ket.hpp"
#include "wecp/ecp.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace wecp;
using oracle::C;
using oracle::Ket;

namespace {

WParams random_w(std::mt19937_64& rng, bool complex_phases = true) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng);
    double b = u(rng);
    if (a > b) std::swap(a, b);
    WParams w = WParams::from_weights(a, b - a, 1.0 - b);
    if (complex_phases) {
        w.alpha *= std::polar(1.0, 6.283 * u(rng));
        w.beta *= std::polar(1.0, 6.283 * u(rng));
        w.gamma *= std::polar(1.0, 6.283 * u(rng));
    }
    return w;
}

std::map<Fate, double> sums(const std::vector<Branch>& branches) {
    std::map<Fate, double> out;
    for (const auto& b : branches) out[b.fate] += b.probability;
    return out;
}

double total(const std::vector<Branch>& branches) {
    double t = 0.0;
    for (const auto& b : branches) t += b.probability;
    return t;
}

Resource input(const WParams& w) { return {make_w_input(w), 0}; }

}  // namespace

TEST(MakeInput, ProductStateWhenAlphaIsOne) {
    const StateVector s = make_w_input(WParams{1.0, 0.0, 0.0});
    EXPECT_EQ(s.amplitude("RRL"), Amplitude(1.0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(MakeInput, UniformIsTheStandardW) {
    const StateVector s = make_w_input(WParams::uniform());
    const double t = 1.0 / std::sqrt(3.0);
    for (const char* term : {"RRL", "RLR", "LRR"}) EXPECT_NEAR(std::abs(s.amplitude(term) - t), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(s, w_plus()), 1.0, 1e-15);
}

TEST(MakeInput, WeightsGiveSquareRoots) {
    const StateVector s = make_w_input(WParams::from_weights(0.5, 0.3, 0.2));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
    EXPECT_NEAR(s.amplitude("RRL").real(), 0.7071, 5e-5);
}

TEST(MakeInput, RejectsUnnormalized) {
    EXPECT_THROW(make_w_input(WParams{0.5, 0.5, 0.5}), ParameterError);
    EXPECT_THROW(WParams::from_weights(0.5, 0.6, -0.1), ParameterError);
}

TEST(StepOne, UniformProbabilities) {
    const auto br = step1_enumerate(input(WParams::uniform()), input(WParams::uniform()),
                                    InteractionMode::ideal());
    const auto s = sums(br);
    EXPECT_NEAR(s.at(Fate::ThreePhoton), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(s.at(Fate::TwoPhoton), 4.0 / 9.0, 1e-12);
    EXPECT_NEAR(total(br), 1.0, 1e-12);
}

TEST(StepOne, ClosedFormsAndOutputsForRandomInputs) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const WParams w = random_w(rng);
        const double a = w.alpha_sq(), b = w.beta_sq(), g = w.gamma_sq();
        const auto br = step1_enumerate(input(w), input(w), InteractionMode::ideal());
        const auto s = sums(br);
        EXPECT_NEAR(s.count(Fate::ThreePhoton) ? s.at(Fate::ThreePhoton) : 0.0, a * (g + 2 * b), 1e-10);
        EXPECT_NEAR(s.count(Fate::TwoPhoton) ? s.at(Fate::TwoPhoton) : 0.0, (g + b) * (g + b), 1e-10);
        EXPECT_NEAR(total(br), 1.0, 1e-10);
        for (const auto& leaf : br) {
            if (leaf.fate == Fate::ThreePhoton) {
                ASSERT_EQ(leaf.outputs.size(), 1U);
                EXPECT_EQ(leaf.outputs[0].state.labels(), (std::vector<std::string>{"a", "b", "c"}));
                EXPECT_NEAR(fidelity(leaf.outputs[0].state, generation_form(w, 0)), 1.0, 1e-12);
                // exact amplitudes up to one global phase
                const C ph = leaf.outputs[0].state.amplitude("LRR") / generation_form(w, 0).amplitude("LRR");
                EXPECT_NEAR(std::abs(leaf.outputs[0].state.amplitude("RRL") -
                                     ph * generation_form(w, 0).amplitude("RRL")), 0.0, 1e-12);
            }
            if (leaf.fate == Fate::TwoPhoton) {
                ASSERT_EQ(leaf.outputs.size(), 2U);
                for (const auto& pair : leaf.outputs) {
                    EXPECT_NEAR(fidelity(pair.state, pair_form(w, 0)), 1.0, 1e-12);
                }
            }
        }
    }
}

TEST(StepOne, OddLeavesMatchKetOracle) {
    const WParams w = WParams::from_weights(0.45, 0.35, 0.2);
    const Ket k = oracle::w_ket(w.alpha, w.beta, w.gamma);
    // positions: a0 b0 c0 a1 b1 c1
    const Ket odd = oracle::parity(oracle::product(k, k), 2, 5, false);
    const Ket a1r = oracle::select(odd, 3, 'R');  // a0 b0 c0 b1 c1
    const Ket h = oracle::hadamard(oracle::hadamard(a1r, 3), 4);
    const auto br = step1_enumerate(input(w), input(w), InteractionMode::ideal());
    int seen = 0;
    for (char b1 : {'R', 'L'}) {
        for (char c1 : {'R', 'L'}) {
            Ket out = oracle::select(oracle::select(h, 3, b1), 3, c1);
            const double p = oracle::norm2(out);
            if (b1 != c1) out = oracle::sigma_z(out, 2);
            const std::string path = std::string("pcg=odd a1=R b1c1=") + b1 + c1;
            for (const auto& leaf : br) {
                if (leaf.path != path) continue;
                ++seen;
                EXPECT_NEAR(leaf.probability, p, 1e-12) << path;
                EXPECT_EQ(leaf.phase_flipped, b1 != c1);
                EXPECT_NEAR(oracle::fidelity(oracle::from_state(leaf.outputs[0].state), out), 1.0, 1e-12);
                // relative signs included: the fix-up reaches the plus form
                const Ket plus{{"RRL", w.beta}, {"RLR", w.beta}, {"LRR", w.gamma}};
                EXPECT_NEAR(oracle::fidelity(out, plus), 1.0, 1e-12);
            }
        }
    }
    EXPECT_EQ(seen, 4);
    const double a1l = oracle::norm2(oracle::select(odd, 3, 'L'));
    bool found = false;
    for (const auto& leaf : br) {
        if (leaf.path == "pcg=odd a1=L") {
            found = true;
            EXPECT_EQ(leaf.fate, Fate::Discarded);
            EXPECT_NEAR(leaf.probability, a1l, 1e-12);
        }
    }
    EXPECT_TRUE(found);
}

TEST(StepOne, EvenLeavesAreRROnly) {
    const WParams w = WParams::from_weights(0.45, 0.35, 0.2);
    const auto br = step1_enumerate(input(w), input(w), InteractionMode::ideal());
    for (const auto& leaf : br) {
        if (leaf.path.rfind("pcg=even", 0) != 0) continue;
        if (leaf.path == "pcg=even c0c1=RR") {
            EXPECT_EQ(leaf.fate, Fate::TwoPhoton);
        } else {
            EXPECT_EQ(leaf.path, "pcg=even c0c1=LL");
            EXPECT_EQ(leaf.fate, Fate::Discarded);
            EXPECT_NEAR(leaf.probability, 0.45 * 0.45, 1e-12);
        }
    }
}

TEST(StepOne, BetaZeroGivesProductAndNoW) {
    const WParams w = WParams::from_weights(0.5, 0.0, 0.5);
    const auto br = step1_enumerate(input(w), input(w), InteractionMode::ideal());
    const StateVector lrr = StateVector::basis(
        {QubitId::photon("a"), QubitId::photon("b"), QubitId::photon("c")}, "LRR");
    Resource three, two;
    for (const auto& leaf : br) {
        if (leaf.fate == Fate::ThreePhoton) {
            EXPECT_NEAR(fidelity(leaf.outputs[0].state, lrr), 1.0, 1e-12);
            three = leaf.outputs[0];
        }
        if (leaf.fate == Fate::TwoPhoton) two = leaf.outputs[0];
    }
    const auto s2 = sums(step2_enumerate(three, two, InteractionMode::ideal()));
    EXPECT_EQ(s2.count(Fate::WState), 0U);
}

TEST(StepOne, AlphaZeroNeverTakesTheOddPath) {
    const WParams w = WParams::from_weights(0.0, 0.4, 0.6);
    const auto s = sums(step1_enumerate(input(w), input(w), InteractionMode::ideal()));
    EXPECT_EQ(s.count(Fate::ThreePhoton), 0U);
}

TEST(StepOne, GenerationMismatch) {
    const Resource a{make_w_input(WParams::uniform()), 0};
    const Resource b{make_w_input(WParams::uniform()), 1};
    EXPECT_THROW(step1_enumerate(a, b, InteractionMode::ideal()), ParameterError);
    EXPECT_THROW(step2_enumerate(a, Resource{pair_form(WParams::uniform(), 1), 1}, InteractionMode::ideal()),
                 ParameterError);
    EXPECT_THROW(round_enumerate(a, b, InteractionMode::ideal()), ParameterError);
}

TEST(StepTwo, EqualBetaGammaSplitsInHalf) {
    const WParams w = WParams::from_weights(0.2, 0.4, 0.4);
    const auto s = sums(step2_enumerate({generation_form(w, 0), 0}, {pair_form(w, 0), 0},
                                        InteractionMode::ideal()));
    EXPECT_NEAR(s.at(Fate::WState), 0.5, 1e-12);
    EXPECT_NEAR(s.at(Fate::Recycled), 0.5, 1e-12);
}

TEST(StepTwo, ClosedFormsPurityAndRecycledForm) {
    std::mt19937_64 rng(73);
    int flipped_w = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const WParams w = random_w(rng);
        const double b = w.beta_sq(), g = w.gamma_sq();
        const double den = (g + 2 * b) * (g + b);
        const auto br = step2_enumerate({generation_form(w, 0), 0}, {pair_form(w, 0), 0},
                                        InteractionMode::ideal());
        const auto s = sums(br);
        EXPECT_NEAR(s.at(Fate::WState), 3 * b * g / den, 1e-10);
        EXPECT_NEAR(s.at(Fate::Recycled), (g * g + 2 * b * b) / den, 1e-10);
        EXPECT_NEAR(total(br), 1.0, 1e-10);
        for (const auto& leaf : br) {
            if (leaf.fate == Fate::WState) {
                EXPECT_NEAR(fidelity(leaf.outputs[0].state, w_plus()), 1.0, 1e-12);
                EXPECT_EQ(leaf.outputs[0].generation, 0);
                if (leaf.phase_flipped) ++flipped_w;
            }
            if (leaf.fate == Fate::Recycled) {
                EXPECT_EQ(leaf.outputs[0].generation, 1);
                EXPECT_NEAR(fidelity(leaf.outputs[0].state, generation_form(w, 1)), 1.0, 1e-12);
            }
        }
    }
    EXPECT_GT(flipped_w, 0);
}

TEST(StepTwo, LeavesMatchKetOracle) {
    const WParams w = WParams::from_weights(0.3, 0.25, 0.45);
    const double nu = 1.0 / std::sqrt(w.gamma_sq() + 2 * w.beta_sq());
    const double mu = 1.0 / std::sqrt(w.gamma_sq() + w.beta_sq());
    const Ket three{{"RRL", nu * w.beta}, {"RLR", nu * w.beta}, {"LRR", nu * w.gamma}};
    const Ket pair{{"RL", mu * w.beta}, {"LR", mu * w.gamma}};
    const Ket five = oracle::product(three, pair);  // a b c abar bbar
    const auto got = step2_enumerate({generation_form(w, 0), 0}, {pair_form(w, 0), 0}, InteractionMode::ideal());
    for (bool even : {false, true}) {
        const Ket g = oracle::hadamard(oracle::hadamard(oracle::parity(five, 0, 3, even), 3), 4);
        for (char x : {'R', 'L'}) {
            for (char y : {'R', 'L'}) {
                Ket out = oracle::select(oracle::select(g, 3, x), 3, y);
                const double p = oracle::norm2(out);
                const bool flip = even ? (x == y) : (x != y);
                if (flip) out = oracle::sigma_z(out, 0);
                const std::string path = std::string(even ? "pcg=even" : "pcg=odd") + " abar,bbar=" + x + y;
                bool found = false;
                for (const auto& leaf : got) {
                    if (leaf.path != path) continue;
                    found = true;
                    EXPECT_NEAR(leaf.probability, p, 1e-12) << path;
                    EXPECT_NEAR(oracle::fidelity(oracle::from_state(leaf.outputs[0].state), out), 1.0, 1e-12);
                    const Ket target = even ? Ket{{"RRL", w.beta * w.beta}, {"RLR", w.beta * w.beta},
                                                  {"LRR", w.gamma * w.gamma}}
                                            : Ket{{"RRL", 1.0}, {"RLR", 1.0}, {"LRR", 1.0}};
                    EXPECT_NEAR(oracle::fidelity(target, out), 1.0, 1e-12);
                }
                EXPECT_EQ(found, p > 0.0) << path;
            }
        }
    }
}

TEST(Rounds, RecycledStatesFollowTheSquaringRule) {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 20; ++trial) {
        const WParams w = random_w(rng);
        Resource current{generation_form(w, 1), 1};
        for (int n = 1; n <= 4; ++n) {
            const auto br = round_enumerate(current, current, InteractionMode::ideal());
            EXPECT_NEAR(total(br), 1.0, 1e-10);
            bool found = false;
            for (const auto& leaf : br) {
                if (leaf.fate == Fate::WState) {
                    EXPECT_NEAR(fidelity(leaf.outputs[0].state, w_plus()), 1.0, 1e-12);
                }
                if (leaf.fate == Fate::Recycled && !found) {
                    found = true;
                    EXPECT_EQ(leaf.outputs[0].generation, n + 1);
                    EXPECT_NEAR(fidelity(leaf.outputs[0].state, generation_form(w, n + 1)), 1.0, 1e-9);
                    current = leaf.outputs[0];
                }
            }
            ASSERT_TRUE(found);
        }
    }
}

TEST(Rounds, BranchSumsMatchThePrintedRoundFormulas) {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const WParams w = random_w(rng);
        for (int n = 2; n <= 4; ++n) {
            const double x = std::pow(w.beta_sq(), std::pow(2.0, n - 1));
            const double y = std::pow(w.gamma_sq(), std::pow(2.0, n - 1));
            const Resource r{generation_form(w, n - 1), n - 1};
            const auto s = sums(round_enumerate(r, r, InteractionMode::ideal()));
            const double den = (2 * x + y) * (2 * x + y);
            EXPECT_NEAR(s.at(Fate::WState), 3 * x * y / den, 1e-10);
            EXPECT_NEAR(s.at(Fate::Recycled), (2 * x * x + y * y) / den, 1e-10);
        }
    }
}

TEST(Split, KeepsTheSameGenerationPair) {
    const WParams w = WParams::from_weights(0.2, 0.5, 0.3);
    const auto br = split_enumerate({generation_form(w, 2), 2});
    ASSERT_EQ(br.size(), 2U);
    const double x = std::pow(w.beta_sq(), 4), y = std::pow(w.gamma_sq(), 4);
    EXPECT_NEAR(br[0].probability, (x + y) / (2 * x + y), 1e-12);
    EXPECT_EQ(br[0].fate, Fate::TwoPhoton);
    EXPECT_NEAR(fidelity(br[0].outputs[0].state, pair_form(w, 2)), 1.0, 1e-12);
    EXPECT_EQ(br[1].fate, Fate::Discarded);
}

TEST(Lossy, BranchesIncludingLossSumToOne) {
    const WParams w = WParams::from_weights(0.4, 0.35, 0.25);
    for (auto [g, ks] : {std::pair{2.4, 0.0}, {1.0, 0.7}}) {
        const InteractionMode mode = InteractionMode::lossy(CavityParams::operating_point(g, ks));
        const auto s1 = step1_enumerate(input(w), input(w), mode);
        EXPECT_NEAR(total(s1), 1.0, 1e-10);
        EXPECT_GT(sums(s1)[Fate::Lost], 0.0);
        const auto s2 = step2_enumerate({generation_form(w, 0), 0}, {pair_form(w, 0), 0}, mode);
        EXPECT_NEAR(total(s2), 1.0, 1e-10);
    }
}

TEST(Sampling, DeterministicAndConsistentWithEnumeration) {
    const WParams w = WParams::from_weights(0.4, 0.35, 0.25);
    const auto exact = sums(step1_enumerate(input(w), input(w), InteractionMode::ideal()));
    std::mt19937_64 rng(89);
    std::map<Fate, int> counts;
    const int n = 20000;
    for (int i = 0; i < n; ++i) ++counts[step1_sample(input(w), input(w), InteractionMode::ideal(), rng).fate];
    for (const auto& [fate, p] : exact) {
        const double sigma = std::sqrt(p * (1 - p) / n);
        EXPECT_LT(std::abs(counts[fate] / double(n) - p), 5 * sigma) << to_string(fate);
    }
    std::mt19937_64 a(5), b(5);
    for (int i = 0; i < 50; ++i) {
        const Branch x = step1_sample(input(w), input(w), InteractionMode::ideal(), a);
        const Branch y = step1_sample(input(w), input(w), InteractionMode::ideal(), b);
        EXPECT_EQ(x.path, y.path);
    }
}

TEST(Sampling, ProbabilityInvariantUnderPhases) {
    const WParams real = WParams::from_weights(0.3, 0.3, 0.4);
    WParams phased = real;
    phased.beta *= std::polar(1.0, 1.1);
    phased.gamma *= std::polar(1.0, -0.4);
    const auto a = sums(step1_enumerate(input(real), input(real), InteractionMode::ideal()));
    const auto b = sums(step1_enumerate(input(phased), input(phased), InteractionMode::ideal()));
    for (const auto& [fate, p] : a) EXPECT_NEAR(b.at(fate), p, 1e-12);
}
