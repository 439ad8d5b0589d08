#include "wecp/ensemble.hpp"

#include "wecp/probabilities.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace wecp {

namespace {

constexpr std::uint64_t kChunk = 2048;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Outcome {
    Fate fate = Fate::Discarded;
    std::vector<Resource> outputs;
    double w_fidelity = 0.0;
};

Outcome compact(Branch&& b, const StateVector& target) {
    Outcome o;
    o.fate = b.fate;
    o.outputs = std::move(b.outputs);
    if (o.fate == Fate::WState) o.w_fidelity = fidelity(o.outputs.front().state, target);
    return o;
}

// Runs fn(i) for i in [0, n) and returns the results in index order. Work
// is handed out in fixed chunks, so the result never depends on threads.
template <class Fn>
std::vector<Outcome> parallel_map(std::uint64_t n, unsigned threads, Fn fn) {
    std::vector<Outcome> results(n);
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            const std::uint64_t end = std::min(n, (c + 1) * kChunk);
            for (std::uint64_t i = c * kChunk; i < end; ++i) results[i] = fn(i);
        }
    };
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), chunks));
    if (n_threads <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return results;
}

struct Tally {
    std::uint64_t by_fate[6] = {};
    double fid_min = 1.0;
    double fid_sum = 0.0;

    void add(const Outcome& o) {
        ++by_fate[static_cast<std::size_t>(o.fate)];
        if (o.fate == Fate::WState) {
            fid_min = std::min(fid_min, o.w_fidelity);
            fid_sum += o.w_fidelity;
        }
    }
    [[nodiscard]] std::uint64_t operator[](Fate f) const {
        return by_fate[static_cast<std::size_t>(f)];
    }
};

double ratio(std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

void record_fidelity(RoundLedger& l, const Tally& t) {
    if (t[Fate::WState] == 0) return;
    l.empirical_probabilities["w_fidelity_min"] = t.fid_min;
    l.empirical_probabilities["w_fidelity_mean"] =
        t.fid_sum / static_cast<double>(t[Fate::WState]);
}

std::vector<RoundLedger> enumerate_ledgers(const EnsembleConfig& c) {
    const ProbabilityTable t = exact_table(c.w, c.n_rounds, c.mode);
    std::vector<RoundLedger> out;
    RoundLedger first;
    first.round_index = 1;
    first.consumed = c.n_pairs;
    auto& m = first.empirical_probabilities;
    m["p1o"] = t.p1o;
    m["p1e"] = t.p1e;
    m["xi"] = t.xi;
    m["p1o_prime"] = t.p1o_prime;
    m["p1e_prime"] = t.p1e_prime;
    m["success_rate"] = t.xi * t.p1o_prime;
    ProbabilityTable partial = t;
    partial.per_round.clear();
    m["total"] = chain_total(partial);
    out.push_back(first);
    for (std::size_t k = 0; k < t.per_round.size(); ++k) {
        RoundLedger l;
        l.round_index = static_cast<int>(k) + 2;
        l.empirical_probabilities["p_no"] = t.per_round[k].first;
        l.empirical_probabilities["p_ne"] = t.per_round[k].second;
        l.empirical_probabilities["success_rate"] = t.per_round[k].first;
        partial.per_round.push_back(t.per_round[k]);
        l.empirical_probabilities["total"] = chain_total(partial);
        out.push_back(l);
    }
    return out;
}

}  // namespace

double RoundLedger::empirical_p() const { return ratio(successes, consumed); }

std::uint64_t trajectory_seed(std::uint64_t master, int round, int stage, std::uint64_t index) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ static_cast<std::uint64_t>(round));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(stage) << 32));
    return splitmix64(h ^ index);
}

std::vector<RoundLedger> run_ensemble(const EnsembleConfig& c) {
    c.w.validate();
    if (c.n_pairs < 2) throw ParameterError("n_pairs must be at least 2");
    if (c.n_rounds < 1 || c.n_rounds > kMaxExactRounds) {
        throw ParameterError("n_rounds must lie in [1, " + std::to_string(kMaxExactRounds) +
                             "] for state-vector runs");
    }
    if (c.enumerate) return enumerate_ledgers(c);

    const unsigned threads = c.threads != 0 ? c.threads : std::thread::hardware_concurrency();
    const StateVector target = w_plus();
    const Resource input{make_w_input(c.w), 0};
    std::vector<RoundLedger> ledgers;

    // Round 1, step 1.
    auto s1 = parallel_map(c.n_pairs, threads, [&](std::uint64_t i) {
        std::mt19937_64 rng(trajectory_seed(c.seed, 1, 1, i));
        return compact(step1_sample(input, input, c.mode, rng), target);
    });
    std::vector<Resource> pool3;
    std::vector<Resource> pool2;
    Tally t1;
    for (auto& o : s1) {
        t1.add(o);
        if (o.fate == Fate::ThreePhoton) {
            pool3.push_back(std::move(o.outputs.front()));
        } else if (o.fate == Fate::TwoPhoton) {
            pool2.push_back(std::move(o.outputs[0]));
            if (c.counting == PairCounting::CountBoth) pool2.push_back(std::move(o.outputs[1]));
        }
    }
    s1.clear();
    s1.shrink_to_fit();

    // Round 1, step 2: one three-photon and one two-photon resource per attempt.
    const std::uint64_t attempts = std::min(pool3.size(), pool2.size());
    auto s2 = parallel_map(attempts, threads, [&](std::uint64_t i) {
        std::mt19937_64 rng(trajectory_seed(c.seed, 1, 2, i));
        return compact(step2_sample(pool3[i], pool2[i], c.mode, rng), target);
    });
    Tally t2;
    std::vector<Resource> next;
    for (auto& o : s2) {
        t2.add(o);
        if (o.fate == Fate::Recycled) next.push_back(std::move(o.outputs.front()));
    }

    RoundLedger r1;
    r1.round_index = 1;
    r1.consumed = c.n_pairs;
    r1.step2_attempts = attempts;
    r1.successes = t2[Fate::WState];
    r1.recycled_three_photon = t2[Fate::Recycled];
    r1.recycled_two_photon = pool2.size();
    r1.discarded = t1[Fate::Discarded] + t2[Fate::Discarded];
    r1.losses = t1[Fate::Lost] + t2[Fate::Lost];
    r1.surplus_three_photon = pool3.size() - attempts;
    r1.surplus_two_photon = pool2.size() - attempts;
    auto& m1 = r1.empirical_probabilities;
    m1["p1o"] = ratio(t1[Fate::ThreePhoton], c.n_pairs);
    m1["p1e"] = ratio(t1[Fate::TwoPhoton], c.n_pairs);
    m1["xi"] = ratio(attempts, c.n_pairs);
    m1["p1o_prime"] = ratio(t2[Fate::WState], attempts);
    m1["p1e_prime"] = ratio(t2[Fate::Recycled], attempts);
    m1["success_rate"] = r1.empirical_p();
    record_fidelity(r1, t2);
    ledgers.push_back(std::move(r1));
    pool3.clear();
    pool2.clear();

    // Later rounds: pair up same-generation three-photon resources.
    for (int round = 2; round <= c.n_rounds; ++round) {
        std::vector<Resource> pool = std::move(next);
        next.clear();
        const std::uint64_t pairs = pool.size() / 2;
        auto sn = parallel_map(pairs, threads, [&](std::uint64_t i) {
            std::mt19937_64 rng(trajectory_seed(c.seed, round, 1, i));
            return compact(round_sample(pool[2 * i], pool[2 * i + 1], c.mode, rng), target);
        });
        Tally tn;
        std::uint64_t split_kept = 0;
        for (auto& o : sn) {
            tn.add(o);
            if (o.fate == Fate::Recycled) next.push_back(std::move(o.outputs.front()));
            if (o.fate == Fate::WState || o.fate == Fate::Recycled || o.fate == Fate::Lost) {
                ++split_kept;
            }
        }
        RoundLedger r;
        r.round_index = round;
        r.consumed = pairs;
        r.step2_attempts = split_kept;
        r.successes = tn[Fate::WState];
        r.recycled_three_photon = tn[Fate::Recycled];
        r.recycled_two_photon = split_kept;
        r.discarded = tn[Fate::Discarded];
        r.losses = tn[Fate::Lost];
        r.surplus_three_photon = pool.size() % 2;
        auto& m = r.empirical_probabilities;
        m["p_no"] = ratio(tn[Fate::WState], pairs);
        m["p_ne"] = ratio(tn[Fate::Recycled], pairs);
        m["success_rate"] = r.empirical_p();
        record_fidelity(r, tn);
        ledgers.push_back(std::move(r));
    }
    return ledgers;
}

}  // namespace wecp
