#include "apc/blackbox.hpp"

#include <cmath>

#include "apc/errors.hpp"

namespace apc {

namespace {

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(uint64_t& state) {
    state = splitmix(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

uint64_t word_substream(uint64_t seed, const Word& z) {
    uint64_t h = splitmix(seed ^ 0x77c0ffee);
    for (auto c : z.letters) h = splitmix(h ^ (c + 0x9e37));
    return h;
}

uint64_t bernoulli_count(double p, uint64_t trials, uint64_t substream) {
    uint64_t state = substream;
    uint64_t s = 0;
    for (uint64_t t = 0; t < trials; ++t)
        if (uniform01(state) < p) ++s;
    return s;
}

} // namespace

TrialPlan trials_needed(double delta, double epsilon, size_t word_length, int alphabet,
                        double margin) {
    if (!(delta > 0 && delta < 1)) throw input_error("delta must lie in (0,1)");
    if (!(epsilon > 0 && epsilon < 1)) throw input_error("epsilon must lie in (0,1)");
    if (!(margin > 0)) throw input_error("margin must be positive: equality of gap and delta is undecidable");
    if (alphabet < 1) throw input_error("alphabet must be nonempty");

    double strings = std::pow(static_cast<double>(alphabet), static_cast<double>(word_length));
    double eps_prime = 1.0 - std::pow(1.0 - epsilon, 1.0 / strings);
    TrialPlan plan;
    plan.trials = static_cast<uint64_t>(std::ceil(2.0 * std::log(2.0 / eps_prime) / (margin * margin)));
    plan.delta = delta;
    plan.epsilon = epsilon;
    plan.margin = margin;
    plan.per_string_confidence = eps_prime;
    plan.word_length = word_length;
    plan.alphabet = alphabet;
    return plan;
}

AcceptanceSampler pfa_sampler(const PfaF& M) {
    return [M](const Word& z, uint64_t trials, uint64_t substream) {
        return bernoulli_count(rho(M, z), trials, substream);
    };
}

AcceptanceSampler pfa_sampler(const Pfa& M) { return pfa_sampler(to_float(M)); }

ExperimentReport run_experiment(const AcceptanceSampler& sample, const Word& w, double delta,
                                double epsilon, double margin, uint64_t seed,
                                uint64_t word_budget) {
    if (!within_word_budget(w.alphabet.size, w.size(), word_budget))
        throw budget_error("too many words of this length to run trials on");

    ExperimentReport rep;
    rep.plan = trials_needed(delta, epsilon, w.size(), w.alphabet.size, margin);
    rep.seed = seed;

    const uint64_t N = rep.plan.trials;
    std::vector<uint8_t> letters(w.size(), 0);
    uint64_t s_w = 0;
    while (true) {
        Word z(w.alphabet, letters);
        uint64_t s = sample(z, N, word_substream(seed, z));
        if (z == w) s_w = s;
        rep.words.push_back(std::move(z));
        rep.acceptances.push_back(s);
        size_t i = letters.size();
        while (i > 0 && letters[i - 1] == w.alphabet.size - 1) letters[--i] = 0;
        if (i == 0) break;
        ++letters[i - 1];
    }

    rep.gap_exceeds = true;
    for (size_t idx = 0; idx < rep.words.size(); ++idx) {
        if (rep.words[idx] == w) continue;
        double diff = (static_cast<double>(s_w) - static_cast<double>(rep.acceptances[idx])) /
                      static_cast<double>(N);
        if (!(diff > delta)) {
            rep.gap_exceeds = false;
            break;
        }
    }
    return rep;
}

ExperimentReport run_experiment(const Pfa& M, const Word& w, double delta, double epsilon,
                                double margin, uint64_t seed, uint64_t word_budget) {
    require_valid(M);
    return run_experiment(pfa_sampler(M), w, delta, epsilon, margin, seed, word_budget);
}

} // namespace apc
