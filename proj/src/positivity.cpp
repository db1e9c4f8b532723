#include "modlab/positivity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "modlab/generators.hpp"

namespace modlab {

std::string to_string(LppStatus s) {
    switch (s) {
        case LppStatus::NotMonotone: return "not-monotone";
        case LppStatus::RefutedWithWitness: return "refuted-with-witness";
        case LppStatus::PositiveEquivalentFound: return "positive-equivalent-found";
        case LppStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

MonotonicityVerdict check_monotone(const Frame& f, const Formula& formula,
                                   const std::vector<VarName>& pvars, int guard_bits) {
    int n = frame_size(f);
    std::set<VarName> pset(pvars.begin(), pvars.end());
    std::vector<VarName> pv, ov;
    for (const auto& v : vars(formula)) (pset.count(v) ? pv : ov).push_back(v);

    double bits = double(n) * double(pv.size()) * std::log2(3.0) + double(n) * double(ov.size());
    if (bits > double(guard_bits))
        throw GuardExceeded("check_monotone: sweep exceeds the guard of 2^" +
                            std::to_string(guard_bits));

    uint64_t total = 1;
    for (size_t i = 0; i < pv.size(); i++)
        for (int w = 0; w < n; w++) total *= 3;
    for (size_t i = 0; i < ov.size(); i++) total <<= n;

    std::vector<VarName> order = pv;
    order.insert(order.end(), ov.begin(), ov.end());
    CompiledFormula compiled(f, formula, order);
    std::vector<Mask> v1(order.size(), 0), v2(order.size(), 0);

    for (uint64_t counter = 0; counter < total; counter++) {
        uint64_t rem = counter;
        // Least significant block: shared variables, last one fastest.
        for (size_t i = ov.size(); i-- > 0;) {
            Mask x = Mask(rem) & full_mask(n);
            rem >>= n;
            v1[pv.size() + i] = x;
            v2[pv.size() + i] = x;
        }
        // Then the monotone variables as per-world trits: 0 = in neither
        // valuation, 1 = val2 only, 2 = both (so val1 <= val2 by construction).
        for (size_t i = pv.size(); i-- > 0;) {
            Mask a = 0, b = 0;
            for (int w = 0; w < n; w++) {
                int t = int(rem % 3);
                rem /= 3;
                if (t == 2) a |= Mask(1) << w;
                if (t >= 1) b |= Mask(1) << w;
            }
            v1[i] = a;
            v2[i] = b;
        }
        Mask bad = compiled.eval(v1) & ~compiled.eval(v2);
        if (bad) {
            Valuation val1, val2;
            for (size_t i = 0; i < order.size(); i++) {
                val1.assign[order[i]] = v1[i];
                val2.assign[order[i]] = v2[i];
            }
            return {false, MonotonicityCounterexample{val1, val2, std::countr_zero(bad)}};
        }
    }
    return {};
}

namespace {

WitnessSearchResult pair_sweep(const Frame& f, const Formula& phi, const Formula& psi,
                               const LiteralSet& tau, const std::vector<VarName>& vs,
                               const SearchMode& mode, int guard_bits) {
    int n = frame_size(f);
    WitnessSearchResult res;
    Model m1{f, {}}, m2{f, {}};

    auto try_pair = [&]() -> bool {
        res.pairs_checked++;
        Relation z = greatest_tau_bisim(m1, m2, tau);
        auto viol = entails_under(z, m1, m2, phi, psi);
        if (!viol) return false;
        res.outcome = SearchOutcome::Found;
        res.witness = PositivityWitness{m1, m2, z, *viol};
        return true;
    };

    if (mode.exhaustive) {
        size_t bits = 2 * size_t(n) * vs.size();
        if (bits > size_t(guard_bits))
            throw GuardExceeded("witness search: 2^" + std::to_string(bits) +
                                " model pairs exceed the guard of 2^" +
                                std::to_string(guard_bits));
        uint64_t total = uint64_t(1) << bits;
        for (uint64_t counter = 0; counter < total; counter++) {
            // High half = first model, most significant chunk = first variable.
            for (size_t i = 0; i < vs.size(); i++) {
                uint64_t c1 = counter >> (n * (2 * vs.size() - 1 - i));
                uint64_t c2 = counter >> (n * (vs.size() - 1 - i));
                m1.val.assign[vs[i]] = Mask(c1) & full_mask(n);
                m2.val.assign[vs[i]] = Mask(c2) & full_mask(n);
            }
            if (try_pair()) return res;
        }
        res.outcome = SearchOutcome::NoneFound;
        return res;
    }

    res.seed = mode.seed;
    res.trials = mode.trials;
    Rng rng(mode.seed);
    for (uint64_t t = 0; t < mode.trials; t++) {
        m1.val = random_valuation(rng, n, vs);
        m2.val = random_valuation(rng, n, vs);
        if (try_pair()) return res;
    }
    res.outcome = SearchOutcome::Exhausted;
    return res;
}

} // namespace

WitnessSearchResult positivity_witness_search(const Frame& f, const Formula& formula,
                                              const std::vector<VarName>& pvars,
                                              const SearchMode& mode, int guard_bits) {
    std::set<VarName> support = vars(formula);
    std::vector<VarName> vs(support.begin(), support.end());
    LiteralSet tau = directed_tau(support, pvars);
    return pair_sweep(f, formula, formula, tau, vs, mode, guard_bits);
}

WitnessSearchResult interpolant_witness_search(const Frame& f, const Formula& phi,
                                               const Formula& psi, const LiteralSet& tau,
                                               const SearchMode& mode, int guard_bits) {
    std::set<VarName> support = vars(phi);
    for (const auto& v : vars(psi)) support.insert(v);
    std::vector<VarName> vs(support.begin(), support.end());
    return pair_sweep(f, phi, psi, tau, vs, mode, guard_bits);
}

namespace {

// Evaluation vector over all valuations of vs, in the frame_validity counter
// order. Exact on the frame: equal signatures == frame-equivalent.
using Signature = std::vector<Mask>;

Signature signature_of(const Frame& f, const Formula& g, const std::vector<VarName>& vs) {
    int n = frame_size(f);
    uint64_t total = uint64_t(1) << (size_t(n) * vs.size());
    Signature sig;
    sig.reserve(total);
    CompiledFormula compiled(f, g, vs);
    std::vector<Mask> vals(vs.size(), 0);
    for (uint64_t counter = 0; counter < total; counter++) {
        for (size_t i = 0; i < vs.size(); i++) {
            uint64_t chunk = counter >> (n * (vs.size() - 1 - i));
            vals[i] = Mask(chunk) & full_mask(n);
        }
        sig.push_back(compiled.eval(vals));
    }
    return sig;
}

// Bottom-up enumeration with one representative per signature; accept()
// decides whether a candidate's signature is the goal.
template <typename Accept>
SynthesisResult synth_sweep(const Frame& f, const LiteralSet& allowed,
                            const std::vector<VarName>& vs, int max_size, int guard_bits,
                            Accept accept) {
    int n = frame_size(f);
    if (size_t(n) * vs.size() > size_t(guard_bits))
        throw GuardExceeded("synthesis: signature sweep exceeds the guard of 2^" +
                            std::to_string(guard_bits));

    SynthesisResult res;
    std::set<Signature> seen;
    std::vector<std::vector<std::pair<Formula, Signature>>> reps(size_t(max_size) + 1);

    auto consider = [&](Formula cand, int size) -> bool {
        res.candidates_checked++;
        if (res.candidates_checked > kSynthesisCandidateGuard)
            throw GuardExceeded("synthesis: candidate guard of " +
                                std::to_string(kSynthesisCandidateGuard) + " exceeded");
        Signature sig = signature_of(f, cand, vs);
        if (accept(sig)) {
            res.found = cand;
            res.bound_reached = size;
            return true;
        }
        if (seen.insert(sig).second) reps[size].emplace_back(std::move(cand), std::move(sig));
        return false;
    };

    for (int s = 1; s <= max_size; s++) {
        res.bound_reached = s;
        if (s == 1) {
            if (consider(Formula::bot(), 1)) return res;
            if (consider(Formula::top(), 1)) return res;
            for (const auto& p : allowed.pos)
                if (consider(Formula::lit(p, true), 1)) return res;
            for (const auto& p : allowed.neg)
                if (consider(Formula::lit(p, false), 1)) return res;
            continue;
        }
        for (const auto& [g, sig] : reps[s - 1])
            if (consider(Formula::dia(g), s)) return res;
        for (const auto& [g, sig] : reps[s - 1])
            if (consider(Formula::box(g), s)) return res;
        for (int i = 1; i <= s - 2; i++)
            for (const auto& [l, ls] : reps[i])
                for (const auto& [r, rs] : reps[s - 1 - i])
                    if (consider(Formula::conj(l, r), s)) return res;
        for (int i = 1; i <= s - 2; i++)
            for (const auto& [l, ls] : reps[i])
                for (const auto& [r, rs] : reps[s - 1 - i])
                    if (consider(Formula::disj(l, r), s)) return res;
    }
    res.bound_reached = max_size;
    return res;
}

} // namespace

SynthesisResult synthesize_positive(const Frame& f, const Formula& formula,
                                    const std::vector<VarName>& pvars, int max_size,
                                    int guard_bits) {
    LiteralSet allowed = lits(formula);
    for (const auto& p : pvars) allowed.neg.erase(p);
    std::set<VarName> support = vars(formula);
    std::vector<VarName> vs(support.begin(), support.end());
    Signature target = signature_of(f, formula, vs);
    return synth_sweep(f, allowed, vs, max_size, guard_bits,
                       [&](const Signature& sig) { return sig == target; });
}

SynthesisResult synthesize_interpolant(const Frame& f, const Formula& phi, const Formula& psi,
                                       const LiteralSet& tau, int max_size, int guard_bits) {
    std::set<VarName> support = vars(phi);
    for (const auto& v : vars(psi)) support.insert(v);
    LiteralSet allowed;
    for (const auto& p : tau.pos)
        if (support.count(p)) allowed.pos.insert(p);
    for (const auto& p : tau.neg)
        if (support.count(p)) allowed.neg.insert(p);
    std::vector<VarName> vs(support.begin(), support.end());
    Signature lower = signature_of(f, phi, vs);
    Signature upper = signature_of(f, psi, vs);
    return synth_sweep(f, allowed, vs, max_size, guard_bits, [&](const Signature& sig) {
        for (size_t i = 0; i < sig.size(); i++)
            if ((lower[i] & ~sig[i]) || (sig[i] & ~upper[i])) return false;
        return true;
    });
}

LppReport lpp_report(const Frame& f, const Formula& formula,
                     const std::vector<VarName>& pvars, const LppBudgets& budgets) {
    LppReport report;
    report.monotonicity = check_monotone(f, formula, pvars, budgets.guard_bits);
    if (!report.monotonicity.monotone) {
        report.status = LppStatus::NotMonotone;
        return report;
    }
    report.search =
        positivity_witness_search(f, formula, pvars, budgets.mode, budgets.guard_bits);
    if (report.search->outcome == SearchOutcome::Found) {
        report.status = LppStatus::RefutedWithWitness;
        return report;
    }
    report.synthesis =
        synthesize_positive(f, formula, pvars, budgets.max_size, budgets.guard_bits);
    report.status = report.synthesis->found ? LppStatus::PositiveEquivalentFound
                                            : LppStatus::Inconclusive;
    return report;
}

} // namespace modlab
