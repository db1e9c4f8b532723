#pragma once

// p-monotonicity decision, positivity / interpolation witness search, and
// bounded synthesis of positive equivalents and interpolants.

#include <cstdint>
#include <optional>

#include "modlab/bisim.hpp"
#include "modlab/structures.hpp"

namespace modlab {

struct MonotonicityCounterexample {
    Valuation val1; // val1 <=_p val2
    Valuation val2;
    int world = -1; // formula true here under val1, false under val2
};

struct MonotonicityVerdict {
    bool monotone = true;
    std::optional<MonotonicityCounterexample> counterexample;
};

// Exhaustive over all <=_p-related valuation pairs restricted to vars(f):
// 3^(size * |pvars in vars|) * 2^(size * |other vars|) pairs.
MonotonicityVerdict check_monotone(const Frame& f, const Formula& formula,
                                   const std::vector<VarName>& pvars,
                                   int guard_bits = kDefaultGuardBits);

struct PositivityWitness {
    Model m1;
    Model m2;
    Relation z;                // a tau-directed bisimulation (the greatest one)
    std::pair<int, int> pair;  // formula true at pair.first in m1, false at pair.second in m2
};

enum class SearchOutcome { Found, NoneFound, Exhausted };

struct WitnessSearchResult {
    SearchOutcome outcome = SearchOutcome::NoneFound;
    std::optional<PositivityWitness> witness;
    uint64_t pairs_checked = 0;
    uint32_t seed = 0;   // sampled mode only
    uint64_t trials = 0; // sampled mode only
};

struct SearchMode {
    bool exhaustive = true;
    uint32_t seed = 0;
    uint64_t trials = 0;

    static SearchMode exhaustive_mode() { return {}; }
    static SearchMode sampled(uint32_t seed, uint64_t trials) { return {false, seed, trials}; }
};

// Sweeps model pairs on F; for each pair, the greatest pvars-directed
// bisimulation is computed and preservation of f tested. Exhaustive NoneFound
// certifies positive-equivalence for finite Kripke F (refutation-only on
// neighborhood frames).
WitnessSearchResult positivity_witness_search(const Frame& f, const Formula& formula,
                                              const std::vector<VarName>& pvars,
                                              const SearchMode& mode,
                                              int guard_bits = kDefaultGuardBits);

// Same sweep with two formulas and an explicit tau: witness has f true at w1,
// g false at w2, (w1,w2) in the greatest tau-bisimulation.
WitnessSearchResult interpolant_witness_search(const Frame& f, const Formula& phi,
                                               const Formula& psi, const LiteralSet& tau,
                                               const SearchMode& mode,
                                               int guard_bits = kDefaultGuardBits);

struct SynthesisResult {
    std::optional<Formula> found;
    int bound_reached = 0;
    uint64_t candidates_checked = 0;
};

inline constexpr uint64_t kSynthesisCandidateGuard = 1000000;

// Enumerates pvars-positive candidates over lits(f) minus the negative pvars,
// by size with semantic deduplication (evaluation-vector signatures over all
// valuations of vars(f)); returns the first frame-equivalent candidate.
SynthesisResult synthesize_positive(const Frame& f, const Formula& formula,
                                    const std::vector<VarName>& pvars, int max_size,
                                    int guard_bits = kDefaultGuardBits);

// Candidates range over Fm_tau restricted to vars(phi) + vars(psi); the result
// iota satisfies frame_validity(F, phi -> iota) and frame_validity(F, iota -> psi).
SynthesisResult synthesize_interpolant(const Frame& f, const Formula& phi, const Formula& psi,
                                       const LiteralSet& tau, int max_size,
                                       int guard_bits = kDefaultGuardBits);

enum class LppStatus { NotMonotone, RefutedWithWitness, PositiveEquivalentFound, Inconclusive };

std::string to_string(LppStatus s);

struct LppBudgets {
    SearchMode mode;
    int max_size = 6;
    int guard_bits = kDefaultGuardBits;
};

struct LppReport {
    LppStatus status = LppStatus::Inconclusive;
    MonotonicityVerdict monotonicity;
    std::optional<WitnessSearchResult> search;
    std::optional<SynthesisResult> synthesis;
};

LppReport lpp_report(const Frame& f, const Formula& formula,
                     const std::vector<VarName>& pvars, const LppBudgets& budgets);

} // namespace modlab
