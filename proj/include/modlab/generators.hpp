#pragma once

// Seeded random structures for sampled searches and property tests.
// Everything is deterministic given the engine state.

#include <random>

#include "modlab/structures.hpp"

namespace modlab {

using Rng = std::mt19937;

// Each pair present independently with probability 1/2.
Relation random_relation(Rng& rng, int left, int right);

// Random relation patched to be full (nonempty rows, all columns covered).
Relation random_full_relation(Rng& rng, int left, int right);

KripkeFrame random_kripke(Rng& rng, int size);

// Random dia table closed under union-monotonicity (dia[x] accumulates the
// tables of all subsets), so the result always passes is_monotone_frame.
NbdFrame random_monotone_nbd(Rng& rng, int size);

Valuation random_valuation(Rng& rng, int size, const std::vector<VarName>& vars);

// Random NNF formula of modal depth <= depth over the allowed literals.
Formula random_formula(Rng& rng, const LiteralSet& allowed, int depth);

// Positive formula in the single variable p.
Formula random_positive_formula(Rng& rng, const VarName& p, int depth);

} // namespace modlab
