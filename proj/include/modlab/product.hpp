#pragma once

// Maximal bisimulation products of monotone neighborhood frames and the
// preservation checks around them.

#include <optional>
#include <string>

#include "modlab/structures.hpp"

namespace modlab {

inline constexpr int kProductCarrierGuard = 12;

struct BisimProduct {
    std::vector<std::pair<int, int>> carrier; // lexicographically sorted pairs of Z
    NbdFrame frame;                           // dia_max over subsets of the carrier
    Relation pi1;                             // carrier -> W1, functional
    Relation pi2;                             // carrier -> W2, functional
};

// dia_max X := pi1^{-1} dia1 pi1 X  intersect  pi2^{-1} dia2 pi2 X.
// Requires F1, F2 monotone and Z a full frame bisimulation.
BisimProduct max_product(const NbdFrame& f1, const NbdFrame& f2, const Relation& z);

struct ProductViolation {
    enum Kind { Equation, Monotone, Maximality } kind = Equation;
    int k = 0;       // factor index for Equation
    Mask subset = 0; // X_k (Equation) or the carrier subset (Monotone/Maximality)
};

// Exhaustive equation + monotonicity check; maximality is verified against a
// seeded family of monotone competitors satisfying the equations.
std::optional<ProductViolation> check_product(const BisimProduct& p, const NbdFrame& f1,
                                              const NbdFrame& f2, uint32_t seed = 0,
                                              int competitor_trials = 16);

// Lemma-style inclusion alpha_F X <= pi_k^{-1} alpha_Fk pi_k X for a positive
// single-variable alpha; returns the first violating X if any.
std::optional<Mask> positive_bound_check(const BisimProduct& p, const NbdFrame& f1,
                                         const NbdFrame& f2, const Formula& alpha);

struct AxiomPreservation {
    std::string name;
    enum Status { Preserved, NotValidOnFactors, Rejected, Failed } status = Rejected;
    std::string detail;
    std::optional<ValidityResult> counterexample; // Failed only
};

// For each axiom that is closed or of the shape alpha(p) -> <>p with alpha
// positive: if valid on both factors, asserts validity on the product.
std::vector<AxiomPreservation> preservation_suite(
    const NbdFrame& f1, const NbdFrame& f2, const Relation& z,
    const std::vector<std::pair<std::string, Formula>>& axiom_list);

} // namespace modlab
