#pragma once

// tau-bisimulation checking and computation, zigzag-free decompositions,
// morphisms, and reductions on finite structures.

#include <optional>
#include <string>

#include "modlab/structures.hpp"

namespace modlab {

enum class BisimCondition { Zig, Zag, Lit, ZigK, ZagK };

std::string to_string(BisimCondition c);

struct BisimViolation {
    BisimCondition condition;
    // Lit: literal + pair. ZigK/ZagK: pair + the unmatched successor.
    // Zig/Zag: offending subset + the world that escapes.
    VarName literal;
    bool literal_positive = true;
    std::pair<int, int> pair{-1, -1};
    int successor = -1;
    Mask subset = 0;
    int world = -1;
};

using BisimCheck = std::optional<BisimViolation>; // nullopt == Ok

// Frame-level zig/zag only (tau plays no role).
BisimCheck check_frame_bisim(const Frame& f1, const Frame& f2, const Relation& z);

// Full tau-bisimulation check between models. Kripke pairs take the zig_K /
// zag_K path; anything else goes through the subset conditions (monotone
// neighborhood frames required).
BisimCheck check_tau_bisim(const Model& m1, const Model& m2, const Relation& z,
                           const LiteralSet& tau);

// The inclusion-greatest tau-bisimulation, by greatest-fixed-point refinement
// from the lit-consistent full relation.
Relation greatest_tau_bisim(const Model& m1, const Model& m2, const LiteralSet& tau);
Relation greatest_frame_bisim(const Frame& f1, const Frame& f2);

// Z preserves f iff Z . eval(m1, f) is contained in eval(m2, f); the witness
// is the lexicographically least offending pair.
std::optional<std::pair<int, int>> preserves(const Relation& z, const Model& m1,
                                             const Model& m2, const Formula& f);
std::optional<std::pair<int, int>> entails_under(const Relation& z, const Model& m1,
                                                 const Model& m2, const Formula& f,
                                                 const Formula& g);

struct ZigzagDecomposition {
    Relation z1; // functional part
    Relation z2; // inverse-functional part
};

bool check_zigzag_decomposition(const Relation& z, const ZigzagDecomposition& d);

// Lemma-style peeling: extracts a zigzag-free full subrelation of a full Z.
ZigzagDecomposition zigzag_free_subrelation(const Relation& z);

Relation zigzag_union(const ZigzagDecomposition& d);

struct MorphismViolation {
    enum Kind { NotFunction, Fwd, Bwd, Equation, Lit } kind;
    int world = -1;
    int successor = -1;
    Mask subset = 0;
    VarName literal;
    bool literal_positive = true;
};

using MorphismCheck = std::optional<MorphismViolation>;

MorphismCheck check_morphism(const Relation& f, const Frame& src, const Frame& dst);
// Model case: additionally a (pvars-directed, when given) bisimulation of models.
MorphismCheck check_morphism(const Relation& f, const Model& src, const Model& dst,
                             const std::optional<std::vector<VarName>>& pvars = std::nullopt);

// f is a reduction iff it is an onto morphism from the cone-restriction of f1 to f2.
bool is_reduction(const Relation& f, const KripkeFrame& f1, Mask v, const KripkeFrame& f2);

// tau for p-directed bisimulations over a finite variable support:
// every literal except the negations of pvars.
LiteralSet directed_tau(const std::set<VarName>& support, const std::vector<VarName>& pvars);

} // namespace modlab
