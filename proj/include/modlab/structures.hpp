#pragma once

// Finite Kripke and monotone neighborhood frames, models over them,
// evaluation, frame validity, and the relation-operator calculus.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "modlab/formula.hpp"

namespace modlab {

// Subsets of {0..n-1} are bitmasks throughout; n stays small by construction.
using Mask = uint32_t;

inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }

struct WorldSet {
    int universe = 0;
    Mask bits = 0;
};

class DimensionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
public:
    explicit DimensionError(const std::string& m) : std::runtime_error(m) {}
};

class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct Relation {
    int left = 0;
    int right = 0;
    std::vector<Mask> rows; // rows[i] = successors of i on the right side

    Relation() = default;
    Relation(int l, int r) : left(l), right(r), rows(l, 0) {}

    bool contains(int i, int j) const { return (rows[i] >> j) & 1; }
    void add(int i, int j) { rows[i] |= Mask(1) << j; }
    void remove(int i, int j) { rows[i] &= ~(Mask(1) << j); }
    std::vector<std::pair<int, int>> pairs() const;
    size_t pair_count() const;
    bool empty() const;
    bool operator==(const Relation&) const = default;

    static Relation identity(int n);
    static Relation full(int l, int r);
    static Relation from_pairs(int l, int r, const std::vector<std::pair<int, int>>& ps);
};

// Full image ZX, full preimage, composition R2R1, inverse.
Mask rel_image(const Relation& z, Mask x);
Mask rel_preimage(const Relation& z, Mask x);
Relation rel_inverse(const Relation& z);
Relation rel_compose(const Relation& r2, const Relation& r1);

// The upper Galois adjoint -Z^{-1}- applied to X2 (a subset of the right side).
Mask rel_conjugate(const Relation& z, Mask x2);

bool is_function(const Relation& z);   // every left world has exactly one image
bool is_full(const Relation& z);

struct KripkeFrame {
    int size = 0;
    Relation r; // square, both sides == size

    KripkeFrame() = default;
    KripkeFrame(int n, Relation rel);
    bool operator==(const KripkeFrame&) const = default;
};

inline constexpr int kNbdSizeGuard = 14;

struct NbdFrame {
    int size = 0;
    std::vector<Mask> dia; // indexed by subset bitmask, length 2^size

    NbdFrame() = default;
    NbdFrame(int n, std::vector<Mask> table);
    Mask box(Mask x) const { return full_mask(size) & ~dia[full_mask(size) & ~x]; }
    bool operator==(const NbdFrame&) const = default;
};

using Frame = std::variant<KripkeFrame, NbdFrame>;

int frame_size(const Frame& f);
bool is_kripke(const Frame& f);

// Diamond operator of a frame applied to a subset.
Mask frame_dia(const Frame& f, Mask x);
Mask frame_box(const Frame& f, Mask x);

NbdFrame kripke_to_nbd(const KripkeFrame& f);

bool is_monotone_frame(const NbdFrame& f);
// Kripke frames are always monotone; neighborhood frames are checked.
bool is_monotone_frame(const Frame& f);

struct Valuation {
    // Keys are the support; variables outside the support read as the empty set.
    std::map<VarName, Mask> assign;

    Mask get(const VarName& v) const {
        auto it = assign.find(v);
        return it == assign.end() ? 0 : it->second;
    }
    bool operator==(const Valuation&) const = default;
};

struct Model {
    Frame frame;
    Valuation val;
};

Mask eval(const Model& m, const Formula& f);
bool holds_at(const Model& m, int world, const Formula& f);

struct ValidityResult {
    bool valid = true;
    Valuation countermodel;
    int world = -1;
};

inline constexpr int kDefaultGuardBits = 24;

// Exhaustive sweep over all valuations of vars(f) in binary-counter order
// (most significant chunk = first variable, bit w = world w). Returns the
// first countermodel or Valid.
ValidityResult frame_validity(const Frame& f, const Formula& formula,
                              int guard_bits = kDefaultGuardBits);

// Postorder bytecode for tight evaluation loops (validity sweeps,
// monotonicity decisions): variables are resolved to indices once and
// valuations passed as plain vectors.
class CompiledFormula {
public:
    CompiledFormula(const Frame& f, const Formula& g, const std::vector<VarName>& order);
    Mask eval(const std::vector<Mask>& vals) const; // vals[i] = set of order[i]

private:
    struct Op {
        NodeKind kind;
        int var = -1; // Lit only; -1 for variables outside `order` (empty set)
        bool pos = true;
    };
    const Frame* frame_;
    int size_;
    std::vector<Op> ops_;
    mutable std::vector<Mask> stack_;
};

// Dual neighborhood frame (W, Box); Kripke input is rejected.
NbdFrame dual_frame(const Frame& f);
Model dual_model(const Model& m);

Relation rt_closure(const Relation& r);

// Generated cone R*{w} of a Kripke frame.
Mask cone(const KripkeFrame& f, int w);
bool is_cone(const KripkeFrame& f, Mask v);

// Induced substructure on V, worlds reindexed to 0..|V|-1 preserving order.
KripkeFrame restrict(const KripkeFrame& f, Mask v);
Model restrict(const Model& m, Mask v);

// Compress / expand masks through the reindexing used by restrict.
Mask compress_mask(Mask x, Mask v);
Mask expand_mask(Mask x, Mask v);

} // namespace modlab
