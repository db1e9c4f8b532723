#pragma once

// Modal formulas in negation normal form: negation occurs on variables only,
// implication exists only in the surface grammar.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace modlab {

using VarName = std::string;

enum class NodeKind : uint8_t { Bot, Top, Lit, Dia, Box, And, Or };

class Formula {
public:
    Formula() = default;

    static Formula bot();
    static Formula top();
    static Formula lit(VarName var, bool positive = true);
    static Formula dia(Formula child);
    static Formula box(Formula child);
    static Formula conj(Formula left, Formula right);
    static Formula disj(Formula left, Formula right);

    bool valid() const { return node_ != nullptr; }
    NodeKind kind() const;
    const VarName& var() const;
    bool positive() const;
    const Formula& child() const;
    const Formula& left() const;
    const Formula& right() const;

    // Node count (literals and constants count 1).
    int size() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    // Total order: kind rank Bot<Top<Lit<Dia<Box<And<Or, then contents.
    static int compare(const Formula& a, const Formula& b);
    bool operator<(const Formula& other) const { return compare(*this, other) < 0; }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    NodeKind kind;
    VarName var;       // Lit only
    bool positive = true;
    Formula left;      // Dia/Box child, And/Or left
    Formula right;     // And/Or right
};

inline NodeKind Formula::kind() const { return node_->kind; }
inline const VarName& Formula::var() const { return node_->var; }
inline bool Formula::positive() const { return node_->positive; }
inline const Formula& Formula::child() const { return node_->left; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }

struct LiteralSet {
    std::set<VarName> pos;
    std::set<VarName> neg;

    LiteralSet negated() const { return {neg, pos}; }
    // tau-plus-minus: both polarities of every mentioned variable.
    LiteralSet both() const;
    bool contains(const VarName& v, bool positive) const;
    bool operator==(const LiteralSet&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(size_t position, const std::string& message);
    size_t position;
};

// Surface grammar: atoms true|false|[a-zA-Z_][a-zA-Z0-9_']*, prefix ~ <> [],
// infix & | ->; precedence ~/<>/[] > & > | > ->, -> right-associative.
// The result is normalized to NNF.
Formula parse(const std::string& text);

// Canonical text; parse(print(f)) is structurally equal to f.
std::string print(const Formula& f);

// NNF of the negation; an involution.
Formula negate(const Formula& f);

// Swaps <> and []; literals untouched; an involution.
Formula dualize(const Formula& f);

// Simultaneous substitution; the image of a negative literal is the negation
// of the mapped formula. Unmapped variables are left alone.
Formula substitute(const Formula& f, const std::map<VarName, Formula>& map);

LiteralSet lits(const Formula& f);
std::set<VarName> vars(const Formula& f);
int modal_depth(const Formula& f);

// True iff no negative literal over pvars occurs in f.
bool is_positive(const Formula& f, const std::set<VarName>& pvars);

// Positive template with fresh slots plus the literal each slot stands for;
// substituting the images back reproduces the input exactly.
struct NnfSplit {
    Formula tmpl;
    std::vector<VarName> slots;          // slot names, positives first
    std::vector<Formula> images;         // images[i] is the literal for slots[i]
    std::vector<VarName> negvars;        // variables occurring negatively
};
NnfSplit nnf_split(const Formula& f);

enum class GradedKind { Dia, Box };

// <>^{<=n} as a disjunction of iterated diamonds (conjunction for []).
Formula graded(GradedKind kind, int n, const Formula& f);

// eta(p,q) = /\_i []^{<=d}(~q_i | p_i) /\ f(q), with q_i = p_i + "_q".
Formula lyndon_premise(const Formula& f, const std::vector<VarName>& pvars);

// psi(p, r, r') = (f' /\ /\_j []^{<=d}(r_j | r_j')) \/ \/_j <>^{<=d}(r_j /\ r_j')
// where f' replaces every negative r_j literal by the fresh positive r_j'.
Formula param_elim_lift(const Formula& f, const std::vector<VarName>& pvars,
                        const std::vector<VarName>& rvars);

// Rewrites an interpolation problem so that the shared variables are exactly
// pvars: conjoins eta = \/_i p_i \/ true and renames psi's private variables.
std::pair<Formula, Formula> craig_lift(const Formula& phi, const Formula& psi,
                                       const std::vector<VarName>& pvars);

// All NNF formulas with literals in `allowed` and exactly `size` nodes,
// in the canonical deterministic order.
std::vector<Formula> formulas_of_size(const LiteralSet& allowed, int size);

// All formulas of size 1..max_size, size-major.
std::vector<Formula> enumerate_formulas(const LiteralSet& allowed, int max_size);

// AM, AC, AN, AP, AD, AT, A4, AB, A.3 in NNF.
const std::vector<std::pair<std::string, Formula>>& axioms();
Formula axiom(const std::string& name);

} // namespace modlab
