#include "modlab/product.hpp"

#include <bit>
#include <random>

#include "modlab/bisim.hpp"

namespace modlab {

namespace {

Mask project(const Relation& pi, Mask x) { return rel_image(pi, x); }
Mask lift(const Relation& pi, Mask xk) { return rel_preimage(pi, xk); }

} // namespace

BisimProduct max_product(const NbdFrame& f1, const NbdFrame& f2, const Relation& z) {
    if (z.left != f1.size || z.right != f2.size)
        throw DimensionError("max_product: relation/frame dimension mismatch");
    if (!is_monotone_frame(f1) || !is_monotone_frame(f2))
        throw std::invalid_argument("max_product: factors must be monotone");
    if (!is_full(z)) throw std::invalid_argument("max_product: Z must be full");
    if (check_frame_bisim(Frame{f1}, Frame{f2}, z))
        throw std::invalid_argument("max_product: Z is not a frame bisimulation");

    BisimProduct p;
    p.carrier = z.pairs(); // row-major == lexicographic on (w1, w2)
    int m = int(p.carrier.size());
    if (m > kProductCarrierGuard)
        throw GuardExceeded("max_product: carrier size " + std::to_string(m) +
                            " exceeds the guard of " + std::to_string(kProductCarrierGuard));
    p.pi1 = Relation(m, f1.size);
    p.pi2 = Relation(m, f2.size);
    for (int i = 0; i < m; i++) {
        p.pi1.add(i, p.carrier[i].first);
        p.pi2.add(i, p.carrier[i].second);
    }
    std::vector<Mask> table(size_t(1) << m);
    for (Mask x = 0; x < table.size(); x++)
        table[x] = lift(p.pi1, f1.dia[project(p.pi1, x)]) &
                   lift(p.pi2, f2.dia[project(p.pi2, x)]);
    p.frame = NbdFrame(m, std::move(table));
    return p;
}

std::optional<ProductViolation> check_product(const BisimProduct& p, const NbdFrame& f1,
                                              const NbdFrame& f2, uint32_t seed,
                                              int competitor_trials) {
    // Morphism equations, exhaustive over X_k.
    for (int k = 1; k <= 2; k++) {
        const Relation& pi = k == 1 ? p.pi1 : p.pi2;
        const NbdFrame& fk = k == 1 ? f1 : f2;
        for (Mask xk = 0; xk <= full_mask(fk.size); xk++) {
            if (p.frame.dia[lift(pi, xk)] != lift(pi, fk.dia[xk]))
                return ProductViolation{ProductViolation::Equation, k, xk};
            if (xk == full_mask(fk.size)) break;
        }
    }
    if (!is_monotone_frame(p.frame)) {
        // Locate a single-element violation for the report.
        for (Mask x = 0; x <= full_mask(p.frame.size); x++) {
            for (int w = 0; w < p.frame.size; w++)
                if (!((x >> w) & 1) &&
                    (p.frame.dia[x] & ~p.frame.dia[x | (Mask(1) << w)]))
                    return ProductViolation{ProductViolation::Monotone, 0, x};
            if (x == full_mask(p.frame.size)) break;
        }
    }

    // Maximality against sampled competitors. c(X) is the largest union of
    // cylinders inside X; dia'(X) := dia_max(c(X) | (X & S)) is monotone and
    // satisfies the equations for any S, so it must sit below dia_max.
    auto cyl_hull = [&](Mask x) {
        Mask y1 = 0, y2 = 0;
        for (int w = 0; w < f1.size; w++)
            if ((lift(p.pi1, Mask(1) << w) & ~x) == 0) y1 |= Mask(1) << w;
        for (int w = 0; w < f2.size; w++)
            if ((lift(p.pi2, Mask(1) << w) & ~x) == 0) y2 |= Mask(1) << w;
        return lift(p.pi1, y1) | lift(p.pi2, y2);
    };
    std::mt19937 rng(seed);
    for (int t = 0; t < competitor_trials; t++) {
        Mask s = Mask(rng()) & full_mask(p.frame.size);
        for (Mask x = 0; x <= full_mask(p.frame.size); x++) {
            Mask competitor = p.frame.dia[cyl_hull(x) | (x & s)];
            if (competitor & ~p.frame.dia[x])
                return ProductViolation{ProductViolation::Maximality, 0, x};
            if (x == full_mask(p.frame.size)) break;
        }
    }
    return std::nullopt;
}

std::optional<Mask> positive_bound_check(const BisimProduct& p, const NbdFrame& f1,
                                         const NbdFrame& f2, const Formula& alpha) {
    auto vs = vars(alpha);
    if (vs.size() > 1 || !lits(alpha).neg.empty())
        throw std::invalid_argument("positive_bound_check: alpha must be positive in one variable");
    VarName v = vs.empty() ? VarName("p") : *vs.begin();

    auto apply = [&](const NbdFrame& fr, Mask x) {
        Model m{fr, {}};
        m.val.assign[v] = x;
        return eval(m, alpha);
    };
    for (Mask x = 0; x <= full_mask(p.frame.size); x++) {
        Mask lhs = apply(p.frame, x);
        Mask rhs = lift(p.pi1, apply(f1, project(p.pi1, x))) &
                   lift(p.pi2, apply(f2, project(p.pi2, x)));
        if (lhs & ~rhs) return x;
        if (x == full_mask(p.frame.size)) break;
    }
    return std::nullopt;
}

namespace {

// Accepts closed formulas and (in NNF) Or(beta, Dia(p)) where negate(beta) is
// positive in the single variable p — the alpha(p) -> <>p shape.
bool admissible_shape(const Formula& f, std::string& why) {
    if (vars(f).empty()) return true;
    if (f.kind() == NodeKind::Or) {
        auto matches = [&](const Formula& body, const Formula& head) {
            if (head.kind() != NodeKind::Dia || head.child().kind() != NodeKind::Lit ||
                !head.child().positive())
                return false;
            VarName p = head.child().var();
            Formula alpha = negate(body);
            auto vs = vars(alpha);
            return lits(alpha).neg.empty() && (vs.empty() || (vs.size() == 1 && *vs.begin() == p));
        };
        if (matches(f.left(), f.right()) || matches(f.right(), f.left())) return true;
    }
    why = "not closed and not of the shape alpha(p) -> <>p with alpha positive";
    return false;
}

} // namespace

std::vector<AxiomPreservation> preservation_suite(
    const NbdFrame& f1, const NbdFrame& f2, const Relation& z,
    const std::vector<std::pair<std::string, Formula>>& axiom_list) {
    BisimProduct p = max_product(f1, f2, z);
    std::vector<AxiomPreservation> out;
    for (const auto& [name, f] : axiom_list) {
        AxiomPreservation r;
        r.name = name;
        std::string why;
        if (!admissible_shape(f, why)) {
            r.status = AxiomPreservation::Rejected;
            r.detail = why;
            out.push_back(std::move(r));
            continue;
        }
        if (!frame_validity(Frame{f1}, f).valid || !frame_validity(Frame{f2}, f).valid) {
            r.status = AxiomPreservation::NotValidOnFactors;
            out.push_back(std::move(r));
            continue;
        }
        ValidityResult vr = frame_validity(Frame{p.frame}, f);
        if (vr.valid) {
            r.status = AxiomPreservation::Preserved;
        } else {
            r.status = AxiomPreservation::Failed;
            r.detail = "valid on both factors but not on the product";
            r.counterexample = vr;
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace modlab
