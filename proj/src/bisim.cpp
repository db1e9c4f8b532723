#include "modlab/bisim.hpp"

#include <algorithm>
#include <bit>

namespace modlab {

std::string to_string(BisimCondition c) {
    switch (c) {
        case BisimCondition::Zig: return "zig";
        case BisimCondition::Zag: return "zag";
        case BisimCondition::Lit: return "lit";
        case BisimCondition::ZigK: return "zig_K";
        case BisimCondition::ZagK: return "zag_K";
    }
    return "?";
}

namespace {

void require_dims(const Frame& f1, const Frame& f2, const Relation& z) {
    if (z.left != frame_size(f1) || z.right != frame_size(f2))
        throw DimensionError("bisimulation check: relation/frame dimension mismatch");
}

// zig_K / zag_K on a Kripke pair; returns the lexicographically least witness.
BisimCheck kripke_zigzag(const KripkeFrame& k1, const KripkeFrame& k2, const Relation& z) {
    for (int w1 = 0; w1 < z.left; w1++) {
        for (int w2 = 0; w2 < z.right; w2++) {
            if (!z.contains(w1, w2)) continue;
            for (int v1 = 0; v1 < k1.size; v1++) {
                if (!k1.r.contains(w1, v1)) continue;
                if (!(z.rows[v1] & k2.r.rows[w2])) {
                    BisimViolation v;
                    v.condition = BisimCondition::ZigK;
                    v.pair = {w1, w2};
                    v.successor = v1;
                    return v;
                }
            }
            for (int v2 = 0; v2 < k2.size; v2++) {
                if (!k2.r.contains(w2, v2)) continue;
                if (!(k1.r.rows[w1] & rel_preimage(z, Mask(1) << v2))) {
                    BisimViolation v;
                    v.condition = BisimCondition::ZagK;
                    v.pair = {w1, w2};
                    v.successor = v2;
                    return v;
                }
            }
        }
    }
    return std::nullopt;
}

BisimCheck nbd_zigzag(const Frame& f1, const Frame& f2, const Relation& z) {
    if (!is_monotone_frame(f1) || !is_monotone_frame(f2))
        throw std::invalid_argument("bisimulation check: non-monotone neighborhood frame");
    int n1 = frame_size(f1), n2 = frame_size(f2);
    if (n1 > kNbdSizeGuard || n2 > kNbdSizeGuard)
        throw GuardExceeded("bisimulation check: frame size exceeds neighborhood guard");
    // zig: Z(dia1 X1) subset dia2 Z(X1) for all X1.
    for (Mask x1 = 0; x1 <= full_mask(n1); x1++) {
        Mask lhs = rel_image(z, frame_dia(f1, x1));
        Mask rhs = frame_dia(f2, rel_image(z, x1));
        if (lhs & ~rhs) {
            BisimViolation v;
            v.condition = BisimCondition::Zig;
            v.subset = x1;
            v.world = std::countr_zero(lhs & ~rhs);
            return v;
        }
        if (x1 == full_mask(n1)) break;
    }
    // zag: Z^{-1}(dia2 X2) subset dia1 Z^{-1}(X2) for all X2.
    for (Mask x2 = 0; x2 <= full_mask(n2); x2++) {
        Mask lhs = rel_preimage(z, frame_dia(f2, x2));
        Mask rhs = frame_dia(f1, rel_preimage(z, x2));
        if (lhs & ~rhs) {
            BisimViolation v;
            v.condition = BisimCondition::Zag;
            v.subset = x2;
            v.world = std::countr_zero(lhs & ~rhs);
            return v;
        }
        if (x2 == full_mask(n2)) break;
    }
    return std::nullopt;
}

} // namespace

BisimCheck check_frame_bisim(const Frame& f1, const Frame& f2, const Relation& z) {
    require_dims(f1, f2, z);
    if (is_kripke(f1) && is_kripke(f2))
        return kripke_zigzag(std::get<KripkeFrame>(f1), std::get<KripkeFrame>(f2), z);
    return nbd_zigzag(f1, f2, z);
}

BisimCheck check_tau_bisim(const Model& m1, const Model& m2, const Relation& z,
                           const LiteralSet& tau) {
    require_dims(m1.frame, m2.frame, z);
    int n2 = frame_size(m2.frame);
    // lit first: least literal (positives before negatives, names sorted),
    // then the least offending pair.
    auto check_lit = [&](const VarName& name, bool positive) -> BisimCheck {
        Mask v1 = positive ? m1.val.get(name) : (full_mask(z.left) & ~m1.val.get(name));
        Mask v2 = positive ? m2.val.get(name) : (full_mask(n2) & ~m2.val.get(name));
        Mask bad = rel_image(z, v1) & ~v2;
        if (!bad) return std::nullopt;
        int w2 = std::countr_zero(bad);
        for (int w1 = 0; w1 < z.left; w1++) {
            if (((v1 >> w1) & 1) && z.contains(w1, w2)) {
                BisimViolation v;
                v.condition = BisimCondition::Lit;
                v.literal = name;
                v.literal_positive = positive;
                v.pair = {w1, w2};
                return v;
            }
        }
        return std::nullopt; // unreachable
    };
    for (const auto& name : tau.pos)
        if (auto v = check_lit(name, true)) return v;
    for (const auto& name : tau.neg)
        if (auto v = check_lit(name, false)) return v;
    return check_frame_bisim(m1.frame, m2.frame, z);
}

namespace {

// One refinement pass keeping only pairs that satisfy the local zig/zag test
// against the current candidate.
Relation refine_once(const Frame& f1, const Frame& f2, const Relation& z) {
    Relation out = z;
    int n1 = frame_size(f1), n2 = frame_size(f2);
    if (is_kripke(f1) && is_kripke(f2)) {
        const auto& k1 = std::get<KripkeFrame>(f1);
        const auto& k2 = std::get<KripkeFrame>(f2);
        for (int w1 = 0; w1 < n1; w1++) {
            for (int w2 = 0; w2 < n2; w2++) {
                if (!z.contains(w1, w2)) continue;
                bool ok = true;
                for (int v1 = 0; ok && v1 < n1; v1++)
                    if (k1.r.contains(w1, v1) && !(z.rows[v1] & k2.r.rows[w2])) ok = false;
                for (int v2 = 0; ok && v2 < n2; v2++)
                    if (k2.r.contains(w2, v2) &&
                        !(k1.r.rows[w1] & rel_preimage(z, Mask(1) << v2)))
                        ok = false;
                if (!ok) out.remove(w1, w2);
            }
        }
        return out;
    }
    // Neighborhood path: precompute Z-images of all subsets.
    std::vector<Mask> img(size_t(1) << n1), pre(size_t(1) << n2);
    for (Mask x = 0; x < img.size(); x++) img[x] = rel_image(z, x);
    for (Mask x = 0; x < pre.size(); x++) pre[x] = rel_preimage(z, x);
    for (int w1 = 0; w1 < n1; w1++) {
        for (int w2 = 0; w2 < n2; w2++) {
            if (!z.contains(w1, w2)) continue;
            bool ok = true;
            for (Mask x1 = 0; ok && x1 <= full_mask(n1); x1++) {
                if (((frame_dia(f1, x1) >> w1) & 1) &&
                    !((frame_dia(f2, img[x1]) >> w2) & 1))
                    ok = false;
                if (x1 == full_mask(n1)) break;
            }
            for (Mask x2 = 0; ok && x2 <= full_mask(n2); x2++) {
                if (((frame_dia(f2, x2) >> w2) & 1) &&
                    !((frame_dia(f1, pre[x2]) >> w1) & 1))
                    ok = false;
                if (x2 == full_mask(n2)) break;
            }
            if (!ok) out.remove(w1, w2);
        }
    }
    return out;
}

} // namespace

Relation greatest_tau_bisim(const Model& m1, const Model& m2, const LiteralSet& tau) {
    const Frame& f1 = m1.frame;
    const Frame& f2 = m2.frame;
    if (!is_monotone_frame(f1) || !is_monotone_frame(f2))
        throw std::invalid_argument("greatest_tau_bisim: non-monotone neighborhood frame");
    int n1 = frame_size(f1), n2 = frame_size(f2);
    // Lit-consistent full candidate.
    Relation z(n1, n2);
    auto lit_mask = [&](const Model& m, int n, const VarName& name, bool positive) {
        Mask v = m.val.get(name);
        return positive ? v : (full_mask(n) & ~v);
    };
    for (int w1 = 0; w1 < n1; w1++) {
        for (int w2 = 0; w2 < n2; w2++) {
            bool ok = true;
            for (const auto& name : tau.pos)
                if (((lit_mask(m1, n1, name, true) >> w1) & 1) &&
                    !((lit_mask(m2, n2, name, true) >> w2) & 1)) { ok = false; break; }
            if (ok)
                for (const auto& name : tau.neg)
                    if (((lit_mask(m1, n1, name, false) >> w1) & 1) &&
                        !((lit_mask(m2, n2, name, false) >> w2) & 1)) { ok = false; break; }
            if (ok) z.add(w1, w2);
        }
    }
    for (;;) {
        Relation next = refine_once(f1, f2, z);
        if (next == z) return z;
        z = std::move(next);
    }
}

Relation greatest_frame_bisim(const Frame& f1, const Frame& f2) {
    if (!is_monotone_frame(f1) || !is_monotone_frame(f2))
        throw std::invalid_argument("greatest_frame_bisim: non-monotone neighborhood frame");
    Relation z = Relation::full(frame_size(f1), frame_size(f2));
    for (;;) {
        Relation next = refine_once(f1, f2, z);
        if (next == z) return z;
        z = std::move(next);
    }
}

std::optional<std::pair<int, int>> preserves(const Relation& z, const Model& m1,
                                             const Model& m2, const Formula& f) {
    return entails_under(z, m1, m2, f, f);
}

std::optional<std::pair<int, int>> entails_under(const Relation& z, const Model& m1,
                                                 const Model& m2, const Formula& f,
                                                 const Formula& g) {
    if (z.left != frame_size(m1.frame) || z.right != frame_size(m2.frame))
        throw DimensionError("entails_under: dimension mismatch");
    Mask t1 = eval(m1, f);
    Mask t2 = eval(m2, g);
    for (int w1 = 0; w1 < z.left; w1++) {
        if (!((t1 >> w1) & 1)) continue;
        Mask bad = z.rows[w1] & ~t2;
        if (bad) return std::make_pair(w1, std::countr_zero(bad));
    }
    return std::nullopt;
}

Relation zigzag_union(const ZigzagDecomposition& d) {
    Relation out = d.z1;
    for (int i = 0; i < out.left; i++) out.rows[i] |= d.z2.rows[i];
    return out;
}

bool check_zigzag_decomposition(const Relation& z, const ZigzagDecomposition& d) {
    if (d.z1.left != z.left || d.z1.right != z.right ||
        d.z2.left != z.left || d.z2.right != z.right)
        return false;
    if (zigzag_union(d) != z) return false;
    // Z1 a partial function, Z2^{-1} a partial function.
    Mask dom1 = 0, dom2 = 0, rng1 = 0, rng2 = 0;
    for (int i = 0; i < z.left; i++) {
        if (d.z1.rows[i]) {
            if (std::popcount(d.z1.rows[i]) != 1) return false;
            dom1 |= Mask(1) << i;
            rng1 |= d.z1.rows[i];
        }
        if (d.z2.rows[i]) {
            dom2 |= Mask(1) << i;
            rng2 |= d.z2.rows[i];
        }
    }
    for (int j = 0; j < z.right; j++) {
        int count = 0;
        for (int i = 0; i < z.left; i++)
            if (d.z2.contains(i, j)) count++;
        if (count > 1) return false;
    }
    return !(dom1 & dom2) && !(rng1 & rng2);
}

ZigzagDecomposition zigzag_free_subrelation(const Relation& z) {
    if (!is_full(z)) throw std::invalid_argument("zigzag_free_subrelation: relation not full");
    ZigzagDecomposition d{Relation(z.left, z.right), Relation(z.left, z.right)};
    Mask act1 = full_mask(z.left), act2 = full_mask(z.right);
    while (act1 || act2) {
        // Case 1: lowest active left world with a unique active image.
        int w1u = -1;
        for (int i = 0; i < z.left; i++) {
            if (((act1 >> i) & 1) && std::popcount(z.rows[i] & act2) == 1) { w1u = i; break; }
        }
        if (w1u >= 0) {
            int w2 = std::countr_zero(z.rows[w1u] & act2);
            for (int i = 0; i < z.left; i++)
                if (((act1 >> i) & 1) && (z.rows[i] & act2) == (Mask(1) << w2)) {
                    d.z1.add(i, w2);
                    act1 &= ~(Mask(1) << i);
                }
            act2 &= ~(Mask(1) << w2);
            continue;
        }
        // Case 2: lowest active right world with a unique active preimage.
        int w2u = -1, w1 = -1;
        for (int j = 0; j < z.right && w2u < 0; j++) {
            if (!((act2 >> j) & 1)) continue;
            Mask pre = rel_preimage(z, Mask(1) << j) & act1;
            if (std::popcount(pre) == 1) { w2u = j; w1 = std::countr_zero(pre); }
        }
        if (w2u >= 0) {
            for (int j = 0; j < z.right; j++)
                if (((act2 >> j) & 1) &&
                    (rel_preimage(z, Mask(1) << j) & act1) == (Mask(1) << w1)) {
                    d.z2.add(w1, j);
                    act2 &= ~(Mask(1) << j);
                }
            act1 &= ~(Mask(1) << w1);
            continue;
        }
        // Case 3: lexicographically least active pair goes to the functional part.
        bool found = false;
        for (int i = 0; i < z.left && !found; i++) {
            if (!((act1 >> i) & 1)) continue;
            Mask row = z.rows[i] & act2;
            if (row) {
                int j = std::countr_zero(row);
                d.z1.add(i, j);
                act1 &= ~(Mask(1) << i);
                act2 &= ~(Mask(1) << j);
                found = true;
            }
        }
        if (!found)
            throw std::logic_error("zigzag_free_subrelation: peel stalled on a full relation");
    }
    return d;
}

namespace {

MorphismCheck require_function(const Relation& f) {
    for (int i = 0; i < f.left; i++)
        if (std::popcount(f.rows[i]) != 1) {
            MorphismViolation v;
            v.kind = MorphismViolation::NotFunction;
            v.world = i;
            return v;
        }
    return std::nullopt;
}

int apply_fn(const Relation& f, int w) { return std::countr_zero(f.rows[w]); }

} // namespace

MorphismCheck check_morphism(const Relation& f, const Frame& src, const Frame& dst) {
    if (f.left != frame_size(src) || f.right != frame_size(dst))
        throw DimensionError("check_morphism: dimension mismatch");
    if (auto v = require_function(f)) return v;
    if (is_kripke(src) && is_kripke(dst)) {
        const auto& k1 = std::get<KripkeFrame>(src);
        const auto& k2 = std::get<KripkeFrame>(dst);
        for (int w1 = 0; w1 < k1.size; w1++) {
            int fw = apply_fn(f, w1);
            for (int v1 = 0; v1 < k1.size; v1++) {
                if (!k1.r.contains(w1, v1)) continue;
                if (!k2.r.contains(fw, apply_fn(f, v1))) {
                    MorphismViolation v;
                    v.kind = MorphismViolation::Fwd;
                    v.world = w1;
                    v.successor = v1;
                    return v;
                }
            }
            for (int v2 = 0; v2 < k2.size; v2++) {
                if (!k2.r.contains(fw, v2)) continue;
                if (!(k1.r.rows[w1] & rel_preimage(f, Mask(1) << v2))) {
                    MorphismViolation v;
                    v.kind = MorphismViolation::Bwd;
                    v.world = w1;
                    v.successor = v2;
                    return v;
                }
            }
        }
        return std::nullopt;
    }
    int n2 = frame_size(dst);
    if (n2 > kNbdSizeGuard || frame_size(src) > kNbdSizeGuard)
        throw GuardExceeded("check_morphism: frame size exceeds neighborhood guard");
    for (Mask x2 = 0; x2 <= full_mask(n2); x2++) {
        Mask lhs = rel_preimage(f, frame_dia(dst, x2));
        Mask rhs = frame_dia(src, rel_preimage(f, x2));
        if (lhs != rhs) {
            MorphismViolation v;
            v.kind = MorphismViolation::Equation;
            v.subset = x2;
            v.world = std::countr_zero(lhs ^ rhs);
            return v;
        }
        if (x2 == full_mask(n2)) break;
    }
    return std::nullopt;
}

MorphismCheck check_morphism(const Relation& f, const Model& src, const Model& dst,
                             const std::optional<std::vector<VarName>>& pvars) {
    if (auto v = check_morphism(f, src.frame, dst.frame)) return v;
    std::set<VarName> support;
    for (const auto& [name, _] : src.val.assign) support.insert(name);
    for (const auto& [name, _] : dst.val.assign) support.insert(name);
    LiteralSet tau{support, support};
    if (pvars) {
        for (const auto& p : *pvars) tau.neg.erase(p);
    }
    if (auto v = check_tau_bisim(src, dst, f, tau)) {
        MorphismViolation mv;
        mv.kind = MorphismViolation::Lit;
        mv.literal = v->literal;
        mv.literal_positive = v->literal_positive;
        mv.world = v->pair.first;
        mv.successor = v->pair.second;
        return mv;
    }
    return std::nullopt;
}

bool is_reduction(const Relation& f, const KripkeFrame& f1, Mask v, const KripkeFrame& f2) {
    if (!is_cone(f1, v)) throw std::invalid_argument("is_reduction: V is not a cone");
    KripkeFrame sub = restrict(f1, v);
    if (f.left != sub.size || f.right != f2.size)
        throw DimensionError("is_reduction: dimension mismatch");
    if (!is_function(f)) return false;
    if (!is_full(f)) return false; // onto
    return !check_morphism(f, Frame{sub}, Frame{f2});
}

LiteralSet directed_tau(const std::set<VarName>& support, const std::vector<VarName>& pvars) {
    LiteralSet tau{support, support};
    for (const auto& p : pvars) tau.neg.erase(p);
    return tau;
}

} // namespace modlab
