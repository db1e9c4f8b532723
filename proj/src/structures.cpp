#include "modlab/structures.hpp"

#include <bit>

namespace modlab {

std::vector<std::pair<int, int>> Relation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < left; i++)
        for (int j = 0; j < right; j++)
            if (contains(i, j)) out.emplace_back(i, j);
    return out;
}

size_t Relation::pair_count() const {
    size_t n = 0;
    for (Mask row : rows) n += std::popcount(row);
    return n;
}

bool Relation::empty() const {
    for (Mask row : rows)
        if (row) return false;
    return true;
}

Relation Relation::identity(int n) {
    Relation z(n, n);
    for (int i = 0; i < n; i++) z.add(i, i);
    return z;
}

Relation Relation::full(int l, int r) {
    Relation z(l, r);
    for (int i = 0; i < l; i++) z.rows[i] = full_mask(r);
    return z;
}

Relation Relation::from_pairs(int l, int r, const std::vector<std::pair<int, int>>& ps) {
    Relation z(l, r);
    for (auto [i, j] : ps) {
        if (i < 0 || i >= l || j < 0 || j >= r)
            throw DimensionError("relation pair out of range");
        z.add(i, j);
    }
    return z;
}

Mask rel_image(const Relation& z, Mask x) {
    Mask out = 0;
    for (int i = 0; i < z.left; i++)
        if ((x >> i) & 1) out |= z.rows[i];
    return out;
}

Mask rel_preimage(const Relation& z, Mask x) {
    Mask out = 0;
    for (int i = 0; i < z.left; i++)
        if (z.rows[i] & x) out |= Mask(1) << i;
    return out;
}

Relation rel_inverse(const Relation& z) {
    Relation inv(z.right, z.left);
    for (int i = 0; i < z.left; i++)
        for (int j = 0; j < z.right; j++)
            if (z.contains(i, j)) inv.add(j, i);
    return inv;
}

Relation rel_compose(const Relation& r2, const Relation& r1) {
    if (r1.right != r2.left) throw DimensionError("rel_compose: dimension mismatch");
    Relation out(r1.left, r2.right);
    for (int i = 0; i < r1.left; i++) out.rows[i] = rel_image(r2, r1.rows[i]);
    return out;
}

Mask rel_conjugate(const Relation& z, Mask x2) {
    return full_mask(z.left) & ~rel_preimage(z, full_mask(z.right) & ~x2);
}

bool is_function(const Relation& z) {
    for (Mask row : z.rows)
        if (std::popcount(row) != 1) return false;
    return true;
}

bool is_full(const Relation& z) {
    Mask rng = 0;
    for (Mask row : z.rows) {
        if (row == 0) return false;
        rng |= row;
    }
    return rng == full_mask(z.right);
}

KripkeFrame::KripkeFrame(int n, Relation rel) : size(n), r(std::move(rel)) {
    if (r.left != n || r.right != n)
        throw DimensionError("KripkeFrame: relation must be square of frame size");
}

NbdFrame::NbdFrame(int n, std::vector<Mask> table) : size(n), dia(std::move(table)) {
    if (n > kNbdSizeGuard)
        throw GuardExceeded("NbdFrame: size exceeds guard of " + std::to_string(kNbdSizeGuard));
    if (dia.size() != (size_t(1) << n))
        throw DimensionError("NbdFrame: dia table must have 2^size entries");
    for (Mask m : dia)
        if (m & ~full_mask(n)) throw DimensionError("NbdFrame: dia entry out of range");
}

int frame_size(const Frame& f) {
    return std::visit([](const auto& fr) { return fr.size; }, f);
}

bool is_kripke(const Frame& f) { return std::holds_alternative<KripkeFrame>(f); }

Mask frame_dia(const Frame& f, Mask x) {
    if (const auto* k = std::get_if<KripkeFrame>(&f))
        return rel_preimage(k->r, x); // {w | exists v in X with w R v}
    return std::get<NbdFrame>(f).dia[x];
}

Mask frame_box(const Frame& f, Mask x) {
    int n = frame_size(f);
    return full_mask(n) & ~frame_dia(f, full_mask(n) & ~x);
}

NbdFrame kripke_to_nbd(const KripkeFrame& f) {
    if (f.size > kNbdSizeGuard)
        throw GuardExceeded("kripke_to_nbd: size exceeds neighborhood guard");
    std::vector<Mask> table(size_t(1) << f.size);
    for (Mask x = 0; x < table.size(); x++) table[x] = rel_preimage(f.r, x);
    return NbdFrame(f.size, std::move(table));
}

bool is_monotone_frame(const NbdFrame& f) {
    // Single-element additions suffice.
    Mask full = full_mask(f.size);
    for (Mask x = 0; x <= full; x++) {
        for (int w = 0; w < f.size; w++) {
            if ((x >> w) & 1) continue;
            if (f.dia[x] & ~f.dia[x | (Mask(1) << w)]) return false;
        }
        if (x == full) break;
    }
    return true;
}

bool is_monotone_frame(const Frame& f) {
    if (is_kripke(f)) return true;
    return is_monotone_frame(std::get<NbdFrame>(f));
}

Mask eval(const Model& m, const Formula& f) {
    int n = frame_size(m.frame);
    switch (f.kind()) {
        case NodeKind::Bot: return 0;
        case NodeKind::Top: return full_mask(n);
        case NodeKind::Lit: {
            Mask v = m.val.get(f.var());
            return f.positive() ? v : (full_mask(n) & ~v);
        }
        case NodeKind::Dia: return frame_dia(m.frame, eval(m, f.child()));
        case NodeKind::Box: return frame_box(m.frame, eval(m, f.child()));
        case NodeKind::And: return eval(m, f.left()) & eval(m, f.right());
        case NodeKind::Or: return eval(m, f.left()) | eval(m, f.right());
    }
    throw std::logic_error("unreachable");
}

bool holds_at(const Model& m, int world, const Formula& f) {
    if (world < 0 || world >= frame_size(m.frame))
        throw DimensionError("holds_at: world out of range");
    return (eval(m, f) >> world) & 1;
}

ValidityResult frame_validity(const Frame& f, const Formula& formula, int guard_bits) {
    int n = frame_size(f);
    std::set<VarName> support = vars(formula);
    std::vector<VarName> vs(support.begin(), support.end());
    size_t bits = size_t(n) * vs.size();
    if (bits > size_t(guard_bits))
        throw GuardExceeded("frame_validity: 2^" + std::to_string(bits) +
                            " valuations exceed the guard of 2^" + std::to_string(guard_bits));
    Mask full = full_mask(n);
    uint64_t total = uint64_t(1) << bits;
    CompiledFormula compiled(f, formula, vs);
    std::vector<Mask> vals(vs.size(), 0);
    for (uint64_t counter = 0; counter < total; counter++) {
        // Most significant chunk = first variable.
        for (size_t i = 0; i < vs.size(); i++) {
            uint64_t chunk = counter >> (n * (vs.size() - 1 - i));
            vals[i] = Mask(chunk) & full;
        }
        Mask truth = compiled.eval(vals);
        if (truth != full) {
            int w = std::countr_one(truth); // lowest failing world
            Valuation val;
            for (size_t i = 0; i < vs.size(); i++) val.assign[vs[i]] = vals[i];
            return {false, val, w};
        }
    }
    return {};
}

CompiledFormula::CompiledFormula(const Frame& f, const Formula& g,
                                 const std::vector<VarName>& order)
    : frame_(&f), size_(frame_size(f)) {
    std::map<VarName, int> index;
    for (size_t i = 0; i < order.size(); i++) index[order[i]] = int(i);
    int depth = 0, max_depth = 1;
    auto walk = [&](auto&& self, const Formula& node) -> void {
        switch (node.kind()) {
            case NodeKind::And:
            case NodeKind::Or:
                self(self, node.left());
                self(self, node.right());
                depth--; // two pops, one push
                break;
            case NodeKind::Dia:
            case NodeKind::Box:
                self(self, node.child());
                depth--;
                break;
            default:
                break;
        }
        Op op{node.kind()};
        if (node.kind() == NodeKind::Lit) {
            auto it = index.find(node.var());
            op.var = it == index.end() ? -1 : it->second;
            op.pos = node.positive();
        }
        ops_.push_back(op);
        depth++;
        max_depth = std::max(max_depth, depth);
    };
    walk(walk, g);
    stack_.resize(max_depth);
}

Mask CompiledFormula::eval(const std::vector<Mask>& vals) const {
    Mask full = full_mask(size_);
    size_t sp = 0;
    for (const Op& op : ops_) {
        switch (op.kind) {
            case NodeKind::Bot: stack_[sp++] = 0; break;
            case NodeKind::Top: stack_[sp++] = full; break;
            case NodeKind::Lit: {
                Mask v = op.var < 0 ? 0 : vals[op.var];
                stack_[sp++] = op.pos ? v : (full & ~v);
                break;
            }
            case NodeKind::Dia:
                stack_[sp - 1] = frame_dia(*frame_, stack_[sp - 1]);
                break;
            case NodeKind::Box:
                stack_[sp - 1] = full & ~frame_dia(*frame_, full & ~stack_[sp - 1]);
                break;
            case NodeKind::And:
                sp--;
                stack_[sp - 1] &= stack_[sp];
                break;
            case NodeKind::Or:
                sp--;
                stack_[sp - 1] |= stack_[sp];
                break;
        }
    }
    return stack_[0];
}

NbdFrame dual_frame(const Frame& f) {
    if (is_kripke(f))
        throw std::invalid_argument("dual_frame: Kripke input (coerce with kripke_to_nbd first)");
    const auto& nf = std::get<NbdFrame>(f);
    Mask full = full_mask(nf.size);
    std::vector<Mask> table(nf.dia.size());
    for (Mask x = 0; x < table.size(); x++) table[x] = full & ~nf.dia[full & ~x];
    return NbdFrame(nf.size, std::move(table));
}

Model dual_model(const Model& m) {
    return Model{dual_frame(m.frame), m.val};
}

Relation rt_closure(const Relation& r) {
    if (r.left != r.right) throw DimensionError("rt_closure: relation must be square");
    Relation out = r;
    for (int i = 0; i < out.left; i++) out.add(i, i);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < out.left; i++) {
            Mask reach = out.rows[i] | rel_image(out, out.rows[i]);
            if (reach != out.rows[i]) {
                out.rows[i] = reach;
                changed = true;
            }
        }
    }
    return out;
}

Mask cone(const KripkeFrame& f, int w) {
    if (w < 0 || w >= f.size) throw DimensionError("cone: world out of range");
    return rt_closure(f.r).rows[w];
}

bool is_cone(const KripkeFrame& f, Mask v) {
    for (int w = 0; w < f.size; w++)
        if (((v >> w) & 1) && cone(f, w) == v) return true;
    return false;
}

Mask compress_mask(Mask x, Mask v) {
    Mask out = 0;
    int idx = 0;
    for (int w = 0; w < 32; w++) {
        if (!((v >> w) & 1)) continue;
        if ((x >> w) & 1) out |= Mask(1) << idx;
        idx++;
    }
    return out;
}

Mask expand_mask(Mask x, Mask v) {
    Mask out = 0;
    int idx = 0;
    for (int w = 0; w < 32; w++) {
        if (!((v >> w) & 1)) continue;
        if ((x >> idx) & 1) out |= Mask(1) << w;
        idx++;
    }
    return out;
}

KripkeFrame restrict(const KripkeFrame& f, Mask v) {
    int m = std::popcount(v);
    Relation r(m, m);
    int i2 = 0;
    for (int i = 0; i < f.size; i++) {
        if (!((v >> i) & 1)) continue;
        r.rows[i2++] = compress_mask(f.r.rows[i] & v, v);
    }
    return KripkeFrame(m, std::move(r));
}

Model restrict(const Model& m, Mask v) {
    Model out;
    if (is_kripke(m.frame)) {
        out.frame = restrict(std::get<KripkeFrame>(m.frame), v);
    } else {
        const auto& nf = std::get<NbdFrame>(m.frame);
        int sz = std::popcount(v);
        std::vector<Mask> table(size_t(1) << sz);
        for (Mask x = 0; x < table.size(); x++)
            table[x] = compress_mask(nf.dia[expand_mask(x, v)] & v, v);
        out.frame = NbdFrame(sz, std::move(table));
    }
    for (const auto& [name, mask] : m.val.assign)
        out.val.assign[name] = compress_mask(mask & v, v);
    return out;
}

} // namespace modlab
