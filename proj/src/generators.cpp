#include "modlab/generators.hpp"

#include <bit>

namespace modlab {

namespace {

Mask random_mask(Rng& rng, int n) {
    return n == 0 ? 0 : Mask(rng()) & full_mask(n);
}

int random_below(Rng& rng, int n) {
    return int(rng() % uint32_t(n));
}

} // namespace

Relation random_relation(Rng& rng, int left, int right) {
    Relation z(left, right);
    for (int i = 0; i < left; i++) z.rows[i] = random_mask(rng, right);
    return z;
}

Relation random_full_relation(Rng& rng, int left, int right) {
    Relation z = random_relation(rng, left, right);
    for (int i = 0; i < left; i++)
        if (!z.rows[i]) z.add(i, random_below(rng, right));
    Mask rng_mask = 0;
    for (Mask row : z.rows) rng_mask |= row;
    for (int j = 0; j < right; j++)
        if (!((rng_mask >> j) & 1)) z.add(random_below(rng, left), j);
    return z;
}

KripkeFrame random_kripke(Rng& rng, int size) {
    return KripkeFrame(size, random_relation(rng, size, size));
}

NbdFrame random_monotone_nbd(Rng& rng, int size) {
    std::vector<Mask> table(size_t(1) << size);
    for (Mask x = 0; x < table.size(); x++) {
        table[x] = random_mask(rng, size);
        // Close under single-element removals (visited earlier in the loop).
        for (int w = 0; w < size; w++)
            if ((x >> w) & 1) table[x] |= table[x & ~(Mask(1) << w)];
    }
    return NbdFrame(size, std::move(table));
}

Valuation random_valuation(Rng& rng, int size, const std::vector<VarName>& vars) {
    Valuation v;
    for (const auto& name : vars) v.assign[name] = random_mask(rng, size);
    return v;
}

Formula random_formula(Rng& rng, const LiteralSet& allowed, int depth) {
    std::vector<Formula> atoms{Formula::bot(), Formula::top()};
    for (const auto& p : allowed.pos) atoms.push_back(Formula::lit(p, true));
    for (const auto& p : allowed.neg) atoms.push_back(Formula::lit(p, false));
    if (depth == 0 || rng() % 4 == 0) {
        // Atoms or a boolean combination of atoms.
        Formula a = atoms[random_below(rng, int(atoms.size()))];
        if (rng() % 2) return a;
        Formula b = atoms[random_below(rng, int(atoms.size()))];
        return rng() % 2 ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    switch (rng() % 4) {
        case 0: return Formula::dia(random_formula(rng, allowed, depth - 1));
        case 1: return Formula::box(random_formula(rng, allowed, depth - 1));
        case 2:
            return Formula::conj(random_formula(rng, allowed, depth - 1),
                                 random_formula(rng, allowed, depth - 1));
        default:
            return Formula::disj(random_formula(rng, allowed, depth - 1),
                                 random_formula(rng, allowed, depth - 1));
    }
}

Formula random_positive_formula(Rng& rng, const VarName& p, int depth) {
    LiteralSet allowed{{p}, {}};
    return random_formula(rng, allowed, depth);
}

} // namespace modlab
