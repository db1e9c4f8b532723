#include "modlab/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace modlab {

// ---------------------------------------------------------------------------
// Construction

Formula Formula::bot() {
    static Formula f{std::make_shared<const Node>(Node{NodeKind::Bot, {}, true, {}, {}})};
    return f;
}

Formula Formula::top() {
    static Formula f{std::make_shared<const Node>(Node{NodeKind::Top, {}, true, {}, {}})};
    return f;
}

Formula Formula::lit(VarName var, bool positive) {
    return Formula{std::make_shared<const Node>(
        Node{NodeKind::Lit, std::move(var), positive, {}, {}})};
}

Formula Formula::dia(Formula child) {
    return Formula{std::make_shared<const Node>(
        Node{NodeKind::Dia, {}, true, std::move(child), {}})};
}

Formula Formula::box(Formula child) {
    return Formula{std::make_shared<const Node>(
        Node{NodeKind::Box, {}, true, std::move(child), {}})};
}

Formula Formula::conj(Formula left, Formula right) {
    return Formula{std::make_shared<const Node>(
        Node{NodeKind::And, {}, true, std::move(left), std::move(right)})};
}

Formula Formula::disj(Formula left, Formula right) {
    return Formula{std::make_shared<const Node>(
        Node{NodeKind::Or, {}, true, std::move(left), std::move(right)})};
}

int Formula::size() const {
    switch (kind()) {
        case NodeKind::Bot:
        case NodeKind::Top:
        case NodeKind::Lit: return 1;
        case NodeKind::Dia:
        case NodeKind::Box: return 1 + child().size();
        case NodeKind::And:
        case NodeKind::Or: return 1 + left().size() + right().size();
    }
    return 0;
}

bool Formula::operator==(const Formula& other) const {
    return compare(*this, other) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
    if (ka != kb) return ka < kb ? -1 : 1;
    switch (a.kind()) {
        case NodeKind::Bot:
        case NodeKind::Top: return 0;
        case NodeKind::Lit: {
            int c = a.var().compare(b.var());
            if (c != 0) return c < 0 ? -1 : 1;
            if (a.positive() == b.positive()) return 0;
            return a.positive() ? -1 : 1; // positive literal sorts first
        }
        case NodeKind::Dia:
        case NodeKind::Box: return compare(a.child(), b.child());
        case NodeKind::And:
        case NodeKind::Or: {
            int c = compare(a.left(), b.left());
            if (c != 0) return c;
            return compare(a.right(), b.right());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// LiteralSet

LiteralSet LiteralSet::both() const {
    std::set<VarName> all = pos;
    all.insert(neg.begin(), neg.end());
    return {all, all};
}

bool LiteralSet::contains(const VarName& v, bool positive) const {
    return positive ? pos.count(v) > 0 : neg.count(v) > 0;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(size_t pos, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + message),
      position(pos) {}

namespace {

enum class Tok { End, True, False, Ident, Not, Dia, Box, And, Or, Imp, LParen, RParen };

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    Tok tok = Tok::End;
    std::string ident;
    size_t tok_pos = 0;

    explicit Lexer(const std::string& t) : text(t) { advance(); }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
        tok_pos = pos;
        if (pos >= text.size()) { tok = Tok::End; return; }
        char c = text[pos];
        switch (c) {
            case '~': tok = Tok::Not; pos++; return;
            case '&': tok = Tok::And; pos++; return;
            case '|': tok = Tok::Or; pos++; return;
            case '(': tok = Tok::LParen; pos++; return;
            case ')': tok = Tok::RParen; pos++; return;
            case '<':
                if (pos + 1 < text.size() && text[pos + 1] == '>') { tok = Tok::Dia; pos += 2; return; }
                throw ParseError(pos, "expected '<>'");
            case '[':
                if (pos + 1 < text.size() && text[pos + 1] == ']') { tok = Tok::Box; pos += 2; return; }
                throw ParseError(pos, "expected '[]'");
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') { tok = Tok::Imp; pos += 2; return; }
                throw ParseError(pos, "expected '->'");
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size()) {
                char d = text[pos];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') pos++;
                else break;
            }
            ident = text.substr(start, pos - start);
            if (ident == "true") tok = Tok::True;
            else if (ident == "false") tok = Tok::False;
            else tok = Tok::Ident;
            return;
        }
        throw ParseError(pos, std::string("unknown token '") + c + "'");
    }
};

// Surface tree; Not/Imp are eliminated during NNF normalization.
struct Surface {
    enum Kind { Bot, Top, Var, Not, Dia, Box, And, Or, Imp } kind;
    VarName var;
    std::shared_ptr<Surface> a, b;
};
using SurfacePtr = std::shared_ptr<Surface>;

SurfacePtr mk(Surface::Kind k, SurfacePtr a = nullptr, SurfacePtr b = nullptr) {
    auto s = std::make_shared<Surface>();
    s->kind = k; s->a = std::move(a); s->b = std::move(b);
    return s;
}

struct Parser {
    Lexer lex;
    explicit Parser(const std::string& t) : lex(t) {}

    SurfacePtr parse_imp() { // right-associative
        SurfacePtr l = parse_or();
        if (lex.tok == Tok::Imp) {
            lex.advance();
            return mk(Surface::Imp, l, parse_imp());
        }
        return l;
    }

    SurfacePtr parse_or() {
        SurfacePtr l = parse_and();
        while (lex.tok == Tok::Or) {
            lex.advance();
            l = mk(Surface::Or, l, parse_and());
        }
        return l;
    }

    SurfacePtr parse_and() {
        SurfacePtr l = parse_unary();
        while (lex.tok == Tok::And) {
            lex.advance();
            l = mk(Surface::And, l, parse_unary());
        }
        return l;
    }

    SurfacePtr parse_unary() {
        switch (lex.tok) {
            case Tok::Not: lex.advance(); return mk(Surface::Not, parse_unary());
            case Tok::Dia: lex.advance(); return mk(Surface::Dia, parse_unary());
            case Tok::Box: lex.advance(); return mk(Surface::Box, parse_unary());
            default: return parse_atom();
        }
    }

    SurfacePtr parse_atom() {
        switch (lex.tok) {
            case Tok::True: lex.advance(); return mk(Surface::Top);
            case Tok::False: lex.advance(); return mk(Surface::Bot);
            case Tok::Ident: {
                auto s = mk(Surface::Var);
                s->var = lex.ident;
                lex.advance();
                return s;
            }
            case Tok::LParen: {
                lex.advance();
                SurfacePtr inner = parse_imp();
                if (lex.tok != Tok::RParen) throw ParseError(lex.tok_pos, "expected ')'");
                lex.advance();
                return inner;
            }
            case Tok::End: throw ParseError(lex.tok_pos, "unexpected end of input");
            default: throw ParseError(lex.tok_pos, "expected a formula");
        }
    }
};

Formula to_nnf(const SurfacePtr& s, bool negated) {
    switch (s->kind) {
        case Surface::Bot: return negated ? Formula::top() : Formula::bot();
        case Surface::Top: return negated ? Formula::bot() : Formula::top();
        case Surface::Var: return Formula::lit(s->var, !negated);
        case Surface::Not: return to_nnf(s->a, !negated);
        case Surface::Dia:
            return negated ? Formula::box(to_nnf(s->a, true))
                           : Formula::dia(to_nnf(s->a, false));
        case Surface::Box:
            return negated ? Formula::dia(to_nnf(s->a, true))
                           : Formula::box(to_nnf(s->a, false));
        case Surface::And:
            return negated ? Formula::disj(to_nnf(s->a, true), to_nnf(s->b, true))
                           : Formula::conj(to_nnf(s->a, false), to_nnf(s->b, false));
        case Surface::Or:
            return negated ? Formula::conj(to_nnf(s->a, true), to_nnf(s->b, true))
                           : Formula::disj(to_nnf(s->a, false), to_nnf(s->b, false));
        case Surface::Imp: // a -> b is ~a | b
            return negated ? Formula::conj(to_nnf(s->a, false), to_nnf(s->b, true))
                           : Formula::disj(to_nnf(s->a, true), to_nnf(s->b, false));
    }
    throw std::logic_error("unreachable");
}

} // namespace

Formula parse(const std::string& text) {
    Parser p(text);
    SurfacePtr s = p.parse_imp();
    if (p.lex.tok != Tok::End) throw ParseError(p.lex.tok_pos, "trailing input");
    return to_nnf(s, false);
}

std::string print(const Formula& f) {
    switch (f.kind()) {
        case NodeKind::Bot: return "false";
        case NodeKind::Top: return "true";
        case NodeKind::Lit: return f.positive() ? f.var() : "~" + f.var();
        case NodeKind::Dia: return "<>" + print(f.child());
        case NodeKind::Box: return "[]" + print(f.child());
        case NodeKind::And: return "(" + print(f.left()) + " & " + print(f.right()) + ")";
        case NodeKind::Or: return "(" + print(f.left()) + " | " + print(f.right()) + ")";
    }
    return "?";
}

Formula negate(const Formula& f) {
    switch (f.kind()) {
        case NodeKind::Bot: return Formula::top();
        case NodeKind::Top: return Formula::bot();
        case NodeKind::Lit: return Formula::lit(f.var(), !f.positive());
        case NodeKind::Dia: return Formula::box(negate(f.child()));
        case NodeKind::Box: return Formula::dia(negate(f.child()));
        case NodeKind::And: return Formula::disj(negate(f.left()), negate(f.right()));
        case NodeKind::Or: return Formula::conj(negate(f.left()), negate(f.right()));
    }
    throw std::logic_error("unreachable");
}

Formula dualize(const Formula& f) {
    switch (f.kind()) {
        case NodeKind::Bot:
        case NodeKind::Top:
        case NodeKind::Lit: return f;
        case NodeKind::Dia: return Formula::box(dualize(f.child()));
        case NodeKind::Box: return Formula::dia(dualize(f.child()));
        case NodeKind::And: return Formula::conj(dualize(f.left()), dualize(f.right()));
        case NodeKind::Or: return Formula::disj(dualize(f.left()), dualize(f.right()));
    }
    throw std::logic_error("unreachable");
}

Formula substitute(const Formula& f, const std::map<VarName, Formula>& map) {
    switch (f.kind()) {
        case NodeKind::Bot:
        case NodeKind::Top: return f;
        case NodeKind::Lit: {
            auto it = map.find(f.var());
            if (it == map.end()) return f;
            return f.positive() ? it->second : negate(it->second);
        }
        case NodeKind::Dia: return Formula::dia(substitute(f.child(), map));
        case NodeKind::Box: return Formula::box(substitute(f.child(), map));
        case NodeKind::And:
            return Formula::conj(substitute(f.left(), map), substitute(f.right(), map));
        case NodeKind::Or:
            return Formula::disj(substitute(f.left(), map), substitute(f.right(), map));
    }
    throw std::logic_error("unreachable");
}

namespace {
void collect_lits(const Formula& f, LiteralSet& out) {
    switch (f.kind()) {
        case NodeKind::Bot:
        case NodeKind::Top: return;
        case NodeKind::Lit:
            (f.positive() ? out.pos : out.neg).insert(f.var());
            return;
        case NodeKind::Dia:
        case NodeKind::Box: collect_lits(f.child(), out); return;
        case NodeKind::And:
        case NodeKind::Or:
            collect_lits(f.left(), out);
            collect_lits(f.right(), out);
            return;
    }
}
} // namespace

LiteralSet lits(const Formula& f) {
    LiteralSet out;
    collect_lits(f, out);
    return out;
}

std::set<VarName> vars(const Formula& f) {
    LiteralSet l = lits(f);
    std::set<VarName> out = l.pos;
    out.insert(l.neg.begin(), l.neg.end());
    return out;
}

int modal_depth(const Formula& f) {
    switch (f.kind()) {
        case NodeKind::Bot:
        case NodeKind::Top:
        case NodeKind::Lit: return 0;
        case NodeKind::Dia:
        case NodeKind::Box: return 1 + modal_depth(f.child());
        case NodeKind::And:
        case NodeKind::Or:
            return std::max(modal_depth(f.left()), modal_depth(f.right()));
    }
    return 0;
}

bool is_positive(const Formula& f, const std::set<VarName>& pvars) {
    LiteralSet l = lits(f);
    for (const auto& v : l.neg)
        if (pvars.count(v)) return false;
    return true;
}

NnfSplit nnf_split(const Formula& f) {
    LiteralSet l = lits(f);
    std::set<VarName> all = vars(f);
    NnfSplit out;
    std::map<VarName, VarName> pos_slot, neg_slot;
    int idx = 0;
    auto fresh = [&](int i) {
        VarName name = "r" + std::to_string(i);
        while (all.count(name)) name += "_";
        return name;
    };
    for (const auto& v : l.pos) {
        VarName s = fresh(idx++);
        pos_slot[v] = s;
        out.slots.push_back(s);
        out.images.push_back(Formula::lit(v, true));
    }
    for (const auto& v : l.neg) {
        VarName s = fresh(idx++);
        neg_slot[v] = s;
        out.slots.push_back(s);
        out.images.push_back(Formula::lit(v, false));
        out.negvars.push_back(v);
    }
    // Rebuild with each literal replaced by its positive slot.
    struct Rebuild {
        const std::map<VarName, VarName>& ps;
        const std::map<VarName, VarName>& ns;
        Formula run(const Formula& g) {
            switch (g.kind()) {
                case NodeKind::Bot:
                case NodeKind::Top: return g;
                case NodeKind::Lit:
                    return Formula::lit(g.positive() ? ps.at(g.var()) : ns.at(g.var()), true);
                case NodeKind::Dia: return Formula::dia(run(g.child()));
                case NodeKind::Box: return Formula::box(run(g.child()));
                case NodeKind::And: return Formula::conj(run(g.left()), run(g.right()));
                case NodeKind::Or: return Formula::disj(run(g.left()), run(g.right()));
            }
            throw std::logic_error("unreachable");
        }
    };
    out.tmpl = Rebuild{pos_slot, neg_slot}.run(f);
    return out;
}

Formula graded(GradedKind kind, int n, const Formula& f) {
    if (n < 0) throw std::invalid_argument("graded: n must be >= 0");
    Formula acc = f;
    Formula iter = f;
    for (int k = 1; k <= n; k++) {
        if (kind == GradedKind::Dia) {
            iter = Formula::dia(iter);
            acc = Formula::disj(acc, iter);
        } else {
            iter = Formula::box(iter);
            acc = Formula::conj(acc, iter);
        }
    }
    return acc;
}

Formula lyndon_premise(const Formula& f, const std::vector<VarName>& pvars) {
    std::set<VarName> occupied = vars(f);
    int d = modal_depth(f);
    std::map<VarName, Formula> q_subst;
    Formula guards;
    bool have_guard = false;
    for (const auto& p : pvars) {
        VarName q = p + "_q";
        if (occupied.count(q))
            throw std::invalid_argument("lyndon_premise: name clash on " + q);
        q_subst[p] = Formula::lit(q, true);
        Formula g = graded(GradedKind::Box, d,
                           Formula::disj(Formula::lit(q, false), Formula::lit(p, true)));
        guards = have_guard ? Formula::conj(guards, g) : g;
        have_guard = true;
    }
    Formula body = substitute(f, q_subst);
    return have_guard ? Formula::conj(guards, body) : body;
}

Formula param_elim_lift(const Formula& f, const std::vector<VarName>& pvars,
                        const std::vector<VarName>& rvars) {
    (void)pvars; // part of the signature; the construction only touches rvars
    std::set<VarName> occupied = vars(f);
    int d = modal_depth(f);
    std::map<VarName, VarName> primed;
    for (const auto& r : rvars) {
        VarName rp = r + "'";
        if (occupied.count(rp))
            throw std::invalid_argument("param_elim_lift: name clash on " + rp);
        primed[r] = rp;
    }
    // f' : replace negative r-literals by positive primed literals.
    struct Lift {
        const std::map<VarName, VarName>& primed;
        Formula run(const Formula& g) {
            switch (g.kind()) {
                case NodeKind::Bot:
                case NodeKind::Top: return g;
                case NodeKind::Lit: {
                    auto it = primed.find(g.var());
                    if (it != primed.end() && !g.positive())
                        return Formula::lit(it->second, true);
                    return g;
                }
                case NodeKind::Dia: return Formula::dia(run(g.child()));
                case NodeKind::Box: return Formula::box(run(g.child()));
                case NodeKind::And: return Formula::conj(run(g.left()), run(g.right()));
                case NodeKind::Or: return Formula::disj(run(g.left()), run(g.right()));
            }
            throw std::logic_error("unreachable");
        }
    };
    Formula lifted = Lift{primed}.run(f);
    Formula conj_part = lifted;
    for (const auto& r : rvars) {
        Formula g = graded(GradedKind::Box, d,
                           Formula::disj(Formula::lit(r, true),
                                         Formula::lit(primed.at(r), true)));
        conj_part = Formula::conj(conj_part, g);
    }
    Formula out = conj_part;
    for (const auto& r : rvars) {
        Formula g = graded(GradedKind::Dia, d,
                           Formula::conj(Formula::lit(r, true),
                                         Formula::lit(primed.at(r), true)));
        out = Formula::disj(out, g);
    }
    return out;
}

std::pair<Formula, Formula> craig_lift(const Formula& phi, const Formula& psi,
                                       const std::vector<VarName>& pvars) {
    Formula eta;
    bool have = false;
    for (const auto& p : pvars) {
        Formula l = Formula::lit(p, true);
        eta = have ? Formula::disj(eta, l) : l;
        have = true;
    }
    eta = have ? Formula::disj(eta, Formula::top()) : Formula::top();

    std::set<VarName> shared(pvars.begin(), pvars.end());
    std::set<VarName> all = vars(phi);
    for (const auto& v : vars(psi)) all.insert(v);
    std::map<VarName, Formula> rename;
    for (const auto& v : vars(psi)) {
        if (shared.count(v)) continue;
        VarName r = v + "_r";
        while (all.count(r)) r += "_";
        all.insert(r);
        rename[v] = Formula::lit(r, true);
    }
    return {Formula::conj(phi, eta), Formula::conj(substitute(psi, rename), eta)};
}

std::vector<Formula> formulas_of_size(const LiteralSet& allowed, int size) {
    if (size < 1) return {};
    // Cache per (allowed, size) would complicate the API; callers that need
    // many sizes use enumerate_formulas which builds each layer once.
    std::vector<std::vector<Formula>> layers(size + 1);
    layers[1].push_back(Formula::bot());
    layers[1].push_back(Formula::top());
    for (const auto& v : allowed.pos) layers[1].push_back(Formula::lit(v, true));
    for (const auto& v : allowed.neg) layers[1].push_back(Formula::lit(v, false));
    for (int s = 2; s <= size; s++) {
        auto& out = layers[s];
        for (const auto& f : layers[s - 1]) out.push_back(Formula::dia(f));
        for (const auto& f : layers[s - 1]) out.push_back(Formula::box(f));
        for (int i = 1; i <= s - 2; i++)
            for (const auto& l : layers[i])
                for (const auto& r : layers[s - 1 - i])
                    out.push_back(Formula::conj(l, r));
        for (int i = 1; i <= s - 2; i++)
            for (const auto& l : layers[i])
                for (const auto& r : layers[s - 1 - i])
                    out.push_back(Formula::disj(l, r));
    }
    return layers[size];
}

std::vector<Formula> enumerate_formulas(const LiteralSet& allowed, int max_size) {
    if (max_size < 1) throw std::invalid_argument("enumerate_formulas: max_size must be >= 1");
    std::vector<std::vector<Formula>> layers(max_size + 1);
    layers[1].push_back(Formula::bot());
    layers[1].push_back(Formula::top());
    for (const auto& v : allowed.pos) layers[1].push_back(Formula::lit(v, true));
    for (const auto& v : allowed.neg) layers[1].push_back(Formula::lit(v, false));
    for (int s = 2; s <= max_size; s++) {
        auto& out = layers[s];
        for (const auto& f : layers[s - 1]) out.push_back(Formula::dia(f));
        for (const auto& f : layers[s - 1]) out.push_back(Formula::box(f));
        for (int i = 1; i <= s - 2; i++)
            for (const auto& l : layers[i])
                for (const auto& r : layers[s - 1 - i])
                    out.push_back(Formula::conj(l, r));
        for (int i = 1; i <= s - 2; i++)
            for (const auto& l : layers[i])
                for (const auto& r : layers[s - 1 - i])
                    out.push_back(Formula::disj(l, r));
    }
    std::vector<Formula> flat;
    for (int s = 1; s <= max_size; s++)
        flat.insert(flat.end(), layers[s].begin(), layers[s].end());
    return flat;
}

const std::vector<std::pair<std::string, Formula>>& axioms() {
    static const std::vector<std::pair<std::string, Formula>> table = {
        {"AM", parse("<>p -> <>(p | q)")},
        {"AC", parse("<>(p | q) -> <>p | <>q")},
        {"AN", parse("[]true")},
        {"AP", parse("<>true")},
        {"AD", parse("[]p -> <>p")},
        {"AT", parse("p -> <>p")},
        {"A4", parse("<><>p -> <>p")},
        {"AB", parse("<>p -> []<>p")},
        {"A.3", parse("<>p & <>q -> <>(p & <>q) | <>(q & <>p) | <>(p & q)")},
    };
    return table;
}

Formula axiom(const std::string& name) {
    for (const auto& [n, f] : axioms())
        if (n == name) return f;
    throw std::invalid_argument("unknown axiom: " + name);
}

} // namespace modlab
