#include <doctest.h>

#include <set>

#include "modlab/formula.hpp"

using namespace modlab;

TEST_CASE("parse handles precedence and associativity") {
    CHECK(print(parse("[]p | ~p & <>p")) == "([]p | (~p & <>p))");
    CHECK(print(parse("p -> q -> r")) == "(~p | (~q | r))");
    CHECK(print(parse("~<>p")) == "[]~p");
    CHECK(print(parse("~(p & q)")) == "(~p | ~q)");
    CHECK(print(parse("~[]~p")) == "<>p");
    CHECK(print(parse("true & false")) == "(true & false)");
    CHECK(parse("p'") == Formula::lit("p'"));
}

TEST_CASE("parse reports the offending position") {
    CHECK_THROWS_AS(parse("p &"), ParseError);
    CHECK_THROWS_AS(parse("(p"), ParseError);
    CHECK_THROWS_AS(parse("p q"), ParseError);
    try {
        parse("p & & q");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("parse-print round trip on all enumerated formulas to size 6") {
    LiteralSet allowed{{"p", "q"}, {"p"}};
    auto all = enumerate_formulas(allowed, 6);
    for (const auto& f : all) {
        CAPTURE(print(f));
        CHECK(parse(print(f)) == f);
    }
    CHECK(all.size() > 1000); // the sweep is not vacuous
}

TEST_CASE("negate and dualize are involutions and commute") {
    LiteralSet allowed{{"p", "q"}, {"q"}};
    for (const auto& f : enumerate_formulas(allowed, 5)) {
        CAPTURE(print(f));
        CHECK(negate(negate(f)) == f);
        CHECK(dualize(dualize(f)) == f);
        CHECK(dualize(negate(f)) == negate(dualize(f)));
    }
}

TEST_CASE("positivity predicate agrees with the literal sets") {
    for (const auto& f : enumerate_formulas({{"p"}, {"p"}}, 5)) {
        CAPTURE(print(f));
        CHECK(is_positive(f, vars(f)) == lits(f).neg.empty());
    }
    CHECK(is_positive(parse("p | <>p"), {"p"}));
    CHECK(!is_positive(parse("~p"), {"p"}));
    CHECK(is_positive(parse("~q & p"), {"p"})); // only p is constrained
}

TEST_CASE("substitute maps negative literals to negations") {
    Formula f = parse("~p & <>p");
    Formula g = substitute(f, {{"p", parse("q | r")}});
    CHECK(print(g) == "((~q & ~r) & <>(q | r))");
    CHECK(substitute(f, {{"z", parse("q")}}) == f); // unmapped vars untouched
}

TEST_CASE("nnf_split produces a positive template that substitutes back") {
    SUBCASE("single negative literal") {
        auto sp = nnf_split(parse("~p"));
        CHECK(sp.tmpl == Formula::lit(sp.slots[0]));
        CHECK(sp.negvars == std::vector<VarName>{"p"});
        CHECK(sp.images[0] == parse("~p"));
    }
    SUBCASE("round trip on an enumerated corpus") {
        for (const auto& f : enumerate_formulas({{"p", "q"}, {"p", "q"}}, 5)) {
            CAPTURE(print(f));
            auto sp = nnf_split(f);
            std::set<VarName> slotset(sp.slots.begin(), sp.slots.end());
            CHECK(is_positive(sp.tmpl, slotset));
            std::map<VarName, Formula> back;
            for (size_t i = 0; i < sp.slots.size(); i++) back[sp.slots[i]] = sp.images[i];
            CHECK(substitute(sp.tmpl, back) == f);
        }
    }
}

TEST_CASE("graded modalities") {
    CHECK(graded(GradedKind::Dia, 0, parse("p")) == parse("p"));
    CHECK(print(graded(GradedKind::Box, 2, parse("p"))) == "((p & []p) & [][]p)");
    CHECK(print(graded(GradedKind::Dia, 1, Formula::bot())) == "(false | <>false)");
    for (int n = 1; n <= 3; n++)
        CHECK(modal_depth(graded(GradedKind::Dia, n, parse("<>p"))) == 1 + n);
}

TEST_CASE("lyndon_premise golden shapes") {
    CHECK(print(lyndon_premise(parse("p"), {"p"})) == "((~p_q | p) & p_q)");
    CHECK(print(lyndon_premise(parse("<>p"), {"p"})) ==
          "(((~p_q | p) & [](~p_q | p)) & <>p_q)");
    CHECK_THROWS(lyndon_premise(parse("p & p_q"), {"p"})); // name clash
}

TEST_CASE("param_elim_lift golden shapes") {
    Formula f = parse("p & <>p");
    CHECK(param_elim_lift(f, {"p"}, {}) == f); // m = 0 keeps the formula
    CHECK(print(param_elim_lift(parse("~r"), {}, {"r"})) ==
          "((r' & (r | r')) | (r & r'))");
    Formula psi = param_elim_lift(parse("~r | <>r"), {}, {"r"});
    CHECK(is_positive(psi, {"r", "r'"}));
}

TEST_CASE("craig_lift shares exactly the requested variables") {
    auto [a, b] = craig_lift(parse("p & q1"), parse("p | q2"), {"p"});
    CHECK(print(a) == "((p & q1) & (p | true))");
    CHECK(print(b) == "((p | q2_r) & (p | true))");
    std::set<VarName> shared;
    for (const auto& v : vars(a))
        if (vars(b).count(v)) shared.insert(v);
    CHECK(shared == std::set<VarName>{"p"});

    auto [c, d] = craig_lift(parse("q1"), parse("q2"), {});
    std::set<VarName> shared2;
    for (const auto& v : vars(c))
        if (vars(d).count(v)) shared2.insert(v);
    CHECK(shared2.empty());
}

TEST_CASE("enumeration is deterministic with the pinned prefix") {
    auto small = enumerate_formulas({{"p"}, {}}, 2);
    std::vector<std::string> got;
    for (const auto& f : small) got.push_back(print(f));
    CHECK(got == std::vector<std::string>{"false", "true", "p", "<>false", "<>true",
                                          "<>p", "[]false", "[]true", "[]p"});
    auto one = enumerate_formulas({{"p"}, {}}, 1);
    CHECK(one.size() == 3);
}

TEST_CASE("axioms table") {
    CHECK(print(axiom("AM")) == "([]~p | <>(p | q))");
    CHECK(axiom("AN") == parse("[]true"));
    CHECK(axiom("AP") == parse("<>true"));
    CHECK(axiom("AT") == parse("p -> <>p"));
    CHECK(axiom("A4") == parse("<><>p -> <>p"));
    CHECK(axioms().size() == 9);
    CHECK_THROWS(axiom("nope"));
    // A.3 keeps the four-disjunct shape.
    const Formula& a3 = axiom("A.3");
    CHECK(a3.kind() == NodeKind::Or);
}

TEST_CASE("formula ordering and size") {
    CHECK(Formula::bot() < Formula::top());
    CHECK(Formula::top() < Formula::lit("p"));
    CHECK(parse("<>p") < parse("[]p"));
    CHECK(parse("p & q").size() == 3);
    CHECK(modal_depth(parse("<>[]p | q")) == 2);
}
