#include <doctest.h>

#include "modlab/generators.hpp"
#include "modlab/positivity.hpp"
#include "modlab/repro.hpp"

using namespace modlab;

namespace {

const Formula& phi_c2() {
    static Formula f = parse("[]p | (~p & <>p)");
    return f;
}

} // namespace

TEST_CASE("check_monotone verdicts") {
    SUBCASE("the five-world witness formula is p-monotone") {
        CHECK(check_monotone(Frame{repro::f0()}, repro::phi_lin(), {"p"}).monotone);
    }
    SUBCASE("the cluster formula is p-monotone on C2") {
        CHECK(check_monotone(Frame{repro::cluster(2)}, phi_c2(), {"p"}).monotone);
    }
    SUBCASE("negation is not monotone, with a re-checkable counterexample") {
        auto v = check_monotone(Frame{repro::cluster(2)}, parse("~p"), {"p"});
        REQUIRE(!v.monotone);
        REQUIRE(v.counterexample);
        const auto& ce = *v.counterexample;
        CHECK((ce.val1.get("p") & ~ce.val2.get("p")) == 0); // val1 <= val2
        Model m1{Frame{repro::cluster(2)}, ce.val1}, m2{Frame{repro::cluster(2)}, ce.val2};
        CHECK(holds_at(m1, ce.world, parse("~p")));
        CHECK(!holds_at(m2, ce.world, parse("~p")));
    }
    SUBCASE("guard") {
        CHECK_THROWS_AS(
            check_monotone(Frame{repro::f0()}, parse("p1&p2&p3&p4&p5"), {"p1"}, 20),
            GuardExceeded);
    }
}

TEST_CASE("exhaustive positivity decision on C2") {
    Frame c2{repro::cluster(2)};
    SUBCASE("witness found for the cluster formula, 256 pairs max") {
        auto res = positivity_witness_search(c2, phi_c2(), {"p"},
                                             SearchMode::exhaustive_mode());
        REQUIRE(res.outcome == SearchOutcome::Found);
        CHECK(res.pairs_checked <= 256);
        const auto& w = *res.witness;
        CHECK(!check_tau_bisim(w.m1, w.m2, w.z, directed_tau({"p"}, {"p"})));
        CHECK(w.z.contains(w.pair.first, w.pair.second));
        CHECK(holds_at(w.m1, w.pair.first, phi_c2()));
        CHECK(!holds_at(w.m2, w.pair.second, phi_c2()));
    }
    SUBCASE("already-positive formulas get NoneFound") {
        auto res = positivity_witness_search(c2, parse("<>p"), {"p"},
                                             SearchMode::exhaustive_mode());
        CHECK(res.outcome == SearchOutcome::NoneFound);
        CHECK(res.pairs_checked == 16); // 2^(2 * size * |vars|)
    }
    SUBCASE("sampled mode records seed and trials") {
        auto res = positivity_witness_search(c2, phi_c2(), {"p"},
                                             SearchMode::sampled(3, 500));
        CHECK(res.outcome == SearchOutcome::Found);
        CHECK(res.seed == 3);
    }
}

TEST_CASE("sampled search finds the five-world witness") {
    auto res = positivity_witness_search(Frame{repro::f0()}, repro::phi_lin(), {"p"},
                                         SearchMode::sampled(1, 20000));
    CHECK(res.outcome == SearchOutcome::Found);
}

TEST_CASE("synthesize_positive") {
    Frame c2{kripke_to_nbd(repro::cluster(2))};
    SUBCASE("idempotent conjunction collapses to a diamond") {
        auto res = synthesize_positive(c2, parse("<>p & <>p"), {"p"}, 9);
        REQUIRE(res.found);
        CHECK(*res.found == parse("<>p"));
        CHECK(res.found->size() == 2);
    }
    SUBCASE("the cluster formula has no positive equivalent up to size 9") {
        auto res = synthesize_positive(c2, phi_c2(), {"p"}, 9);
        CHECK(!res.found);
        CHECK(res.bound_reached == 9);
        CHECK(res.candidates_checked > 0);
    }
    SUBCASE("found equivalents verify by frame validity") {
        Rng rng(41);
        for (int t = 0; t < 40; t++) {
            Formula f = random_formula(rng, {{"p"}, {"p"}}, 2);
            auto res = synthesize_positive(c2, f, {"p"}, 5);
            if (!res.found) continue;
            CHECK(is_positive(*res.found, {"p"}));
            Formula equiv = Formula::conj(Formula::disj(negate(f), *res.found),
                                          Formula::disj(negate(*res.found), f));
            CHECK(frame_validity(c2, equiv).valid);
        }
    }
}

TEST_CASE("soundness exclusion: search and synthesis never both succeed") {
    Frame c2{repro::cluster(2)};
    Rng rng(43);
    std::vector<Formula> corpus = {phi_c2(), parse("<>p"), parse("[]p"), parse("p | <>~p")};
    for (int t = 0; t < 30; t++) corpus.push_back(random_formula(rng, {{"p"}, {"p"}}, 2));
    for (const Formula& f : corpus) {
        if (!check_monotone(c2, f, {"p"}).monotone) continue;
        auto search = positivity_witness_search(c2, f, {"p"}, SearchMode::exhaustive_mode());
        auto synth = synthesize_positive(c2, f, {"p"}, 6);
        CAPTURE(print(f));
        CHECK(!(search.outcome == SearchOutcome::Found && synth.found.has_value()));
    }
}

TEST_CASE("synthesized positives are monotone") {
    Frame c2{repro::cluster(2)};
    Rng rng(47);
    for (int t = 0; t < 30; t++) {
        Formula f = random_formula(rng, {{"p"}, {"p"}}, 2);
        auto res = synthesize_positive(c2, f, {"p"}, 5);
        if (res.found) CHECK(check_monotone(c2, f, {"p"}).monotone);
    }
}

TEST_CASE("interpolants") {
    Frame c1{repro::cluster(1)};
    SUBCASE("f = g with full tau returns f immediately") {
        Formula f = parse("p & <>q");
        auto res = synthesize_interpolant(Frame{repro::cluster(2)}, f, f, lits(f).both(), 6);
        REQUIRE(res.found);
        CHECK(frame_validity(Frame{repro::cluster(2)},
                             Formula::disj(negate(f), *res.found))
                  .valid);
    }
    SUBCASE("one-world classical case synthesizes at a small bound") {
        Formula f = parse("p & q"), g = parse("p | r");
        LiteralSet tau{{"p"}, {"p"}};
        auto res = synthesize_interpolant(c1, f, g, tau, 4);
        REQUIRE(res.found);
        CHECK(frame_validity(c1, Formula::disj(negate(f), *res.found)).valid);
        CHECK(frame_validity(c1, Formula::disj(negate(*res.found), g)).valid);
        LiteralSet found_lits = lits(*res.found);
        for (const auto& v : found_lits.pos) CHECK(tau.pos.count(v));
        for (const auto& v : found_lits.neg) CHECK(tau.neg.count(v));
    }
    SUBCASE("positivity reformulated as self-interpolation finds the same witness") {
        Frame c2{repro::cluster(2)};
        LiteralSet tau = directed_tau({"p"}, {"p"});
        auto res = interpolant_witness_search(c2, phi_c2(), phi_c2(), tau,
                                              SearchMode::exhaustive_mode());
        CHECK(res.outcome == SearchOutcome::Found);
    }
}

TEST_CASE("lpp_report composition") {
    SUBCASE("refuted") {
        auto rep = lpp_report(Frame{repro::f0()}, repro::phi_lin(), {"p"},
                              {SearchMode::sampled(1, 20000), 4});
        CHECK(rep.status == LppStatus::RefutedWithWitness);
    }
    SUBCASE("positive equivalent found") {
        auto rep = lpp_report(Frame{repro::cluster(2)}, parse("<>p"), {"p"}, {});
        CHECK(rep.status == LppStatus::PositiveEquivalentFound);
    }
    SUBCASE("not monotone") {
        auto rep = lpp_report(Frame{repro::cluster(2)}, parse("~p"), {"p"}, {});
        CHECK(rep.status == LppStatus::NotMonotone);
        CHECK(!rep.search); // search skipped
    }
}

TEST_CASE("semantic shadows on random Kripke models") {
    Rng rng(53);
    SUBCASE("graded-box substitution implication") {
        // Box^{<=d} /\ (p_i <-> eta_i) -> (phi(p) <-> phi(eta)) is valid pointwise.
        for (int t = 0; t < 300; t++) {
            int n = 1 + int(rng() % 4);
            Model m{Frame{random_kripke(rng, n)},
                    random_valuation(rng, n, {"p", "q", "r"})};
            Formula phi = random_formula(rng, {{"p", "q"}, {"p", "q"}}, 3);
            Formula eta = random_formula(rng, {{"q", "r"}, {"r"}}, 1);
            int d = modal_depth(phi);
            Formula guard = graded(GradedKind::Box, d,
                                   parse("(" + print(eta) + " | ~p) & (" +
                                         print(negate(eta)) + " | p)"));
            Formula phi2 = substitute(phi, {{"p", eta}});
            Mask lhs = eval(m, guard);
            Mask same = ~(eval(m, phi) ^ eval(m, phi2)) & full_mask(n);
            CHECK((lhs & ~same) == 0);
        }
    }
    SUBCASE("param_elim_lift at r' := ~r matches the original") {
        for (int t = 0; t < 300; t++) {
            int n = 1 + int(rng() % 4);
            Model m{Frame{random_kripke(rng, n)}, random_valuation(rng, n, {"p", "r"})};
            Formula f = random_formula(rng, {{"p", "r"}, {"p", "r"}}, 2);
            Formula psi = param_elim_lift(f, {"p"}, {"r"});
            Formula instantiated = substitute(psi, {{"r'", parse("~r")}});
            CHECK(eval(m, instantiated) == eval(m, f));
        }
    }
    SUBCASE("lyndon premise implies the original on monotone instances") {
        for (int t = 0; t < 60; t++) {
            int n = 1 + int(rng() % 4);
            Frame fr{random_kripke(rng, n)};
            Formula f = random_formula(rng, {{"p"}, {"p"}}, 2);
            if (!check_monotone(fr, f, {"p"}).monotone) continue;
            Formula eta = lyndon_premise(f, {"p"});
            CAPTURE(print(f));
            CHECK(frame_validity(fr, Formula::disj(negate(eta), f)).valid);
        }
    }
}
