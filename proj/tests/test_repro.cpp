#include <doctest.h>

#include "modlab/bisim.hpp"
#include "modlab/json_io.hpp"
#include "modlab/repro.hpp"

using namespace modlab;

TEST_CASE("structure builders match the pinned counts") {
    KripkeFrame f0 = repro::f0();
    CHECK(f0.size == 5);
    CHECK(f0.r.pair_count() == 16); // {(i,j) | i >= j} plus (0,1)
    CHECK(f0.r.contains(0, 1));
    CHECK(f0.r.contains(4, 0));
    CHECK(!f0.r.contains(1, 2));

    CHECK(repro::cluster(2).r.pair_count() == 4);
    CHECK(repro::dframe(2).r.pair_count() == 7);
    KripkeFrame d3 = repro::dframe(3);
    CHECK(d3.size == 4);
    for (int j = 0; j < 4; j++) CHECK(d3.r.contains(3, j));
    CHECK(!d3.r.contains(0, 3));
    CHECK_THROWS(repro::cluster(0));
}

TEST_CASE("formula builders") {
    CHECK(print(repro::phi_cluster(2, 0)) == "([]p | (~p & <>(p & true)))");
    CHECK(print(repro::phi_cluster(3, 1)) ==
          "([]p | (~p & (<>(p & r0) & <>(p & ~r0))))");
    CHECK(vars(repro::phi_lin()) == std::set<VarName>{"p", "r", "s"});
    CHECK(modal_depth(repro::phi_lin()) == 3);
    CHECK_THROWS(repro::phi_cluster(4, 1)); // k <= 2^m + 1 violated
    CHECK_THROWS(repro::phi_cluster(1, 0));
}

TEST_CASE("every registered case passes") {
    for (const auto& id : repro::list_cases()) {
        CAPTURE(id);
        auto rep = repro::run_case(id);
        CHECK(rep.passed);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
    }
    CHECK_THROWS_AS(repro::run_case("no-such-case"), std::invalid_argument);
}

TEST_CASE("witness certificates re-verify from their own JSON alone") {
    auto rep = repro::run_case("f0-lin");
    const auto& cert = rep.certificate;
    REQUIRE(cert.contains("m1"));
    Model m1 = io::model_from_json(cert.at("m1"));
    Model m2 = io::model_from_json(cert.at("m2"));
    Relation z = io::relation_from_json(cert.at("z"));
    LiteralSet tau = io::tau_from_json(cert.at("tau"));
    Formula f = parse(cert.at("formula").get<std::string>());
    int w1 = cert.at("pair")[0], w2 = cert.at("pair")[1];
    CHECK(!check_tau_bisim(m1, m2, z, tau));
    CHECK(holds_at(m1, w1, f));
    CHECK(!holds_at(m2, w2, f));
    CHECK(z.contains(w1, w2));
}

TEST_CASE("case runs are deterministic") {
    auto a = repro::run_case("ppqq-prop");
    auto b = repro::run_case("ppqq-prop");
    CHECK(a.certificate == b.certificate);
}
