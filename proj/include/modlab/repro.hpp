#pragma once

// Registry of the concrete structures used in the development and a runner
// that re-verifies each recorded claim, emitting re-checkable certificates.

#include <json.hpp>

#include "modlab/structures.hpp"

namespace modlab::repro {

// The 5-world linear-ish frame: edges {(i,j) | 4 >= i >= j >= 0} plus (0,1).
KripkeFrame f0();

// k-cluster: k worlds, all related.
KripkeFrame cluster(int k);

// k-cluster plus a top world k that sees everything (k+1 worlds).
KripkeFrame dframe(int k);

// phi(p,r,s) built from the signed diamonds <>+ eta := <>(~s & r & eta) and
// <>- eta := <>(~s & ~r & eta):  <>-<>+~p & []+[]-[]+p  |  []+p.
Formula phi_lin();

// []p | (~p & /\_{i=1}^{k-1} <>(p & alpha_i)), alpha_i the sign patterns over
// r_0..r_{m-1} in binary-counter order (m = 0: alpha_1 = true). 2 <= k <= 2^m+1.
Formula phi_cluster(int k, int m);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CaseReport {
    std::string id;
    bool passed = false;
    std::vector<CheckResult> checks;
    nlohmann::json certificate; // self-contained: embeds all inputs
};

std::vector<std::string> list_cases();
CaseReport run_case(const std::string& id); // throws std::invalid_argument on unknown id

} // namespace modlab::repro
