// Python bindings. The API mirrors the CLI's JSON surface: structured values
// cross the boundary as JSON strings in the shared interchange formats, so
// certificates stay byte-compatible between the two front ends.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modlab/bisim.hpp"
#include "modlab/json_io.hpp"
#include "modlab/positivity.hpp"
#include "modlab/product.hpp"
#include "modlab/repro.hpp"

namespace py = pybind11;
using namespace modlab;
using io::json;

namespace {

json jparse(const std::string& text) { return json::parse(text); }
std::string jdump(const json& j) { return j.dump(); }

Frame frame_arg(const std::string& text) { return io::frame_from_json(jparse(text)); }
Model model_arg(const std::string& text) { return io::model_from_json(jparse(text)); }
Relation rel_arg(const std::string& text) { return io::relation_from_json(jparse(text)); }
LiteralSet tau_arg(const std::string& text) { return io::tau_from_json(jparse(text)); }

SearchMode mode_arg(const std::string& mode, uint32_t seed, uint64_t trials) {
    if (mode == "exhaustive") return SearchMode::exhaustive_mode();
    if (mode == "sampled") return SearchMode::sampled(seed, trials);
    throw std::invalid_argument("mode must be 'exhaustive' or 'sampled'");
}

json violation_json(const BisimViolation& v) {
    json j{{"condition", to_string(v.condition)}};
    switch (v.condition) {
        case BisimCondition::Lit:
            j["literal"] = (v.literal_positive ? "" : "~") + v.literal;
            j["pair"] = json::array({v.pair.first, v.pair.second});
            break;
        case BisimCondition::ZigK:
        case BisimCondition::ZagK:
            j["pair"] = json::array({v.pair.first, v.pair.second});
            j["successor"] = v.successor;
            break;
        default:
            j["subset"] = io::worlds_of_mask(v.subset);
            j["world"] = v.world;
    }
    return j;
}

json witness_json(const PositivityWitness& w) {
    return {{"m1", io::model_to_json(w.m1)},
            {"m2", io::model_to_json(w.m2)},
            {"z", io::relation_to_json(w.z)},
            {"pair", json::array({w.pair.first, w.pair.second})}};
}

std::string outcome_name(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::Found: return "found";
        case SearchOutcome::NoneFound: return "none-found";
        case SearchOutcome::Exhausted: return "exhausted";
    }
    return "?";
}

} // namespace

PYBIND11_MODULE(_modlab, m) {
    m.doc() = "finite modal-logic workbench (JSON-string API)";

    py::register_exception<ParseError>(m, "FormulaError", PyExc_ValueError);
    py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<GuardExceeded>(m, "GuardError", PyExc_RuntimeError);

    m.def("parse", [](const std::string& text) {
        Formula f = parse(text);
        return jdump({{"formula", print(f)},
                      {"size", f.size()},
                      {"depth", modal_depth(f)},
                      {"vars", vars(f)},
                      {"lits", io::tau_to_json(lits(f))}});
    }, py::arg("formula"));

    m.def("eval", [](const std::string& model, const std::string& formula) {
        Model mo = model_arg(model);
        return jdump(io::worlds_of_mask(eval(mo, parse(formula))));
    }, py::arg("model"), py::arg("formula"));

    m.def("frame_validity",
          [](const std::string& frame, const std::string& formula, int guard_bits) {
              ValidityResult r = frame_validity(frame_arg(frame), parse(formula), guard_bits);
              json j{{"valid", r.valid}};
              if (!r.valid) {
                  j["countermodel"] = io::valuation_to_json(r.countermodel);
                  j["world"] = r.world;
              }
              return jdump(j);
          },
          py::arg("frame"), py::arg("formula"), py::arg("guard_bits") = kDefaultGuardBits);

    m.def("check_monotone",
          [](const std::string& frame, const std::string& formula,
             const std::vector<VarName>& pvars, int guard_bits) {
              auto v = check_monotone(frame_arg(frame), parse(formula), pvars, guard_bits);
              json j{{"monotone", v.monotone}};
              if (v.counterexample)
                  j["counterexample"] = {
                      {"val1", io::valuation_to_json(v.counterexample->val1)},
                      {"val2", io::valuation_to_json(v.counterexample->val2)},
                      {"world", v.counterexample->world}};
              return jdump(j);
          },
          py::arg("frame"), py::arg("formula"), py::arg("pvars"),
          py::arg("guard_bits") = kDefaultGuardBits);

    m.def("check_bisim",
          [](const std::string& m1, const std::string& m2, const std::string& z,
             const std::string& tau) {
              auto viol = check_tau_bisim(model_arg(m1), model_arg(m2), rel_arg(z),
                                          tau_arg(tau));
              json j{{"ok", !viol}};
              if (viol) j["violation"] = violation_json(*viol);
              return jdump(j);
          },
          py::arg("m1"), py::arg("m2"), py::arg("z"), py::arg("tau"));

    m.def("greatest_bisim",
          [](const std::string& m1, const std::string& m2, const std::string& tau) {
              return jdump(io::relation_to_json(
                  greatest_tau_bisim(model_arg(m1), model_arg(m2), tau_arg(tau))));
          },
          py::arg("m1"), py::arg("m2"), py::arg("tau"));

    m.def("zigzag_split", [](const std::string& z) {
        ZigzagDecomposition d = zigzag_free_subrelation(rel_arg(z));
        return jdump({{"z1", io::relation_to_json(d.z1)},
                      {"z2", io::relation_to_json(d.z2)},
                      {"z0", io::relation_to_json(zigzag_union(d))}});
    }, py::arg("z"));

    m.def("positivity_search",
          [](const std::string& frame, const std::string& formula,
             const std::vector<VarName>& pvars, const std::string& mode, uint32_t seed,
             uint64_t trials, int guard_bits) {
              Formula f = parse(formula);
              auto r = positivity_witness_search(frame_arg(frame), f, pvars,
                                                 mode_arg(mode, seed, trials), guard_bits);
              json j{{"outcome", outcome_name(r.outcome)},
                     {"pairs_checked", r.pairs_checked},
                     {"tau", io::tau_to_json(directed_tau(vars(f), pvars))}};
              if (r.witness) j["witness"] = witness_json(*r.witness);
              return jdump(j);
          },
          py::arg("frame"), py::arg("formula"), py::arg("pvars"),
          py::arg("mode") = "exhaustive", py::arg("seed") = 0, py::arg("trials") = 1000,
          py::arg("guard_bits") = kDefaultGuardBits);

    m.def("synthesize_positive",
          [](const std::string& frame, const std::string& formula,
             const std::vector<VarName>& pvars, int max_size, int guard_bits) {
              auto r = synthesize_positive(frame_arg(frame), parse(formula), pvars,
                                           max_size, guard_bits);
              json j{{"bound_reached", r.bound_reached},
                     {"candidates_checked", r.candidates_checked},
                     {"found", r.found ? json(print(*r.found)) : json(nullptr)}};
              return jdump(j);
          },
          py::arg("frame"), py::arg("formula"), py::arg("pvars"), py::arg("max_size") = 6,
          py::arg("guard_bits") = kDefaultGuardBits);

    m.def("max_product",
          [](const std::string& f1, const std::string& f2, const std::string& z) {
              Frame fr1 = frame_arg(f1), fr2 = frame_arg(f2);
              NbdFrame n1 = is_kripke(fr1) ? kripke_to_nbd(std::get<KripkeFrame>(fr1))
                                           : std::get<NbdFrame>(fr1);
              NbdFrame n2 = is_kripke(fr2) ? kripke_to_nbd(std::get<KripkeFrame>(fr2))
                                           : std::get<NbdFrame>(fr2);
              BisimProduct p = max_product(n1, n2, rel_arg(z));
              json j = io::product_to_json(p);
              j["ok"] = !check_product(p, n1, n2, 0);
              return jdump(j);
          },
          py::arg("f1"), py::arg("f2"), py::arg("z"));

    m.def("list_cases", [] { return repro::list_cases(); });

    m.def("run_case", [](const std::string& id) {
        auto rep = repro::run_case(id);
        return jdump(rep.certificate);
    }, py::arg("id"));
}
