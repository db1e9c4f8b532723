// modlab: command-line front end over the shared JSON formats.
//
// Exit codes: 0 verdict computed and all asserted checks passed,
//             1 a checked property failed,
//             2 usage or format error,
//             3 resource guard exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "modlab/bisim.hpp"
#include "modlab/json_io.hpp"
#include "modlab/positivity.hpp"
#include "modlab/product.hpp"
#include "modlab/repro.hpp"
#include "modlab/structures.hpp"

using namespace modlab;
using io::json;

namespace {

int default_guard_bits() {
    if (const char* env = std::getenv("MODLAB_GUARD_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < 64) return int(v);
    }
    return kDefaultGuardBits;
}

struct Common {
    uint32_t seed = 0;
    uint64_t trials = 1000;
    int max_size = 6;
    int guard_bits = default_guard_bits();
    std::string mode = "exhaustive";
    std::string out;
    std::string format = "text";

    void attach(CLI::App* cmd, bool with_mode = false, bool with_size = false) {
        cmd->add_option("--seed", seed, "random seed (sampled modes)");
        cmd->add_option("--trials", trials, "trial count (sampled modes)");
        if (with_size) cmd->add_option("--max-size", max_size, "synthesis size bound");
        cmd->add_option("--guard-bits", guard_bits, "exhaustiveness guard (log2)");
        if (with_mode)
            cmd->add_option("--mode", mode, "exhaustive|sampled")
                ->check(CLI::IsMember({"exhaustive", "sampled"}));
        cmd->add_option("--out", out, "write the JSON certificate here");
        cmd->add_option("--format", format, "stdout format")
            ->check(CLI::IsMember({"json", "text"}));
    }

    SearchMode search_mode() const {
        return mode == "sampled" ? SearchMode::sampled(seed, trials)
                                 : SearchMode::exhaustive_mode();
    }

    // Emits the certificate and turns the verdict into an exit code.
    int emit(const json& cert, const std::string& text, bool ok) const {
        if (!out.empty()) io::save_json_file(out, cert);
        if (format == "json")
            std::cout << cert.dump(2) << "\n";
        else
            std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
        return ok ? 0 : 1;
    }
};

json witness_cert(const WitnessSearchResult& r, const Formula& formula, const LiteralSet& tau) {
    json j;
    j["outcome"] = r.outcome == SearchOutcome::Found
                       ? "found"
                       : (r.outcome == SearchOutcome::NoneFound ? "none-found" : "exhausted");
    j["pairs_checked"] = r.pairs_checked;
    if (r.trials) {
        j["seed"] = r.seed;
        j["trials"] = r.trials;
    }
    j["formula"] = print(formula);
    j["tau"] = io::tau_to_json(tau);
    if (r.witness) {
        j["witness"] = {{"m1", io::model_to_json(r.witness->m1)},
                        {"m2", io::model_to_json(r.witness->m2)},
                        {"z", io::relation_to_json(r.witness->z)},
                        {"pair", json::array({r.witness->pair.first, r.witness->pair.second})}};
    }
    return j;
}

json violation_to_json(const BisimViolation& v) {
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

std::string violation_text(const BisimViolation& v) {
    json j = violation_to_json(v);
    return "violation: " + j.dump();
}

Model load_model(const std::string& path) { return io::model_from_json(io::load_json_file(path)); }
Frame load_frame(const std::string& path) { return io::frame_from_json(io::load_json_file(path)); }

int run(int argc, char** argv) {
    CLI::App app{"finite modal-logic workbench"};
    app.require_subcommand(1);

    // --- parse ---------------------------------------------------------
    std::string formula_text, frame_path, m1_path, m2_path, z_path, tau_path;
    std::vector<std::string> pvars;
    auto* c_parse = app.add_subcommand("parse", "parse a formula and print its normal form");
    Common parse_opts;
    c_parse->add_option("--formula", formula_text, "formula text")->required();
    parse_opts.attach(c_parse);

    // --- eval ----------------------------------------------------------
    auto* c_eval = app.add_subcommand("eval", "evaluate a formula on a model");
    Common eval_opts;
    std::string eval_model;
    int eval_world = -1;
    c_eval->add_option("--model", eval_model, "model JSON file")->required();
    c_eval->add_option("--formula", formula_text, "formula text")->required();
    c_eval->add_option("--world", eval_world, "assert truth at this world");
    eval_opts.attach(c_eval);

    // --- validity ------------------------------------------------------
    auto* c_valid = app.add_subcommand("validity", "exhaustive frame validity");
    Common valid_opts;
    c_valid->add_option("--frame", frame_path, "frame JSON file")->required();
    c_valid->add_option("--formula", formula_text, "formula text")->required();
    valid_opts.attach(c_valid);

    // --- monotone ------------------------------------------------------
    auto* c_mono = app.add_subcommand("monotone", "decide p-monotonicity on a frame");
    Common mono_opts;
    c_mono->add_option("--frame", frame_path, "frame JSON file")->required();
    c_mono->add_option("--formula", formula_text, "formula text")->required();
    c_mono->add_option("--p", pvars, "monotone variable (repeatable)")->required();
    mono_opts.attach(c_mono);

    // --- bisim-check ---------------------------------------------------
    auto* c_bcheck = app.add_subcommand("bisim-check", "verify a tau-bisimulation");
    Common bcheck_opts;
    c_bcheck->add_option("--m1", m1_path, "left model JSON file")->required();
    c_bcheck->add_option("--m2", m2_path, "right model JSON file")->required();
    c_bcheck->add_option("--z", z_path, "relation JSON file")->required();
    c_bcheck->add_option("--tau", tau_path, "tau JSON file")->required();
    bcheck_opts.attach(c_bcheck);

    // --- bisim-greatest --------------------------------------------------
    auto* c_bgreat = app.add_subcommand("bisim-greatest", "greatest tau-bisimulation");
    Common bgreat_opts;
    c_bgreat->add_option("--m1", m1_path, "left model JSON file")->required();
    c_bgreat->add_option("--m2", m2_path, "right model JSON file")->required();
    c_bgreat->add_option("--tau", tau_path, "tau JSON file")->required();
    bgreat_opts.attach(c_bgreat);

    // --- zigzag-split ----------------------------------------------------
    auto* c_zig = app.add_subcommand("zigzag-split", "zigzag-free full subrelation");
    Common zig_opts;
    c_zig->add_option("--z", z_path, "full relation JSON file")->required();
    zig_opts.attach(c_zig);

    // --- morphism-check --------------------------------------------------
    auto* c_morph = app.add_subcommand("morphism-check", "verify a (directed) morphism");
    Common morph_opts;
    std::string map_path, src_path, dst_path;
    c_morph->add_option("--map", map_path, "function as relation JSON file")->required();
    c_morph->add_option("--src", src_path, "source frame or model JSON file")->required();
    c_morph->add_option("--dst", dst_path, "target frame or model JSON file")->required();
    c_morph->add_option("--p", pvars, "directed variable (repeatable)");
    morph_opts.attach(c_morph);

    // --- positive-search -------------------------------------------------
    auto* c_psearch = app.add_subcommand("positive-search", "positivity witness search");
    Common psearch_opts;
    c_psearch->add_option("--frame", frame_path, "frame JSON file")->required();
    c_psearch->add_option("--formula", formula_text, "formula text")->required();
    c_psearch->add_option("--p", pvars, "monotone variable (repeatable)")->required();
    psearch_opts.attach(c_psearch, /*with_mode=*/true);

    // --- positive-synth --------------------------------------------------
    auto* c_psynth = app.add_subcommand("positive-synth", "bounded positive-equivalent synthesis");
    Common psynth_opts;
    c_psynth->add_option("--frame", frame_path, "frame JSON file")->required();
    c_psynth->add_option("--formula", formula_text, "formula text")->required();
    c_psynth->add_option("--p", pvars, "monotone variable (repeatable)")->required();
    psynth_opts.attach(c_psynth, false, /*with_size=*/true);

    // --- interpolant -----------------------------------------------------
    auto* c_interp = app.add_subcommand("interpolant", "tau-interpolant search and synthesis");
    Common interp_opts;
    std::string f_text, g_text;
    c_interp->add_option("--frame", frame_path, "frame JSON file")->required();
    c_interp->add_option("--f", f_text, "antecedent formula")->required();
    c_interp->add_option("--g", g_text, "consequent formula")->required();
    c_interp->add_option("--tau", tau_path, "tau JSON file")->required();
    interp_opts.attach(c_interp, true, true);

    // --- product ---------------------------------------------------------
    auto* c_prod = app.add_subcommand("product", "maximal bisimulation product");
    Common prod_opts;
    std::string f1_path, f2_path;
    c_prod->add_option("--f1", f1_path, "left neighborhood frame JSON file")->required();
    c_prod->add_option("--f2", f2_path, "right neighborhood frame JSON file")->required();
    c_prod->add_option("--z", z_path, "full bisimulation JSON file")->required();
    prod_opts.attach(c_prod);

    // --- repro -----------------------------------------------------------
    auto* c_repro = app.add_subcommand("repro", "re-verify a registered case");
    Common repro_opts;
    std::string case_id;
    bool repro_all = false, repro_list = false;
    c_repro->add_option("case", case_id, "case id");
    c_repro->add_flag("--all", repro_all, "run every registered case");
    c_repro->add_flag("--list", repro_list, "list case ids");
    repro_opts.attach(c_repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage error
    }

    if (c_parse->parsed()) {
        Formula f = parse(formula_text);
        LiteralSet ls = lits(f);
        json cert{{"formula", print(f)},
                  {"size", f.size()},
                  {"depth", modal_depth(f)},
                  {"vars", vars(f)},
                  {"lits", io::tau_to_json(ls)}};
        return parse_opts.emit(cert, print(f), true);
    }

    if (c_eval->parsed()) {
        Model m = load_model(eval_model);
        Formula f = parse(formula_text);
        Mask truth = eval(m, f);
        json cert{{"model", io::model_to_json(m)},
                  {"formula", print(f)},
                  {"truth_set", io::worlds_of_mask(truth)}};
        bool ok = true;
        std::string text = "truth set: " + cert["truth_set"].dump();
        if (eval_world >= 0) {
            ok = holds_at(m, eval_world, f);
            cert["world"] = eval_world;
            cert["holds"] = ok;
            text += ok ? "\nholds at " : "\nfails at ";
            text += std::to_string(eval_world);
        }
        return eval_opts.emit(cert, text, ok);
    }

    if (c_valid->parsed()) {
        Frame fr = load_frame(frame_path);
        Formula f = parse(formula_text);
        ValidityResult r = frame_validity(fr, f, valid_opts.guard_bits);
        json cert{{"frame", io::frame_to_json(fr)}, {"formula", print(f)}, {"valid", r.valid}};
        std::string text = r.valid ? "valid" : "invalid";
        if (!r.valid) {
            cert["countermodel"] = io::valuation_to_json(r.countermodel);
            cert["world"] = r.world;
            text += " at world " + std::to_string(r.world) + " under " +
                    cert["countermodel"].dump();
        }
        return valid_opts.emit(cert, text, r.valid);
    }

    if (c_mono->parsed()) {
        Frame fr = load_frame(frame_path);
        Formula f = parse(formula_text);
        auto v = check_monotone(fr, f, pvars, mono_opts.guard_bits);
        json cert{{"frame", io::frame_to_json(fr)},
                  {"formula", print(f)},
                  {"pvars", pvars},
                  {"monotone", v.monotone}};
        std::string text = v.monotone ? "monotone" : "not monotone";
        if (v.counterexample) {
            cert["counterexample"] = {{"val1", io::valuation_to_json(v.counterexample->val1)},
                                      {"val2", io::valuation_to_json(v.counterexample->val2)},
                                      {"world", v.counterexample->world}};
            text += ": true at world " + std::to_string(v.counterexample->world) +
                    " under val1 but false under val2 >= val1";
        }
        return mono_opts.emit(cert, text, v.monotone);
    }

    if (c_bcheck->parsed()) {
        Model m1 = load_model(m1_path), m2 = load_model(m2_path);
        Relation z = io::relation_from_json(io::load_json_file(z_path));
        LiteralSet tau = io::tau_from_json(io::load_json_file(tau_path));
        auto viol = check_tau_bisim(m1, m2, z, tau);
        json cert{{"m1", io::model_to_json(m1)},
                  {"m2", io::model_to_json(m2)},
                  {"z", io::relation_to_json(z)},
                  {"tau", io::tau_to_json(tau)},
                  {"ok", !viol}};
        if (viol) cert["violation"] = violation_to_json(*viol);
        return bcheck_opts.emit(cert, viol ? violation_text(*viol) : "ok", !viol);
    }

    if (c_bgreat->parsed()) {
        Model m1 = load_model(m1_path), m2 = load_model(m2_path);
        LiteralSet tau = io::tau_from_json(io::load_json_file(tau_path));
        Relation z = greatest_tau_bisim(m1, m2, tau);
        json cert{{"m1", io::model_to_json(m1)},
                  {"m2", io::model_to_json(m2)},
                  {"tau", io::tau_to_json(tau)},
                  {"z", io::relation_to_json(z)}};
        return bgreat_opts.emit(cert, "greatest bisimulation: " + cert["z"]["pairs"].dump(), true);
    }

    if (c_zig->parsed()) {
        Relation z = io::relation_from_json(io::load_json_file(z_path));
        ZigzagDecomposition d = zigzag_free_subrelation(z);
        json cert{{"z", io::relation_to_json(z)},
                  {"z1", io::relation_to_json(d.z1)},
                  {"z2", io::relation_to_json(d.z2)},
                  {"z0", io::relation_to_json(zigzag_union(d))}};
        return zig_opts.emit(cert,
                             "z1: " + cert["z1"]["pairs"].dump() +
                                 "\nz2: " + cert["z2"]["pairs"].dump(),
                             true);
    }

    if (c_morph->parsed()) {
        Relation f = io::relation_from_json(io::load_json_file(map_path));
        json src = io::load_json_file(src_path), dst = io::load_json_file(dst_path);
        bool models = src.contains("frame") || dst.contains("frame");
        MorphismCheck viol;
        if (models) {
            Model ms = io::model_from_json(src), md = io::model_from_json(dst);
            std::optional<std::vector<VarName>> pv;
            if (!pvars.empty()) pv = pvars;
            viol = check_morphism(f, ms, md, pv);
        } else {
            viol = check_morphism(f, io::frame_from_json(src), io::frame_from_json(dst));
        }
        json cert{{"map", io::relation_to_json(f)}, {"ok", !viol}};
        std::string text = "ok";
        if (viol) {
            json v;
            switch (viol->kind) {
                case MorphismViolation::NotFunction: v["kind"] = "not-a-function"; break;
                case MorphismViolation::Fwd: v["kind"] = "forward"; break;
                case MorphismViolation::Bwd: v["kind"] = "backward"; break;
                case MorphismViolation::Equation: v["kind"] = "equation"; break;
                case MorphismViolation::Lit: v["kind"] = "lit"; break;
            }
            v["world"] = viol->world;
            if (viol->successor >= 0) v["successor"] = viol->successor;
            if (viol->kind == MorphismViolation::Equation)
                v["subset"] = io::worlds_of_mask(viol->subset);
            if (viol->kind == MorphismViolation::Lit)
                v["literal"] = (viol->literal_positive ? "" : "~") + viol->literal;
            cert["violation"] = v;
            text = "violation: " + v.dump();
        }
        return morph_opts.emit(cert, text, !viol);
    }

    if (c_psearch->parsed()) {
        Frame fr = load_frame(frame_path);
        Formula f = parse(formula_text);
        auto r = positivity_witness_search(fr, f, pvars, psearch_opts.search_mode(),
                                           psearch_opts.guard_bits);
        LiteralSet tau = directed_tau(vars(f), pvars);
        json cert = witness_cert(r, f, tau);
        cert["frame"] = io::frame_to_json(fr);
        cert["pvars"] = pvars;
        std::string text =
            r.outcome == SearchOutcome::Found
                ? "witness found at pair (" + std::to_string(r.witness->pair.first) + "," +
                      std::to_string(r.witness->pair.second) + ")"
                : (r.outcome == SearchOutcome::NoneFound
                       ? "no witness (exhaustive): positive-equivalent on this frame"
                       : "no witness in " + std::to_string(r.trials) + " sampled trials");
        return psearch_opts.emit(cert, text, true);
    }

    if (c_psynth->parsed()) {
        Frame fr = load_frame(frame_path);
        Formula f = parse(formula_text);
        auto r = synthesize_positive(fr, f, pvars, psynth_opts.max_size, psynth_opts.guard_bits);
        json cert{{"frame", io::frame_to_json(fr)},
                  {"formula", print(f)},
                  {"pvars", pvars},
                  {"bound_reached", r.bound_reached},
                  {"candidates_checked", r.candidates_checked}};
        std::string text;
        if (r.found) {
            cert["found"] = print(*r.found);
            text = "found: " + print(*r.found);
        } else {
            cert["found"] = nullptr;
            text = "none up to size " + std::to_string(r.bound_reached) +
                   " (not a nonexistence proof)";
        }
        return psynth_opts.emit(cert, text, true);
    }

    if (c_interp->parsed()) {
        Frame fr = load_frame(frame_path);
        Formula f = parse(f_text), g = parse(g_text);
        LiteralSet tau = io::tau_from_json(io::load_json_file(tau_path));
        auto r = interpolant_witness_search(fr, f, g, tau, interp_opts.search_mode(),
                                            interp_opts.guard_bits);
        json cert{{"frame", io::frame_to_json(fr)},
                  {"f", print(f)},
                  {"g", print(g)},
                  {"tau", io::tau_to_json(tau)},
                  {"search", witness_cert(r, f, tau)}};
        std::string text;
        if (r.outcome == SearchOutcome::Found) {
            cert["interpolant"] = nullptr;
            text = "no tau-interpolant: witness at pair (" +
                   std::to_string(r.witness->pair.first) + "," +
                   std::to_string(r.witness->pair.second) + ")";
        } else {
            auto s = synthesize_interpolant(fr, f, g, tau, interp_opts.max_size,
                                            interp_opts.guard_bits);
            cert["candidates_checked"] = s.candidates_checked;
            cert["bound_reached"] = s.bound_reached;
            if (s.found) {
                cert["interpolant"] = print(*s.found);
                text = "interpolant: " + print(*s.found);
            } else {
                cert["interpolant"] = nullptr;
                text = "no interpolant up to size " + std::to_string(s.bound_reached);
            }
        }
        return interp_opts.emit(cert, text, true);
    }

    if (c_prod->parsed()) {
        json j1 = io::load_json_file(f1_path), j2 = io::load_json_file(f2_path);
        Frame fr1 = io::frame_from_json(j1), fr2 = io::frame_from_json(j2);
        NbdFrame n1 = is_kripke(fr1) ? kripke_to_nbd(std::get<KripkeFrame>(fr1))
                                     : std::get<NbdFrame>(fr1);
        NbdFrame n2 = is_kripke(fr2) ? kripke_to_nbd(std::get<KripkeFrame>(fr2))
                                     : std::get<NbdFrame>(fr2);
        Relation z = io::relation_from_json(io::load_json_file(z_path));
        BisimProduct p = max_product(n1, n2, z);
        auto viol = check_product(p, n1, n2, prod_opts.seed);
        json cert = io::product_to_json(p);
        cert["ok"] = !viol;
        if (viol) {
            cert["violation"] = {{"kind", viol->kind == ProductViolation::Equation
                                              ? "equation"
                                              : (viol->kind == ProductViolation::Monotone
                                                     ? "monotone"
                                                     : "maximality")},
                                 {"k", viol->k},
                                 {"subset", io::worlds_of_mask(viol->subset)}};
        }
        std::string text = std::string(viol ? "product check failed" : "ok") + "; carrier " +
                           cert["carrier"].dump();
        return prod_opts.emit(cert, text, !viol);
    }

    if (c_repro->parsed()) {
        if (repro_list) {
            json cert = repro::list_cases();
            std::string text;
            for (const auto& id : repro::list_cases()) text += id + "\n";
            return repro_opts.emit(cert, text, true);
        }
        std::vector<std::string> ids;
        if (repro_all)
            ids = repro::list_cases();
        else if (!case_id.empty())
            ids.push_back(case_id);
        else
            throw CLI::ValidationError("repro", "give a case id, --all, or --list");
        bool all_ok = true;
        json certs = json::array();
        std::string text;
        for (const auto& id : ids) {
            auto rep = repro::run_case(id);
            all_ok = all_ok && rep.passed;
            certs.push_back(rep.certificate);
            text += rep.id + ": " + (rep.passed ? "pass" : "FAIL") + "\n";
            for (const auto& c : rep.checks)
                text += "  " + c.name + ": " + (c.passed ? "pass" : "FAIL") +
                        (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
        }
        json cert = ids.size() == 1 ? certs[0] : json{{"cases", certs}};
        return repro_opts.emit(cert, text, all_ok);
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "formula error at position " << e.position << ": " << e.what() << "\n";
        return 2;
    } catch (const io::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
