import pytest

import modlab

C2 = {"type": "kripke", "worlds": 2, "edges": [[0, 0], [0, 1], [1, 0], [1, 1]]}
CHAIN = {"type": "kripke", "worlds": 2, "edges": [[0, 1]]}
PHI = "[]p | (~p & <>p)"


def test_parse_canonical():
    info = modlab.parse("p -> <>q")
    assert info["formula"] == "(~p | <>q)"
    assert info["size"] == 4
    assert info["depth"] == 1
    assert info["vars"] == ["p", "q"]


def test_parse_error():
    with pytest.raises(modlab.FormulaError):
        modlab.parse("p & & q")


def test_eval():
    model = {"frame": CHAIN, "valuation": {"p": [1]}}
    assert modlab.eval_formula(model, "<>p") == [0]
    assert modlab.eval_formula(model, "[]p") == [0, 1]


def test_frame_validity():
    assert modlab.frame_validity(C2, "<>p | ~<>p")["valid"]
    res = modlab.frame_validity(CHAIN, "[]p -> p")
    assert not res["valid"]
    assert res["world"] in (0, 1)
    assert "countermodel" in res


def test_check_monotone():
    assert modlab.check_monotone(C2, PHI, ["p"])["monotone"]
    res = modlab.check_monotone(C2, "~p", ["p"])
    assert not res["monotone"]
    assert "counterexample" in res


def test_bisim_roundtrip():
    m1 = {"frame": C2, "valuation": {"p": [0, 1]}}
    m2 = {"frame": C2, "valuation": {"p": [0]}}
    tau = {"pos": ["p"], "neg": []}
    z = modlab.greatest_bisim(m1, m2, tau)
    assert modlab.check_bisim(m1, m2, z, tau)["ok"]
    bad = {"left": 2, "right": 2, "pairs": [[0, 0], [0, 1]]}
    res = modlab.check_bisim(m1, m2, bad, tau)
    assert not res["ok"]
    assert res["violation"]["condition"] in {"lit", "zig_K", "zag_K", "zig", "zag"}


def test_zigzag_split():
    z = {"left": 2, "right": 2, "pairs": [[0, 0], [0, 1], [1, 0], [1, 1]]}
    parts = modlab.zigzag_split(z)
    pairs = {tuple(p) for p in parts["z0"]["pairs"]}
    assert pairs == {(0, 0), (1, 1)}


def test_positivity_search_and_synthesis():
    res = modlab.positivity_search(C2, PHI, ["p"])
    assert res["outcome"] == "found"
    assert res["witness"]["pair"][0] in (0, 1)

    synth = modlab.synthesize_positive(C2, "<>p & <>p", ["p"], max_size=6)
    assert synth["found"] == "<>p"
    none = modlab.synthesize_positive(C2, PHI, ["p"], max_size=6)
    assert none["found"] is None


def test_guard_error():
    with pytest.raises(modlab.GuardError):
        modlab.check_monotone(C2, "p1 & p2 & p3 & p4 & p5", ["p1"], guard_bits=8)


def test_max_product():
    z = {"left": 2, "right": 2, "pairs": [[0, 0], [0, 1], [1, 0], [1, 1]]}
    prod = modlab.max_product(C2, C2, z)
    assert prod["ok"]
    assert len(prod["carrier"]) == 4


def test_repro_cases():
    cases = modlab.list_cases()
    assert "f0-lin" in cases
    cert = modlab.run_case("f0-lin")
    assert all(c["passed"] for c in cert["checks"])
