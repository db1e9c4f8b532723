"""Python interface to the modlab finite modal-logic workbench.

The compiled extension exchanges structured values as JSON strings in the
same interchange formats the CLI uses.  This wrapper converts to and from
plain Python dicts/lists so callers never touch raw JSON text.
"""

import json as _json

try:
    from . import _modlab as _core
except ImportError:  # development layout: extension next to the package on sys.path
    import _modlab as _core

FormulaError = _core.FormulaError
FormatError = _core.FormatError
DimensionError = _core.DimensionError
GuardError = _core.GuardError

__all__ = [
    "FormulaError", "FormatError", "DimensionError", "GuardError",
    "parse", "eval_formula", "frame_validity", "check_monotone",
    "check_bisim", "greatest_bisim", "zigzag_split",
    "positivity_search", "synthesize_positive", "max_product",
    "list_cases", "run_case",
]

_DEFAULT_GUARD = 24


def _dump(value):
    return _json.dumps(value)


def parse(formula):
    """Parse a formula; returns its canonical print plus size/depth/vars/lits."""
    return _json.loads(_core.parse(formula))


def eval_formula(model, formula):
    """Worlds of `model` (a model dict) where `formula` holds."""
    return _json.loads(_core.eval(_dump(model), formula))


def frame_validity(frame, formula, guard_bits=_DEFAULT_GUARD):
    return _json.loads(_core.frame_validity(_dump(frame), formula, guard_bits))


def check_monotone(frame, formula, pvars, guard_bits=_DEFAULT_GUARD):
    return _json.loads(_core.check_monotone(_dump(frame), formula, list(pvars), guard_bits))


def check_bisim(m1, m2, z, tau):
    return _json.loads(_core.check_bisim(_dump(m1), _dump(m2), _dump(z), _dump(tau)))


def greatest_bisim(m1, m2, tau):
    return _json.loads(_core.greatest_bisim(_dump(m1), _dump(m2), _dump(tau)))


def zigzag_split(z):
    return _json.loads(_core.zigzag_split(_dump(z)))


def positivity_search(frame, formula, pvars, mode="exhaustive", seed=0,
                      trials=1000, guard_bits=_DEFAULT_GUARD):
    return _json.loads(_core.positivity_search(
        _dump(frame), formula, list(pvars), mode, seed, trials, guard_bits))


def synthesize_positive(frame, formula, pvars, max_size=6, guard_bits=_DEFAULT_GUARD):
    return _json.loads(_core.synthesize_positive(
        _dump(frame), formula, list(pvars), max_size, guard_bits))


def max_product(f1, f2, z):
    return _json.loads(_core.max_product(_dump(f1), _dump(f2), _dump(z)))


def list_cases():
    return list(_core.list_cases())


def run_case(case_id):
    """Run a named reproduction case and return its certificate."""
    return _json.loads(_core.run_case(case_id))
