"""JSON documents for mode sets, states, currents and observables.

Layout::

    {"field": "scalar" | "em",
     "mass": "p/q",
     "modes": [{"k": ["p/q", x4], "w": "p/q", "a": [["re", "im"], ...], "J": [...]}],
     "observables": {"f": [term, ...], "g": [term, ...]}}

where a term is ``{"mode": i, "component": mu, "conj": bool, "coef": ["re", "im"]}``.
Rationals are strings so that values stay exact; plain JSON integers are
accepted as well.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .classical_modes import CurrentModes, FieldState, LinearObservable, Mode, ModeSet
from .scalars import CQ, as_cq, as_fraction, format_rational

__all__ = [
    "read_json",
    "load_modes",
    "load_state",
    "load_currents",
    "load_observable",
    "load_matrix",
    "dump_modes",
    "dump_state",
    "rational_str",
]


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError(f"use a rational string instead of the float {x!r}")
    return as_fraction(x)


def _complex(x) -> CQ:
    if isinstance(x, float) or (isinstance(x, (list, tuple)) and any(isinstance(v, float) for v in x)):
        raise ValueError(f"use rational strings instead of floats: {x!r}")
    return as_cq(x)


def rational_str(x: Fraction) -> str:
    return format_rational(Fraction(x))


def load_modes(doc: dict) -> ModeSet:
    try:
        field = doc["field"]
        raw = doc["modes"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"mode-set document lacks {exc}") from None
    mass = _rational(doc.get("mass", 0))
    modes = []
    for i, m in enumerate(raw):
        if "k" not in m:
            raise ValueError(f"mode {i} has no momentum")
        k = tuple(_rational(x) for x in m["k"])
        modes.append(Mode(k, _rational(m.get("w", 1))))
    return ModeSet(field, tuple(modes), mass)


def _per_mode(doc: dict, key: str, ncomp: int) -> list:
    rows = []
    for i, m in enumerate(doc["modes"]):
        if key not in m:
            raise ValueError(f"mode {i} has no {key!r} entry")
        v = m[key]
        if ncomp == 1 and isinstance(v, list) and len(v) == 1:
            v = v[0]
        rows.append([_complex(v)] if ncomp == 1 else [_complex(x) for x in v])
    return rows


def load_state(doc: dict, modes: ModeSet | None = None) -> FieldState:
    modes = modes or load_modes(doc)
    return FieldState(modes, tuple(tuple(r) for r in _per_mode(doc, "a", modes.ncomp)))


def load_currents(doc: dict, modes: ModeSet | None = None) -> CurrentModes:
    modes = modes or load_modes(doc)
    return CurrentModes(modes, tuple(tuple(r) for r in _per_mode(doc, "J", 4)))


def load_observable(terms: list) -> LinearObservable:
    out = {}
    for t in terms:
        key = (int(t["mode"]), int(t.get("component", 0)), bool(t.get("conj", False)))
        out[key] = out.get(key, CQ(0)) + _complex(t.get("coef", 1))
    return LinearObservable(out)


def load_matrix(doc) -> list[list[complex]]:
    """4x4 matrix; entries are numbers, rational strings or ``[re, im]`` pairs."""
    if isinstance(doc, dict):
        doc = doc.get("M")
    if not isinstance(doc, list) or len(doc) != 4 or any(not isinstance(r, list) or len(r) != 4 for r in doc):
        raise ValueError("matrix must be a 4x4 nested list")

    def entry(x):
        if isinstance(x, (list, tuple)):
            re, im = x
            return complex(_num(re), _num(im))
        return complex(_num(x))

    return [[entry(x) for x in row] for row in doc]


def _num(x) -> float:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    return float(as_fraction(x))


def dump_modes(modes: ModeSet) -> dict:
    return {
        "field": modes.field,
        "mass": rational_str(modes.mass),
        "modes": [{"k": [rational_str(x) for x in m.k], "w": rational_str(m.w)} for m in modes.modes],
    }


def dump_state(state: FieldState) -> dict:
    doc = dump_modes(state.modes)
    for rec, amps in zip(doc["modes"], state.amplitudes):
        rec["a"] = [a.to_pair() for a in amps]
    return doc
