"""Invariant quantizations and the Fock modules they generate.

A quantization splits the letters into a destroying and a creating half.
Variant 1 lets the positive-frequency amplitudes ``a`` destroy the vacuum;
variant 2 swaps the roles, so the conjugate amplitudes ``a*`` destroy it.
In either case the algebra letter ``Annihilate(s)`` is the destroyer on
slot ``s`` and the table holds ``[Annihilate(i), Create(j)]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ccr_core import (
    CommutatorTable,
    Kind,
    Letter,
    Phrase,
    SlotSpace,
    _vev_word,
    grade,
    normal_order,
    time_reversal_map,
    time_reverse,
)
from .classical_modes import Mode, ModeSet, amplitude, poisson_bracket
from .errors import ConfigurationError, DataError
from .exact_linalg import hermitian_inertia
from .scalars import CQ, I, ONE, ZERO, as_cq

__all__ = [
    "System",
    "Variant",
    "QuantizationChoice",
    "Quantization",
    "Ket",
    "Bra",
    "GramMatrix",
    "table_from_brackets",
    "build_quantization",
    "vacuum",
    "apply_to_vacuum",
    "inner",
    "level_basis",
    "gram_matrix",
    "gram_inertia",
    "grade_decompose",
    "reverse_ket",
    "reverse_bra",
]


class System(enum.Enum):
    OSCILLATOR = "oscillator"
    SCALAR = "scalar"
    EM4 = "em"


class Variant(enum.IntEnum):
    POSITIVE_FREQUENCY_DESTROYS = 1
    NEGATIVE_FREQUENCY_DESTROYS = 2


@dataclass(frozen=True)
class QuantizationChoice:
    """System, variant and (optionally) the mode set.

    Without modes the oscillator uses one rest-frame mode of unit mass and
    the vector field one light-like momentum ``(1, 0, 0, 1)``.
    """

    system: System
    variant: Variant = Variant.POSITIVE_FREQUENCY_DESTROYS
    modes: ModeSet | None = None

    def __post_init__(self):
        object.__setattr__(self, "system", System(self.system))
        object.__setattr__(self, "variant", Variant(self.variant))

    def mode_set(self) -> ModeSet:
        if self.modes is not None:
            expected = "em" if self.system is System.EM4 else "scalar"
            if self.modes.field != expected:
                raise ConfigurationError(f"{self.system.value} needs a {expected} mode set")
            if self.system is System.OSCILLATOR and len(self.modes) != 1:
                raise ConfigurationError("the oscillator has exactly one mode")
            return self.modes
        if self.system is System.EM4:
            return ModeSet("em", (Mode((1, 0, 0, 1)),))
        if self.system is System.OSCILLATOR:
            return ModeSet("scalar", (Mode((1, 0, 0, 0)),), mass=1)
        raise ConfigurationError("the scalar field needs an explicit mode set")


@dataclass(frozen=True)
class Quantization:
    choice: QuantizationChoice
    modes: ModeSet
    space: SlotSpace
    table: CommutatorTable
    letter_map: Mapping
    destroyer: str  # "a" or "a*": which classical amplitude Annihilate(s) stands for

    def create(self, mode: int = 0, comp: int = 0) -> Phrase:
        return Phrase.word([Letter(Kind.CREATE, self.modes.slot(mode, comp))], self.space)

    def annihilate(self, mode: int = 0, comp: int = 0) -> Phrase:
        return Phrase.word([Letter(Kind.ANNIHILATE, self.modes.slot(mode, comp))], self.space)

    def a(self, mode: int = 0, comp: int = 0) -> Phrase:
        """Quantum image of the positive-frequency amplitude ``a``."""
        return self.annihilate(mode, comp) if self.destroyer == "a" else self.create(mode, comp)

    def a_star(self, mode: int = 0, comp: int = 0) -> Phrase:
        """Quantum image of ``a*``."""
        return self.create(mode, comp) if self.destroyer == "a" else self.annihilate(mode, comp)


def table_from_brackets(space: SlotSpace, B: Sequence[Sequence], variant: Variant) -> CommutatorTable:
    """Quantum commutators from classical ``B[i][j] = {a_i, a_j*}``.

    The defining relation ``[x, y] = i {x, y}`` gives ``[a_i, a_j*] = i B_ij``
    (variant 1) or ``[a_i*, a_j] = -i B_ji`` (variant 2).
    """
    n = len(space)
    vals = [[as_cq(x) for x in row] for row in B]
    if len(vals) != n or any(len(r) != n for r in vals):
        raise DataError(f"bracket matrix must be {n}x{n}")
    if Variant(variant) is Variant.POSITIVE_FREQUENCY_DESTROYS:
        C = [[I * vals[i][j] for j in range(n)] for i in range(n)]
    else:
        C = [[-I * vals[j][i] for j in range(n)] for i in range(n)]
    return CommutatorTable(space, C)


def build_quantization(choice: QuantizationChoice) -> Quantization:
    modes = choice.mode_set()
    if not len(modes):
        raise ConfigurationError("the mode set is empty")
    space = modes.slot_space()
    n = len(space)
    index = [(m, c) for m in range(len(modes)) for c in range(modes.ncomp)]
    B = [
        [poisson_bracket(amplitude(*index[i]), amplitude(*index[j], conj=True), modes) for j in range(n)]
        for i in range(n)
    ]
    table = table_from_brackets(space, B, choice.variant)
    letter_map = time_reversal_map(space, modes.partner_slots())
    destroyer = "a" if choice.variant is Variant.POSITIVE_FREQUENCY_DESTROYS else "a*"
    return Quantization(choice, modes, space, table, letter_map, destroyer)


# --------------------------------------------------------------------------
# kets and bras
# --------------------------------------------------------------------------


class _Vector:
    _kind: Kind

    __slots__ = ("terms", "space")

    def __init__(self, terms: Mapping | Iterable = (), space: SlotSpace | None = None):
        if space is None:
            raise ConfigurationError("a Fock vector needs a SlotSpace")
        p = Phrase(terms, space)
        for w in p.terms:
            if any(l.kind != self._kind for l in w) or tuple(sorted(w)) != w:
                raise ValueError(f"{type(self).__name__} words must be sorted {self._kind.name} letters")
        self.terms = p.terms
        self.space = space

    @classmethod
    def _trusted(cls, terms: dict, space: SlotSpace):
        obj = object.__new__(cls)
        obj.terms = {w: c for w, c in terms.items() if c}
        obj.space = space
        return obj

    def as_phrase(self) -> Phrase:
        return Phrase._trusted(self.terms, self.space)

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.space != self.space:
            raise ConfigurationError("vectors live on different mode sets")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return type(self)._trusted(out, self.space)

    def __neg__(self):
        return type(self)._trusted({w: -c for w, c in self.terms.items()}, self.space)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rmul__(self, lam):
        lam = as_cq(lam)
        return type(self)._trusted({w: lam * c for w, c in self.terms.items()}, self.space)

    def __eq__(self, other):
        if type(other) is type(self):
            return self.space == other.space and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self.as_phrase()!r})"


class Ket(_Vector):
    """Fock vector: pure-Create normal words acting on the vacuum."""

    _kind = Kind.CREATE
    __slots__ = ()

    def bra(self) -> "Bra":
        out = {tuple(Letter(Kind.ANNIHILATE, l.slot) for l in w): c.conj() for w, c in self.terms.items()}
        return Bra._trusted(out, self.space)


class Bra(_Vector):
    """Conjugate Fock vector: pure-Annihilate words (slots ascending)."""

    _kind = Kind.ANNIHILATE
    __slots__ = ()

    def ket(self) -> Ket:
        out = {tuple(Letter(Kind.CREATE, l.slot) for l in w): c.conj() for w, c in self.terms.items()}
        return Ket._trusted(out, self.space)


def vacuum(space: SlotSpace) -> Ket:
    return Ket._trusted({(): ONE}, space)


def apply_to_vacuum(op: Phrase, table: CommutatorTable) -> Ket:
    """``op|0>``: normal-order, then drop every word with an Annihilate letter."""
    nf = normal_order(op, table)
    return Ket._trusted({w: c for w, c in nf.terms.items() if all(l.kind == Kind.CREATE for l in w)}, op.space)


@dataclass(frozen=True)
class GramMatrix:
    basis: tuple
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i].conj():
                    raise ArithmeticError("Gram matrix is not Hermitian")

    def __len__(self):
        return len(self.basis)


def inner(x: Bra, y: Ket, table: CommutatorTable) -> CQ:
    """``<x|y>``: vacuum expectation of the product ``x y``."""
    if x.space != y.space or x.space != table.space:
        raise ConfigurationError("bra, ket and table live on different mode sets")
    total = ZERO
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            if len(wx) != len(wy):
                continue
            v = _vev_word(wx + wy, table)
            if v:
                total = total + cx * cy * v
    return total


def level_basis(n: int, space: SlotSpace, slots: Sequence[int] | None = None) -> list[Ket]:
    """Monomial kets of grade ``n``: multisets of Create slots, ascending."""
    if n < 0:
        raise ValueError("grade must be non-negative")
    slots = sorted(range(len(space)) if slots is None else slots)
    out = []
    for combo in itertools.combinations_with_replacement(slots, n):
        out.append(Ket._trusted({tuple(Letter(Kind.CREATE, s) for s in combo): ONE}, space))
    return out


def gram_matrix(basis: Sequence[Ket], table: CommutatorTable) -> GramMatrix:
    basis = tuple(basis)
    bras = [k.bra() for k in basis]
    n = len(basis)
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = inner(bras[i], basis[j], table)
            rows[i][j] = v
            rows[j][i] = v.conj()
    return GramMatrix(basis, tuple(tuple(r) for r in rows))


def gram_inertia(basis: Sequence[Ket], table: CommutatorTable) -> tuple[GramMatrix, tuple[int, int, int]]:
    """Exact Gram matrix and its inertia ``(n_pos, n_neg, n_zero)``."""
    G = gram_matrix(basis, table)
    return G, hermitian_inertia([list(r) for r in G.entries])


def grade_decompose(k: Ket) -> dict[int, Ket]:
    parts: dict[int, dict] = {}
    for w, c in k.terms.items():
        parts.setdefault(grade(w), {})[w] = c
    return {g: Ket._trusted(t, k.space) for g, t in sorted(parts.items())}


def _reversed_terms(v: _Vector, letter_map: Mapping) -> dict:
    # letters of one kind commute, so the reversed word is re-sorted
    out: dict = {}
    for w, c in time_reverse(v.as_phrase(), letter_map).terms.items():
        key = tuple(sorted(w))
        out[key] = out.get(key, ZERO) + c
    return out


def reverse_ket(k: Ket, letter_map: Mapping) -> Bra:
    """Time reversal of a ket; with a kind-swapping letter map it is a bra."""
    return Bra(_reversed_terms(k, letter_map), k.space)


def reverse_bra(b: Bra, letter_map: Mapping) -> Ket:
    return Ket(_reversed_terms(b, letter_map), b.space)
