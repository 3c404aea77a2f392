"""Subsidiary condition for a single photon momentum.

An ``n``-photon state on the light-like momentum ``k`` is
``T_{mu...rho} a*_mu ... a*_rho |0>`` with a symmetric coefficient tensor
``T``.  Every repeated index is summed with the metric diag(+1, -1, -1, -1),
including the contraction of ``T`` with the creation letters, so the ket
coefficient of ``a*_mu ... a*_rho`` is ``g_mu_mu ... g_rho_rho T_{mu...rho}``.
Tensors are stored by multiset of indices; the ``C(n+3, 3)`` independent
components are the coordinates.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .ccr_core import CommutatorTable, Kind, Letter, Phrase
from .classical_modes import METRIC, Mode, ModeSet, minkowski
from .errors import ConfigurationError, DomainError
from .exact_linalg import nullspace
from .fock import GramMatrix, Ket, QuantizationChoice, System, Variant, apply_to_vacuum, build_quantization, gram_inertia
from .scalars import CQ, ZERO, as_cq, as_fraction

__all__ = [
    "LightlikeMomentum",
    "SymmetricTensor",
    "multisets",
    "em_table",
    "tensor_to_ket",
    "ket_to_tensor",
    "constraint_apply",
    "contract_k",
    "constrained_basis",
    "tensor_inner",
    "norm_formula",
    "positivity_report",
    "gauge_basis",
]


@dataclass(frozen=True)
class LightlikeMomentum:
    k: tuple

    def __post_init__(self):
        k = tuple(as_fraction(x) for x in self.k)
        if len(k) != 4:
            raise DomainError("momentum needs 4 components")
        if not any(k):
            raise DomainError("momentum must be nonzero")
        if minkowski(k, k):
            raise DomainError(f"{k} is not light-like")
        object.__setattr__(self, "k", k)

    def lowered(self) -> tuple:
        """``g_mu_mu k_mu``; contracting with this is the Minkowski product."""
        return tuple(METRIC[mu] * self.k[mu] for mu in range(4))


@lru_cache(maxsize=None)
def multisets(n: int) -> tuple:
    """Sorted index multisets of size ``n`` over {0, 1, 2, 3}, lexicographic."""
    return tuple(itertools.combinations_with_replacement(range(4), n))


def _sign(m: tuple) -> int:
    out = 1
    for mu in m:
        out *= METRIC[mu]
    return out


@lru_cache(maxsize=None)
def _multiplicity(m: tuple) -> int:
    """Number of index tuples that sort to ``m``."""
    out = math.factorial(len(m))
    for c in Counter(m).values():
        out //= math.factorial(c)
    return out


class SymmetricTensor:
    """Fully symmetric rank-``n`` tensor over four indices."""

    __slots__ = ("rank", "components")

    def __init__(self, rank: int, components: Mapping[tuple, object] | None = None):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        comps = {}
        for key, v in (components or {}).items():
            key = tuple(sorted(key))
            if len(key) != rank or any(not 0 <= i < 4 for i in key):
                raise ValueError(f"bad index {key} for rank {rank}")
            v = as_cq(v)
            if key in comps and comps[key] != v:
                raise ValueError(f"components disagree under permutation at {key}")
            comps[key] = v
        self.rank = rank
        self.components = {k: v for k, v in comps.items() if v}

    @classmethod
    def from_vector(cls, rank: int, vec: Sequence) -> "SymmetricTensor":
        keys = multisets(rank)
        if len(vec) != len(keys):
            raise ValueError(f"expected {len(keys)} coordinates")
        return cls(rank, dict(zip(keys, vec)))

    @classmethod
    def from_full(cls, rank: int, entries: Mapping[tuple, object]) -> "SymmetricTensor":
        """From a map over all index tuples; raises if it is not symmetric."""
        comps: dict = {}
        for idx in itertools.product(range(4), repeat=rank):
            v = as_cq(entries.get(idx, 0))
            key = tuple(sorted(idx))
            if key in comps and comps[key] != v:
                raise ValueError(f"not symmetric at {idx}")
            comps[key] = v
        return cls(rank, comps)

    @classmethod
    def vector(cls, v: Sequence) -> "SymmetricTensor":
        return cls(1, {(mu,): v[mu] for mu in range(4)})

    def __getitem__(self, idx) -> CQ:
        return self.components.get(tuple(sorted(idx)), ZERO)

    def to_vector(self) -> list[CQ]:
        return [self[m] for m in multisets(self.rank)]

    def _like(self, other):
        if not isinstance(other, SymmetricTensor):
            return NotImplemented
        if other.rank != self.rank:
            raise ValueError("ranks differ")
        return other

    def __add__(self, other):
        if self._like(other) is NotImplemented:
            return NotImplemented
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out.get(k, ZERO) + v
        return SymmetricTensor(self.rank, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, lam):
        lam = as_cq(lam)
        return SymmetricTensor(self.rank, {k: lam * v for k, v in self.components.items()})

    def __eq__(self, other):
        if isinstance(other, SymmetricTensor):
            return self.rank == other.rank and self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.components.items())))

    def __bool__(self):
        return bool(self.components)

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, k))}: {v}" for k, v in sorted(self.components.items()))
        return f"SymmetricTensor({self.rank}, {{{body}}})"

    def sym_product(self, other: "SymmetricTensor") -> "SymmetricTensor":
        """Symmetrized tensor product ``sym(self (x) other)``."""
        n = self.rank + other.rank
        out = {}
        denom = math.comb(n, self.rank)
        for m in multisets(n):
            total = ZERO
            # each way of choosing the positions of ``self`` inside ``m``
            for pos in itertools.combinations(range(n), self.rank):
                a = tuple(m[i] for i in pos)
                b = tuple(m[i] for i in range(n) if i not in pos)
                total = total + self[a] * other[b]
            if total:
                out[m] = total / denom
        return SymmetricTensor(n, out)


# --------------------------------------------------------------------------
# kets and the constraint operator
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _em_quantization():
    modes = ModeSet("em", (Mode((1, 0, 0, 1)),))
    return build_quantization(QuantizationChoice(System.EM4, Variant.POSITIVE_FREQUENCY_DESTROYS, modes))


def em_table() -> CommutatorTable:
    """Table of the single-momentum vector oscillator, ``[a_mu, a_nu*] = -g_mu_nu``.

    It does not depend on which light-like momentum labels the mode.
    """
    return _em_quantization().table


def _check_em(table: CommutatorTable):
    if len(table.space) != 4:
        raise ConfigurationError("expected the 4-slot single-momentum vector oscillator")


def tensor_to_ket(T: SymmetricTensor, table: CommutatorTable | None = None) -> Ket:
    """``T_{mu...rho} a*_mu ... a*_rho |0>`` with Minkowski index sums."""
    space = (table or em_table()).space
    terms = {}
    for m, v in T.components.items():
        terms[tuple(Letter(Kind.CREATE, mu) for mu in m)] = v * (_sign(m) * _multiplicity(m))
    return Ket._trusted(terms, space)


def ket_to_tensor(ket: Ket, rank: int) -> SymmetricTensor:
    comps = {}
    for w, c in ket.terms.items():
        if len(w) != rank:
            raise ValueError(f"ket has a component of grade {len(w)}, expected {rank}")
        m = tuple(l.slot for l in w)
        comps[m] = c / (_sign(m) * _multiplicity(m))
    return SymmetricTensor(rank, comps)


def constraint_apply(state: Ket, k: LightlikeMomentum, table: CommutatorTable | None = None) -> Ket:
    """``k_mu a_mu |state>`` with the Minkowski contraction ``sum g_mu_mu k_mu a_mu``.

    On ``|T>`` of rank ``n`` this gives ``-n |k.T>``, so the kernel is
    exactly the set of tensors with ``k.T = 0``.
    """
    table = table or em_table()
    _check_em(table)
    if state.space != table.space:
        raise ConfigurationError("state and table live on different mode sets")
    op = Phrase(
        {(Letter(Kind.ANNIHILATE, mu),): c for mu, c in enumerate(k.lowered()) if c},
        table.space,
    )
    return apply_to_vacuum(op * state.as_phrase(), table)


def contract_k(T: SymmetricTensor, k: LightlikeMomentum) -> SymmetricTensor:
    """``k^mu T_{mu nu ... rho}`` (Minkowski), a rank ``n-1`` tensor."""
    if T.rank == 0:
        raise ValueError("cannot contract a scalar")
    kl = k.lowered()
    out = {}
    for r in multisets(T.rank - 1):
        out[r] = sum((kl[mu] * T[r + (mu,)] for mu in range(4) if kl[mu]), ZERO)
    return SymmetricTensor(T.rank - 1, out)


def _contraction_matrix(n: int, k: LightlikeMomentum) -> list[list[Fraction]]:
    kl = k.lowered()
    cols = {m: i for i, m in enumerate(multisets(n))}
    rows = []
    for r in multisets(n - 1):
        row = [Fraction(0)] * len(cols)
        for mu in range(4):
            if kl[mu]:
                row[cols[tuple(sorted(r + (mu,)))]] += kl[mu]
        rows.append(row)
    return rows


def constrained_basis(n: int, k: LightlikeMomentum) -> list[SymmetricTensor]:
    """Basis of symmetric rank-``n`` tensors with ``k . T = 0``; ``C(n+2, 2)`` elements."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [SymmetricTensor(0, {(): 1})]
    vecs = nullspace(_contraction_matrix(n, k), Fraction(0), Fraction(1))
    return [SymmetricTensor.from_vector(n, v) for v in vecs]


def tensor_inner(T: SymmetricTensor, U: SymmetricTensor) -> CQ:
    """``<T|U> = (-1)^n n! conj(T) . U`` with every index contracted by ``g``."""
    if T.rank != U.rank:
        return ZERO
    n = T.rank
    total = ZERO
    for m, v in T.components.items():
        w = U[m]
        if w:
            total = total + v.conj() * w * (_sign(m) * _multiplicity(m))
    return total * ((-1) ** n * math.factorial(n))


def norm_formula(T: SymmetricTensor) -> Fraction:
    v = tensor_inner(T, T)
    assert not v.im
    return v.re


def positivity_report(n: int, k: LightlikeMomentum) -> tuple[int, int, int, GramMatrix]:
    """Inertia ``(n_pos, n_zero, n_neg)`` and Gram matrix on ``constrained_basis(n, k)``.

    The Gram matrix is assembled through the normal-ordering engine, not
    from :func:`norm_formula`.
    """
    table = em_table()
    kets = [tensor_to_ket(T, table) for T in constrained_basis(n, k)]
    G, (pos, neg, zero) = gram_inertia(kets, table)
    return pos, zero, neg, G


def gauge_basis(n: int, k: LightlikeMomentum) -> list[SymmetricTensor]:
    """``sym(k (x) S)`` for ``S`` in ``constrained_basis(n - 1, k)``; empty for ``n = 0``."""
    if n <= 0:
        return []
    kt = SymmetricTensor.vector(k.k)
    return [kt.sym_product(S) for S in constrained_basis(n - 1, k)]
