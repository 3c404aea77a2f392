"""Independent reference computations used by the tests.

Nothing here calls the rewriting engine: normal forms come from Wick's
theorem (sum over contractions), Gram inertia from floating eigenvalues,
and Poisson brackets from inverting the symplectic matrix.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from fieldquant.ccr_core import CommutatorTable, Kind, Letter, Phrase, SlotSpace
from fieldquant.classical_modes import FieldState, symplectic_eval
from fieldquant.fock import Ket
from fieldquant.scalars import CQ, ZERO


# --------------------------------------------------------------------------
# random exact data
# --------------------------------------------------------------------------


def random_fraction(rng: random.Random, span: int = 5, denom: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, denom))


def random_cq(rng: random.Random, span: int = 5, denom: int = 3) -> CQ:
    return CQ(random_fraction(rng, span, denom), random_fraction(rng, span, denom))


def random_word(rng: random.Random, nslots: int, max_len: int = 6) -> tuple:
    n = rng.randint(0, max_len)
    return tuple(Letter(rng.choice((Kind.CREATE, Kind.ANNIHILATE)), rng.randrange(nslots)) for _ in range(n))


def random_phrase(rng: random.Random, space: SlotSpace, max_words: int = 5, max_len: int = 6) -> Phrase:
    terms = {}
    for _ in range(rng.randint(1, max_words)):
        terms[random_word(rng, len(space), max_len)] = random_cq(rng)
    return Phrase(terms, space)


def random_hermitian_table(rng: random.Random, space: SlotSpace) -> CommutatorTable:
    n = len(space)
    C = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = CQ(random_fraction(rng))
        for j in range(i + 1, n):
            z = random_cq(rng) if rng.random() < 0.6 else ZERO
            C[i][j] = z
            C[j][i] = z.conj()
    return CommutatorTable(space, C)


def random_ket(rng: random.Random, space: SlotSpace, max_grade: int = 3, max_terms: int = 4) -> Ket:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        g = rng.randint(0, max_grade)
        w = tuple(sorted(Letter(Kind.CREATE, rng.randrange(len(space))) for _ in range(g)))
        terms[w] = random_cq(rng)
    return Ket(terms, space)


# --------------------------------------------------------------------------
# Wick's theorem
# --------------------------------------------------------------------------


def _matchings(positions: list[int], word: tuple):
    """Partial matchings of (annihilator at i, creator at j) pairs with i < j."""
    if not positions:
        yield []
        return
    first, rest = positions[0], positions[1:]
    # ``first`` stays unmatched
    for m in _matchings(rest, word):
        yield m
    if word[first].kind == Kind.ANNIHILATE:
        for idx, j in enumerate(rest):
            if word[j].kind == Kind.CREATE:
                for m in _matchings(rest[:idx] + rest[idx + 1:], word):
                    yield [(first, j)] + m


def wick_normal_form(p: Phrase, table: CommutatorTable) -> dict:
    """Normal form from Wick's theorem: sum over contractions of leftover sorted words."""
    out: dict = {}
    for word, coef in p.terms.items():
        for m in _matchings(list(range(len(word))), word):
            c = coef
            for i, j in m:
                c = c * table(word[i].slot, word[j].slot)
            if not c:
                continue
            used = {x for pair in m for x in pair}
            left = [word[i] for i in range(len(word)) if i not in used]
            cre = sorted(l for l in left if l.kind == Kind.CREATE)
            ann = sorted(l for l in left if l.kind == Kind.ANNIHILATE)
            key = tuple(cre) + tuple(ann)
            out[key] = out.get(key, ZERO) + c
    return {w: c for w, c in out.items() if c}


def wick_vev(word: tuple, table: CommutatorTable) -> CQ:
    """Vacuum expectation as a sum over perfect matchings."""
    n = len(word)
    if n % 2:
        return ZERO
    total = ZERO
    for m in _matchings(list(range(n)), word):
        if 2 * len(m) != n:
            continue
        c = CQ(1)
        for i, j in m:
            c = c * table(word[i].slot, word[j].slot)
        total = total + c
    return total


# --------------------------------------------------------------------------
# floating-point cross-checks
# --------------------------------------------------------------------------


def float_inertia(entries, tol: float = 1e-9) -> tuple[int, int, int]:
    H = np.array([[complex(x) for x in row] for row in entries], dtype=complex)
    if H.size == 0:
        return (0, 0, 0)
    lam = np.linalg.eigvalsh(H)
    scale = max(1.0, float(np.abs(lam).max()))
    pos = int(np.sum(lam > tol * scale))
    neg = int(np.sum(lam < -tol * scale))
    return pos, neg, len(lam) - pos - neg


# --------------------------------------------------------------------------
# Poisson brackets by inverting the symplectic matrix
# --------------------------------------------------------------------------


def real_basis_states(modes):
    """States with a single amplitude equal to 1 or i; real coordinates (Re a, Im a)."""
    out = []
    for m in range(len(modes)):
        for c in range(modes.ncomp):
            for unit in (CQ(1), CQ(0, 1)):
                amps = [[CQ(0)] * modes.ncomp for _ in range(len(modes))]
                amps[m][c] = unit
                out.append(FieldState(modes, tuple(tuple(a) for a in amps)))
    return out


def bracket_by_inversion(f_terms: dict, g_terms: dict, modes) -> CQ:
    """``{f, g} = l_f^T Omega^{-1} l_g`` in real coordinates, computed exactly."""
    import sympy

    basis = real_basis_states(modes)
    n = len(basis)
    Om = sympy.Matrix(n, n, lambda i, j: sympy.Rational(symplectic_eval(basis[i], basis[j])))
    inv = Om.inv()

    def coeffs(terms):
        # d/dx and d/dy of coef * a (conj=False) or coef * conj(a)
        v = [sympy.Integer(0)] * n
        for (m, c, conj), coef in terms.items():
            z = sympy.Rational(coef.re) + sympy.I * sympy.Rational(coef.im)
            idx = 2 * (m * modes.ncomp + c)
            v[idx] += z
            v[idx + 1] += z * (-sympy.I if conj else sympy.I)
        return sympy.Matrix(v)

    val = sympy.expand((coeffs(f_terms).T * inv * coeffs(g_terms))[0, 0])
    re, im = sympy.re(val), sympy.im(val)
    return CQ(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
