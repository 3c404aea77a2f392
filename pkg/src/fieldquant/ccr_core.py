"""Free algebra of creation/annihilation letters and its normal form.

A :class:`Phrase` is a finite linear combination of words over the letters
``Create(slot)`` and ``Annihilate(slot)`` with exact complex coefficients.
The quotient by the canonical commutation relations is represented by the
normal form: every word has its Create letters (ascending slot) in front of
its Annihilate letters (ascending slot).  Mixed commutators are read from a
:class:`CommutatorTable`; letters of the same kind always commute.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import ConfigurationError, DataError
from .scalars import CQ, ONE, ZERO, as_cq

__all__ = [
    "Kind",
    "Letter",
    "SlotSpace",
    "Phrase",
    "CommutatorTable",
    "MulMode",
    "create",
    "annihilate",
    "mul_add",
    "conjugate",
    "normal_order",
    "vacuum_expectation",
    "grade",
    "time_reverse",
    "time_reversal_map",
    "is_normal_ordered",
]


class Kind(enum.IntEnum):
    CREATE = 1
    ANNIHILATE = -1

    @property
    def dual(self) -> "Kind":
        return Kind(-self.value)


class Letter(NamedTuple):
    kind: Kind
    slot: int

    def __repr__(self):
        return f"{'C' if self.kind == Kind.CREATE else 'A'}{self.slot}"


Word = tuple  # tuple[Letter, ...]


@dataclass(frozen=True)
class SlotSpace:
    """Registry of slots (mode x internal index) that letters refer to."""

    labels: tuple

    def __len__(self):
        return len(self.labels)

    @classmethod
    def of_size(cls, n: int, prefix: str = "s") -> "SlotSpace":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))


def _check_space(a: SlotSpace, b: SlotSpace):
    if a != b:
        raise ConfigurationError("operands are built on different mode sets")


class Phrase:
    """Canonical finite linear combination ``{word: coefficient}``.

    Zero coefficients are never stored, so equality is dictionary equality.
    """

    __slots__ = ("terms", "space")

    def __init__(self, terms: Mapping[tuple, object] | Iterable = (), space: SlotSpace | None = None):
        if space is None:
            raise ConfigurationError("a Phrase needs a SlotSpace")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, CQ] = {}
        n = len(space)
        for word, coef in items:
            word = tuple(word)
            for letter in word:
                if not 0 <= letter.slot < n:
                    raise ConfigurationError(f"slot {letter.slot} not in a {n}-slot space")
            c = as_cq(coef)
            acc[word] = acc.get(word, ZERO) + c
        self.terms = {w: c for w, c in acc.items() if c}
        self.space = space

    @classmethod
    def _trusted(cls, terms: dict, space: SlotSpace) -> "Phrase":
        obj = object.__new__(cls)
        obj.terms = {w: c for w, c in terms.items() if c}
        obj.space = space
        return obj

    @classmethod
    def word(cls, letters: Sequence[Letter], space: SlotSpace, coef=1) -> "Phrase":
        return cls({tuple(letters): coef}, space)

    @classmethod
    def scalar(cls, value, space: SlotSpace) -> "Phrase":
        return cls({(): value}, space)

    @classmethod
    def zero(cls, space: SlotSpace) -> "Phrase":
        return cls._trusted({}, space)

    # algebra --------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Phrase):
            other = Phrase.scalar(other, self.space)
        return mul_add(self, other, ONE, MulMode.ADD_SCALED)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Phrase):
            other = Phrase.scalar(other, self.space)
        return mul_add(self, other, -ONE, MulMode.ADD_SCALED)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Phrase._trusted({w: -c for w, c in self.terms.items()}, self.space)

    def __mul__(self, other):
        if isinstance(other, Phrase):
            return mul_add(self, other, ONE, MulMode.MULTIPLY)
        c = as_cq(other)
        return Phrase._trusted({w: v * c for w, v in self.terms.items()}, self.space)

    def __rmul__(self, other):
        c = as_cq(other)
        return Phrase._trusted({w: c * v for w, v in self.terms.items()}, self.space)

    def __pow__(self, n: int):
        out = Phrase.scalar(1, self.space)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Phrase):
            return self.space == other.space and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, word: Sequence[Letter]) -> CQ:
        return self.terms.get(tuple(word), ZERO)

    def __repr__(self):
        if not self.terms:
            return "Phrase(0)"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            parts.append(f"({c})*{''.join(map(repr, w)) or '1'}")
        return "Phrase(" + " + ".join(parts) + ")"


def create(slot: int, space: SlotSpace) -> Phrase:
    return Phrase.word([Letter(Kind.CREATE, slot)], space)


def annihilate(slot: int, space: SlotSpace) -> Phrase:
    return Phrase.word([Letter(Kind.ANNIHILATE, slot)], space)


class MulMode(enum.Enum):
    MULTIPLY = "multiply"
    ADD_SCALED = "add_scaled"


def mul_add(p: Phrase, q: Phrase, lam=ONE, mode: MulMode = MulMode.MULTIPLY) -> Phrase:
    """``p * q`` (distributed concatenation) or ``p + lam * q``."""
    _check_space(p.space, q.space)
    if mode is MulMode.ADD_SCALED:
        lam = as_cq(lam)
        out = dict(p.terms)
        for w, c in q.terms.items():
            out[w] = out.get(w, ZERO) + lam * c
        return Phrase._trusted(out, p.space)
    out: dict = defaultdict(lambda: ZERO)
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            out[w1 + w2] = out[w1 + w2] + c1 * c2
    return Phrase._trusted(out, p.space)


def conjugate(p: Phrase) -> Phrase:
    """Antilinear involution: reverse words, swap kinds, conjugate coefficients."""
    out = {}
    for w, c in p.terms.items():
        out[tuple(Letter(Kind(-l.kind), l.slot) for l in reversed(w))] = c.conj()
    return Phrase._trusted(out, p.space)


def grade(word: Sequence[Letter]) -> int:
    """Number of Create letters minus number of Annihilate letters."""
    return sum(int(l.kind) for l in word)


# --------------------------------------------------------------------------
# commutator table and normal ordering
# --------------------------------------------------------------------------


class CommutatorTable:
    """``entries[i][j] = [Annihilate(i), Create(j)]`` as an exact scalar.

    The matrix must be Hermitian; this is what makes the relation set closed
    under conjugation.
    """

    def __init__(self, space: SlotSpace, entries: Sequence[Sequence]):
        n = len(space)
        rows = tuple(tuple(as_cq(x) for x in row) for row in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DataError(f"commutator table must be {n}x{n}")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != rows[j][i].conj():
                    raise DataError(f"commutator table not Hermitian at ({i}, {j})")
        self.space = space
        self.entries = rows
        self._memo: dict[str, dict] = {}

    @classmethod
    def diagonal(cls, space: SlotSpace, diag: Sequence) -> "CommutatorTable":
        n = len(space)
        return cls(space, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __call__(self, i: int, j: int) -> CQ:
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, CommutatorTable):
            return self.space == other.space and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.space, self.entries))

    def __repr__(self):
        return f"CommutatorTable({[[str(x) for x in r] for r in self.entries]})"

    def memo(self, name: str) -> dict:
        return self._memo.setdefault(name, {})


def _sorted_normal(word: tuple) -> tuple:
    cre = sorted(l for l in word if l.kind == Kind.CREATE)
    ann = sorted(l for l in word if l.kind == Kind.ANNIHILATE)
    return tuple(cre) + tuple(ann)


def is_normal_ordered(word: Sequence[Letter]) -> bool:
    return tuple(word) == _sorted_normal(tuple(word))


def _insert_left(letter: Letter, word: tuple, table: CommutatorTable) -> list:
    """``letter * word`` for a normal-ordered ``word`` as a list of (word, coef)."""
    m = next((i for i, l in enumerate(word) if l.kind == Kind.ANNIHILATE), len(word))
    cre, ann = word[:m], word[m:]
    if letter.kind == Kind.CREATE:
        return [(tuple(sorted(cre + (letter,))) + ann, ONE)]
    out = [(cre + tuple(sorted(ann + (letter,))), ONE)]
    row = table.entries[letter.slot]
    for j, c in enumerate(cre):
        coef = row[c.slot]
        if coef:
            out.append((cre[:j] + cre[j + 1:] + ann, coef))
    return out


def _nf_insertion(word: tuple, table: CommutatorTable) -> dict:
    memo = table.memo("insertion")
    hit = memo.get(word)
    if hit is not None:
        return hit
    if not word:
        result = {(): ONE}
    else:
        tail = _nf_insertion(word[1:], table)
        acc: dict = {}
        for w, c in tail.items():
            for w2, c2 in _insert_left(word[0], w, table):
                acc[w2] = acc.get(w2, ZERO) + c * c2
        result = {w: c for w, c in acc.items() if c}
    memo[word] = result
    return result


def _out_of_order(a: Letter, b: Letter) -> bool:
    if a.kind == Kind.ANNIHILATE and b.kind == Kind.CREATE:
        return True
    return a.kind == b.kind and a.slot > b.slot


def _nf_swap(word: tuple, table: CommutatorTable, rightmost: bool) -> dict:
    name = "rightmost" if rightmost else "leftmost"
    memo = table.memo(name)
    hit = memo.get(word)
    if hit is not None:
        return hit
    positions = range(len(word) - 2, -1, -1) if rightmost else range(len(word) - 1)
    pos = next((i for i in positions if _out_of_order(word[i], word[i + 1])), None)
    if pos is None:
        result = {word: ONE}
    else:
        a, b = word[pos], word[pos + 1]
        swapped = word[:pos] + (b, a) + word[pos + 2:]
        acc = dict(_nf_swap(swapped, table, rightmost))
        if a.kind == Kind.ANNIHILATE and b.kind == Kind.CREATE:
            coef = table.entries[a.slot][b.slot]
            if coef:
                for w, c in _nf_swap(word[:pos] + word[pos + 2:], table, rightmost).items():
                    acc[w] = acc.get(w, ZERO) + coef * c
        result = {w: c for w, c in acc.items() if c}
    memo[word] = result
    return result


def normal_order(p: Phrase, table: CommutatorTable, strategy: str = "insertion") -> Phrase:
    """Rewrite ``p`` into normal form using ``[A_i, C_j] = table[i][j]``.

    ``strategy`` selects the rewriting order: ``"insertion"`` (default,
    letters are pushed onto an already-normal suffix), ``"leftmost"`` or
    ``"rightmost"`` (single adjacent swaps).  All three give the same result.
    """
    _check_space(p.space, table.space)
    if strategy == "insertion":
        nf = lambda w: _nf_insertion(w, table)  # noqa: E731
    elif strategy in ("leftmost", "rightmost"):
        right = strategy == "rightmost"
        nf = lambda w: _nf_swap(w, table, right)  # noqa: E731
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    acc: dict = {}
    for w, c in p.terms.items():
        for w2, c2 in nf(w).items():
            acc[w2] = acc.get(w2, ZERO) + c * c2
    return Phrase._trusted(acc, p.space)


def _vev_word(word: tuple, table: CommutatorTable) -> CQ:
    # Only the empty word of the normal form survives between vacua, so the
    # rewrite can drop every branch that keeps a letter: a leading Create is
    # killed by the bra vacuum, a leading Annihilate must contract with some
    # Create to its right.
    memo = table.memo("vev")
    hit = memo.get(word)
    if hit is not None:
        return hit
    if not word:
        return ONE
    first = word[0]
    if first.kind == Kind.CREATE or len(word) % 2:
        memo[word] = ZERO
        return ZERO
    total = ZERO
    row = table.entries[first.slot]
    rest = word[1:]
    for j, l in enumerate(rest):
        if l.kind == Kind.CREATE and row[l.slot]:
            total = total + row[l.slot] * _vev_word(rest[:j] + rest[j + 1:], table)
    memo[word] = total
    return total


def vacuum_expectation(p: Phrase, table: CommutatorTable) -> CQ:
    """Coefficient of the empty word in ``normal_order(p, table)``."""
    _check_space(p.space, table.space)
    total = ZERO
    for w, c in p.terms.items():
        if grade(w) == 0:
            v = _vev_word(w, table)
            if v:
                total = total + c * v
    return total


# --------------------------------------------------------------------------
# time reversal
# --------------------------------------------------------------------------


def _check_involution(letter_map: Mapping[Letter, Letter]):
    for a, b in letter_map.items():
        if letter_map.get(b) != a:
            raise ConfigurationError(f"letter map is not an involution at {a!r} -> {b!r}")


def time_reversal_map(space: SlotSpace, partner: Sequence[int]) -> dict:
    """Letter map sending ``Create(s) -> Annihilate(partner[s])`` and back.

    ``partner`` pairs each slot with the slot of the reversed-momentum mode
    (same internal index) and must itself be an involution.
    """
    n = len(space)
    if len(partner) != n:
        raise ConfigurationError("partner list does not cover the slot space")
    out = {}
    for s in range(n):
        t = partner[s]
        if partner[t] != s:
            raise ConfigurationError(f"slot partner map is not an involution at {s}")
        out[Letter(Kind.CREATE, s)] = Letter(Kind.ANNIHILATE, t)
        out[Letter(Kind.ANNIHILATE, s)] = Letter(Kind.CREATE, t)
    return out


def time_reverse(p: Phrase, letter_map: Mapping[Letter, Letter]) -> Phrase:
    """Anti-automorphism: map every letter, then reverse the word.

    Coefficients are carried over unchanged.
    """
    _check_involution(letter_map)
    out = {}
    for w, c in p.terms.items():
        try:
            out[tuple(letter_map[l] for l in reversed(w))] = c
        except KeyError as exc:
            raise ConfigurationError(f"letter {exc.args[0]!r} missing from letter map") from None
    return Phrase._trusted(out, p.space)
