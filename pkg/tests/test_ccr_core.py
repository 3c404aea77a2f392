from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldquant.ccr_core import (
    CommutatorTable,
    Kind,
    Letter,
    MulMode,
    Phrase,
    SlotSpace,
    annihilate,
    conjugate,
    create,
    grade,
    is_normal_ordered,
    mul_add,
    normal_order,
    time_reversal_map,
    time_reverse,
    vacuum_expectation,
)
from fieldquant.errors import ConfigurationError, DataError
from fieldquant.scalars import CQ, I

from oracles import random_hermitian_table, random_phrase, random_word, wick_normal_form, wick_vev

S1 = SlotSpace.of_size(1)
S3 = SlotSpace.of_size(3)
OSC = CommutatorTable(S1, [[1]])

C0, A0 = Letter(Kind.CREATE, 0), Letter(Kind.ANNIHILATE, 0)


def a(space=S1, slot=0):
    return annihilate(slot, space)


def ad(space=S1, slot=0):
    return create(slot, space)


class TestPhraseAlgebra:
    def test_bilinear_product(self):
        assert (2 * ad()) * (3 * a()) == Phrase.word([C0, A0], S1, 6)

    def test_identity_word(self):
        w = Phrase.word([A0, C0, A0], S1, CQ(2, -1))
        assert Phrase.scalar(1, S1) * w == w
        assert w * Phrase.scalar(1, S1) == w

    def test_distributive(self):
        b, c = annihilate(1, S3), create(2, S3)
        a3 = annihilate(0, S3)
        assert (a3 + b) * c == a3 * c + b * c

    def test_add_scaled(self):
        p = mul_add(a(), ad(), I, MulMode.ADD_SCALED)
        assert p.coefficient([A0]) == 1
        assert p.coefficient([C0]) == I

    def test_zero_coefficients_dropped(self):
        p = a() - a()
        assert not p and p.terms == {}

    def test_space_mismatch(self):
        with pytest.raises(ConfigurationError):
            a(S1) * a(S3)
        with pytest.raises(ConfigurationError):
            Phrase.word([Letter(Kind.CREATE, 5)], S3)


class TestConjugate:
    def test_reverses_and_conjugates(self):
        p = Phrase.word([Letter(Kind.ANNIHILATE, 0), Letter(Kind.ANNIHILATE, 1)], S3, I)
        q = Phrase.word([Letter(Kind.CREATE, 1), Letter(Kind.CREATE, 0)], S3, -I)
        assert conjugate(p) == q

    def test_involution(self):
        assert conjugate(conjugate(a())) == a()

    def test_antilinear(self):
        p = annihilate(0, S3) + I * annihilate(1, S3)
        assert conjugate(p) == create(0, S3) - I * create(1, S3)


class TestNormalOrder:
    def test_single_commutator(self):
        assert normal_order(a() * ad(), OSC) == ad() * a() + 1

    def test_already_normal(self):
        p = annihilate(2, S3) * annihilate(0, S3)
        assert normal_order(p, random_hermitian_table(random.Random(0), S3)) == annihilate(0, S3) * annihilate(2, S3)

    def test_three_letters(self):
        assert normal_order(a() * ad() * ad(), OSC) == ad() * ad() * a() + 2 * ad()

    @pytest.mark.parametrize("strategy", ["insertion", "leftmost", "rightmost"])
    def test_strategies_agree_with_wick(self, strategy):
        rng = random.Random(11)
        for _ in range(40):
            table = random_hermitian_table(rng, S3)
            p = random_phrase(rng, S3)
            nf = normal_order(p, table, strategy)
            assert nf.terms == wick_normal_form(p, table)
            assert all(is_normal_ordered(w) for w in nf.terms)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            normal_order(a(), OSC, "random")

    def test_table_space_mismatch(self):
        with pytest.raises(ConfigurationError):
            normal_order(annihilate(0, S3), OSC)

    def test_vacuum_expectation(self):
        assert vacuum_expectation(a() ** 3 * ad() ** 3, OSC) == 6
        assert vacuum_expectation(ad() * a(), OSC) == 0


class TestCommutatorTable:
    def test_rejects_non_hermitian(self):
        with pytest.raises(DataError):
            CommutatorTable(SlotSpace.of_size(2), [[1, I], [I, 1]])

    def test_rejects_wrong_shape(self):
        with pytest.raises(DataError):
            CommutatorTable(SlotSpace.of_size(2), [[1]])


class TestGrade:
    @pytest.mark.parametrize(
        "word, expected",
        [((C0,), 1), ((C0, A0, A0), -1), ((), 0)],
    )
    def test_examples(self, word, expected):
        assert grade(word) == expected


class TestTimeReversal:
    def _kind_preserving_map(self):
        # slots 0 <-> 1 swapped, 2 fixed; kinds kept
        perm = [1, 0, 2]
        return {Letter(k, s): Letter(k, perm[s]) for k in Kind for s in range(3)}

    def test_word_reversal(self):
        m = self._kind_preserving_map()
        p = annihilate(0, S3) * create(2, S3)
        assert time_reverse(p, m) == create(2, S3) * annihilate(1, S3)

    def test_involution_and_linearity(self):
        rng = random.Random(5)
        m = time_reversal_map(S3, [1, 0, 2])
        for _ in range(20):
            p = random_phrase(rng, S3)
            assert time_reverse(time_reverse(p, m), m) == p
            assert time_reverse(I * p, m) == I * time_reverse(p, m)

    def test_non_involutive_map(self):
        m = {Letter(k, s): Letter(k, (s + 1) % 3) for k in Kind for s in range(3)}
        with pytest.raises(ConfigurationError):
            time_reverse(annihilate(0, S3), m)
        with pytest.raises(ConfigurationError):
            time_reversal_map(S3, [1, 2, 0])

    def test_preserves_vacuum_expectation(self):
        # holds when C[i][j] == C[pi j][pi i]
        rng = random.Random(8)
        table = CommutatorTable(S3, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]])
        m = time_reversal_map(S3, [1, 0, 2])
        for _ in range(30):
            p = random_phrase(rng, S3)
            assert vacuum_expectation(time_reverse(p, m), table) == vacuum_expectation(p, table)


# --------------------------------------------------------------------------
# properties
# --------------------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_confluence(seed):
    rng = random.Random(seed)
    table = random_hermitian_table(rng, S3)
    p = random_phrase(rng, S3)
    assert normal_order(p, table, "leftmost") == normal_order(p, table, "rightmost")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_idempotent_and_homomorphism(seed):
    rng = random.Random(seed)
    table = random_hermitian_table(rng, S3)
    p, q = random_phrase(rng, S3, 3, 4), random_phrase(rng, S3, 3, 4)
    nf = normal_order(p, table)
    assert normal_order(nf, table) == nf
    assert normal_order(p * q, table) == normal_order(nf * normal_order(q, table), table)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_conjugation_commutes_with_normal_order(seed):
    rng = random.Random(seed)
    table = random_hermitian_table(rng, S3)
    p = random_phrase(rng, S3)
    # conjugating a normal word reverses each block, so compare canonical forms
    assert normal_order(conjugate(normal_order(p, table)), table) == normal_order(conjugate(p), table)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_grade_preserved(seed):
    rng = random.Random(seed)
    table = random_hermitian_table(rng, S3)
    word = random_word(rng, len(S3))
    for w in normal_order(Phrase.word(word, S3), table).terms:
        assert grade(w) == grade(word)
    other = random_word(rng, len(S3))
    assert grade(word + other) == grade(word) + grade(other)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_time_reverse_antihomomorphism(seed):
    rng = random.Random(seed)
    m = time_reversal_map(S3, [2, 1, 0])
    p, q = random_phrase(rng, S3), random_phrase(rng, S3)
    assert time_reverse(p * q, m) == time_reverse(q, m) * time_reverse(p, m)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_vev_matches_perfect_matchings(seed):
    rng = random.Random(seed)
    table = random_hermitian_table(rng, S3)
    cre = [Letter(Kind.CREATE, rng.randrange(3)) for _ in range(rng.randint(0, 4))]
    ann = [Letter(Kind.ANNIHILATE, rng.randrange(3)) for _ in range(len(cre))]
    word = tuple(ann + cre)
    assert vacuum_expectation(Phrase.word(word, S3), table) == wick_vev(word, table)
