import random
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockmonoid import (
    FgGroup,
    GroundSet,
    UndefinedExponentError,
    ZSequence,
    atoms_of,
    condense,
    davenport,
    exponent_e,
    is_condensed,
    is_zero_sum,
    seq_sum,
    zero_sum_sequences,
)
from blockmonoid.zerosum import clear_atom_memo, restrict_atoms

from oracles import ORACLE_GROUPS, brute_zero_sums, has_proper_zero_sum, random_ground

Z = FgGroup(1)
Z3 = FgGroup(0, (3,))
C4 = FgGroup(0, (4,))


def mults(A):
    return [a.mult for a in A]


def test_ground_set_rejects_duplicates_and_foreign_elements():
    with pytest.raises(ValueError):
        GroundSet.of(Z, [1, 1])
    with pytest.raises(ValueError):
        GroundSet(Z, (Z.element((1,)), C4.element((1,))))


def test_sequence_basics():
    G0 = GroundSet.of(Z, [1, -2, 3])
    S = G0.sequence((2, 1, 0))
    T = G0.sequence((2, 3, 1))
    assert S.length == len(S) == 3
    assert S.support == (0, 1)
    assert S.divides(T) and not T.divides(S)
    assert (S * T).mult == (4, 4, 1)
    with pytest.raises(ValueError):
        G0.sequence((1, -1, 0))


def test_seq_sum_examples():
    assert is_zero_sum(GroundSet.of(Z, [1, -2]).sequence((2, 1)))
    assert seq_sum(GroundSet.of(Z, [1]).sequence((0,))).is_zero()
    assert is_zero_sum(GroundSet.of(Z3, [1, 2]).sequence((1, 1)))
    assert seq_sum(GroundSet.of(Z, [1, 5]).sequence((2, 1))) == Z.element((7,))


def test_atom_examples():
    assert mults(atoms_of(GroundSet.of(Z3, [1, 2]))) == [(0, 3), (1, 1), (3, 0)]
    assert mults(atoms_of(GroundSet.of(Z, [1, -2]))) == [(2, 1)]
    for G in (Z, C4, FgGroup(2)):
        assert mults(atoms_of(GroundSet(G, (G.zero(),)))) == [(1,)]
    assert mults(atoms_of(GroundSet.of(Z, []))) == []


def test_condensed_examples():
    one = GroundSet.of(Z, [1])
    assert not is_condensed(one)
    assert len(condense(one)) == 0
    assert is_condensed(GroundSet.of(Z, [-2, -1, 0, 1, 2]))
    assert is_condensed(GroundSet.of(C4, [1, 2]))


def test_exponent_examples():
    assert exponent_e(GroundSet.of(C4, [1, 2]), 0) == (2, 2)
    assert exponent_e(GroundSet.of(C4, [1, 2]), 1) == (1, 1)
    assert exponent_e(GroundSet.of(Z, [0]), 0) == (1, 1)
    G0 = GroundSet.of(FgGroup(2), [(1, 0), (-2, 0), (-3, 0)])
    assert exponent_e(G0, 0) == (1, 2)
    with pytest.raises(UndefinedExponentError):
        exponent_e(GroundSet.of(Z, [1, 2]), 0)


def test_davenport_examples():
    assert davenport(GroundSet.of(Z3, [1, 2])) == 3
    assert davenport(GroundSet.of(Z, [0])) == 1
    assert davenport(GroundSet.of(C4, [1])) == 4
    assert davenport(GroundSet.of(Z, [1])) == 0


def _instances(n, seed):
    rng = random.Random(seed)
    return [random_ground(rng, rng.choice(ORACLE_GROUPS), rng.randint(1, 4)) for _ in range(n)]


@pytest.mark.parametrize("G0", _instances(20, 7), ids=str)
def test_atoms_are_minimal_zero_sums(G0):
    cols = [g.coords for g in G0]
    for a in atoms_of(G0):
        assert is_zero_sum(a) and a.length > 0
        if a.length <= 12:
            assert not has_proper_zero_sum(G0.group, cols, a.mult)


@pytest.mark.parametrize("G0", _instances(12, 8), ids=str)
def test_products_of_atoms_are_zero_sum_and_reducible(G0):
    A = list(atoms_of(G0))
    rng = random.Random(1)
    for _ in range(10):
        if not A:
            break
        P = rng.choice(A) * rng.choice(A)
        assert is_zero_sum(P)
        assert any(a.divides(P) for a in A)


@pytest.mark.parametrize("G0", _instances(12, 9), ids=str)
def test_exponent_divides_every_valuation(G0):
    cols = [g.coords for g in G0]
    bounded = brute_zero_sums(G0.group, cols, 8)
    for i in range(len(G0)):
        try:
            d, m = exponent_e(G0, i)
        except UndefinedExponentError:
            assert all(x[i] == 0 for x in bounded)
            continue
        assert m % d == 0
        assert all(x[i] % d == 0 for x in bounded)


@pytest.mark.parametrize("G0", _instances(12, 10), ids=str)
def test_condense_is_idempotent_and_keeps_atoms(G0):
    C = condense(G0)
    assert condense(C) == C
    kept = [G0.index(g) for g in C]
    assert mults(atoms_of(C)) == mults(restrict_atoms(atoms_of(G0), kept))
    assert len(atoms_of(C)) == len(atoms_of(G0))


def test_zero_sum_sequences_are_complete_and_ordered():
    G0 = GroundSet.of(FgGroup(1, (2,)), [(1, 0), (-1, 1), (0, 1), (2, 1)])
    got = [B.mult for B in zero_sum_sequences(G0, 6)]
    assert got == sorted(got)
    assert got == sorted(brute_zero_sums(G0.group, [g.coords for g in G0], 6))


def test_memo_is_thread_safe_and_idempotent():
    G0 = GroundSet.of(FgGroup(2), [(2, 1), (-1, 3), (-3, -4), (1, -2)])
    clear_atom_memo()
    results = []

    def work():
        results.append(atoms_of(G0))

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert atoms_of(G0) is atoms_of(G0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4, unique=True))
def test_atoms_in_z_balance_signs(vals):
    G0 = GroundSet.of(Z, vals)
    for a in atoms_of(G0):
        pos = sum(v * x for v, x in zip(vals, a.mult) if x > 0 and v > 0)
        neg = sum(-v * x for v, x in zip(vals, a.mult) if x > 0 and v < 0)
        assert pos == neg
