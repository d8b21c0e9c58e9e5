import itertools
import random

import pytest

from blockmonoid import (
    FgGroup,
    GroundSet,
    NotZeroSumError,
    PreconditionError,
    atoms_of,
    catenary_bounded,
    catenary_degree,
    delta_bounded,
    delta_star_bounded,
    distance,
    factorizations,
    length_set,
    sweep,
    tame_bounded,
)
from blockmonoid.factorization import delta_of, factorization_vectors, lengths_dp, tame_of_vectors

from oracles import ORACLE_GROUPS, brute_distance, brute_factorizations, brute_zero_sums, random_ground, threshold_catenary

Z = FgGroup(1)
Z3_SET = GroundSet.of(FgGroup(0, (3,)), [1, 2])
C4_SET = GroundSet.of(FgGroup(0, (4,)), [1, 2])


def fz(G0, mult):
    return factorizations(G0.sequence(mult), atoms_of(G0))


def products(fs):
    return sorted(tuple(a.mult for a, c in zip(f.atomset, f.counts) for _ in range(c)) for f in fs)


def test_factorization_examples():
    assert products(fz(Z3_SET, (3, 3))) == sorted([((0, 3), (3, 0)), ((1, 1),) * 3])
    assert products(fz(C4_SET, (4, 2))) == sorted([((0, 2), (4, 0)), ((2, 1),) * 2])
    for a in atoms_of(Z3_SET):
        (f,) = factorizations(a, atoms_of(Z3_SET))
        assert f.length == 1


def test_empty_sequence_has_the_empty_factorization():
    (f,) = fz(Z3_SET, (0, 0))
    assert f.length == 0
    assert length_set(Z3_SET.sequence((0, 0)), atoms_of(Z3_SET)) == (0,)
    assert catenary_degree(Z3_SET.sequence((0, 0)), atoms_of(Z3_SET)) == 0


def test_non_zero_sum_rejected():
    with pytest.raises(NotZeroSumError):
        fz(Z3_SET, (1, 0))


def test_length_and_delta_examples():
    A = atoms_of(Z3_SET)
    L = length_set(Z3_SET.sequence((3, 3)), A)
    assert L == (2, 3) and delta_of(L) == (1,)
    assert length_set(A[0], A) == (1,) and delta_of((1,)) == ()
    L4 = length_set(C4_SET.sequence((4, 2)), atoms_of(C4_SET))
    assert L4 == (2,) and delta_of(L4) == ()


def test_distance_examples():
    z, w = (f.counts for f in fz(Z3_SET, (3, 3)))
    assert distance(z, w) == 3
    assert distance(z, z) == 0
    assert distance((1, 0, 0), (1, 2, 1)) == 3


def test_catenary_examples():
    A = atoms_of(Z3_SET)
    assert catenary_degree(Z3_SET.sequence((3, 3)), A) == 3
    assert catenary_degree(A[1], A) == 0
    assert catenary_degree(C4_SET.sequence((4, 2)), atoms_of(C4_SET)) == 2


def test_bounded_examples():
    assert catenary_bounded(Z3_SET, 6) == 3
    assert catenary_bounded(Z3_SET, 0) == 0
    assert delta_bounded(Z3_SET, 6) == (1,)
    assert delta_bounded(GroundSet.of(Z, [0]), 8) == ()
    assert delta_star_bounded(Z3_SET, 6) == (1,)
    with pytest.raises(PreconditionError):
        catenary_bounded(Z3_SET, -1)


def _tame_oracle(G0, u, maxlen):
    A = atoms_of(G0).vectors
    best = 0
    for B in brute_zero_sums(G0.group, [g.coords for g in G0], maxlen):
        zs = brute_factorizations(B, A)
        through = [z for z in zs if z[u]]
        if through:
            best = max(best, max(min(brute_distance(z, w) for w in through) for z in zs))
    return best


def test_tame_bounded_matches_oracle():
    A = atoms_of(Z3_SET)
    u = [a.mult for a in A].index((1, 1))
    assert tame_bounded(Z3_SET, u, 6) == _tame_oracle(Z3_SET, u, 6) == 3
    for j in range(len(A)):
        assert tame_bounded(Z3_SET, j, 6) == _tame_oracle(Z3_SET, j, 6)


def test_tame_of_vectors_without_u():
    assert tame_of_vectors([(1, 0)], 1) is None


def _instances(n, seed):
    rng = random.Random(seed)
    return [random_ground(rng, rng.choice(ORACLE_GROUPS), rng.randint(1, 4)) for _ in range(n)]


@pytest.mark.parametrize("G0", _instances(15, 21), ids=str)
def test_enumeration_matches_bounded_product_search(G0):
    A = atoms_of(G0).vectors
    for B in brute_zero_sums(G0.group, [g.coords for g in G0], 7):
        zs = factorization_vectors(B, A)
        assert zs == brute_factorizations(B, A)
        # lengths by an independent recursion agree with the listed factorizations
        assert lengths_dp(B, A) == {sum(z) for z in zs}
        assert catenary_degree(G0.sequence(B), atoms_of(G0)) == threshold_catenary(zs)


@pytest.mark.parametrize("G0", _instances(10, 22), ids=str)
def test_products_and_metric_axioms(G0):
    A = atoms_of(G0)
    rng = random.Random(3)
    for B in brute_zero_sums(G0.group, [g.coords for g in G0], 8):
        fs = factorizations(G0.sequence(B), A)
        for f in fs:
            assert f.product().mult == B
        zs = [f.counts for f in fs]
        for _ in range(5):
            x, y, z = (rng.choice(zs) for _ in range(3))
            assert distance(x, y) == distance(y, x)
            assert (distance(x, y) == 0) == (x == y)
            assert distance(x, z) <= distance(x, y) + distance(y, z)
        c = catenary_degree(G0.sequence(B), A)
        assert (c == 0) == (len(fs) <= 1)
        assert c <= max(sum(z) for z in zs)


def test_c4_instance_is_half_factorial_to_length_10():
    for r in sweep(C4_SET, 10):
        assert len(r.lengths) == 1


@pytest.mark.parametrize("G0", _instances(8, 23), ids=str)
def test_local_distances_lie_in_the_bounded_union(G0):
    A = atoms_of(G0)
    for B in brute_zero_sums(G0.group, [g.coords for g in G0], 6):
        d = delta_of(length_set(G0.sequence(B), A))
        assert set(d) <= set(delta_bounded(G0, sum(B)))


def test_bounded_values_are_monotone_in_the_bound():
    G0 = GroundSet.of(FgGroup(0, (6,)), [1, 2, 3, 5])
    prev_c, prev_d = 0, set()
    for n in range(0, 9, 2):
        c = catenary_bounded(G0, n)
        d = set(delta_bounded(G0, n))
        assert c >= prev_c and d >= prev_d
        prev_c, prev_d = c, d


def test_sweep_is_independent_of_worker_count():
    G0 = GroundSet.of(FgGroup(0, (6,)), [1, 2, 3, 5])
    assert sweep(G0, 12, workers=1) == sweep(G0, 12, workers=4)


def test_delta_star_subset_cap():
    big = GroundSet.of(Z, list(range(-8, 9)))
    with pytest.raises(PreconditionError):
        delta_star_bounded(big, 2)


def test_delta_star_is_union_over_subsets():
    G0 = GroundSet.of(FgGroup(0, (6,)), [1, 2, 3])
    expected = set()
    for k in range(1, 4):
        for idx in itertools.combinations(range(3), k):
            d = delta_bounded(G0.subset(idx), 8)
            if d:
                expected.add(min(d))
    assert set(delta_star_bounded(G0, 8)) == expected
