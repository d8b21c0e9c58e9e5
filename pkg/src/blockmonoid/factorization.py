"""Factorizations into atoms and the arithmetic invariants built on them.

Monoid-level invariants (catenary degree, tame degree, distance sets) are
only ever computed over zero-sum sequences up to a length bound. Those
values are lower bounds for the true invariants; no claim is made about the
bound at which they stabilize.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ._parallel import parallel_map
from .errors import NotZeroSumError, PreconditionError
from .zerosum import AtomSet, GroundSet, ZSequence, atoms_of, is_zero_sum, restrict_atoms, zero_sum_sequences

Vector = tuple[int, ...]

MAX_SUBSET_GROUND = 16


@dataclass(frozen=True)
class Factorization:
    atomset: AtomSet
    counts: Vector

    @property
    def length(self) -> int:
        return sum(self.counts)

    def __len__(self):
        return self.length

    def product(self) -> ZSequence:
        n = len(self.atomset.ground)
        acc = [0] * n
        for c, a in zip(self.counts, self.atomset):
            if c:
                for i, v in enumerate(a.mult):
                    acc[i] += c * v
        return ZSequence(self.atomset.ground, tuple(acc))

    def contains(self, u: int) -> bool:
        return self.counts[u] > 0


def _check(B: ZSequence, atoms: AtomSet):
    if B.ground != atoms.ground:
        raise ValueError("sequence and atom set are over different ground sets")
    if not is_zero_sum(B):
        raise NotZeroSumError(f"{B} is not a zero-sum sequence")


def factorization_vectors(mult: Vector, atom_vectors: Sequence[Vector]) -> list[Vector]:
    """All count vectors ``c`` with ``sum c_j * atom_j == mult``, lexicographically sorted."""
    atoms = tuple(atom_vectors)
    na = len(atoms)
    n = len(mult)
    # last atom index covering each coordinate, for feasibility pruning
    last = [max((j for j, a in enumerate(atoms) if a[i]), default=-1) for i in range(n)]

    @lru_cache(maxsize=None)
    def rec(res: Vector, j: int) -> tuple[Vector, ...]:
        if not any(res):
            return ((0,) * (na - j),)
        if j == na:
            return ()
        if any(v and last[i] < j for i, v in enumerate(res)):
            return ()
        a = atoms[j]
        kmax = min((res[i] // v for i, v in enumerate(a) if v), default=0)
        out = []
        for k in range(kmax + 1):
            nres = tuple(r - k * v for r, v in zip(res, a)) if k else res
            for tail in rec(nres, j + 1):
                out.append((k,) + tail)
        return tuple(out)

    if na == 0:
        return [()] if not any(mult) else []
    return sorted(rec(tuple(mult), 0))


def factorizations(B: ZSequence, atoms: AtomSet) -> list[Factorization]:
    _check(B, atoms)
    return [Factorization(atoms, c) for c in factorization_vectors(B.mult, atoms.vectors)]


def lengths_dp(mult: Vector, atom_vectors: Sequence[Vector]) -> frozenset[int]:
    """Set of lengths by recursion on the first support index (no factorization listing)."""
    atoms = tuple(atom_vectors)
    by_first: dict[int, list[Vector]] = {}
    for a in atoms:
        by_first.setdefault(next(i for i, v in enumerate(a) if v), []).append(a)
    covering = {i: [a for a in atoms if a[i]] for i in range(len(mult))}

    @lru_cache(maxsize=None)
    def rec(res: Vector) -> frozenset[int]:
        i = next((k for k, v in enumerate(res) if v), None)
        if i is None:
            return frozenset({0})
        out = set()
        for a in covering[i]:
            if all(x <= y for x, y in zip(a, res)):
                out.update(l + 1 for l in rec(tuple(y - x for x, y in zip(a, res))))
        return frozenset(out)

    return rec(tuple(mult))


def length_set(B: ZSequence, atoms: AtomSet) -> tuple[int, ...]:
    _check(B, atoms)
    return tuple(sorted(lengths_dp(B.mult, atoms.vectors)))


def delta_of(L: Sequence[int]) -> tuple[int, ...]:
    s = sorted(set(L))
    return tuple(sorted({b - a for a, b in zip(s, s[1:])}))


def distance(z: Factorization | Vector, w: Factorization | Vector) -> int:
    a = z.counts if isinstance(z, Factorization) else z
    b = w.counts if isinstance(w, Factorization) else w
    left = right = 0
    for x, y in zip(a, b):
        m = min(x, y)
        left += x - m
        right += y - m
    return max(left, right)


def catenary_of_vectors(zs: Sequence[Vector]) -> int:
    """Bottleneck of a minimum spanning tree of the complete distance graph (Prim)."""
    n = len(zs)
    if n <= 1:
        return 0
    inf = float("inf")
    best = [inf] * n
    used = [False] * n
    best[0] = 0
    worst = 0
    for _ in range(n):
        u = min((i for i in range(n) if not used[i]), key=best.__getitem__)
        used[u] = True
        worst = max(worst, best[u])
        for v in range(n):
            if not used[v]:
                d = distance(zs[u], zs[v])
                if d < best[v]:
                    best[v] = d
    return int(worst)


def catenary_degree(B: ZSequence, atoms: AtomSet) -> int:
    _check(B, atoms)
    return catenary_of_vectors(factorization_vectors(B.mult, atoms.vectors))


def tame_of_vectors(zs: Sequence[Vector], u: int) -> int | None:
    """Worst distance from a factorization to the nearest one containing atom ``u``.

    None when no factorization contains ``u``.
    """
    through = [z for z in zs if z[u]]
    if not through:
        return None
    return max(min(distance(z, w) for w in through) for z in zs)


# ---------------------------------------------------------------------------
# bounded sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementReport:
    element: Vector
    lengths: tuple[int, ...]
    delta: tuple[int, ...]
    catenary: int
    num_factorizations: int


def element_report(mult: Vector, atom_vectors: tuple[Vector, ...]) -> ElementReport:
    zs = factorization_vectors(mult, atom_vectors)
    L = tuple(sorted({sum(z) for z in zs}))
    return ElementReport(mult, L, delta_of(L), catenary_of_vectors(zs), len(zs))


def sweep(G0: GroundSet, maxlen: int, atoms: AtomSet | None = None, workers: int = 1) -> list[ElementReport]:
    """Reports for every zero-sum sequence of length ``<= maxlen``, in lexicographic order."""
    if maxlen < 0:
        raise PreconditionError("maxlen must be nonnegative")
    atoms = atoms or atoms_of(G0)
    elems = [B.mult for B in zero_sum_sequences(G0, maxlen)]
    vecs = atoms.vectors
    return parallel_map(element_report, elems, workers, vecs)


def catenary_bounded(G0: GroundSet, maxlen: int, atoms: AtomSet | None = None, workers: int = 1) -> int:
    """``max c(B)`` over zero-sum ``B`` with ``|B| <= maxlen``: a lower bound for ``c(G0)``."""
    return max((r.catenary for r in sweep(G0, maxlen, atoms, workers)), default=0)


def _tame_one(mult, vecs, u):
    return tame_of_vectors(factorization_vectors(mult, vecs), u)


def tame_bounded(G0: GroundSet, u: int, maxlen: int, atoms: AtomSet | None = None, workers: int = 1) -> int:
    """Lower bound for the local tame degree of atom ``u`` from sequences of length ``<= maxlen``."""
    if maxlen < 0:
        raise PreconditionError("maxlen must be nonnegative")
    atoms = atoms or atoms_of(G0)
    if not 0 <= u < len(atoms):
        raise IndexError(f"atom index {u} out of range")
    elems = [B.mult for B in zero_sum_sequences(G0, maxlen)]
    vals = parallel_map(_tame_one, elems, workers, atoms.vectors, u)
    return max((v for v in vals if v is not None), default=0)


def delta_bounded(G0: GroundSet, maxlen: int, atoms: AtomSet | None = None, workers: int = 1) -> tuple[int, ...]:
    """Union of the distance sets of ``L(B)`` over zero-sum ``B`` with ``|B| <= maxlen``."""
    if maxlen < 0:
        raise PreconditionError("maxlen must be nonnegative")
    atoms = atoms or atoms_of(G0)
    elems = [B.mult for B in zero_sum_sequences(G0, maxlen)]
    vals = parallel_map(lengths_dp, elems, workers, atoms.vectors)
    out = set()
    for L in vals:
        out.update(delta_of(L))
    return tuple(sorted(out))


def delta_star_bounded(G0: GroundSet, maxlen: int, atoms: AtomSet | None = None, workers: int = 1) -> tuple[int, ...]:
    """``{min delta_bounded(S) : S nonempty subset of G0 with nonempty distance set}``.

    Divisor-closed submonoids of the zero-sum monoid correspond to subsets of
    the ground set, so this is the bounded set of minimal distances.
    """
    n = len(G0)
    if n > MAX_SUBSET_GROUND:
        raise PreconditionError(f"subset enumeration is capped at {MAX_SUBSET_GROUND} elements")
    atoms = atoms or atoms_of(G0)
    out = set()
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            sub_atoms = restrict_atoms(atoms, idx)
            d = delta_bounded(sub_atoms.ground, maxlen, sub_atoms, workers)
            if d:
                out.add(min(d))
    return tuple(sorted(out))
