"""Brute-force reference implementations used only by the tests.

Each one follows a definition literally and shares no code with the
library beyond the group arithmetic of ``FgGroup.element``.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from blockmonoid import FgGroup, GroundSet

ORACLE_GROUPS = (FgGroup(1), FgGroup(2), FgGroup(0, (6,)), FgGroup(0, (2, 4)), FgGroup(1, (2,)))


def is_zero(group: FgGroup, vec) -> bool:
    r = group.rank
    return not any(vec[:r]) and all(v % n == 0 for v, n in zip(vec[r:], group.torsion))


def combine(cols, x):
    dim = len(cols[0]) if cols else 0
    return [sum(c[i] * k for c, k in zip(cols, x)) for i in range(dim)]


def vectors_up_to(m: int, maxdeg: int):
    """All ``x`` in ``N^m`` with ``sum(x) <= maxdeg``."""
    if m == 0:
        yield ()
        return
    for first in range(maxdeg + 1):
        for rest in vectors_up_to(m - 1, maxdeg - first):
            yield (first,) + rest


def dominates(x, y) -> bool:
    return all(a >= b for a, b in zip(x, y))


def naive_minimal(group: FgGroup, cols, maxdeg: int = 12) -> list[tuple]:
    """Minimal nonzero solutions of total degree ``<= maxdeg``, by enumeration then filtering."""
    sols = [x for x in vectors_up_to(len(cols), maxdeg) if any(x) and is_zero(group, combine(cols, x))]
    return sorted(x for x in sols if not any(y != x and dominates(x, y) for y in sols))


def has_proper_zero_sum(group: FgGroup, cols, mult) -> bool:
    for sub in itertools.product(*(range(m + 1) for m in mult)):
        if any(sub) and tuple(sub) != tuple(mult) and is_zero(group, combine(cols, sub)):
            return True
    return False


def brute_factorizations(mult, atoms) -> list[tuple]:
    """Every count vector over ``atoms`` whose product is ``mult``, by bounded product search."""
    bounds = [min((m // a for m, a in zip(mult, atom) if a), default=0) for atom in atoms]
    out = []
    for c in itertools.product(*(range(b + 1) for b in bounds)):
        total = [sum(k * atom[i] for k, atom in zip(c, atoms)) for i in range(len(mult))]
        if total == list(mult):
            out.append(tuple(c))
    return sorted(out)


def brute_distance(z, w) -> int:
    common = [min(a, b) for a, b in zip(z, w)]
    return max(sum(z) - sum(common), sum(w) - sum(common))


def threshold_catenary(zs) -> int:
    """Smallest ``M`` for which the graph with edges ``d <= M`` is connected."""
    if len(zs) <= 1:
        return 0
    for M in range(0, max(sum(z) for z in zs) + 1):
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for v in range(len(zs)):
                if v not in seen and brute_distance(zs[u], zs[v]) <= M:
                    seen.add(v)
                    todo.append(v)
        if len(seen) == len(zs):
            return M
    raise AssertionError("unreachable")


def brute_zero_sums(group: FgGroup, cols, maxlen: int) -> list[tuple]:
    return [x for x in vectors_up_to(len(cols), maxlen) if is_zero(group, combine(cols, x))]


def finite_closure(group: FgGroup, gens) -> set[tuple]:
    """Submonoid generated by ``gens`` in a finite group (equal to the generated subgroup)."""
    start = group.zero()
    seen = {start}
    todo = deque([start])
    while todo:
        g = todo.popleft()
        for h in gens:
            s = g + h
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return {g.coords for g in seen}


def finite_divisor_theory(G0: GroundSet) -> bool:
    """Literal criterion for finite groups: every ``h`` and ``-h`` lies in ``[G0 - {g}]``."""
    els = list(G0)
    for g in els:
        closure = finite_closure(G0.group, [x for x in els if x != g])
        if any(h.coords not in closure or (-h).coords not in closure for h in els):
            return False
    return True


def bounded_span(gens, target, bound: int = 10) -> bool:
    """Is ``target`` an integer combination of ``gens`` with coefficients in ``[-bound, bound]``?"""
    rng = range(-bound, bound + 1)
    for c in itertools.product(rng, repeat=len(gens)):
        if combine(gens, c) == list(target):
            return True
    return False


def random_ground(rng: random.Random, group: FgGroup, size: int, span: int = 3) -> GroundSet:
    pool = set()
    attempts = 0
    while len(pool) < size and attempts < 200:
        attempts += 1
        free = [rng.randint(-span, span) for _ in range(group.rank)]
        tors = [rng.randrange(n) for n in group.torsion]
        pool.add(tuple(free + tors))
    return GroundSet.of(group, sorted(pool))
