"""Minimal nonnegative solutions of ``x_1 g_1 + ... + x_m g_m = 0`` in a group.

The search is graded by total degree. A vector ``x`` is extended by a unit
vector ``e_j`` only if

* the free part ``r`` of its residual is zero, or ``<r, free(g_j)> < 0``
  (the Contejean-Devie criterion, applied to the free coordinates only), and
* ``x + e_j`` does not dominate a minimal solution already found.

Torsion coordinates of the residual are tracked exactly in the group and put
no constraint on the step. Every minimal solution ``s`` is reached along a
path of admissible steps staying below ``s``, and a vector whose residual is
zero is a solution and is never extended, so the output is exactly the set of
minimal solutions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import GroupMismatchError, ResourceLimitExceeded
from .groups import FgGroup, GroupElement

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10_000_000

Vector = tuple[int, ...]


@dataclass(frozen=True)
class DiophSystem:
    group: FgGroup
    columns: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        for c in self.columns:
            if c.group != self.group:
                raise GroupMismatchError(f"column {c} is not in {self.group}")

    @property
    def m(self) -> int:
        return len(self.columns)

    def evaluate(self, x: Sequence[int]) -> GroupElement:
        acc = [0] * self.group.dim
        for xi, c in zip(x, self.columns):
            if xi:
                for k, v in enumerate(c.coords):
                    acc[k] += xi * v
        return self.group.element(acc)


@dataclass(frozen=True)
class MinimalSolutionSet:
    system: DiophSystem
    solutions: tuple[Vector, ...]

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def _dominates(x: Vector, y: Vector) -> bool:
    return all(a >= b for a, b in zip(x, y))


class _Search:
    """Shared state of one graded search; ``caps`` bounds individual coordinates."""

    def __init__(self, system: DiophSystem, caps: Sequence[int | None] | None, budget: int):
        g = system.group
        self.m = system.m
        self.r = g.rank
        self.mods = g.torsion
        self.cols = [c.coords for c in system.columns]
        self.free_cols = [c[: self.r] for c in self.cols]
        self.caps = list(caps) if caps is not None else [None] * self.m
        self.budget = budget
        self.expanded = 0
        self.found: list[Vector] = []
        # minimal solutions bucketed by support index for cheaper dominance tests
        self._by_index: list[list[Vector]] = [[] for _ in range(self.m)]

    def add_solution(self, x: Vector):
        self.found.append(x)
        i = next(j for j, v in enumerate(x) if v)
        self._by_index[i].append(x)

    def dominated(self, x: Vector) -> bool:
        for i, v in enumerate(x):
            if v:
                for s in self._by_index[i]:
                    if _dominates(x, s):
                        return True
        return False

    def residual_step(self, res: Vector, j: int) -> Vector:
        c = self.cols[j]
        r = self.r
        out = [a + b for a, b in zip(res[:r], c[:r])]
        out += [(a + b) % n for a, b, n in zip(res[r:], c[r:], self.mods)]
        return tuple(out)

    def expand(self, chunk):
        """Children of a chunk of frontier nodes (no dominance pruning yet)."""
        out = []
        r = self.r
        for x, res in chunk:
            free = res[:r]
            free_zero = not any(free)
            for j in range(self.m):
                cap = self.caps[j]
                if cap is not None and x[j] >= cap:
                    continue
                if not free_zero:
                    if sum(a * b for a, b in zip(free, self.free_cols[j])) >= 0:
                        continue
                y = x[:j] + (x[j] + 1,) + x[j + 1 :]
                out.append((y, self.residual_step(res, j)))
        return out


def _run(system: DiophSystem, caps=None, budget=DEFAULT_NODE_BUDGET, workers=1, stop=None):
    """Graded search; returns the list of minimal solutions found.

    ``stop(x)`` may end the search early as soon as a solution satisfies it.
    """
    s = _Search(system, caps, budget)
    if system.m == 0:
        return s
    zero = (0,) * system.m
    frontier = [(zero, (0,) * system.group.dim)]
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while frontier:
            s.expanded += len(frontier)
            if s.expanded > budget:
                raise ResourceLimitExceeded(
                    f"minimal solution search exceeded node budget {budget}", expanded=s.expanded
                )
            if pool is not None and len(frontier) > 256:
                size = -(-len(frontier) // workers)
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                children = [c for part in pool.map(s.expand, chunks) for c in part]
            else:
                children = s.expand(frontier)
            nxt = {}
            for y, res in children:
                if y not in nxt:
                    nxt[y] = res
            new_solutions = []
            new_frontier = []
            for y in sorted(nxt):
                if s.dominated(y):
                    continue
                res = nxt[y]
                if not any(res):
                    new_solutions.append(y)
                else:
                    new_frontier.append((y, res))
            # solutions of one degree are pairwise incomparable
            for y in new_solutions:
                s.add_solution(y)
                if stop is not None and stop(y):
                    return s
            frontier = new_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    return s


def minimal_solutions(
    system: DiophSystem, *, budget: int = DEFAULT_NODE_BUDGET, workers: int = 1
) -> MinimalSolutionSet:
    """All minimal nonzero solutions of ``system``, sorted lexicographically.

    Raises :class:`ResourceLimitExceeded` when more than ``budget`` nodes
    would be expanded.
    """
    s = _run(system, budget=budget, workers=workers)
    log.debug("minimal_solutions: %d solutions, %d nodes", len(s.found), s.expanded)
    return MinimalSolutionSet(system, tuple(sorted(s.found)))


def in_submonoid(
    target: GroupElement,
    gens: Sequence[GroupElement],
    *,
    budget: int = DEFAULT_NODE_BUDGET,
) -> bool:
    """Is ``target`` a nonnegative integer combination of ``gens``?

    The system is homogenized with the extra column ``-target``; the answer
    is yes iff some minimal solution has auxiliary coordinate 1. The search
    caps that coordinate at 1 and stops at the first hit.
    """
    for g in gens:
        if g.group != target.group:
            raise GroupMismatchError(f"{g} and {target} are in different groups")
    return submonoid_witness(target, gens, budget=budget) is not None


def submonoid_witness(
    target: GroupElement, gens: Sequence[GroupElement], *, budget: int = DEFAULT_NODE_BUDGET
) -> Vector | None:
    """Coefficients ``x >= 0`` with ``sum x_i gens_i == target``, or None."""
    if target.is_zero():
        return (0,) * len(gens)
    system = DiophSystem(target.group, tuple(gens) + (-target,))
    m = len(gens)
    s = _run(system, caps=[None] * m + [1], budget=budget, stop=lambda x: x[m] == 1)
    for x in s.found:
        if x[m] == 1:
            return x[:m]
    return None
