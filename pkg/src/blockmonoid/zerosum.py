"""The monoid of zero-sum sequences over a finite ground set."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .diophantine import DEFAULT_NODE_BUDGET, DiophSystem, minimal_solutions
from .errors import GroupMismatchError, UndefinedExponentError
from .groups import FgGroup, GroupElement

Vector = tuple[int, ...]


@dataclass(frozen=True)
class GroundSet:
    """An ordered set of distinct elements of one group; indices are stable."""

    group: FgGroup
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for g in self.elements:
            if g.group != self.group:
                raise GroupMismatchError(f"{g} is not in {self.group}")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("ground set elements must be pairwise distinct")

    @classmethod
    def of(cls, group: FgGroup, coords: Sequence[Sequence[int] | int]) -> GroundSet:
        """Build from raw coordinates; plain ints are accepted for one-dimensional groups."""
        els = tuple(group.element((c,) if isinstance(c, int) else c) for c in coords)
        return cls(group, els)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, g: GroupElement) -> int:
        return self.elements.index(g)

    def subset(self, indices: Sequence[int]) -> GroundSet:
        return GroundSet(self.group, tuple(self.elements[i] for i in indices))

    def sequence(self, mult: Sequence[int]) -> ZSequence:
        return ZSequence(self, tuple(mult))


@dataclass(frozen=True)
class ZSequence:
    """A sequence over a ground set, stored as its multiplicity vector."""

    ground: GroundSet
    mult: Vector

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(v) for v in self.mult))
        if len(self.mult) != len(self.ground):
            raise ValueError(f"multiplicity vector must have length {len(self.ground)}")
        if any(v < 0 for v in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    def __len__(self):
        return sum(self.mult)

    @property
    def length(self) -> int:
        return sum(self.mult)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.mult) if v)

    def divides(self, other: ZSequence) -> bool:
        return all(a <= b for a, b in zip(self.mult, other.mult))

    def __mul__(self, other: ZSequence) -> ZSequence:
        if other.ground != self.ground:
            raise GroupMismatchError("sequences over different ground sets")
        return ZSequence(self.ground, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __str__(self):
        parts = []
        for g, v in zip(self.ground, self.mult):
            if v:
                s = g._fmt()
                parts.append(s if v == 1 else f"{s}^{v}")
        return "*".join(parts) or "1"


def seq_sum(S: ZSequence) -> GroupElement:
    acc = [0] * S.ground.group.dim
    for g, v in zip(S.ground, S.mult):
        if v:
            for k, c in enumerate(g.coords):
                acc[k] += v * c
    return S.ground.group.element(acc)


def is_zero_sum(S: ZSequence) -> bool:
    return seq_sum(S).is_zero()


@dataclass(frozen=True)
class AtomSet:
    ground: GroundSet
    atoms: tuple[ZSequence, ...]
    containing: tuple[tuple[int, ...], ...] = field(compare=False, repr=False, default=())

    def __post_init__(self):
        atoms = tuple(sorted(set(self.atoms), key=lambda a: a.mult))
        object.__setattr__(self, "atoms", atoms)
        cont = tuple(
            tuple(j for j, a in enumerate(atoms) if a.mult[i]) for i in range(len(self.ground))
        )
        object.__setattr__(self, "containing", cont)

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return tuple(a.mult for a in self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __getitem__(self, j):
        return self.atoms[j]


_memo: dict[GroundSet, AtomSet] = {}
_memo_lock = threading.Lock()


def remember_atoms(atoms: AtomSet) -> None:
    """Seed the in-process memo (used by the persistent cache)."""
    with _memo_lock:
        _memo[atoms.ground] = atoms


def clear_atom_memo() -> None:
    with _memo_lock:
        _memo.clear()


def atoms_of(G0: GroundSet, *, budget: int = DEFAULT_NODE_BUDGET, workers: int = 1) -> AtomSet:
    """Minimal zero-sum sequences over ``G0``, memoized per ground set."""
    with _memo_lock:
        hit = _memo.get(G0)
    if hit is not None:
        return hit
    sols = minimal_solutions(DiophSystem(G0.group, G0.elements), budget=budget, workers=workers)
    result = AtomSet(G0, tuple(ZSequence(G0, x) for x in sols))
    with _memo_lock:
        # a concurrent duplicate computation produced an identical set; keep the first
        return _memo.setdefault(G0, result)


def restrict_atoms(atoms: AtomSet, indices: Sequence[int]) -> AtomSet:
    """Atoms of the subset ``indices``: exactly the atoms supported inside it."""
    idx = list(indices)
    pos = set(idx)
    sub = atoms.ground.subset(idx)
    keep = [a for a in atoms if set(a.support) <= pos]
    return AtomSet(sub, tuple(ZSequence(sub, tuple(a.mult[i] for i in idx)) for a in keep))


def condensed_indices(G0: GroundSet, atoms: AtomSet | None = None) -> tuple[int, ...]:
    atoms = atoms or atoms_of(G0)
    return tuple(i for i in range(len(G0)) if atoms.containing[i])


def is_condensed(G0: GroundSet) -> bool:
    return len(condensed_indices(G0)) == len(G0)


def condense(G0: GroundSet) -> GroundSet:
    """Drop the elements lying in no zero-sum sequence; the monoid is unchanged."""
    return G0.subset(condensed_indices(G0))


def exponent_e(G0: GroundSet, g: int, atoms: AtomSet | None = None) -> tuple[int, int]:
    """``(gcd, min)`` of the multiplicity of element ``g`` over the atoms containing it.

    The gcd over atoms equals the gcd over the whole monoid. The two agree
    for elements representing a minimal prime; a mismatch elsewhere is
    expected and reported rather than treated as an error.
    """
    atoms = atoms or atoms_of(G0)
    vals = [atoms[j].mult[g] for j in atoms.containing[g]]
    if not vals:
        raise UndefinedExponentError(f"element {G0[g]} occurs in no zero-sum sequence")
    d = 0
    for v in vals:
        d = gcd(d, v)
    return d, min(vals)


def davenport(G0: GroundSet, atoms: AtomSet | None = None) -> int:
    """Largest atom length (0 when there are no atoms)."""
    atoms = atoms or atoms_of(G0)
    return max((len(a) for a in atoms), default=0)


def zero_sum_sequences(G0: GroundSet, maxlen: int) -> Iterator[ZSequence]:
    """Every zero-sum sequence of length ``<= maxlen``, in lexicographic order of ``mult``."""
    n = len(G0)
    group = G0.group
    r = group.rank
    mods = group.torsion
    cols = [g.coords for g in G0]

    def rec(i, left, acc, prefix):
        if i == n:
            if not any(acc[:r]) and all(a % m == 0 for a, m in zip(acc[r:], mods)):
                yield prefix
            return
        c = cols[i]
        cur = list(acc)
        for v in range(left + 1):
            yield from rec(i + 1, left - v, cur, prefix + (v,))
            cur = [a + b for a, b in zip(cur, c)]

    for mult in rec(0, maxlen, [0] * group.dim, ()):
        yield ZSequence(G0, mult)
