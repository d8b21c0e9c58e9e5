"""Finitely generated abelian groups and the integer lattices behind them.

A group ``Z^r + Z/n_1 + ... + Z/n_k`` is modelled as the quotient of
``Z^(r+k)`` by the relation lattice spanned by the rows ``n_i * e_(r+i)``.
Every subgroup question (membership, equality, quotients, rank) is then a
question about an integer lattice that contains the relation lattice, and is
answered with a Hermite or Smith normal form computed over Python integers.

>>> G = FgGroup(1, (3,))
>>> G.element((1, 2)) + G.element((2, 2))
GroupElement((3 | 1) in Z + Z/3)
>>> Z2 = FgGroup(2)
>>> S = subgroup_from([Z2.element((2, 0)), Z2.element((1, 1)), Z2.element((0, 2))])
>>> quotient_structure(subgroup_from(Z2.basis()), S).group
FgGroup(rank=0, torsion=(2,))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import GroupMismatchError, NotContainedError

Vector = tuple[int, ...]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer normal forms
# ---------------------------------------------------------------------------


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is the unique basis in echelon form with positive pivots and
    every entry above a pivot reduced into ``[0, pivot)``. Zero rows are
    dropped, so ``len(result)`` is the rank of the lattice.
    """
    a = [list(r) for r in rows if any(r)]
    for r in a:
        if len(r) != ncols:
            raise ValueError(f"row {r} does not have {ncols} columns")
    pr = 0
    for col in range(ncols):
        if pr >= len(a):
            break
        while True:
            nz = [i for i in range(pr, len(a)) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[pr], a[piv] = a[piv], a[pr]
            p = a[pr][col]
            done = True
            for i in range(pr + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // p
                    if q:
                        ri, rp = a[i], a[pr]
                        for j in range(col, ncols):
                            ri[j] -= q * rp[j]
                    if a[i][col]:
                        done = False
            if done:
                break
        if pr < len(a) and a[pr][col]:
            if a[pr][col] < 0:
                a[pr] = [-x for x in a[pr]]
            p = a[pr][col]
            for i in range(pr):
                q = a[i][col] // p
                if q:
                    ri, rp = a[i], a[pr]
                    for j in range(col, ncols):
                        ri[j] -= q * rp[j]
            pr += 1
    return [tuple(r) for r in a[:pr]]


def solve_in_basis(basis: Sequence[Vector], x: Sequence[int]) -> Vector | None:
    """Integer coordinates ``c`` with ``c @ basis == x`` for an HNF basis, or None."""
    rest = list(x)
    coeffs = []
    for row in basis:
        col = next(j for j, v in enumerate(row) if v)
        for j in range(col):
            if rest[j]:
                return None
        q, r = divmod(rest[col], row[col])
        if r:
            return None
        coeffs.append(q)
        if q:
            for j in range(col, len(rest)):
                rest[j] -= q * row[j]
    if any(rest):
        return None
    return tuple(coeffs)


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == diag(d)`` with unimodular ``U`` and ``V``.

    ``diagonal`` holds the nonzero invariant factors ``d_1 | d_2 | ...``.
    """

    diagonal: tuple[int, ...]
    U: tuple[Vector, ...]
    V: tuple[Vector, ...]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int) -> SmithForm:
    a = [list(r) for r in m]
    nrows = len(a)
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    diag = []
    for t in range(min(nrows, ncols)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        changed = True
            if changed:
                cand = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
                _, i0, j0 = min(cand)
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
    return SmithForm(tuple(diag), tuple(map(tuple, U)), tuple(map(tuple, V)))


def invariant_factors(moduli: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (``> 1``, divisibility chain) of ``Z/n_1 + ... + Z/n_k``."""
    moduli = list(moduli)
    diagm = [[m if i == j else 0 for j in range(len(moduli))] for i, m in enumerate(moduli)]
    return tuple(d for d in smith_normal_form(diagm, len(moduli)).diagonal if d != 1)


# ---------------------------------------------------------------------------
# groups and elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgGroup:
    """``Z^rank + Z/n_1 + ... + Z/n_k`` with moduli in invariant-factor form.

    Moduli passed to the constructor are canonicalized, so ``FgGroup(0, (2, 3))``
    equals ``FgGroup(0, (6,))``. Element coordinates always refer to the
    canonical moduli; use :func:`torsion_isomorphism` to translate coordinates
    given against a non-canonical decomposition.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        mods = tuple(int(n) for n in self.torsion)
        if any(n < 2 for n in mods):
            raise ValueError(f"torsion moduli must be >= 2, got {mods}")
        if any(mods[i + 1] % mods[i] for i in range(len(mods) - 1)):
            mods = invariant_factors(mods)
        object.__setattr__(self, "torsion", mods)

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for n in self.torsion:
            out *= n
        return out

    @property
    def exponent(self) -> int:
        """Exponent of the torsion part (1 when torsion-free)."""
        out = 1
        for n in self.torsion:
            out = out * n // gcd(out, n)
        return out

    def relation_rows(self) -> list[Vector]:
        r = self.rank
        return [tuple(n if j == r + i else 0 for j in range(self.dim)) for i, n in enumerate(self.torsion)]

    def element(self, coords: Sequence[int]) -> GroupElement:
        return GroupElement(self, tuple(int(c) for c in coords))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.dim)

    def basis(self) -> list[GroupElement]:
        """Standard generators, one per cyclic factor."""
        return [self.element([int(i == j) for j in range(self.dim)]) for i in range(self.dim)]

    def elements(self) -> list[GroupElement]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if self.rank:
            raise ValueError("cannot list the elements of an infinite group")
        out = [()]
        for n in self.torsion:
            out = [v + (i,) for v in out for i in range(n)]
        return [GroupElement(self, v) for v in out]

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgGroup(rank={self.rank}, torsion={self.torsion})"


@dataclass(frozen=True)
class GroupElement:
    group: FgGroup
    coords: Vector

    def __post_init__(self):
        g = self.group
        if len(self.coords) != g.dim:
            raise ValueError(f"element of {g} needs {g.dim} coordinates, got {len(self.coords)}")
        r = g.rank
        c = tuple(int(x) for x in self.coords[:r]) + tuple(
            int(x) % n for x, n in zip(self.coords[r:], g.torsion)
        )
        object.__setattr__(self, "coords", c)

    @property
    def free(self) -> Vector:
        return self.coords[: self.group.rank]

    @property
    def tors(self) -> Vector:
        return self.coords[self.group.rank :]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError(f"cannot combine elements of {self.group} and {getattr(other, 'group', other)}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-x for x in self.coords))

    def __rmul__(self, n: int) -> GroupElement:
        return GroupElement(self.group, tuple(n * x for x in self.coords))

    def order(self) -> int:
        """Order of the element, 0 for elements of infinite order."""
        if any(self.free):
            return 0
        out = 1
        for x, n in zip(self.tors, self.group.torsion):
            k = n // gcd(x, n)
            out = out * k // gcd(out, k)
        return out

    def __repr__(self):
        return f"GroupElement({self._fmt()} in {self.group})"

    def _fmt(self):
        f = ", ".join(map(str, self.free))
        t = ", ".join(map(str, self.tors))
        if self.free and self.tors:
            return f"({f} | {t})"
        return f"({f or t})"


def gp_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def gp_scale(n: int, g: GroupElement) -> GroupElement:
    return n * g


def group_sum(elements: Iterable[GroupElement], group: FgGroup) -> GroupElement:
    acc = [0] * group.dim
    for e in elements:
        if e.group != group:
            raise GroupMismatchError(f"{e} is not in {group}")
        for i, x in enumerate(e.coords):
            acc[i] += x
    return GroupElement(group, tuple(acc))


def torsion_isomorphism(rank: int, moduli: Sequence[int]):
    """Translate coordinates over ``Z^rank + Z/m_1 + ...`` into the canonical group.

    Returns ``(group, convert)`` where ``convert`` maps a flat coordinate
    vector of the given decomposition to a :class:`GroupElement` of the
    canonical group.
    """
    moduli = [int(m) for m in moduli]
    group = FgGroup(rank, tuple(moduli))
    if tuple(moduli) == group.torsion:
        return group, group.element
    k = len(moduli)
    snf = smith_normal_form([[m if i == j else 0 for j in range(k)] for i, m in enumerate(moduli)], k)
    keep = [i for i, d in enumerate(snf.diagonal) if d != 1]

    def convert(coords: Sequence[int]) -> GroupElement:
        free, tors = list(coords[:rank]), list(coords[rank:])
        if len(tors) != k:
            raise ValueError(f"expected {rank + k} coordinates")
        y = [sum(tors[i] * snf.V[i][j] for i in range(k)) for j in range(k)]
        return group.element(free + [y[j] for j in keep])

    return group, convert


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupBasis:
    """A subgroup, stored as the HNF of its preimage lattice in ``Z^dim``.

    The preimage always contains the torsion relation rows, so two bases are
    equal exactly when the subgroups are equal.
    """

    group: FgGroup
    matrix: tuple[Vector, ...]

    @property
    def lattice_rank(self) -> int:
        return len(self.matrix)

    def generators(self) -> list[GroupElement]:
        return [g for g in (self.group.element(r) for r in self.matrix) if not g.is_zero()]

    def __contains__(self, g: GroupElement) -> bool:
        return subgroup_contains(self, g)


def subgroup_from(gens: Sequence[GroupElement], group: FgGroup | None = None) -> SubgroupBasis:
    """The subgroup generated by ``gens`` (``group`` is required when ``gens`` is empty)."""
    gens = list(gens)
    if group is None:
        if not gens:
            raise ValueError("group must be given for an empty generator list")
        group = gens[0].group
    for g in gens:
        if g.group != group:
            raise GroupMismatchError(f"{g} is not in {group}")
    rows = [g.coords for g in gens] + group.relation_rows()
    return SubgroupBasis(group, tuple(hermite_normal_form(rows, group.dim)))


def whole_group(group: FgGroup) -> SubgroupBasis:
    return subgroup_from(group.basis(), group)


def subgroup_contains(S: SubgroupBasis, g: GroupElement) -> bool:
    if g.group != S.group:
        raise GroupMismatchError(f"{g} is not in {S.group}")
    return solve_in_basis(S.matrix, g.coords) is not None


def rank_of(S: SubgroupBasis) -> int:
    """Torsion-free rank of the subgroup."""
    return S.lattice_rank - len(S.group.torsion)


def is_subgroup(sub: SubgroupBasis, ambient: SubgroupBasis) -> bool:
    return sub.group == ambient.group and all(solve_in_basis(ambient.matrix, r) is not None for r in sub.matrix)


@dataclass(frozen=True)
class QuotientMap:
    """The quotient ``ambient / sub`` as a canonical group plus its projection."""

    ambient: SubgroupBasis
    sub: SubgroupBasis
    group: FgGroup
    _V: tuple[Vector, ...] = field(repr=False)
    _free_cols: tuple[int, ...] = field(repr=False)
    _tors_cols: tuple[int, ...] = field(repr=False)

    def project(self, g: GroupElement | Sequence[int]) -> GroupElement:
        """Image of an element of ``ambient`` (or a raw lattice vector) in the quotient."""
        coords = g.coords if isinstance(g, GroupElement) else tuple(g)
        if isinstance(g, GroupElement) and g.group != self.ambient.group:
            raise GroupMismatchError(f"{g} is not in {self.ambient.group}")
        c = solve_in_basis(self.ambient.matrix, coords)
        if c is None:
            raise NotContainedError(f"{coords} is not in the ambient subgroup")
        k = len(c)
        y = [sum(c[i] * self._V[i][j] for i in range(k)) for j in range(k)]
        return self.group.element([y[j] for j in self._free_cols] + [y[j] for j in self._tors_cols])


def quotient_structure(ambient: SubgroupBasis, sub: SubgroupBasis) -> QuotientMap:
    """Invariant factors of ``ambient / sub`` via the Smith normal form.

    Raises :class:`NotContainedError` if ``sub`` is not inside ``ambient``.
    """
    if ambient.group != sub.group:
        raise GroupMismatchError("subgroups of different groups")
    basis = ambient.matrix
    k = len(basis)
    coords = []
    for r in sub.matrix:
        c = solve_in_basis(basis, r)
        if c is None:
            raise NotContainedError(f"generator {r} of sub is not in ambient")
        coords.append(c)
    snf = smith_normal_form(coords, k) if coords and k else SmithForm((), (), tuple(
        tuple(int(i == j) for j in range(k)) for i in range(k)))
    d = list(snf.diagonal) + [0] * (k - len(snf.diagonal))
    free_cols = tuple(j for j in range(k) if d[j] == 0)
    tors_cols = tuple(j for j in range(k) if d[j] > 1)
    group = FgGroup(len(free_cols), tuple(d[j] for j in tors_cols))
    return QuotientMap(ambient, sub, group, snf.V, free_cols, tors_cols)
