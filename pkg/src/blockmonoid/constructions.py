"""Two explicit constructions over ``Z^s``.

``split_is_inner_product``
    ``G1`` on a line ``a_v = k_v a_1`` (all ``k_v != -1``) and ``G2`` on the
    antidiagonal ``b_2 = -b_1``: every atom over ``G1 + G2`` lies entirely
    inside ``G1`` or entirely inside ``G2``.

``line_quotient_transfer``
    ``G0 = G1 + {a}`` with ``G1`` in the positive quadrant and ``a`` strictly
    negative. Dropping the ``a``-part embeds ``B(G0)`` into ``F(G1)`` with class
    group ``<G1> / (<G1> meet Z a)``; the images of ``G1`` there give a transfer
    onto a zero-sum monoid over that quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, ShapeViolation
from .groups import FgGroup, GroupElement, quotient_structure, rank_of, subgroup_from, whole_group
from .zerosum import GroundSet, atoms_of


def _line_slopes(G1: Sequence[GroupElement], s: int) -> tuple[Fraction, ...]:
    slopes = None
    for g in G1:
        a = g.coords
        if a[0] == 0:
            if any(a):
                raise ShapeViolation(f"{a} is not on a line a_v = k_v a_1")
            continue
        k = tuple(Fraction(a[v], a[0]) for v in range(1, s))
        if slopes is None:
            slopes = k
        elif k != slopes:
            raise ShapeViolation(f"{a} is not on the line with slopes {slopes}")
    slopes = slopes or (Fraction(0),) * (s - 1)
    if any(k == -1 for k in slopes):
        raise ShapeViolation("line slopes must differ from -1")
    return slopes


@dataclass(frozen=True)
class SplitReport:
    holds: bool
    slopes: tuple[Fraction, ...]
    atoms: int
    mixed_atoms: tuple[tuple[int, ...], ...]


def split_is_inner_product(G1: Sequence[GroupElement], G2: Sequence[GroupElement]) -> SplitReport:
    """Check that no atom over ``G1 + G2`` mixes the two parts.

    Raises :class:`ShapeViolation` unless ``G1`` lies on a line
    ``a_v = k_v a_1`` with all ``k_v != -1`` and ``G2`` consists of nonzero
    vectors with ``b_2 = -b_1``.
    """
    G1, G2 = list(G1), list(G2)
    els = G1 + G2
    if not els:
        return SplitReport(True, (), 0, ())
    group = els[0].group
    s = group.rank
    if group.torsion or s < 2:
        raise ShapeViolation("ground set must lie in Z^s with s >= 2")
    slopes = _line_slopes(G1, s)
    for b in G2:
        if b.is_zero() or b.coords[1] != -b.coords[0]:
            raise ShapeViolation(f"{b.coords} is not a nonzero vector with b_2 = -b_1")
    if set(G1) & set(G2):
        raise ShapeViolation("the two parts must be disjoint")
    G0 = GroundSet(group, tuple(els))
    atoms = atoms_of(G0)
    n1 = len(G1)
    mixed = tuple(
        a.mult for a in atoms if any(a.mult[:n1]) and any(a.mult[n1:])
    )
    return SplitReport(not mixed, slopes, len(atoms), mixed)


def random_split_instance(rng: random.Random, span: int = 3) -> tuple[list[GroupElement], list[GroupElement]]:
    """A random pair ``(G1, G2)`` in ``Z^2`` of the shape accepted by :func:`split_is_inner_product`."""
    Z2 = FgGroup(2)
    steps = [t for t in range(-span, span + 1) if t]
    k = rng.choice([v for v in range(-span, span + 1) if v != -1])
    G1 = [Z2.element((t, k * t)) for t in sorted(rng.sample(steps, rng.randint(2, 4)))]
    G2 = [Z2.element((u, -u)) for u in sorted(rng.sample(steps, rng.randint(2, 4)))]
    return G1, G2


# ---------------------------------------------------------------------------


def parabola_region(N: int) -> list[tuple[int, int]]:
    """``{(m, n) : n >= m^2}`` truncated to ``n <= N``."""
    return [(m, n) for m in range(N + 1) for n in range(m * m, N + 1)]


def box_region(N: int) -> list[tuple[int, int]]:
    """The quadrant ``N_0^2`` truncated to ``[0, N]^2``."""
    return [(m, n) for m in range(N + 1) for n in range(N + 1)]


@dataclass(frozen=True)
class QuotientTransfer:
    gamma: FgGroup
    # integers when gamma is infinite cyclic, coordinate tuples otherwise
    images: frozenset
    condensed: bool
    functional: tuple[Fraction, ...] | None

    @property
    def is_infinite_cyclic(self) -> bool:
        return self.gamma.rank == 1 and not self.gamma.torsion


def _reachable(gens: list[tuple[int, int]], X: int, Y: int) -> list[list[bool]]:
    """``reach[x][y]``: is ``(x, y)`` in the monoid generated by ``gens`` (box-limited)."""
    reach = [[False] * (Y + 1) for _ in range(X + 1)]
    reach[0][0] = True
    gens = [g for g in gens if g != (0, 0)]
    for x in range(X + 1):
        row = reach[x]
        for y in range(Y + 1):
            if row[y]:
                continue
            for gx, gy in gens:
                if gx <= x and gy <= y and reach[x - gx][y - gy]:
                    row[y] = True
                    break
    return reach


def _irreducibles(G1: list[tuple[int, int]]) -> list[tuple[int, int]]:
    nz = sorted(set(g for g in G1 if g != (0, 0)))
    if not nz:
        return []
    X = max(g[0] for g in nz)
    Y = max(g[1] for g in nz)
    reach = _reachable(nz, X, Y)
    out = []
    for g in nz:
        reducible = any(
            h != g and h[0] <= g[0] and h[1] <= g[1] and reach[g[0] - h[0]][g[1] - h[1]]
            for h in nz
        )
        if not reducible:
            out.append(g)
    return out


def _condensed_on_truncation(G1: list[tuple[int, int]], a: tuple[int, int], kmax: int) -> bool:
    """Every element of ``G1 + {a}`` lies in a zero-sum sequence using at most ``kmax`` extra copies of ``a``."""
    gens = _irreducibles(G1)
    targets = [(-g[0], -g[1]) for g in set(G1)] + [(-a[0], -a[1])]
    X = max(t[0] for t in targets) + kmax * -a[0]
    Y = max(t[1] for t in targets) + kmax * -a[1]
    reach = _reachable(gens, max(X, 0), max(Y, 0))
    for t in targets:
        if not any(
            t[0] - k * a[0] >= 0 and t[1] - k * a[1] >= 0 and reach[t[0] - k * a[0]][t[1] - k * a[1]]
            for k in range(kmax + 1)
        ):
            return False
    return True


def line_quotient_transfer(
    G1: Sequence[Sequence[int]], a: Sequence[int], truncation: int | None = None, *, kmax: int | None = None
) -> QuotientTransfer:
    """Class group ``<G1> / (<G1> meet Z a)`` and the images of ``G1`` in it.

    ``truncation`` drops elements with a coordinate above it. When the
    quotient is infinite cyclic, images are integers under the isomorphism
    induced by the linear form that vanishes on ``a`` and has a positive
    leading coefficient. The condensed flag checks, on the truncated set,
    that every element lies in a zero-sum sequence with at most ``kmax``
    copies of ``a`` added.
    """
    a = tuple(int(v) for v in a)
    if len(a) != 2 or not (a[0] < 0 and a[1] < 0):
        raise PreconditionError("a must have two strictly negative coordinates")
    pts = sorted({(int(p[0]), int(p[1])) for p in G1})
    if any(p[0] < 0 or p[1] < 0 for p in pts):
        raise PreconditionError("G1 must lie in the nonnegative quadrant")
    if truncation is not None:
        pts = [p for p in pts if max(p) <= truncation]
    if not pts:
        raise PreconditionError("G1 is empty after truncation")
    Z2 = FgGroup(2)
    L = subgroup_from([Z2.element(p) for p in pts], Z2)
    av = Z2.element(a)
    order = quotient_structure(whole_group(Z2), L).project(av).order()
    sub = subgroup_from([order * av] if order else [], Z2)
    q = quotient_structure(L, sub)
    gamma = q.group
    functional = None
    if gamma.rank == 1 and not gamma.torsion:
        functional = _oriented_functional(L, q, a)
        images = frozenset(int(sum(c * x for c, x in zip(functional, p))) for p in pts)
    else:
        images = frozenset(q.project(Z2.element(p)).coords for p in pts)
    if kmax is None:
        kmax = 2 * (max(max(p) for p in pts) + 1)
    return QuotientTransfer(gamma, images, _condensed_on_truncation(pts, a, kmax), functional)


def _oriented_functional(L, q, a) -> tuple[Fraction, ...]:
    """The linear form on ``Q^2`` inducing ``<G1> -> Gamma = Z``, vanishing on ``a``."""
    rows = list(L.matrix)
    vals = [q.project(r).coords[0] for r in rows]
    if rank_of(L) == 1:
        # extend from the line <G1> by killing a, which is independent of it here
        rows, vals = [rows[0], a], [vals[0], 0]
    (p, r), (s, t) = rows
    det = p * t - r * s
    x = Fraction(vals[0] * t - r * vals[1], det)
    y = Fraction(p * vals[1] - s * vals[0], det)
    f = (x, y)
    lead = next(c for c in f if c)
    return f if lead > 0 else (-x, -y)
