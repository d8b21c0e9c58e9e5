"""Divisor theories of zero-sum monoids and the iterated block homomorphism.

For a condensed ground set ``G0`` the inclusion ``B(G0) -> F(G0)`` is a
cofinal divisor homomorphism, but usually not a divisor theory. The divisor
theory is read off the atoms:

* ``q_g`` is the set of zero-sum sequences containing ``g``. Elements with
  the same ``q_g`` form a support class, and ``q_g <= q_h`` holds iff every
  atom containing ``g`` contains ``h``.
* The minimal classes are exactly the height-one primes. For each one a
  representative ``f`` (lowest index) and the exponent ``e`` (gcd of the
  multiplicities of ``f`` over the atoms) are fixed.
* ``d(B) = (v_f(B) / e)`` over the minimal classes is the divisor theory.
  The class group is ``Z^k / <d(atoms)>``, and the classes of the basis
  vectors form the next ground set. Equal classes are merged.

Iterating the resulting block homomorphism reaches a ground set whose
inclusion is itself a divisor theory. The composite is a transfer
homomorphism, so sets of lengths are preserved exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from ._parallel import parallel_map
from .diophantine import DEFAULT_NODE_BUDGET, in_submonoid
from .errors import NotCondensedError, NotZeroSumError, RefinementCapExceeded
from .factorization import catenary_of_vectors, factorization_vectors
from .groups import FgGroup, GroupElement, quotient_structure, rank_of, subgroup_from, whole_group
from .zerosum import AtomSet, GroundSet, ZSequence, atoms_of, condensed_indices, is_zero_sum, zero_sum_sequences

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 32

Vector = tuple[int, ...]


@dataclass(frozen=True)
class PrimeClassification:
    ground: GroundSet
    classes: tuple[tuple[int, ...], ...]
    # below[i] = classes j with q_i <= q_j (reflexive)
    below: tuple[frozenset[int], ...]
    minimal: tuple[int, ...]
    rep: tuple[int, ...]
    e: tuple[int, ...]
    e_min: tuple[int, ...]
    # (gcd, min) of v_g over atoms, for every element
    element_exponents: tuple[tuple[int, int], ...]

    def class_of(self, g: int) -> int:
        return next(c for c, members in enumerate(self.classes) if g in members)

    def gcd_min_mismatches(self) -> tuple[int, ...]:
        return tuple(g for g, (d, m) in enumerate(self.element_exponents) if d != m)

    def minimal_mismatches(self) -> tuple[int, ...]:
        """Minimal classes whose gcd and min disagree (never expected)."""
        return tuple(q for q, (d, m) in zip(self.minimal, zip(self.e, self.e_min)) if d != m)


def classify_primes(G0: GroundSet, atoms: AtomSet | None = None) -> PrimeClassification:
    atoms = atoms or atoms_of(G0)
    n = len(G0)
    if any(not atoms.containing[i] for i in range(n)):
        raise NotCondensedError("ground set is not condensed; call condense first")
    supp = [frozenset(atoms.containing[i]) for i in range(n)]
    classes: list[list[int]] = []
    seen: dict[frozenset, int] = {}
    for i in range(n):
        if supp[i] in seen:
            classes[seen[supp[i]]].append(i)
        else:
            seen[supp[i]] = len(classes)
            classes.append([i])
    csupp = [supp[c[0]] for c in classes]
    below = tuple(frozenset(j for j in range(len(classes)) if csupp[i] <= csupp[j]) for i in range(len(classes)))
    minimal = tuple(i for i in range(len(classes)) if not any(csupp[j] < csupp[i] for j in range(len(classes))))
    exps = []
    for i in range(n):
        vals = [atoms[j].mult[i] for j in atoms.containing[i]]
        d = 0
        for v in vals:
            d = gcd(d, v)
        exps.append((d, min(vals)))
    rep = tuple(classes[q][0] for q in minimal)
    return PrimeClassification(
        ground=G0,
        classes=tuple(map(tuple, classes)),
        below=below,
        minimal=minimal,
        rep=rep,
        e=tuple(exps[r][0] for r in rep),
        e_min=tuple(exps[r][1] for r in rep),
        element_exponents=tuple(exps),
    )


@dataclass(frozen=True)
class RefinementStep:
    source: GroundSet
    classification: PrimeClassification
    class_group: FgGroup
    target: GroundSet
    # index_map[k] = target index of the k-th minimal class
    index_map: tuple[int, ...]
    lattice: tuple[Vector, ...] = field(repr=False)
    source_rank: int = 0

    @property
    def rep(self) -> tuple[int, ...]:
        return self.classification.rep

    @property
    def e(self) -> tuple[int, ...]:
        return self.classification.e

    def divisor_vector(self, mult: Sequence[int]) -> Vector:
        """``d(B)``: multiplicities of the representatives divided by their exponents."""
        out = []
        for r, e in zip(self.rep, self.e):
            q, rem = divmod(mult[r], e)
            if rem:
                raise NotZeroSumError(f"multiplicity {mult[r]} of element {r} is not divisible by {e}")
            out.append(q)
        return tuple(out)

    def beta_vector(self, mult: Sequence[int]) -> Vector:
        acc = [0] * len(self.target)
        for k, v in enumerate(self.divisor_vector(mult)):
            acc[self.index_map[k]] += v
        return tuple(acc)

    def merges(self) -> tuple[tuple[int, ...], ...]:
        """Groups of minimal classes sent to the same target element (only those of size > 1)."""
        groups: dict[int, list[int]] = {}
        for k, t in enumerate(self.index_map):
            groups.setdefault(t, []).append(k)
        return tuple(tuple(v) for v in groups.values() if len(v) > 1)

    def diagnostics(self) -> dict:
        c = self.classification
        return {
            "source_rank": self.source_rank,
            "class_group_rank": self.class_group.rank,
            "gcd_min_mismatch": [
                {"index": g, "gcd": c.element_exponents[g][0], "min": c.element_exponents[g][1]}
                for g in c.gcd_min_mismatches()
            ],
            "minimal_class_mismatch": list(c.minimal_mismatches()),
            "non_minimal_classes": [list(c.classes[q]) for q in range(len(c.classes)) if q not in c.minimal],
            "merges": [list(m) for m in self.merges()],
        }


def divisor_theory_step(G0: GroundSet, atoms: AtomSet | None = None) -> RefinementStep:
    """One block homomorphism: ``B(G0) -> B(G0')`` with ``G0'`` in the class group."""
    atoms = atoms or atoms_of(G0)
    cls = classify_primes(G0, atoms)
    k = len(cls.minimal)
    free = FgGroup(k)
    rows = []
    for a in atoms:
        v = []
        for r, e in zip(cls.rep, cls.e):
            v.append(a.mult[r] // e)
        rows.append(free.element(v))
    sub = subgroup_from(rows, free)
    qmap = quotient_structure(whole_group(free), sub)
    images: list[GroupElement] = []
    index_map = []
    for b in free.basis():
        img = qmap.project(b)
        if img not in images:
            images.append(img)
        index_map.append(images.index(img))
    target = GroundSet(qmap.group, tuple(images))
    src_rank = rank_of(subgroup_from(list(G0), G0.group)) if len(G0) else 0
    return RefinementStep(G0, cls, qmap.group, target, tuple(index_map), sub.matrix, src_rank)


def apply_beta(step: RefinementStep, B: ZSequence) -> ZSequence:
    if B.ground != step.source:
        raise ValueError("sequence is not over the step's source ground set")
    if not is_zero_sum(B):
        raise NotZeroSumError(f"{B} is not a zero-sum sequence")
    return ZSequence(step.target, step.beta_vector(B.mult))


def divisor_theory_witness(G0: GroundSet, *, budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, int] | None:
    """First ``(g, h)`` with ``h`` or ``-h`` outside the monoid generated by ``G0 - {g}``.

    None means ``B(G0) -> F(G0)`` is a divisor theory.
    """
    els = list(G0)
    for gi, g in enumerate(els):
        rest = els[:gi] + els[gi + 1 :]
        for hi, h in enumerate(els):
            for t in (h, -h):
                if t == h and hi != gi:
                    continue  # h is itself a generator
                if not in_submonoid(t, rest, budget=budget):
                    return gi, hi
    return None


def is_divisor_theory(G0: GroundSet, *, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """``<G0> == [G0 - {g}]`` for every ``g`` in ``G0``."""
    return divisor_theory_witness(G0, budget=budget) is None


@dataclass(frozen=True)
class RefinementChain:
    source: GroundSet
    # indices of source elements kept by condensing
    kept: tuple[int, ...]
    steps: tuple[RefinementStep, ...]
    final: GroundSet
    events: tuple[dict, ...] = ()

    @property
    def start(self) -> GroundSet:
        return self.source.subset(self.kept)

    def theta_vector(self, mult: Sequence[int]) -> Vector:
        """Image of a zero-sum multiplicity vector over ``source`` in the final ground set."""
        dropped = [i for i in range(len(self.source)) if i not in self.kept and mult[i]]
        if dropped:
            raise NotZeroSumError("sequence uses elements outside every zero-sum sequence")
        v = tuple(mult[i] for i in self.kept)
        for s in self.steps:
            v = s.beta_vector(v)
        return v

    def theta(self, B: ZSequence) -> ZSequence:
        if B.ground != self.source:
            raise ValueError("sequence is not over the chain's source ground set")
        if not is_zero_sum(B):
            raise NotZeroSumError(f"{B} is not a zero-sum sequence")
        return ZSequence(self.final, self.theta_vector(B.mult))

    def diagnostics(self) -> list[dict]:
        return [dict(s.diagnostics(), step=i) for i, s in enumerate(self.steps)]


def refine_chain(
    G0: GroundSet,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    extra_steps: int = 0,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> RefinementChain:
    """Condense, then apply block homomorphisms until the inclusion is a divisor theory.

    Stops at the first ground set that passes :func:`is_divisor_theory`;
    ``extra_steps`` continues the iteration that many more times.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    atoms = atoms_of(G0, budget=budget, workers=workers)
    kept = condensed_indices(G0, atoms)
    events = []
    if len(kept) != len(G0):
        events.append({"event": "condense", "dropped": [i for i in range(len(G0)) if i not in kept]})
    current = G0.subset(kept)
    steps: list[RefinementStep] = []
    extra = extra_steps
    while True:
        if is_divisor_theory(current, budget=budget):
            if extra <= 0:
                break
            extra -= 1
        if len(steps) >= max_steps:
            diag = [dict(s.diagnostics(), step=i) for i, s in enumerate(steps)]
            raise RefinementCapExceeded(f"no divisor theory after {max_steps} steps", diag)
        step = divisor_theory_step(current, atoms_of(current, budget=budget, workers=workers))
        log.debug("step %d: %s -> %s in %s", len(steps), len(current), len(step.target), step.class_group)
        steps.append(step)
        current = step.target
    return RefinementChain(G0, kept, tuple(steps), current, tuple(events))


# ---------------------------------------------------------------------------
# transfer verification
# ---------------------------------------------------------------------------


def _zero_sum_divisors(mult: Vector, group, cols) -> list[Vector]:
    out = []
    r = group.rank
    mods = group.torsion

    def rec(i, acc, prefix):
        if i == len(mult):
            if not any(acc[:r]) and all(a % m == 0 for a, m in zip(acc[r:], mods)):
                out.append(prefix)
            return
        cur = list(acc)
        for v in range(mult[i] + 1):
            rec(i + 1, cur, prefix + (v,))
            cur = [a + b for a, b in zip(cur, cols[i])]

    rec(0, [0] * group.dim, ())
    return out


def _check_one(mult: Vector, ctx) -> list[dict]:
    src_atoms, tgt_atoms, theta, src_ground, tgt_ground = ctx
    violations = []
    img = theta(mult)
    if any(mult) != any(img):
        violations.append({"element": list(mult), "check": "T1", "image": list(img)})
        return violations
    zs = factorization_vectors(mult, src_atoms)
    zt = factorization_vectors(img, tgt_atoms)
    Ls = sorted({sum(z) for z in zs})
    Lt = sorted({sum(z) for z in zt})
    if Ls != Lt:
        violations.append({"element": list(mult), "check": "lengths", "source": Ls, "target": Lt})
    cs, ct = catenary_of_vectors(zs), catenary_of_vectors(zt)
    if not (ct <= cs <= max(ct, 2)):
        violations.append({"element": list(mult), "check": "catenary", "source": cs, "target": ct})
    lifted = {theta(v) for v in _zero_sum_divisors(mult, src_ground.group, [g.coords for g in src_ground])}
    for b in _zero_sum_divisors(img, tgt_ground.group, [g.coords for g in tgt_ground]):
        if b not in lifted:
            violations.append({"element": list(mult), "check": "T2", "split": list(b)})
            break
    return violations


@dataclass(frozen=True)
class TransferReport:
    maxlen: int
    checked: int
    final_is_divisor_theory: bool
    violations: tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return self.final_is_divisor_theory and not self.violations

    def to_dict(self) -> dict:
        return {
            "maxlen": self.maxlen,
            "checked": self.checked,
            "final_is_divisor_theory": self.final_is_divisor_theory,
            "violations": list(self.violations),
            "passed": self.passed,
        }


class _Theta:
    # picklable composite map for worker processes
    def __init__(self, chain: RefinementChain):
        self.chain = chain

    def __call__(self, mult):
        return self.chain.theta_vector(mult)


def verify_transfer(
    chain: RefinementChain, maxlen: int, *, workers: int = 1, budget: int = DEFAULT_NODE_BUDGET
) -> TransferReport:
    """Check the transfer properties of ``chain`` on every zero-sum ``B`` with ``|B| <= maxlen``.

    Per element: ``L(B) == L(theta(B))``; every splitting of ``theta(B)``
    into two zero-sum factors lifts to a splitting of ``B``; and
    ``c(theta(B)) <= c(B) <= max(c(theta(B)), 2)``. Units are trivial in
    both monoids, so (T1) reduces to ``theta(B)`` empty iff ``B`` empty.
    """
    src = chain.source
    src_atoms = atoms_of(src, budget=budget)
    tgt_atoms = atoms_of(chain.final, budget=budget)
    theta = _Theta(chain)
    elems = [B.mult for B in zero_sum_sequences(src, maxlen)]
    ctx = (src_atoms.vectors, tgt_atoms.vectors, theta, src, chain.final)
    results = parallel_map(_check_one, elems, workers, ctx)
    violations = tuple(v for part in results for v in part)
    return TransferReport(maxlen, len(elems), is_divisor_theory(chain.final, budget=budget), violations)
