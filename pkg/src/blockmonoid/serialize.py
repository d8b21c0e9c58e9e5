"""JSON encodings of groups, ground sets, atom sets, reports and chains.

Every ``*_to_json`` has a matching ``*_from_json`` and the round trip
``to_json(from_json(d)) == d`` holds for every document this module emits.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import NotZeroSumError
from .factorization import ElementReport
from .groups import FgGroup, GroupElement, torsion_isomorphism
from .refine import PrimeClassification, RefinementChain, RefinementStep, TransferReport
from .zerosum import AtomSet, GroundSet, ZSequence, is_zero_sum


def dumps(obj, *, pretty: bool = True) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def group_to_json(G: FgGroup) -> dict:
    return {"rank": G.rank, "torsion": list(G.torsion)}


def group_from_json(d: dict) -> FgGroup:
    return FgGroup(int(d["rank"]), tuple(int(n) for n in d.get("torsion", [])))


def element_to_json(g: GroupElement) -> list[int]:
    return list(g.coords)


def ground_to_json(G0: GroundSet) -> dict:
    return {"group": group_to_json(G0.group), "elements": [element_to_json(g) for g in G0]}


def ground_from_json(d: dict) -> GroundSet:
    """Elements are read against the moduli as written, then mapped to the canonical group."""
    gd = d["group"]
    group, convert = torsion_isomorphism(int(gd["rank"]), [int(n) for n in gd.get("torsion", [])])
    return GroundSet(group, tuple(convert(e) for e in d["elements"]))


def atoms_to_json(A: AtomSet) -> dict:
    return {"ground": ground_to_json(A.ground), "atoms": [list(a.mult) for a in A]}


def atoms_from_json(d: dict, *, validate: bool = True) -> AtomSet:
    G0 = ground_from_json(d["ground"])
    atoms = tuple(ZSequence(G0, tuple(m)) for m in d["atoms"])
    if validate:
        for a in atoms:
            if not a.length or not is_zero_sum(a):
                raise NotZeroSumError(f"stored atom {a.mult} is not a nonempty zero-sum sequence")
    return AtomSet(G0, atoms)


def report_to_json(r: ElementReport) -> dict:
    return {
        "element": list(r.element),
        "lengths": list(r.lengths),
        "delta": list(r.delta),
        "catenary": r.catenary,
        "num_factorizations": r.num_factorizations,
    }


def report_from_json(d: dict) -> ElementReport:
    return ElementReport(
        tuple(d["element"]), tuple(d["lengths"]), tuple(d["delta"]), int(d["catenary"]), int(d["num_factorizations"])
    )


def fraction_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def _classification_to_json(c: PrimeClassification) -> dict:
    return {
        "classes": [list(k) for k in c.classes],
        "below": [sorted(b) for b in c.below],
        "minimal_classes": list(c.minimal),
        "representatives": list(c.rep),
        "e": list(c.e),
        "e_min": list(c.e_min),
        "element_exponents": [list(p) for p in c.element_exponents],
    }


def _classification_from_json(d: dict, ground: GroundSet) -> PrimeClassification:
    return PrimeClassification(
        ground=ground,
        classes=tuple(tuple(k) for k in d["classes"]),
        below=tuple(frozenset(b) for b in d["below"]),
        minimal=tuple(d["minimal_classes"]),
        rep=tuple(d["representatives"]),
        e=tuple(d["e"]),
        e_min=tuple(d["e_min"]),
        element_exponents=tuple(tuple(p) for p in d["element_exponents"]),
    )


def step_to_json(s: RefinementStep) -> dict:
    out = {
        "source": ground_to_json(s.source),
        "class_group": group_to_json(s.class_group),
        "target": ground_to_json(s.target),
        "index_map": list(s.index_map),
        "lattice": [list(r) for r in s.lattice],
        "diagnostics": s.diagnostics(),
    }
    out.update(_classification_to_json(s.classification))
    return out


def step_from_json(d: dict) -> RefinementStep:
    source = ground_from_json(d["source"])
    return RefinementStep(
        source=source,
        classification=_classification_from_json(d, source),
        class_group=group_from_json(d["class_group"]),
        target=ground_from_json(d["target"]),
        index_map=tuple(d["index_map"]),
        lattice=tuple(tuple(r) for r in d["lattice"]),
        source_rank=int(d["diagnostics"]["source_rank"]),
    )


def chain_to_json(c: RefinementChain) -> dict:
    return {
        "source": ground_to_json(c.source),
        "kept": list(c.kept),
        "events": list(c.events),
        "steps": [step_to_json(s) for s in c.steps],
        "final": ground_to_json(c.final),
        "num_steps": len(c.steps),
    }


def chain_from_json(d: dict) -> RefinementChain:
    return RefinementChain(
        source=ground_from_json(d["source"]),
        kept=tuple(d["kept"]),
        steps=tuple(step_from_json(s) for s in d["steps"]),
        final=ground_from_json(d["final"]),
        events=tuple(d["events"]),
    )


def transfer_to_json(r: TransferReport) -> dict:
    return r.to_dict()


def transfer_from_json(d: dict) -> TransferReport:
    return TransferReport(int(d["maxlen"]), int(d["checked"]), bool(d["final_is_divisor_theory"]), tuple(d["violations"]))
