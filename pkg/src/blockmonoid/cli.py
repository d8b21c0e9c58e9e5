"""Command-line front end: JSON job specs in, JSON reports out.

Exit codes: 0 success, 1 a bundled scenario failed its check, 2 input
error, 3 search budget exhausted, 4 refinement cap reached.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

import jsonschema

from ._version import __version__
from .cache import AtomCache
from .constructions import line_quotient_transfer, parabola_region, random_split_instance, split_is_inner_product
from .diophantine import DEFAULT_NODE_BUDGET
from .errors import BlockMonoidError, RefinementCapExceeded, ResourceLimitExceeded
from .factorization import sweep
from .groups import FgGroup
from .refine import DEFAULT_MAX_STEPS, divisor_theory_witness, refine_chain, verify_transfer
from .serialize import (
    atoms_to_json,
    chain_to_json,
    dumps,
    element_to_json,
    ground_from_json,
    ground_to_json,
    report_to_json,
)
from .zerosum import GroundSet, atoms_of, davenport

log = logging.getLogger("blockmonoid")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_RESOURCE, EXIT_CAP = 0, 1, 2, 3, 4

DEFAULT_SEED = 0

_count = {"type": "integer", "minimum": 0}
_positive = {"type": "integer", "minimum": 1}

JOB_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["group", "elements"],
    "properties": {
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["rank"],
            "properties": {
                "rank": _count,
                "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
        },
        "elements": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "max_length": _count,
        "max_steps": _positive,
        "verify_bound": _count,
        "budget": _positive,
        "workers": _positive,
        "cache_dir": {"type": "string"},
    },
}


class InputError(Exception):
    pass


def load_job(source: str) -> dict:
    """Read and validate a job spec from a path, or ``-`` for standard input."""
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        job = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(job, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema error at {path}: {exc.message}") from exc
    dim = job["group"]["rank"] + len(job["group"].get("torsion", []))
    for e in job["elements"]:
        if len(e) != dim:
            raise InputError(f"element {e} has {len(e)} coordinates, the group needs {dim}")
    return job


def _ground(job: dict) -> GroundSet:
    try:
        return ground_from_json(job)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _option(args, job, name, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return job.get(name, default)


class _Context:
    def __init__(self, args, job):
        self.workers = _option(args, job, "workers", 1)
        self.budget = _option(args, job, "budget", DEFAULT_NODE_BUDGET)
        use_cache = not getattr(args, "no_cache", False)
        cache_dir = _option(args, job, "cache_dir", None)
        self.cache = AtomCache(cache_dir) if use_cache else None

    def atoms(self, G0):
        if self.cache is None:
            return atoms_of(G0, budget=self.budget, workers=self.workers)
        return self.cache.atoms(G0, budget=self.budget, workers=self.workers)


def cmd_atoms(args) -> tuple[dict, int]:
    job = load_job(args.spec)
    ctx = _Context(args, job)
    return atoms_to_json(ctx.atoms(_ground(job))), EXIT_OK


def cmd_invariants(args) -> tuple[dict, int]:
    job = load_job(args.spec)
    ctx = _Context(args, job)
    N = _option(args, job, "max_length", 10)
    if N < 0:
        raise InputError("--max-length must be nonnegative")
    G0 = _ground(job)
    atoms = ctx.atoms(G0)
    reports = [r for r in sweep(G0, N, atoms, ctx.workers) if any(r.element)]
    deltas = sorted({d for r in reports for d in r.delta})
    out = {
        "ground": ground_to_json(G0),
        "max_length": N,
        "davenport": davenport(G0, atoms),
        "num_atoms": len(atoms),
        "elements": [report_to_json(r) for r in reports],
        "aggregate": {
            "num_elements": len(reports),
            "delta": deltas,
            "catenary": max((r.catenary for r in reports), default=0),
            "all_lengths_singleton": all(len(r.lengths) == 1 for r in reports),
        },
    }
    return out, EXIT_OK


def cmd_check_dt(args) -> tuple[dict, int]:
    job = load_job(args.spec)
    ctx = _Context(args, job)
    G0 = _ground(job)
    w = divisor_theory_witness(G0, budget=ctx.budget)
    witnesses = [] if w is None else [{"g": element_to_json(G0[w[0]]), "h": element_to_json(G0[w[1]])}]
    return {"divisor_theory": w is None, "witnesses": witnesses}, EXIT_OK


def cmd_refine(args) -> tuple[dict, int]:
    job = load_job(args.spec)
    ctx = _Context(args, job)
    K = _option(args, job, "max_steps", DEFAULT_MAX_STEPS)
    if K < 1:
        raise InputError("--max-steps must be at least 1")
    G0 = _ground(job)
    ctx.atoms(G0)
    chain = refine_chain(G0, K, budget=ctx.budget, workers=ctx.workers)
    out = chain_to_json(chain)
    bound = _option(args, job, "verify_bound", None)
    if bound is not None:
        out["verification"] = verify_transfer(chain, bound, workers=ctx.workers, budget=ctx.budget).to_dict()
    return out, EXIT_OK


# ---------------------------------------------------------------------------
# bundled scenarios
# ---------------------------------------------------------------------------


def _symmetric_interval(args) -> dict:
    G0 = GroundSet.of(FgGroup(1), [-2, -1, 0, 1, 2])
    w = divisor_theory_witness(G0)
    chain = refine_chain(G0)
    ok = w is None and not chain.steps
    return {"pass": ok, "evidence": {"ground": ground_to_json(G0), "divisor_theory": w is None, "steps": len(chain.steps)}}


BUNDLED_SPLIT = (((1, 2), (-1, -2)), ((1, -1), (-2, 2)))


def _split_plane(args) -> dict:
    Z2 = FgGroup(2)
    instances = [tuple([Z2.element(p) for p in part] for part in BUNDLED_SPLIT)]
    rng = random.Random(args.seed)
    instances += [random_split_instance(rng) for _ in range(args.count)]
    runs = []
    for G1, G2 in instances:
        rep = split_is_inner_product(G1, G2)
        runs.append(
            {
                "G1": [element_to_json(g) for g in G1],
                "G2": [element_to_json(g) for g in G2],
                "slopes": [str(k) for k in rep.slopes],
                "atoms": rep.atoms,
                "mixed_atoms": [list(m) for m in rep.mixed_atoms],
                "split": rep.holds,
            }
        )
    return {"pass": all(r["split"] for r in runs), "evidence": {"seed": args.seed, "instances": runs}}


def _parabola_quotient(args) -> dict:
    N = args.n
    a = (-1, -2)
    t = line_quotient_transfer(parabola_region(N), a, truncation=N)
    images = sorted(t.images)
    expected = sorted({1} | set(range(-N, 1)))
    ok = t.is_infinite_cyclic and images == expected and t.condensed
    evidence = {
        "n": N,
        "a": list(a),
        "gamma": {"rank": t.gamma.rank, "torsion": list(t.gamma.torsion)},
        "functional": [str(c) for c in t.functional] if t.functional else None,
        "images": images,
        "condensed": t.condensed,
    }
    return {"pass": ok, "evidence": evidence}


SCENARIOS = {"remark-3-7": _symmetric_interval, "example-4-6": _split_plane, "example-4-7": _parabola_quotient}


def cmd_examples(args) -> tuple[dict, int]:
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    report = {"name": args.name, **SCENARIOS[args.name](args)}
    return report, EXIT_OK if report["pass"] else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS lets these appear before or after the subcommand without clobbering
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, help="worker processes for sweeps and searches")
    common.add_argument("--budget", type=int, help="node budget for each minimal-solution search")
    common.add_argument("--cache-dir", dest="cache_dir", help="atom cache directory")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the atom cache")
    common.add_argument("-v", "--verbose", action="count", help="more diagnostics on stderr")

    p = argparse.ArgumentParser(prog="blockmonoid", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("atoms", parents=[common], help="minimal zero-sum sequences of a ground set")
    s.add_argument("spec", help="job spec JSON file, or - for stdin")
    s.set_defaults(func=cmd_atoms)

    s = sub.add_parser("invariants", parents=[common], help="lengths, distances and catenary degrees up to a bound")
    s.add_argument("spec")
    s.add_argument("--max-length", dest="max_length", type=int, default=None)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("check-dt", parents=[common], help="is the inclusion into the free monoid a divisor theory")
    s.add_argument("spec")
    s.set_defaults(func=cmd_check_dt)

    s = sub.add_parser("refine", parents=[common], help="iterate block homomorphisms until a divisor theory")
    s.add_argument("spec")
    s.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    s.add_argument("--verify-bound", dest="verify_bound", type=int, default=None)
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("examples", parents=[common], help="run a bundled scenario")
    s.add_argument("name", choices=sorted(SCENARIOS))
    s.add_argument("--n", type=int, default=30, help="truncation for example-4-7")
    s.add_argument("--count", type=int, default=0, help="extra seeded instances for example-4-6")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_examples)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING - 10 * min(getattr(args, "verbose", 0), 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    for name in ("workers", "budget"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except RefinementCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.stderr.write(dumps({"diagnostics": exc.diagnostics}))
        return EXIT_CAP
    except BlockMonoidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.buffer.write(dumps(out).encode("utf-8"))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
