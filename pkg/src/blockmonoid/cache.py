"""Persistent atom-set cache, addressed by a hash of the canonical ground set."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from ._version import __version__
from .diophantine import DEFAULT_NODE_BUDGET
from .errors import BlockMonoidError
from .serialize import atoms_from_json, atoms_to_json, dumps, ground_to_json
from .zerosum import AtomSet, GroundSet, atoms_of, remember_atoms

log = logging.getLogger(__name__)

CACHE_ENV = "BLOCKMONOID_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "blockmonoid"


def cache_key(G0: GroundSet, version: str = __version__) -> str:
    body = dumps({"ground": ground_to_json(G0), "version": version}, pretty=False)
    return hashlib.sha256(body.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    payload: dict
    version: str
    timestamp: float

    def to_json(self) -> dict:
        return {"key": self.key, "payload": self.payload, "version": self.version, "timestamp": self.timestamp}


class AtomCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, G0: GroundSet) -> AtomSet | None:
        key = cache_key(G0)
        p = self.path(key)
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("unreadable cache entry %s: %s", p.name, exc)
            return None
        if doc.get("version") != __version__ or doc.get("key") != key:
            log.info("stale cache entry %s ignored", p.name)
            return None
        try:
            atoms = atoms_from_json(doc["payload"], validate=True)
        except (KeyError, TypeError, ValueError, BlockMonoidError) as exc:
            log.warning("invalid cache entry %s: %s", p.name, exc)
            return None
        if atoms.ground != G0:
            log.warning("cache entry %s does not match its ground set", p.name)
            return None
        return atoms

    def put(self, atoms: AtomSet) -> CacheEntry:
        key = cache_key(atoms.ground)
        entry = CacheEntry(key, atoms_to_json(atoms), __version__, time.time())
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=self.directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(dumps(entry.to_json()))
            os.replace(tmp, self.path(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return entry

    def atoms(self, G0: GroundSet, *, budget: int = DEFAULT_NODE_BUDGET, workers: int = 1) -> AtomSet:
        """Cached atoms of ``G0``, computing and storing them on a miss."""
        hit = self.get(G0)
        if hit is not None:
            log.info("cache hit %s", cache_key(G0)[:12])
            remember_atoms(hit)
            return hit
        atoms = atoms_of(G0, budget=budget, workers=workers)
        try:
            self.put(atoms)
        except OSError as exc:
            log.warning("could not write cache entry: %s", exc)
        return atoms
