from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial

# below this many items a process pool costs more than it saves
_MIN_PARALLEL = 64


def _call(fn, args, item):
    return fn(item, *args)


def parallel_map(fn, items, workers: int = 1, *args):
    """``[fn(item, *args) for item in items]``, optionally across processes.

    Results come back in input order whatever the worker count, so callers
    that reduce them deterministically get identical output.
    """
    items = list(items)
    if workers <= 1 or len(items) < _MIN_PARALLEL:
        return [fn(item, *args) for item in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(partial(_call, fn, args), items, chunksize=chunk))
