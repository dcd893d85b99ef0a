"""Sharded execution with order-independent merging.

Work is described by a contiguous index range [0, total).  It is split into
shards, each shard is evaluated by ``fn(*args, lo, hi, **kwargs)``, and the
partial results are merged by addition.  Since addition is associative and
commutative, the merged result does not depend on the shard count, the
thread count, or the completion order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import reduce

import numpy as np


def shard_ranges(total: int, shards: int) -> list:
    shards = max(1, min(shards, total)) if total else 1
    edges = np.linspace(0, total, shards + 1).round().astype(np.int64)
    return [(int(edges[i]), int(edges[i + 1])) for i in range(shards)]


def merge_results(a, b):
    """Additive merge for ints/floats, dicts of mergeable values, and Counters."""
    if isinstance(a, dict):
        out = dict(a)
        for k, v in b.items():
            out[k] = merge_results(out[k], v) if k in out else v
        return out
    if isinstance(a, (list, tuple)):
        return type(a)(list(a) + list(b))
    return a + b


def _call(payload):
    fn, args, lo, hi, kwargs = payload
    return fn(*args, lo, hi, **kwargs)


def shard_and_merge(fn, total: int, shards: int = 1, threads: int = 1, args=(), kwargs=None):
    """Evaluate ``fn`` over shards of [0, total) and merge the results."""
    kwargs = kwargs or {}
    payloads = [(fn, tuple(args), lo, hi, kwargs) for lo, hi in shard_ranges(total, shards)]
    if threads > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_call, payloads))
    else:
        parts = [_call(p) for p in payloads]
    return reduce(merge_results, parts)


def shard_seeds(seed: int, count: int) -> list:
    """Independent child seeds derived from one global seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]
