"""Persistent cache of splitting tables, keyed by (field content hash,
prime bound) and versioned; cold-start splitting dominates cost for
degree >= 3 fields.

Format (JSON, one file per key): {"cache_version", "tool_version",
"field_hash", "p_max", "splittings": [[p, [[e, f], ...] | null], ...]}
where null marks a prime whose splitting is unsupported without an
override.  Writes are atomic (write-temp-then-rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .errors import UnsupportedPrimeError
from .fields import FieldSpec, SplittingType, split_prime
from .util import sieve_primes

CACHE_VERSION = 1

ENV_CACHE_DIR = "IDEALSUMS_CACHE_DIR"


def cache_path(directory, spec: FieldSpec, p_max: int) -> Path:
    name = f"splittings_{spec.content_hash}_p{p_max}_v{CACHE_VERSION}.json"
    return Path(directory) / name


def load_splitting_table(
    directory, spec: FieldSpec, p_max: int
) -> tuple[dict[int, SplittingType], set[int]] | None:
    """Cached (table, unsupported primes), or None on miss/version skew."""
    path = cache_path(directory, spec, p_max)
    if not path.is_file():
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if (
        data.get("cache_version") != CACHE_VERSION
        or data.get("field_hash") != spec.content_hash
        or data.get("p_max") != p_max
    ):
        return None
    table: dict[int, SplittingType] = {}
    unsupported: set[int] = set()
    for p, factors in data["splittings"]:
        if factors is None:
            unsupported.add(p)
        else:
            table[p] = SplittingType(tuple((int(e), int(f)) for e, f in factors))
    return table, unsupported


def store_splitting_table(
    directory,
    spec: FieldSpec,
    p_max: int,
    table: dict[int, SplittingType],
    unsupported: set[int],
) -> Path:
    path = cache_path(directory, spec, p_max)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "cache_version": CACHE_VERSION,
        "tool_version": __version__,
        "field_hash": spec.content_hash,
        "p_max": p_max,
        "splittings": [
            [p, None if p in unsupported else [list(ef) for ef in table[p].factors]]
            for p in sorted(set(table) | unsupported)
        ],
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def splitting_table_with_flags(
    spec: FieldSpec, p_max: int, cache_dir=None
) -> tuple[dict[int, SplittingType], set[int]]:
    """Splitting types for all primes <= p_max, flagging unsupported ones
    instead of failing; served from / saved to the cache when a directory
    is given."""
    if cache_dir is not None:
        hit = load_splitting_table(cache_dir, spec, p_max)
        if hit is not None:
            return hit
    table: dict[int, SplittingType] = {}
    unsupported: set[int] = set()
    for p_ in sieve_primes(p_max):
        p = int(p_)
        try:
            table[p] = split_prime(spec, p)
        except UnsupportedPrimeError:
            unsupported.add(p)
    if cache_dir is not None:
        store_splitting_table(cache_dir, spec, p_max, table, unsupported)
    return table, unsupported
