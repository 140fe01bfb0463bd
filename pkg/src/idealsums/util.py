"""Small shared helpers: primality, prime sieves, hashing, formatting."""

from __future__ import annotations

import hashlib
import json

import numpy as np

#: Largest ideal norm we handle; products beyond this raise NormOverflowError.
NORM_CAP = 2**63 - 1

# Witnesses proving primality for every n < 3.3 * 10**24 (standard
# deterministic Miller-Rabin base set), far beyond the 64-bit range we use.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (empty for n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def stable_hash_hex(obj, length: int = 16) -> str:
    """Deterministic content hash of a JSON-serializable object."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:length]


def seed_from(*parts) -> int:
    """64-bit RNG seed derived from a hash of the given parts."""
    blob = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def format_float(v: float) -> str:
    """17-significant-digit scientific notation (round-trip exact)."""
    return f"{v:.16e}"


def json_dumps_canonical(obj) -> str:
    """Stable JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
