"""Explicit integral ideals: enumeration by norm and the pointwise
arithmetic functions (Mobius, Liouville, von Mangoldt, divisor count).

An ideal is a finite exponent vector over prime-ideal references; every
quantity downstream depends only on norms and factorization shape, so no
generators are ever needed.  Enumeration is a depth-first stream over the
norm-sorted prime-ideal list with norm-bound pruning: every integral ideal
of norm <= X appears exactly once, in DFS order (not global norm order).
This module is the slow exact oracle that the sieve-based coefficient
engine is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

import numpy as np

from .errors import NormOverflowError
from .fields import FieldSpec, PrimeIdealRef, SplittingType, prime_ideals_above, split_prime
from .util import NORM_CAP, sieve_primes


@dataclass(frozen=True)
class IdealFactored:
    """An integral ideal as (prime ideal, exponent >= 1) pairs, sorted by
    (norm, p, slot); the empty product is the unit ideal of norm 1."""

    factors: tuple[tuple[PrimeIdealRef, int], ...]
    norm: int


UNIT_IDEAL = IdealFactored(factors=(), norm=1)


def make_ideal(factors) -> IdealFactored:
    """Validated construction from (PrimeIdealRef, exponent) pairs."""
    factors = tuple(sorted(factors, key=lambda fe: (fe[0].norm, fe[0].p, fe[0].slot)))
    norm = 1
    seen = set()
    for ref, exp in factors:
        if exp < 1:
            raise ValueError("exponents must be >= 1")
        key = (ref.p, ref.slot)
        if key in seen:
            raise ValueError(f"duplicate prime ideal {key}")
        seen.add(key)
        for _ in range(exp):
            norm *= ref.norm
            if norm > NORM_CAP:
                raise NormOverflowError("ideal norm exceeds 64-bit cap")
    return IdealFactored(factors=factors, norm=norm)


def multiply(a: IdealFactored, b: IdealFactored) -> IdealFactored:
    """Product of two ideals in factored form."""
    exps: dict[PrimeIdealRef, int] = {}
    for ref, e in a.factors:
        exps[ref] = exps.get(ref, 0) + e
    for ref, e in b.factors:
        exps[ref] = exps.get(ref, 0) + e
    return make_ideal(exps.items())


# ----------------------------------------------------------------------
# Pointwise arithmetic functions
# ----------------------------------------------------------------------


def mobius(a: IdealFactored) -> int:
    """1 on the unit ideal, (-1)^r on a product of r distinct prime
    ideals, 0 when any square divides."""
    for _, exp in a.factors:
        if exp >= 2:
            return 0
    return -1 if len(a.factors) % 2 else 1


def liouville(a: IdealFactored) -> int:
    """(-1)^Omega with Omega the number of prime-ideal divisors counted
    with multiplicity; 1 on the unit ideal."""
    omega = sum(exp for _, exp in a.factors)
    return -1 if omega % 2 else 1


def von_mangoldt(a: IdealFactored) -> float:
    """log(norm of p) on powers of a single prime ideal p, else 0.

    Computed as f * log(p) so it matches the coefficient engine bit for
    bit.
    """
    if len(a.factors) != 1:
        return 0.0
    ref, _ = a.factors[0]
    return ref.f * math.log(ref.p)


def divisor_count(a: IdealFactored) -> int:
    """Number of ideals dividing a: product of (exponent + 1)."""
    out = 1
    for _, exp in a.factors:
        out *= exp + 1
    return out


def liouville_equals_mobius_over_squares(a: IdealFactored) -> bool:
    """Check lambda(a) = sum of mu(a / b^2) over ideals b with b^2 | a."""
    exps = [exp for _, exp in a.factors]
    total = 0
    for sub in product(*(range(e // 2 + 1) for e in exps)):
        rem = [e - 2 * s for e, s in zip(exps, sub)]
        if any(r >= 2 for r in rem):
            continue
        r = sum(1 for x in rem if x == 1)
        total += -1 if r % 2 else 1
    return total == liouville(a)


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------


def splitting_table(spec: FieldSpec, X: int) -> dict[int, SplittingType]:
    """Splitting types for every rational prime <= X."""
    return {int(p): split_prime(spec, int(p)) for p in sieve_primes(X)}


def prime_ideals_up_to(
    spec: FieldSpec, X: int, table: dict[int, SplittingType] | None = None
) -> list[PrimeIdealRef]:
    """All prime ideals of norm <= X, sorted by (norm, p, slot)."""
    if X > NORM_CAP:
        raise NormOverflowError(f"X = {X} exceeds 64-bit cap")
    refs: list[PrimeIdealRef] = []
    if table is None:
        for p in sieve_primes(X):
            refs.extend(r for r in prime_ideals_above(spec, int(p)) if r.norm <= X)
    else:
        for p in sorted(table):
            if p > X:
                continue
            for slot, (e, f) in enumerate(table[p].factors):
                norm = p**f
                if norm <= X:
                    refs.append(PrimeIdealRef(p=p, f=f, e=e, slot=slot, norm=norm))
    refs.sort(key=lambda r: (r.norm, r.p, r.slot))
    return refs


def enumerate_ideals(
    spec: FieldSpec,
    X: int,
    prime_ideals: list[PrimeIdealRef] | None = None,
) -> Iterator[IdealFactored]:
    """Stream every integral ideal of norm <= X exactly once (DFS order)."""
    if X < 1:
        raise ValueError("norm bound X must be >= 1")
    if X > NORM_CAP:
        raise NormOverflowError(f"X = {X} exceeds 64-bit cap")
    refs = prime_ideals_up_to(spec, X) if prime_ideals is None else prime_ideals
    norms = [r.norm for r in refs]
    n = len(refs)

    def rec(j0: int, norm_so_far: int, acc: list) -> Iterator[IdealFactored]:
        yield IdealFactored(factors=tuple(acc), norm=norm_so_far)
        for j in range(j0, n):
            nj = norms[j]
            cur = norm_so_far * nj
            if cur > X:
                break  # norms ascending: later primes only larger
            e = 1
            while True:
                acc.append((refs[j], e))
                yield from rec(j + 1, cur, acc)
                acc.pop()
                if cur * nj > X:
                    break
                cur *= nj
                e += 1

    return rec(0, 1, [])


def ideal_count_oracle(spec: FieldSpec, X: int) -> int:
    """I(X) by direct enumeration."""
    return sum(1 for _ in enumerate_ideals(spec, X))


def aggregate_by_norm(
    spec: FieldSpec,
    X: int,
    fn: Callable[[IdealFactored], float],
    dtype=np.int64,
) -> np.ndarray:
    """arr[n] = sum of fn over ideals of norm n, for n <= X (arr[0] = 0).

    The exact-oracle counterpart of the coefficient engine.
    """
    arr = np.zeros(X + 1, dtype=dtype)
    for ideal in enumerate_ideals(spec, X):
        arr[ideal.norm] += fn(ideal)
    return arr
