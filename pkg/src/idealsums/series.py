"""Aggregated Dirichlet coefficients of the series attached to a number
field's zeta function, plus generic coefficient-sequence algebra.

For a field K with ideal-counting function F(n) = #{ideals of norm n},
five coefficient sequences are supported, each an Euler product over the
prime-ideal splitting data:

    ZETA            F(n), the zeta coefficients themselves
    ZETA_INV        sum of the ideal Mobius function over norm-n ideals
    LIOUVILLE       sum of the ideal Liouville function (zeta(2s)/zeta(s))
    LOG_DERIV_NEG   sum of the ideal von Mangoldt function (-zeta'/zeta)
    ZETA_SQ         sum of the ideal divisor count (zeta(s)^2)

Local factors at p depend on the splitting only through the residue-degree
multiset {f_i}.  Assembly is a multiplicative sieve: small primes
(p <= sqrt(N)) convolve their full local factor into the table; large
primes contribute only their u^1 coefficient and are applied in one
vectorized pass per smooth cofactor.  The log-derivative series is
supported on prime powers and is assembled by direct placement instead.

Coefficient arrays are 1-indexed: length N + 1 with index 0 unused.
Integer kinds use exact int64 arithmetic (values at desk scale are tiny
compared to the 2**63 cap).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt, log

import numpy as np

from .fields import FieldSpec, SplittingType, splitting_profiles
from .util import format_float, sieve_primes


class SeriesKind(Enum):
    ZETA = "zeta"
    ZETA_INV = "zeta-inv"
    LIOUVILLE = "liouville"
    LOG_DERIV_NEG = "mangoldt"
    ZETA_SQ = "zeta-sq"


INTEGER_KINDS = frozenset(
    {SeriesKind.ZETA, SeriesKind.ZETA_INV, SeriesKind.LIOUVILLE, SeriesKind.ZETA_SQ}
)


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients a_1..a_N of one series; values[0] is unused (zero)."""

    kind: SeriesKind
    field: FieldSpec
    N: int
    values: np.ndarray

    def a(self, n: int):
        v = self.values[n]
        return int(v) if self.kind in INTEGER_KINDS else float(v)

    def write_csv(self, fh: io.TextIOBase) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "a_n"])
        integer = self.kind in INTEGER_KINDS
        for n in range(1, self.N + 1):
            v = self.values[n]
            w.writerow([n, int(v) if integer else format_float(float(v))])


# ----------------------------------------------------------------------
# Local factors
# ----------------------------------------------------------------------


def _mul_trunc(a: list[int], b: list[int], k_max: int) -> list[int]:
    out = [0] * (k_max + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if i + j > k_max:
                    break
                out[i + j] += x * y
    return out


@lru_cache(maxsize=4096)
def _int_local_factor(
    kind: SeriesKind, profile: tuple[int, ...], k_max: int
) -> tuple[int, ...]:
    """Local factor of an integer kind in u = p^(-s); independent of p."""
    out = [1] + [0] * k_max
    for f in profile:
        if kind is SeriesKind.ZETA or kind is SeriesKind.ZETA_SQ:
            fac = [1 if k % f == 0 else 0 for k in range(k_max + 1)]
        elif kind is SeriesKind.ZETA_INV:
            fac = [0] * (k_max + 1)
            fac[0] = 1
            if f <= k_max:
                fac[f] = -1
        elif kind is SeriesKind.LIOUVILLE:
            fac = [
                ((-1) ** (k // f) if k % f == 0 else 0) for k in range(k_max + 1)
            ]
        else:
            raise ValueError(f"not an integer kind: {kind}")
        out = _mul_trunc(out, fac, k_max)
    if kind is SeriesKind.ZETA_SQ:
        out = _mul_trunc(out, out, k_max)
    return tuple(out)


@lru_cache(maxsize=4096)
def _mangoldt_weights(profile: tuple[int, ...], k_max: int) -> tuple[int, ...]:
    """Integer weights w_k with local log-derivative coefficient w_k*log p:
    w_k = sum of f over residue degrees f dividing k."""
    return tuple(
        0 if k == 0 else sum(f for f in profile if k % f == 0)
        for k in range(k_max + 1)
    )


def local_factor(kind: SeriesKind, splitting: SplittingType, p: int, k_max: int) -> list:
    """Coefficients of the local Euler factor at p, as a power series in
    u = p^(-s) truncated at u^k_max.

    Integer kinds return ints; LOG_DERIV_NEG returns floats (multiples of
    log p).
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    profile = splitting.f_profile
    if kind is SeriesKind.LOG_DERIV_NEG:
        lp = log(p)
        return [w * lp for w in _mangoldt_weights(profile, k_max)]
    return list(_int_local_factor(kind, profile, k_max))


# ----------------------------------------------------------------------
# Sieve assembly
# ----------------------------------------------------------------------


def _k_max(p: int, N: int) -> int:
    k, pk = 0, 1
    while pk * p <= N:
        pk *= p
        k += 1
    return k


def coefficients(
    kind: SeriesKind,
    spec: FieldSpec,
    N: int,
    profiles_override: tuple[np.ndarray, list[tuple[int, ...]]] | None = None,
) -> CoeffTable:
    """Aggregated coefficients a_1..a_N for the given series kind.

    profiles_override short-circuits prime classification (used by the
    cache layer); it must cover every prime <= N in ascending order.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    primes = sieve_primes(N)
    if profiles_override is None:
        codes, profiles = splitting_profiles(spec, primes)
    else:
        codes, profiles = profiles_override
        if len(codes) != len(primes):
            raise ValueError("profiles_override does not cover the primes <= N")

    if kind is SeriesKind.LOG_DERIV_NEG:
        values = _assemble_log_deriv(primes, codes, profiles, N)
    else:
        values = _assemble_multiplicative(kind, primes, codes, profiles, N)
    return CoeffTable(kind=kind, field=spec, N=N, values=values)


def _assemble_log_deriv(primes, codes, profiles, N: int) -> np.ndarray:
    a = np.zeros(N + 1, dtype=np.float64)
    if len(primes) == 0:
        return a
    # u^1 coefficient for every prime in one shot
    w1 = np.array(
        [_mangoldt_weights(pr, 1)[1] if 1 in pr else 0 for pr in profiles],
        dtype=np.float64,
    )
    a[primes] = w1[codes] * np.log(primes.astype(np.float64))
    # higher prime powers only exist for p <= sqrt(N)
    root = isqrt(N)
    for i in range(int(np.searchsorted(primes, root, side="right"))):
        p = int(primes[i])
        km = _k_max(p, N)
        weights = _mangoldt_weights(profiles[codes[i]], km)
        lp = log(p)
        pk = p
        for k in range(2, km + 1):
            pk *= p
            if weights[k]:
                a[pk] = weights[k] * lp
    return a


def _assemble_multiplicative(kind, primes, codes, profiles, N: int) -> np.ndarray:
    a = np.zeros(N + 1, dtype=np.int64)
    a[1] = 1
    if len(primes) == 0:
        return a
    root = isqrt(N)
    n_small = int(np.searchsorted(primes, root, side="right"))

    for i in range(n_small):
        p = int(primes[i])
        km = _k_max(p, N)
        local = _int_local_factor(kind, profiles[codes[i]], km)
        old = a[: N // p + 1].copy()
        pk = 1
        for k in range(1, km + 1):
            pk *= p
            c = local[k]
            if c:
                a[pk::pk] += c * old[1 : N // pk + 1]

    large = primes[n_small:]
    if len(large) == 0:
        return a
    c1_by_code = np.array(
        [_int_local_factor(kind, pr, 1)[1] for pr in profiles], dtype=np.int64
    )
    c1 = c1_by_code[codes[n_small:]]
    keep = c1 != 0
    large, c1 = large[keep], c1[keep]
    if len(large) == 0:
        return a
    # each n <= N has at most one prime factor > sqrt(N), so these
    # updates read only smooth indices and write only non-smooth ones
    m_max = N // int(large[0])
    for m in range(1, m_max + 1):
        am = int(a[m])
        if am == 0:
            continue
        cnt = int(np.searchsorted(large, N // m, side="right"))
        if cnt == 0:
            break
        a[large[:cnt] * m] += am * c1[:cnt]
    return a


# ----------------------------------------------------------------------
# Coefficient-sequence algebra (1-indexed arrays, index 0 unused)
# ----------------------------------------------------------------------


def dirichlet_multiply(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    """c_n = sum over d | n of a_d * b_(n/d), for n <= N."""
    if len(a) < N + 1 or len(b) < N + 1:
        raise ValueError("input arrays must have length >= N + 1")
    dtype = np.result_type(a.dtype, b.dtype)
    c = np.zeros(N + 1, dtype=dtype)
    for d in range(1, N + 1):
        ad = a[d]
        if ad != 0:
            c[d::d] += ad * b[1 : N // d + 1]
    return c


def dirichlet_invert(a: np.ndarray, N: int) -> np.ndarray:
    """b with a * b = identity-at-1 up to N; requires a_1 = 1."""
    if len(a) < N + 1:
        raise ValueError("input array must have length >= N + 1")
    if a[1] != 1:
        raise ValueError("dirichlet_invert requires a_1 = 1")
    b = np.zeros(N + 1, dtype=a.dtype)
    b[1] = 1
    # push b_m forward once finalized: b_(dm) -= a_d * b_m for d >= 2
    for m in range(1, N // 2 + 1):
        bm = b[m]
        if bm != 0:
            b[2 * m :: m] -= bm * a[2 : N // m + 1]
    return b


def dilate_to_2s(a: np.ndarray, N: int) -> np.ndarray:
    """b_m = a_k when m = k^2, else 0 (the s -> 2s substitution)."""
    b = np.zeros(N + 1, dtype=a.dtype)
    ks = np.arange(1, isqrt(N) + 1)
    b[ks * ks] = a[ks]
    return b


def identity_coefficients(N: int, dtype=np.int64) -> np.ndarray:
    """The convolution identity: 1 at n = 1, else 0."""
    e = np.zeros(N + 1, dtype=dtype)
    e[1] = 1
    return e


class TableStore:
    """Lazily built, memoized coefficient tables for one field.

    Tables are immutable once built; a request for a shorter length is
    served as a slice of the longest table already built for that kind.
    Prime classifications are memoized per length as well, so computing
    several kinds at the same N classifies each prime once.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._tables: dict[SeriesKind, CoeffTable] = {}
        self._profiles: dict[int, tuple[np.ndarray, list[tuple[int, ...]]]] = {}

    def profiles(self, N: int):
        if N not in self._profiles:
            self._profiles[N] = splitting_profiles(self.spec, sieve_primes(N))
        return self._profiles[N]

    def table(self, kind: SeriesKind, N: int) -> CoeffTable:
        have = self._tables.get(kind)
        if have is None or have.N < N:
            have = coefficients(kind, self.spec, N, profiles_override=self.profiles(N))
            self._tables[kind] = have
        if have.N == N:
            return have
        return CoeffTable(kind=kind, field=self.spec, N=N, values=have.values[: N + 1])

    def values(self, kind: SeriesKind, N: int) -> np.ndarray:
        return self.table(kind, N).values
