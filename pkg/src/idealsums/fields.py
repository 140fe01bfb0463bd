"""Number fields given by a monic integer polynomial, and how rational
primes split into prime ideals.

A field is only ever used through its splitting data: for each rational
prime p we need the shape {(e_i, f_i)} of its factorization, from which
every ideal norm and counting function follows.  Quadratic fields use the
Kronecker symbol of the fundamental discriminant (valid at all primes);
degree >= 3 uses factorization of the defining polynomial mod p, which is
only safe away from primes dividing the polynomial discriminant, so those
primes are rejected unless an explicit override is supplied.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .errors import FieldConfigError, NormOverflowError, UnsupportedPrimeError
from .polyfactor import factor_poly_mod_p
from .util import NORM_CAP, is_prime, seed_from, stable_hash_hex

#: How many small primes the bounded irreducibility heuristic tries.
DEFAULT_IRREDUCIBILITY_TRIALS = 12


@dataclass(frozen=True)
class SplittingType:
    """Shape of a rational prime's factorization: ((e_1, f_1), ...)."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise FieldConfigError("splitting type needs at least one factor")
        for e, f in self.factors:
            if e < 1 or f < 1:
                raise FieldConfigError(f"invalid (e, f) pair ({e}, {f})")

    @property
    def degree_sum(self) -> int:
        return sum(e * f for e, f in self.factors)

    @property
    def f_profile(self) -> tuple[int, ...]:
        """Residue degrees with multiplicity, sorted; local Euler factors
        depend on the splitting only through this."""
        return tuple(sorted(f for _, f in self.factors))


@dataclass(frozen=True)
class PrimeIdealRef:
    """One prime ideal above p, identified positionally (slot) within the
    splitting type; norm = p**f."""

    p: int
    f: int
    e: int
    slot: int
    norm: int

    def __post_init__(self):
        if self.norm != self.p**self.f:
            raise FieldConfigError("norm must equal p**f")
        if self.norm > NORM_CAP:
            raise NormOverflowError(f"norm {self.p}**{self.f} exceeds 64-bit cap")


@dataclass(frozen=True)
class Invariants:
    """Classically tabulated field invariants, all optional; r1/r2 are the
    real / complex-pair embedding counts, h the class number, R the
    regulator, w the number of roots of unity, d_K the field discriminant."""

    r1: int | None = None
    r2: int | None = None
    h: int | None = None
    R: float | None = None
    w: int | None = None
    d_K: int | None = None

    def complete(self) -> bool:
        return None not in (self.r1, self.r2, self.h, self.R, self.w, self.d_K)


@dataclass(frozen=True)
class FieldSpec:
    """A number field: monic integer min_poly (constant term first),
    optional invariants, optional per-prime splitting overrides.

    Immutable after construction; safe to share across threads.
    """

    min_poly: tuple[int, ...]
    invariants: Invariants | None = None
    overrides: tuple[tuple[int, SplittingType], ...] = ()
    _hash_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def override_for(self, p: int) -> SplittingType | None:
        for q, s in self.overrides:
            if q == p:
                return s
        return None

    def to_dict(self) -> dict:
        d: dict = {"min_poly": list(self.min_poly)}
        if self.invariants is not None:
            inv = self.invariants
            d["invariants"] = {
                k: v
                for k, v in (
                    ("r1", inv.r1),
                    ("r2", inv.r2),
                    ("h", inv.h),
                    ("R", inv.R),
                    ("w", inv.w),
                    ("d_K", inv.d_K),
                )
                if v is not None
            }
        if self.overrides:
            d["overrides"] = {
                str(p): [list(ef) for ef in s.factors] for p, s in self.overrides
            }
        return d

    @property
    def content_hash(self) -> str:
        if not self._hash_cache:
            self._hash_cache.append(stable_hash_hex(self.to_dict()))
        return self._hash_cache[0]


# ----------------------------------------------------------------------
# Exact integer polynomial discriminant (Sylvester resultant, Bareiss)
# ----------------------------------------------------------------------


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


@lru_cache(maxsize=256)
def poly_discriminant(min_poly: tuple[int, ...]) -> int:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') for monic integer f."""
    d = len(min_poly) - 1
    if d == 1:
        return 1
    f = list(min_poly[::-1])  # descending for the Sylvester layout
    fp = [c * (d - i) for i, c in enumerate(f[:-1])]
    n, m = d, d - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + f + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + fp + [0] * (n - 1 - i))
    res = _bareiss_det(rows)
    if (d * (d - 1) // 2) % 2:
        res = -res
    return res


def _squarefree_kernel(n: int) -> int:
    """Squarefree part m with n = m * (square), sign preserved; n != 0."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    kernel = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                kernel *= d
        d += 1
    return sign * kernel * n


@lru_cache(maxsize=256)
def _fundamental_discriminant_from_poly(min_poly: tuple[int, ...]) -> int:
    b, c = min_poly[1], min_poly[0]
    m = _squarefree_kernel(b * b - 4 * c)
    return m if m % 4 == 1 else 4 * m


def fundamental_discriminant(spec: FieldSpec) -> int:
    """Field discriminant of a degree <= 2 field.

    Prefers a supplied invariants.d_K; otherwise derives it from the
    squarefree kernel m of the polynomial discriminant (d_K = m when
    m = 1 mod 4, else 4m).
    """
    if spec.invariants is not None and spec.invariants.d_K is not None:
        return spec.invariants.d_K
    if spec.degree == 1:
        return 1
    if spec.degree == 2:
        return _fundamental_discriminant_from_poly(spec.min_poly)
    raise FieldConfigError(
        "fundamental discriminant must be supplied via invariants for degree >= 3"
    )


# ----------------------------------------------------------------------
# Kronecker symbol and splitting
# ----------------------------------------------------------------------


def kronecker_symbol(D: int, p: int) -> int:
    """(D | p) for prime p, with the usual convention at p = 2."""
    if not is_prime(p):
        raise FieldConfigError(f"{p} is not prime")
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


_SPLIT2 = {
    1: SplittingType(((1, 1), (1, 1))),
    -1: SplittingType(((1, 2),)),
    0: SplittingType(((2, 1),)),
}


def split_prime(spec: FieldSpec, p: int) -> SplittingType:
    """Splitting type of p in the field.

    Degree 1: trivial.  Degree 2: Kronecker symbol of the fundamental
    discriminant, valid at every prime.  Degree >= 3: Dedekind's theorem
    via factorization of min_poly mod p, refused when p divides the
    polynomial discriminant (UnsupportedPrimeError) unless overridden.
    """
    if not is_prime(p):
        raise FieldConfigError(f"{p} is not prime")
    override = spec.override_for(p)
    if override is not None:
        return override
    d = spec.degree
    if d == 1:
        return SplittingType(((1, 1),))
    if d == 2:
        return _SPLIT2[kronecker_symbol(fundamental_discriminant(spec), p)]
    if poly_discriminant(spec.min_poly) % p == 0:
        raise UnsupportedPrimeError(p, "divides disc(min_poly); supply an override")
    factors = factor_poly_mod_p(
        list(spec.min_poly), p, seed=seed_from(spec.content_hash, p)
    )
    shape = tuple(sorted((mult, len(g) - 1) for g, mult in factors))
    st = SplittingType(shape)
    if st.degree_sum != d:
        raise FieldConfigError(
            f"splitting of {p} violates sum(e*f) = {d}; corrupt factorization"
        )
    return st


def prime_ideals_above(spec: FieldSpec, p: int) -> list[PrimeIdealRef]:
    """Prime ideals above p, slot-indexed in splitting-type order."""
    st = split_prime(spec, p)
    refs = []
    for slot, (e, f) in enumerate(st.factors):
        norm = p**f
        if norm > NORM_CAP:
            raise NormOverflowError(f"norm {p}**{f} exceeds 64-bit cap")
        refs.append(PrimeIdealRef(p=p, f=f, e=e, slot=slot, norm=norm))
    return refs


def splitting_profiles(
    spec: FieldSpec, primes: np.ndarray
) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Classify primes by residue-degree profile for the coefficient sieves.

    Returns (codes, profiles): codes[i] indexes into profiles, the sorted
    f-multiset of primes[i].  Raises UnsupportedPrimeError on the first
    unsupported prime.
    """
    profiles: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}
    codes = np.empty(len(primes), dtype=np.int8)

    def code_of(profile: tuple[int, ...]) -> int:
        if profile not in index:
            index[profile] = len(profiles)
            profiles.append(profile)
        return index[profile]

    d = spec.degree
    overridden = {p: s for p, s in spec.overrides}
    if d == 1:
        codes[:] = code_of((1,))
        for i, p in enumerate(primes):
            st = overridden.get(int(p))
            if st is not None:
                codes[i] = code_of(st.f_profile)
        return codes, profiles
    if d == 2:
        D = fundamental_discriminant(spec)
        split_c = code_of((1, 1))
        inert_c = code_of((2,))
        ram_c = code_of((1,))
        lut = {1: split_c, -1: inert_c, 0: ram_c}
        for i, p_ in enumerate(primes):
            p = int(p_)
            st = overridden.get(p)
            if st is not None:
                codes[i] = code_of(st.f_profile)
                continue
            if p == 2:
                chi = 0 if D % 2 == 0 else (1 if D % 8 in (1, 7) else -1)
            else:
                r = pow(D % p, (p - 1) // 2, p)
                chi = 0 if r == 0 else (1 if r == 1 else -1)
            codes[i] = lut[chi]
        return codes, profiles
    for i, p_ in enumerate(primes):
        codes[i] = code_of(split_prime(spec, int(p_)).f_profile)
    return codes, profiles


# ----------------------------------------------------------------------
# Parsing and validation
# ----------------------------------------------------------------------


def _check_irreducible(min_poly: tuple[int, ...], trials: int) -> None:
    """Bounded irreducibility heuristic; raises only on certain reducibility.

    Certain reducibility: an integer root, or a repeated factor
    (disc = 0).  Certification (irreducible mod some good prime) stops the
    search early; if no certificate is found within the trial budget the
    polynomial is accepted, and bad inputs fail loudly downstream through
    the sum(e*f) = d invariant.
    """
    d = len(min_poly) - 1
    if d == 1:
        return
    a0 = min_poly[0]
    if a0 == 0:
        raise FieldConfigError("reducible: x divides min_poly")
    # integer roots of a monic polynomial divide the constant term
    for r in range(1, isqrt(abs(a0)) + 1):
        if a0 % r:
            continue
        for root in {r, -r, a0 // r, -(a0 // r)}:
            val = 0
            for c in reversed(min_poly):
                val = val * root + c
            if val == 0:
                raise FieldConfigError(f"reducible: integer root {root}")
    disc = poly_discriminant(min_poly)
    if disc == 0:
        raise FieldConfigError("reducible: repeated factor (discriminant is zero)")
    p, tried = 2, 0
    while tried < trials:
        if is_prime(p) and disc % p != 0:
            factors = factor_poly_mod_p(list(min_poly), p)
            if len(factors) == 1 and factors[0][1] == 1:
                return  # irreducible mod p certifies irreducibility over Q
            tried += 1
        p += 1


def _parse_invariants(block: dict, d: int) -> Invariants:
    known = {"r1", "r2", "h", "R", "w", "d_K"}
    unknown = set(block) - known
    if unknown:
        raise FieldConfigError(f"unknown invariant keys {sorted(unknown)}")
    for key in ("r1", "r2", "h", "w", "d_K"):
        if key in block and not isinstance(block[key], int):
            raise FieldConfigError(f"invariant {key} must be an integer")
    inv = Invariants(
        r1=block.get("r1"),
        r2=block.get("r2"),
        h=block.get("h"),
        R=float(block["R"]) if "R" in block else None,
        w=block.get("w"),
        d_K=block.get("d_K"),
    )
    if inv.r1 is not None or inv.r2 is not None:
        r1 = inv.r1 or 0
        r2 = inv.r2 or 0
        if r1 + 2 * r2 != d:
            raise FieldConfigError(f"invariants violate r1 + 2*r2 = d: {r1} + 2*{r2} != {d}")
    if inv.w is not None and inv.w < 2:
        raise FieldConfigError("w must be >= 2")
    if inv.h is not None and inv.h < 1:
        raise FieldConfigError("h must be >= 1")
    if inv.R is not None and not inv.R > 0:
        raise FieldConfigError("R must be > 0")
    if inv.d_K is not None and inv.d_K == 0:
        raise FieldConfigError("d_K must be nonzero")
    return inv


def parse_field_spec(
    config_text: str, irreducibility_trials: int = DEFAULT_IRREDUCIBILITY_TRIALS
) -> FieldSpec:
    """Parse and validate a TOML field description.

    Schema: min_poly = [c0, c1, ..., 1] (constant term first, monic);
    optional [invariants] with r1, r2, h, R, w, d_K; optional [overrides]
    mapping a prime (as a string key) to [[e, f], ...].
    """
    try:
        data = _toml.loads(config_text)
    except _toml.TOMLDecodeError as exc:
        raise FieldConfigError(f"config is not valid TOML: {exc}") from exc
    if "min_poly" not in data:
        raise FieldConfigError("config must define min_poly")
    raw = data["min_poly"]
    if (
        not isinstance(raw, list)
        or len(raw) < 2
        or not all(isinstance(c, int) for c in raw)
    ):
        raise FieldConfigError("min_poly must be a list of >= 2 integers")
    if raw[-1] != 1:
        raise FieldConfigError("min_poly must be monic (leading coefficient 1)")
    min_poly = tuple(raw)
    d = len(min_poly) - 1
    _check_irreducible(min_poly, irreducibility_trials)

    invariants = None
    if "invariants" in data:
        if not isinstance(data["invariants"], dict):
            raise FieldConfigError("invariants must be a table")
        invariants = _parse_invariants(data["invariants"], d)

    overrides: list[tuple[int, SplittingType]] = []
    if "overrides" in data:
        if not isinstance(data["overrides"], dict):
            raise FieldConfigError("overrides must be a table")
        for key, val in data["overrides"].items():
            try:
                p = int(key)
            except ValueError:
                raise FieldConfigError(f"override key {key!r} is not an integer")
            if not is_prime(p):
                raise FieldConfigError(f"override key {p} is not prime")
            try:
                st = SplittingType(tuple((int(e), int(f)) for e, f in val))
            except (TypeError, ValueError):
                raise FieldConfigError(f"override for {p} must be [[e, f], ...]")
            if st.degree_sum != d:
                raise FieldConfigError(
                    f"override for {p} violates sum(e*f) = {d}"
                )
            overrides.append((p, st))
        overrides.sort()

    unknown = set(data) - {"min_poly", "invariants", "overrides"}
    if unknown:
        raise FieldConfigError(f"unknown config keys {sorted(unknown)}")
    return FieldSpec(
        min_poly=min_poly, invariants=invariants, overrides=tuple(overrides)
    )


def load_field(path) -> FieldSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_field_spec(fh.read())
