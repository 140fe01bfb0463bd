"""Univariate polynomial factorization over prime fields GF(p).

Polynomials are lists of ints in [0, p), ascending powers (index = degree
of the term), with no trailing zeros; the zero polynomial is [].

The pipeline is the classical one: squarefree decomposition, then
distinct-degree splitting via iterated Frobenius, then randomized
equal-degree splitting (Cantor-Zassenhaus for odd p, the trace map for
p = 2).  Randomness is drawn from a caller-seeded generator so repeated
calls agree bit for bit.
"""

from __future__ import annotations

import random

from .errors import FieldConfigError
from .util import is_prime, seed_from

Poly = list  # list[int], ascending coefficients


def _trim(f: Poly) -> Poly:
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_reduce(f, p: int) -> Poly:
    return _trim([c % p for c in f])


def gf_degree(f: Poly) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def gf_add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return _trim(out)


def gf_sub(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return _trim(out)


def gf_mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def gf_divmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = f[:]
    dg = gf_degree(g)
    inv_lc = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    while gf_degree(f) >= dg:
        k = gf_degree(f) - dg
        c = f[-1] * inv_lc % p
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        _trim(f)
    return _trim(q), f


def gf_monic(f: Poly, p: int) -> Poly:
    if not f or f[-1] == 1:
        return f[:]
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gf_gcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, gf_divmod(f, g, p)[1]
    return gf_monic(f, p)


def gf_pow_mod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result = [1]
    base = gf_divmod(f, m, p)[1]
    while e > 0:
        if e & 1:
            result = gf_divmod(gf_mul(result, base, p), m, p)[1]
        base = gf_divmod(gf_mul(base, base, p), m, p)[1]
        e >>= 1
    return result


def gf_deriv(f: Poly, p: int) -> Poly:
    return _trim([i * c % p for i, c in enumerate(f)][1:])


def _pth_root(f: Poly, p: int) -> Poly:
    # f = g(x^p) with coefficients in GF(p); Frobenius fixes GF(p), so the
    # root just picks every p-th coefficient.
    return _trim(f[::p])


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities; f must be monic, deg >= 1."""
    factors: list[tuple[Poly, int]] = []
    n = 1
    while gf_degree(f) >= 1:
        d = gf_deriv(f, p)
        if d:
            g = gf_gcd(f, d, p)
            h = gf_divmod(f, g, p)[0]
            i = 1
            while h != [1]:
                t = gf_gcd(g, h, p)
                part = gf_divmod(h, t, p)[0]
                if gf_degree(part) >= 1:
                    factors.append((part, i * n))
                g = gf_divmod(g, t, p)[0]
                h = t
                i += 1
            if g == [1]:
                break
            f = g
        # remaining factor is a p-th power
        f = _pth_root(f, p)
        n *= p
    return factors


def distinct_degree_split(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into (product of irreducibles of degree d, d)."""
    out: list[tuple[Poly, int]] = []
    g = f[:]
    h = gf_pow_mod([0, 1], p, g, p)  # x^p mod g
    d = 1
    while gf_degree(g) >= 2 * d:
        w = gf_gcd(g, gf_sub(h, [0, 1], p), p)
        if gf_degree(w) >= 1:
            out.append((w, d))
            g = gf_divmod(g, w, p)[0]
            h = gf_divmod(h, g, p)[1]
        h = gf_pow_mod(h, p, g, p)
        d += 1
    if gf_degree(g) >= 1:
        out.append((g, gf_degree(g)))
    return out


def equal_degree_split(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: all irreducible factors of f, each of degree d.

    f must be monic squarefree with every irreducible factor of degree d.
    """
    n = gf_degree(f)
    if n == d:
        return [f]
    while True:
        r = _trim([rng.randrange(p) for _ in range(n)])
        if gf_degree(r) < 1:
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^[2^(d-1)] splits f
            t = gf_divmod(r, f, p)[1]
            acc = t
            for _ in range(d - 1):
                acc = gf_pow_mod(acc, 2, f, p)
                t = gf_add(t, acc, p)
            g = gf_gcd(f, t, p)
        else:
            h = gf_pow_mod(r, (p**d - 1) // 2, f, p)
            g = gf_gcd(f, gf_sub(h, [1], p), p)
        if 0 < gf_degree(g) < n:
            rest = gf_divmod(f, g, p)[0]
            return equal_degree_split(g, d, p, rng) + equal_degree_split(rest, d, p, rng)


def factor_poly_mod_p(poly, p: int, seed: int | None = None) -> list[tuple[Poly, int]]:
    """Complete factorization of poly over GF(p).

    Returns monic irreducible factors with multiplicities, sorted by degree
    then by ascending-power coefficient vector.  Their product reproduces
    the monic normalization of poly mod p (scale by the leading coefficient
    to recover the input).  Deterministic: the equal-degree stage is seeded
    from (poly, p) unless an explicit seed is given.
    """
    if not is_prime(p):
        raise FieldConfigError(f"modulus {p} is not prime")
    f = gf_reduce(poly, p)
    if not f:
        raise FieldConfigError("polynomial is zero mod p")
    if seed is None:
        seed = seed_from("polyfactor", tuple(f), p)
    rng = random.Random(seed)
    f = gf_monic(f, p)
    factors: list[tuple[Poly, int]] = []
    if gf_degree(f) >= 1:
        for sqf, mult in squarefree_decomposition(f, p):
            for block, d in distinct_degree_split(sqf, p):
                for irr in equal_degree_split(block, d, p, rng):
                    factors.append((irr, mult))
    factors.sort(key=lambda fm: (gf_degree(fm[0]), fm[0]))
    return factors
