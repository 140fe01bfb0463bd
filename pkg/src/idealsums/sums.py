"""Partial sums of the ideal arithmetic functions, residue and constant
estimation, error-exponent fits, and the exact identity verifiers.

Partial sums are evaluated from aggregated coefficient tables in a single
accumulation pass.  Integer-valued sums (Mobius, Liouville, ideal count,
divisor count) are exact end to end; real-valued sums use pairwise
summation within checkpoint segments and exact compensated combination
across segments.

The identity verifiers check, at finite x, relations that hold exactly at
every x:

  * Mobius-log bridge:   |M(x) log x - H(x)| <= sum over norms <= x of
    log(x / norm)
  * J-identity:          sum_{n<=x} J(n) = 1 + c H(x), where J(1) = 1 and
    J(n) = c * (aggregated Mobius-log at n) for n > 1, with J also
    computable as the convolution of the Mobius coefficients against
    (count - c * von Mangoldt) coefficients
  * hyperbola splitting: three-term evaluation of the double sum
    sum_{nm<=x} f(n) g(m) at any split point alpha * beta = x
  * psi decomposition:   psi(x) = (1/c) I(x) - sum_{nm<=x} mu-agg(m) f(n)
    - A with f(n) = (1/c) d-agg(n) - log(n) - A aggregated by norm and
    A = 2*Delta/c
  * Liouville from Mobius: L(x) = sum over ideals b with norm^2 <= x of
    M(x / norm(b)^2), exact in integers
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from math import isqrt, log, pi, sqrt

import numpy as np

from .errors import FieldConfigError
from .fields import FieldSpec
from .series import SeriesKind, TableStore, dirichlet_multiply

DEFAULT_GRID_RATIO = 10.0**0.25


class SumKind(Enum):
    MOBIUS_SUM = "mobius"  # M(x)
    LIOUVILLE_SUM = "liouville"  # L(x)
    MANGOLDT_SUM = "psi"  # psi(x)
    IDEAL_COUNT = "count"  # I(x)
    MOBIUS_LOG_SUM = "mobius-log"  # H(x)
    RECIP_NORM_SUM = "recip-norm"  # sum of 1/norm
    LOG_NORM_SUM = "log-norm"  # sum of log norm
    DIVISOR_SUM = "divisors"  # sum of d(a)


INTEGER_SUM_KINDS = frozenset(
    {SumKind.MOBIUS_SUM, SumKind.LIOUVILLE_SUM, SumKind.IDEAL_COUNT, SumKind.DIVISOR_SUM}
)

_INT_SERIES = {
    SumKind.MOBIUS_SUM: SeriesKind.ZETA_INV,
    SumKind.LIOUVILLE_SUM: SeriesKind.LIOUVILLE,
    SumKind.IDEAL_COUNT: SeriesKind.ZETA,
    SumKind.DIVISOR_SUM: SeriesKind.ZETA_SQ,
}


@dataclass(frozen=True)
class PartialSumSeries:
    field: FieldSpec
    kind: SumKind
    checkpoints: tuple[int, ...]
    values: tuple

    def last(self):
        return self.values[-1]


@dataclass(frozen=True)
class ResidueEstimate:
    c_hat: float
    delta_hat: float
    c_formula: float | None
    x_used: int


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    n_points: int
    dropped_zeros: int = 0


def geometric_checkpoints(
    x_min: int, x_max: int, ratio: float = DEFAULT_GRID_RATIO
) -> list[int]:
    """Geometrically spaced integer checkpoints covering [x_min, x_max]."""
    if x_min < 1 or x_max < x_min:
        raise ValueError("need 1 <= x_min <= x_max")
    if not ratio > 1:
        raise ValueError("ratio must be > 1")
    xs = {x_max}
    t = float(x_min)
    while t < x_max:
        xs.add(int(round(t)))
        t *= ratio
    return sorted(xs)


def _float_weights(kind: SumKind, store: TableStore, x_max: int) -> np.ndarray:
    n = np.arange(x_max + 1, dtype=np.float64)
    logn = np.concatenate([[0.0], np.log(n[1:])])
    if kind is SumKind.MANGOLDT_SUM:
        return store.values(SeriesKind.LOG_DERIV_NEG, x_max).copy()
    if kind is SumKind.MOBIUS_LOG_SUM:
        return store.values(SeriesKind.ZETA_INV, x_max) * logn
    if kind is SumKind.RECIP_NORM_SUM:
        w = store.values(SeriesKind.ZETA, x_max).astype(np.float64)
        w[1:] /= n[1:]
        return w
    if kind is SumKind.LOG_NORM_SUM:
        return store.values(SeriesKind.ZETA, x_max) * logn
    raise ValueError(f"not a real-valued sum kind: {kind}")


def partial_sums(
    spec: FieldSpec,
    kind: SumKind,
    checkpoints,
    store: TableStore | None = None,
) -> PartialSumSeries:
    """Values of the chosen partial sum at each checkpoint (ascending)."""
    checkpoints = [int(x) for x in checkpoints]
    if not checkpoints or any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be non-empty and strictly ascending")
    if checkpoints[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    store = store or TableStore(spec)
    x_max = checkpoints[-1]
    if kind in INTEGER_SUM_KINDS:
        cum = np.cumsum(store.values(_INT_SERIES[kind], x_max))
        values = tuple(int(cum[x]) for x in checkpoints)
    else:
        w = _float_weights(kind, store, x_max)
        segments: list[float] = []
        values_list: list[float] = []
        prev = 0
        for x in checkpoints:
            segments.append(float(np.sum(w[prev + 1 : x + 1])))
            values_list.append(math.fsum(segments))
            prev = x
        values = tuple(values_list)
    return PartialSumSeries(
        field=spec, kind=kind, checkpoints=tuple(checkpoints), values=values
    )


# ----------------------------------------------------------------------
# Residue of the zeta function and the log-average constant
# ----------------------------------------------------------------------


def residue_from_formula(spec: FieldSpec) -> float:
    """Residue at s = 1 from the invariants:
    c = 2^r1 (2 pi)^r2 h R / (w sqrt|d_K|)."""
    inv = spec.invariants
    if inv is None or not inv.complete():
        raise FieldConfigError("residue formula needs all invariants (r1,r2,h,R,w,d_K)")
    return (2.0**inv.r1) * (2.0 * pi) ** inv.r2 * inv.h * inv.R / (inv.w * sqrt(abs(inv.d_K)))


def estimate_residue_and_delta(
    spec: FieldSpec, x_max: int, store: TableStore | None = None
) -> ResidueEstimate:
    """Fit sum of 1/norm against c log x + Delta over [x_max/100, x_max]."""
    if x_max < 100:
        raise ValueError("x_max must be >= 100")
    store = store or TableStore(spec)
    xs = geometric_checkpoints(max(x_max // 100, 1), x_max)
    series = partial_sums(spec, SumKind.RECIP_NORM_SUM, xs, store)
    lx = np.log(np.array(xs, dtype=np.float64))
    y = np.array(series.values)
    design = np.vstack([lx, np.ones_like(lx)]).T
    (c_hat, delta_hat), *_ = np.linalg.lstsq(design, y, rcond=None)
    c_formula = None
    if spec.invariants is not None and spec.invariants.complete():
        c_formula = residue_from_formula(spec)
    if not c_hat > 0:
        raise ValueError(f"estimated residue is not positive: {c_hat}")
    return ResidueEstimate(
        c_hat=float(c_hat), delta_hat=float(delta_hat), c_formula=c_formula, x_used=x_max
    )


def fit_error_exponent(xs, residuals) -> ExponentFit:
    """Least-squares slope of log|residual| against log x; zero residuals
    are dropped (their count is recorded)."""
    xs = list(xs)
    residuals = list(residuals)
    if len(xs) != len(residuals):
        raise ValueError("xs and residuals must have equal length")
    pts = [(x, r) for x, r in zip(xs, residuals) if r != 0]
    dropped = len(xs) - len(pts)
    if len(pts) < 3:
        raise ValueError(f"need >= 3 nonzero residuals, have {len(pts)}")
    lx = np.log(np.array([p[0] for p in pts], dtype=np.float64))
    ly = np.log(np.abs(np.array([p[1] for p in pts], dtype=np.float64)))
    design = np.vstack([lx, np.ones_like(lx)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, ly, rcond=None)
    fitted = design @ np.array([slope, intercept])
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return ExponentFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        window=(float(min(p[0] for p in pts)), float(max(p[0] for p in pts))),
        n_points=len(pts),
        dropped_zeros=dropped,
    )


_RESIDUAL_TARGETS = ("weber", "mertens", "liouville", "log-norm")


def residuals_for_target(
    spec: FieldSpec,
    target: str,
    xs,
    c: float | None = None,
    store: TableStore | None = None,
) -> list[float]:
    """Residual series used by the exponent diagnostics.

    weber:     I(x) - c x
    mertens:   M(x)
    liouville: L(x)
    log-norm:  sum of log norm - (c x log x - c x)
    """
    store = store or TableStore(spec)
    if target in ("weber", "log-norm") and c is None:
        c = residue_from_formula(spec)
    if target == "weber":
        s = partial_sums(spec, SumKind.IDEAL_COUNT, xs, store)
        return [v - c * x for x, v in zip(s.checkpoints, s.values)]
    if target == "mertens":
        s = partial_sums(spec, SumKind.MOBIUS_SUM, xs, store)
        return [float(v) for v in s.values]
    if target == "liouville":
        s = partial_sums(spec, SumKind.LIOUVILLE_SUM, xs, store)
        return [float(v) for v in s.values]
    if target == "log-norm":
        s = partial_sums(spec, SumKind.LOG_NORM_SUM, xs, store)
        return [v - (c * x * log(x) - c * x) for x, v in zip(s.checkpoints, s.values)]
    raise ValueError(f"unknown target {target!r}; expected one of {_RESIDUAL_TARGETS}")


# ----------------------------------------------------------------------
# Identity verifiers
# ----------------------------------------------------------------------


def verify_mertens_bridge(
    spec: FieldSpec, x: int, store: TableStore | None = None
) -> dict:
    """|M(x) log x - H(x)| <= sum over norms <= x of log(x/norm)."""
    store = store or TableStore(spec)
    x = int(x)
    m = partial_sums(spec, SumKind.MOBIUS_SUM, [x], store).last()
    h = partial_sums(spec, SumKind.MOBIUS_LOG_SUM, [x], store).last()
    count = partial_sums(spec, SumKind.IDEAL_COUNT, [x], store).last()
    sum_log = partial_sums(spec, SumKind.LOG_NORM_SUM, [x], store).last()
    lhs = abs(m * log(x) - h) if x > 1 else 0.0
    rhs = count * log(x) - sum_log if x > 1 else 0.0
    passed = lhs <= rhs + 1e-9 * (1.0 + abs(rhs))
    return {
        "verifier": "mertens-bridge",
        "field_hash": spec.content_hash,
        "x": x,
        "lhs": lhs,
        "rhs": rhs,
        "pass": bool(passed),
    }


def verify_j_identity(
    spec: FieldSpec, x: int, c: float, store: TableStore | None = None
) -> dict:
    """sum_{n<=x} J(n) = 1 + c H(x), with J computed both from the closed
    form and from the convolution route (mu against count - c*Lambda)."""
    if not c > 0:
        raise ValueError("c must be positive")
    store = store or TableStore(spec)
    x = int(x)
    mu = store.values(SeriesKind.ZETA_INV, x)
    count = store.values(SeriesKind.ZETA, x)
    mangoldt = store.values(SeriesKind.LOG_DERIV_NEG, x)
    j_conv = dirichlet_multiply(
        mu.astype(np.float64), count.astype(np.float64) - c * mangoldt, x
    )
    logn = np.concatenate([[0.0], np.log(np.arange(1, x + 1, dtype=np.float64))])
    j_closed = c * mu * logn
    j_closed[1] = 1.0
    route_diff = float(np.max(np.abs(j_conv[1:] - j_closed[1:]))) if x >= 1 else 0.0
    lhs = math.fsum(j_conv[1:].tolist())
    h = partial_sums(spec, SumKind.MOBIUS_LOG_SUM, [x], store).last()
    discrepancy = abs(lhs - (1.0 + c * h))
    tol = 1e-9 * (1.0 + abs(h))
    passed = discrepancy < tol and route_diff < 1e-9 * (1.0 + float(np.max(np.abs(j_closed))))
    return {
        "verifier": "j-identity",
        "field_hash": spec.content_hash,
        "x": x,
        "c": c,
        "sum_j": lhs,
        "target": 1.0 + c * h,
        "discrepancy": discrepancy,
        "route_max_diff": route_diff,
        "pass": bool(passed),
    }


def hyperbola_sum(f: np.ndarray, g: np.ndarray, x: int, alpha: float):
    """Evaluate sum_{nm<=x} f_n g_m two ways: the three-term hyperbola
    split at alpha (with alpha * beta = x) and the direct double sum.

    Returns (three_term, direct).  Exact in integer arithmetic when both
    arrays are integer-typed.
    """
    x = int(x)
    if not 1 <= alpha <= x:
        raise ValueError("alpha must lie in [1, x]")
    if len(f) < x + 1 or len(g) < x + 1:
        raise ValueError("coefficient arrays must cover 1..x")
    beta = x / alpha
    ia, ib = int(math.floor(alpha)), int(math.floor(beta))
    F = np.cumsum(f[: x + 1])
    G = np.cumsum(g[: x + 1])
    first = sum(f[n] * G[x // n] for n in range(1, ia + 1) if f[n] != 0)
    second = sum(g[m] * F[x // m] for m in range(1, ib + 1) if g[m] != 0)
    three = first + second - F[ia] * G[ib]
    direct = sum(f[n] * np.sum(g[1 : x // n + 1]) for n in range(1, x + 1) if f[n] != 0)
    if np.issubdtype(f.dtype, np.integer) and np.issubdtype(g.dtype, np.integer):
        return int(three), int(direct)
    return float(three), float(direct)


def verify_psi_decomposition(
    spec: FieldSpec,
    x: int,
    c: float | None = None,
    delta: float | None = None,
    store: TableStore | None = None,
    delta_estimate_x: int = 10**6,
    tolerance_per_x: float = 1e-3,
) -> dict:
    """psi(x) = (1/c) I(x) - sum_{nm<=x} mu-agg(m) f-agg(n) - A with
    A = 2 Delta / c; the double sum is evaluated by the hyperbola split at
    sqrt(x)."""
    store = store or TableStore(spec)
    x = int(x)
    c_source, delta_source = "given", "given"
    if c is None:
        c = residue_from_formula(spec)
        c_source = "formula"
    if delta is None:
        est = estimate_residue_and_delta(spec, max(delta_estimate_x, 100), store)
        delta = est.delta_hat
        delta_source = f"estimate@{est.x_used}"
    A = 2.0 * delta / c
    count = store.values(SeriesKind.ZETA, x).astype(np.float64)
    zsq = store.values(SeriesKind.ZETA_SQ, x).astype(np.float64)
    logn = np.concatenate([[0.0], np.log(np.arange(1, x + 1, dtype=np.float64))])
    f_agg = zsq / c - (logn + A) * count
    mu = store.values(SeriesKind.ZETA_INV, x).astype(np.float64)
    double_sum, direct = hyperbola_sum(f_agg, mu, x, alpha=max(1.0, sqrt(x)))
    psi = partial_sums(spec, SumKind.MANGOLDT_SUM, [x], store).last()
    count_x = partial_sums(spec, SumKind.IDEAL_COUNT, [x], store).last()
    rhs = count_x / c - double_sum - A
    discrepancy = abs(psi - rhs)
    passed = discrepancy <= tolerance_per_x * x
    return {
        "verifier": "psi-decomposition",
        "field_hash": spec.content_hash,
        "x": x,
        "c": c,
        "c_source": c_source,
        "delta": delta,
        "delta_source": delta_source,
        "psi": psi,
        "rhs": rhs,
        "double_sum": double_sum,
        "double_sum_direct": direct,
        "discrepancy": discrepancy,
        "tolerance": tolerance_per_x * x,
        "pass": bool(passed),
    }


def verify_liouville_from_mobius(
    spec: FieldSpec, x: int, store: TableStore | None = None
) -> dict:
    """L(x) = sum over norms b with b^2 <= x of F(b) M(x // b^2), exact."""
    store = store or TableStore(spec)
    x = int(x)
    lx = partial_sums(spec, SumKind.LIOUVILLE_SUM, [x], store).last()
    mu_cum = np.cumsum(store.values(SeriesKind.ZETA_INV, x))
    count = store.values(SeriesKind.ZETA, isqrt(x))
    rhs = sum(
        int(count[b]) * int(mu_cum[x // (b * b)])
        for b in range(1, isqrt(x) + 1)
        if count[b]
    )
    return {
        "verifier": "liouville-from-mobius",
        "field_hash": spec.content_hash,
        "x": x,
        "lhs": lx,
        "rhs": rhs,
        "pass": bool(lx == rhs),
    }
