"""Partial sums, residue estimation, exponent fits, identity verifiers."""

import math
from math import log, pi, sqrt

import numpy as np
import pytest

from idealsums.errors import FieldConfigError
from idealsums.ideals import ideal_count_oracle
from idealsums.sums import (
    SumKind,
    estimate_residue_and_delta,
    fit_error_exponent,
    geometric_checkpoints,
    hyperbola_sum,
    partial_sums,
    residue_from_formula,
    residuals_for_target,
    verify_j_identity,
    verify_liouville_from_mobius,
    verify_mertens_bridge,
    verify_psi_decomposition,
)

EULER_GAMMA = 0.5772156649015329


def brute_mobius(n: int) -> int:
    out = 1
    for p in range(2, n + 1):
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
    return out


def brute_liouville(n: int) -> int:
    out = 1
    for p in range(2, n + 1):
        while n % p == 0:
            n //= p
            out = -out
    return out


def brute_divisors(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


# ----------------------------------------------------------------------
# partial sums


def test_mertens_classical(field_q):
    s = partial_sums(field_q, SumKind.MOBIUS_SUM, [10])
    assert s.last() == sum(brute_mobius(n) for n in range(1, 11)) == -1


def test_liouville_classical(field_q):
    s = partial_sums(field_q, SumKind.LIOUVILLE_SUM, [10])
    assert s.last() == sum(brute_liouville(n) for n in range(1, 11)) == 0


def test_ideal_count_gaussian(field_qi):
    s = partial_sums(field_qi, SumKind.IDEAL_COUNT, [10])
    assert s.last() == ideal_count_oracle(field_qi, 10) == 9


def test_psi_classical(field_q):
    s = partial_sums(field_q, SumKind.MANGOLDT_SUM, [10])
    # prime powers up to 10: 2,4,8 / 3,9 / 5 / 7
    expect = 3 * log(2) + 2 * log(3) + log(5) + log(7)
    assert s.last() == pytest.approx(expect, abs=1e-12)


def test_partial_sum_at_1(all_fields):
    for spec in all_fields.values():
        assert partial_sums(spec, SumKind.MOBIUS_SUM, [1]).last() == 1


def test_divisor_sum_classical(field_q):
    s = partial_sums(field_q, SumKind.DIVISOR_SUM, [100])
    assert s.last() == sum(brute_divisors(n) for n in range(1, 101)) == 482


def test_recip_and_log_sums_classical(field_q):
    s = partial_sums(field_q, SumKind.RECIP_NORM_SUM, [50])
    assert s.last() == pytest.approx(math.fsum(1.0 / n for n in range(1, 51)), rel=1e-14)
    s2 = partial_sums(field_q, SumKind.LOG_NORM_SUM, [50])
    assert s2.last() == pytest.approx(math.fsum(log(n) for n in range(1, 51)), rel=1e-14)


def test_mobius_log_sum_classical(field_q):
    s = partial_sums(field_q, SumKind.MOBIUS_LOG_SUM, [30])
    expect = math.fsum(brute_mobius(n) * log(n) for n in range(1, 31))
    assert s.last() == pytest.approx(expect, abs=1e-12)


def test_partial_sum_magnitude_invariants(field_qi):
    xs = geometric_checkpoints(10, 10**4)
    store_kwargs = {}
    m = partial_sums(field_qi, SumKind.MOBIUS_SUM, xs, **store_kwargs).values
    l = partial_sums(field_qi, SumKind.LIOUVILLE_SUM, xs, **store_kwargs).values
    i = partial_sums(field_qi, SumKind.IDEAL_COUNT, xs, **store_kwargs).values
    psi = partial_sums(field_qi, SumKind.MANGOLDT_SUM, xs, **store_kwargs).values
    for mv, lv, iv in zip(m, l, i):
        assert abs(mv) <= iv and abs(lv) <= iv
    assert all(b >= a for a, b in zip(i, i[1:]))
    assert all(b >= a - 1e-12 for a, b in zip(psi, psi[1:]))


def test_checkpoints_must_ascend(field_q):
    with pytest.raises(ValueError):
        partial_sums(field_q, SumKind.MOBIUS_SUM, [10, 10])
    with pytest.raises(ValueError):
        partial_sums(field_q, SumKind.MOBIUS_SUM, [])


# ----------------------------------------------------------------------
# residue and constant


def test_residue_formula_values(field_q, field_qi, field_qm5, field_qr2):
    assert residue_from_formula(field_q) == pytest.approx(1.0, abs=1e-15)
    assert residue_from_formula(field_qi) == pytest.approx(pi / 4, rel=1e-15)
    assert residue_from_formula(field_qm5) == pytest.approx(pi / sqrt(5), rel=1e-15)
    assert residue_from_formula(field_qr2) == pytest.approx(
        4 * 0.881373587019543 / (2 * sqrt(8)), rel=1e-15
    )


def test_residue_formula_needs_invariants():
    from idealsums.fields import parse_field_spec

    with pytest.raises(FieldConfigError):
        residue_from_formula(parse_field_spec("min_poly = [1, 0, 1]"))


def test_residue_estimate_rationals(field_q, store_for):
    est = estimate_residue_and_delta(field_q, 10**4, store_for("q"))
    assert abs(est.c_hat - 1.0) < 0.01
    assert est.c_formula == pytest.approx(1.0)


def test_residue_estimate_gaussian(field_qi, store_for):
    est = estimate_residue_and_delta(field_qi, 10**5, store_for("qi"))
    assert abs(est.c_hat - pi / 4) / (pi / 4) < 0.01


def test_residue_estimate_precondition(field_q):
    with pytest.raises(ValueError):
        estimate_residue_and_delta(field_q, 50)


# ----------------------------------------------------------------------
# exponent fits


def test_fit_exact_power_law():
    xs = [10**k for k in range(2, 7)]
    res = [x**0.5 for x in xs]
    fit = fit_error_exponent(xs, res)
    assert fit.slope == pytest.approx(0.5, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_drops_zeros():
    xs = [10, 100, 1000, 10000]
    res = [2.0, 0.0, 3.0, 4.0]
    fit = fit_error_exponent(xs, res)
    assert fit.n_points == 3 and fit.dropped_zeros == 1


def test_fit_needs_three_points():
    with pytest.raises(ValueError):
        fit_error_exponent([10, 100], [1.0, 2.0])
    with pytest.raises(ValueError):
        fit_error_exponent([10, 100, 1000], [0.0, 0.0, 1.0])


def test_weber_residual_slope_gaussian(field_qi, store_for):
    xs = geometric_checkpoints(10**3, 10**6)
    res = residuals_for_target(field_qi, "weber", xs, store=store_for("qi"))
    fit = fit_error_exponent(xs, res)
    assert fit.slope <= 0.6


def test_mertens_slope_rationals(field_q, store_for):
    xs = geometric_checkpoints(10**3, 10**6)
    res = residuals_for_target(field_q, "mertens", xs, store=store_for("q"))
    fit = fit_error_exponent(xs, res)
    assert fit.slope <= 0.6


def test_geometric_checkpoints_shape():
    xs = geometric_checkpoints(10, 10**3)
    assert xs[0] == 10 and xs[-1] == 10**3
    assert xs == sorted(set(xs))
    with pytest.raises(ValueError):
        geometric_checkpoints(10, 5)
    with pytest.raises(ValueError):
        geometric_checkpoints(10, 100, ratio=1.0)


# ----------------------------------------------------------------------
# identity verifiers


def test_mertens_bridge_rationals(field_q, store_for):
    rep = verify_mertens_bridge(field_q, 100, store_for("q"))
    assert rep["pass"]
    # independent evaluation of the right-hand side
    rhs = math.fsum(log(100 / n) for n in range(1, 101))
    assert rep["rhs"] == pytest.approx(rhs, rel=1e-12)
    lhs = abs(
        sum(brute_mobius(n) for n in range(1, 101)) * log(100)
        - math.fsum(brute_mobius(n) * log(n) for n in range(1, 101))
    )
    assert rep["lhs"] == pytest.approx(lhs, rel=1e-12)


def test_mertens_bridge_gaussian(field_qi, store_for):
    assert verify_mertens_bridge(field_qi, 10**4, store_for("qi"))["pass"]


def test_mertens_bridge_at_1(field_qi, store_for):
    rep = verify_mertens_bridge(field_qi, 1, store_for("qi"))
    assert rep["lhs"] == 0.0 and rep["rhs"] == 0.0 and rep["pass"]


def test_j_identity_rationals(field_q, store_for):
    rep = verify_j_identity(field_q, 1000, c=1.0, store=store_for("q"))
    assert rep["discrepancy"] < 1e-9
    assert rep["pass"]


def test_j_identity_gaussian(field_qi, store_for):
    rep = verify_j_identity(field_qi, 1000, c=pi / 4, store=store_for("qi"))
    assert rep["discrepancy"] < 1e-9
    assert rep["pass"]


def test_j_identity_at_1(field_qi, store_for):
    rep = verify_j_identity(field_qi, 1, c=pi / 4, store=store_for("qi"))
    assert rep["discrepancy"] == 0.0


def test_hyperbola_all_ones():
    x = 100
    ones = np.ones(x + 1, dtype=np.int64)
    ones[0] = 0
    three, direct = hyperbola_sum(ones, ones, x, alpha=10)
    assert three == direct == 482  # sum of d(n), n <= 100


def test_hyperbola_alpha_boundary():
    x = 60
    ones = np.ones(x + 1, dtype=np.int64)
    ones[0] = 0
    three, direct = hyperbola_sum(ones, ones, x, alpha=1)
    assert three == direct
    three2, direct2 = hyperbola_sum(ones, ones, x, alpha=x)
    assert three2 == direct2 == direct


def test_hyperbola_random_integer_inputs():
    rng = np.random.default_rng(11)
    x = 50
    f = np.zeros(x + 1, dtype=np.int64)
    g = np.zeros(x + 1, dtype=np.int64)
    f[1:] = rng.integers(-5, 6, x)
    g[1:] = rng.integers(-5, 6, x)
    for alpha in (1, 7, 22, 50):
        three, direct = hyperbola_sum(f, g, x, alpha)
        assert three == direct
    brute = sum(
        int(f[n]) * int(g[m])
        for n in range(1, x + 1)
        for m in range(1, x + 1)
        if n * m <= x
    )
    assert direct == brute


def test_hyperbola_alpha_range():
    ones = np.ones(11, dtype=np.int64)
    with pytest.raises(ValueError):
        hyperbola_sum(ones, ones, 10, alpha=0.5)
    with pytest.raises(ValueError):
        hyperbola_sum(ones, ones, 10, alpha=11)


def test_psi_decomposition_rationals(field_q, store_for):
    rep = verify_psi_decomposition(
        field_q, 1000, c=1.0, delta=EULER_GAMMA, store=store_for("q")
    )
    assert rep["discrepancy"] < 1e-6 * 1000
    assert rep["pass"]


def test_psi_decomposition_gaussian_estimated_delta(field_qi, store_for):
    rep = verify_psi_decomposition(field_qi, 1000, c=pi / 4, store=store_for("qi"))
    assert rep["delta_source"].startswith("estimate")
    assert rep["discrepancy"] < 1e-3 * 1000
    assert rep["pass"]


def test_psi_decomposition_at_1(field_qi, store_for):
    rep = verify_psi_decomposition(
        field_qi, 1, c=pi / 4, delta=0.5, store=store_for("qi")
    )
    assert rep["discrepancy"] < 1e-12


def test_liouville_from_mobius_rationals(field_q, store_for):
    rep = verify_liouville_from_mobius(field_q, 100, store_for("q"))
    assert rep["pass"]
    # brute force both sides
    lhs = sum(brute_liouville(n) for n in range(1, 101))
    assert rep["lhs"] == lhs
    rhs = sum(
        sum(brute_mobius(n) for n in range(1, 100 // (b * b) + 1))
        for b in range(1, 11)
    )
    assert rep["rhs"] == rhs


def test_liouville_from_mobius_gaussian(field_qi, store_for):
    assert verify_liouville_from_mobius(field_qi, 10**4, store_for("qi"))["pass"]


def test_liouville_from_mobius_at_1(field_qi, store_for):
    rep = verify_liouville_from_mobius(field_qi, 1, store_for("qi"))
    assert rep["lhs"] == rep["rhs"] == 1
