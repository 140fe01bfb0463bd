#!/usr/bin/env python3
"""Measuring the asymptotic laws at desk scale.

The ideal count grows like c*x with c the residue of the zeta function at
s = 1 (computable in closed form from the field invariants); the error is
O(x^(1 - 1/d)).  The reciprocal-norm sum grows like c log x + Delta.  The
Mobius and Liouville partial sums stay near sqrt(x) in magnitude; their
empirical growth exponents sitting near 1/2 is the desk-scale shadow of
the square-root cancellation that the Riemann hypothesis for the field
would guarantee.
"""

from math import pi

from idealsums import (
    SumKind,
    TableStore,
    estimate_residue_and_delta,
    fit_error_exponent,
    geometric_checkpoints,
    load_field,
    partial_sums,
    residuals_for_target,
    residue_from_formula,
)

EULER_GAMMA = 0.5772156649015329

for path, label in [("configs/q.toml", "rationals"), ("configs/q_i.toml", "Gaussian field")]:
    field = load_field(path)
    store = TableStore(field)
    c = residue_from_formula(field)
    print(f"== {label} (residue c = {c:.10f})")

    est = estimate_residue_and_delta(field, 10**6, store)
    print(f"   fitted c over [1e4, 1e6]:  {est.c_hat:.6f}  (rel err {abs(est.c_hat-c)/c:.2e})")
    print(f"   fitted Delta:              {est.delta_hat:.6f}", end="")
    if field.degree == 1:
        print(f"  (Euler constant {EULER_GAMMA:.6f})")
    else:
        print()

    xs = geometric_checkpoints(10**3, 10**6)
    if field.degree == 1:
        print("   |I(x) - c x| is identically zero here: I(x) = x exactly")
    else:
        weber = fit_error_exponent(
            xs, residuals_for_target(field, "weber", xs, c=c, store=store)
        )
        print(f"   |I(x) - c x| growth exponent:   {weber.slope:.3f}   (law predicts <= {1 - 1/field.degree:.1f})")

    for target in ("mertens", "liouville"):
        fit = fit_error_exponent(
            xs, residuals_for_target(field, target, xs, store=store)
        )
        print(f"   |{target} sum| growth exponent:  {fit.slope:.3f}   (square-root cancellation ~ 0.5)")

    psi = partial_sums(field, SumKind.MANGOLDT_SUM, [10**6], store).last()
    print(f"   psi(1e6)/1e6 = {psi/1e6:.6f}  (prime ideal theorem: -> 1)")
    print()

field = load_field("configs/q_sqrt_m5.toml")
store = TableStore(field)
est = estimate_residue_and_delta(field, 10**6, store)
print(f"== field of x^2 + 5: c formula {pi/5**0.5:.6f}, fitted {est.c_hat:.6f} "
      f"(class number 2 enters the residue)")
