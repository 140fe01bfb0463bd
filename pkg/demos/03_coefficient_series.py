#!/usr/bin/env python3
"""The five coefficient sequences and their convolution identities.

Writing F(n) for the number of ideals of norm n, the field's zeta series
has coefficients F(n); its reciprocal aggregates the ideal Mobius
function; zeta(2s)/zeta(s) aggregates Liouville; -zeta'/zeta aggregates
von Mangoldt; zeta^2 aggregates the divisor count.  All five are Euler
products over the splitting data, and the algebra below checks the ring
identities numerically (exactly, in integers, where the values are
integers).
"""

import numpy as np

from idealsums import load_field
from idealsums.series import (
    SeriesKind,
    TableStore,
    dilate_to_2s,
    dirichlet_invert,
    dirichlet_multiply,
    identity_coefficients,
)

field = load_field("configs/q_i.toml")
store = TableStore(field)
N = 10**4

print("first 12 coefficients of each series (Gaussian field):")
for kind in SeriesKind:
    vals = store.values(kind, 12)[1:]
    if kind is SeriesKind.LOG_DERIV_NEG:
        text = " ".join(f"{v:.3f}" for v in vals)
    else:
        text = " ".join(str(int(v)) for v in vals)
    print(f"  {kind.value:<10} {text}")

f = store.values(SeriesKind.ZETA, N)
mu = store.values(SeriesKind.ZETA_INV, N)
lam = store.values(SeriesKind.LIOUVILLE, N)
vm = store.values(SeriesKind.LOG_DERIV_NEG, N)

print()
print(f"checks at N = {N}:")
ok1 = np.array_equal(dirichlet_multiply(f, mu, N), identity_coefficients(N))
print(f"  zeta * (1/zeta) = 1           exactly: {ok1}")

ok2 = np.array_equal(dirichlet_multiply(mu, dilate_to_2s(f, N), N), lam)
print(f"  (1/zeta) * zeta(2s) = lambda  exactly: {ok2}")

ok3 = np.array_equal(dirichlet_invert(f, N), mu)
print(f"  generic inverse of zeta = mu  exactly: {ok3}")

got = dirichlet_multiply(f.astype(float), vm, N)
logn = np.concatenate([[0.0], np.log(np.arange(1, N + 1))])
err = np.max(np.abs(got[1:] - (f * logn)[1:]))
print(f"  zeta * (-zeta'/zeta) vs F(n) log n: max abs diff {err:.2e}")
