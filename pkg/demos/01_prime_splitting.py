#!/usr/bin/env python3
"""How rational primes factor into prime ideals.

For a quadratic field the Kronecker symbol of the fundamental discriminant
decides everything: +1 splits p into two degree-1 ideals, -1 leaves it
inert (one ideal of norm p^2), 0 ramifies it.  For higher degree the
defining polynomial is factored mod p (away from primes dividing its
discriminant, which are refused unless an override supplies the answer).
"""

from idealsums import (
    UnsupportedPrimeError,
    kronecker_symbol,
    parse_field_spec,
    split_prime,
)
from idealsums.fields import fundamental_discriminant

gaussian = parse_field_spec("min_poly = [1, 0, 1]")  # x^2 + 1
D = fundamental_discriminant(gaussian)
print(f"Gaussian field x^2 + 1, fundamental discriminant {D}")
print(f"{'p':>4} {'(D|p)':>6}  splitting {{(e, f)}}")
for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
    st = split_prime(gaussian, p)
    names = {((1, 1), (1, 1)): "split", ((1, 2),): "inert", ((2, 1),): "ramified"}
    print(f"{p:>4} {kronecker_symbol(D, p):>6}  {st.factors}  {names[st.factors]}")

print()
cubic = parse_field_spec("min_poly = [-2, 0, 0, 1]")  # x^3 - 2, disc -108
print("cubic field x^3 - 2 (disc of the polynomial: -108 = -2^2 * 27)")
for p in (2, 3, 5, 7, 11, 31):
    try:
        st = split_prime(cubic, p)
        print(f"{p:>4}  {st.factors}   sum e*f = {st.degree_sum}")
    except UnsupportedPrimeError as exc:
        print(f"{p:>4}  refused: {exc}")

print()
print("with an override for the totally ramified prime 2:")
cubic2 = parse_field_spec("min_poly = [-2, 0, 0, 1]\n[overrides]\n2 = [[3, 1]]")
print(f"   2  {split_prime(cubic2, 2).factors}")
