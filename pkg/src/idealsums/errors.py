"""Exception types shared across the package."""


class IdealSumsError(Exception):
    """Base class for all package errors."""


class FieldConfigError(IdealSumsError):
    """Invalid field description: non-monic or reducible polynomial,
    inconsistent invariants, malformed config text."""


class UnsupportedPrimeError(IdealSumsError):
    """Splitting of this rational prime cannot be determined safely
    (degree >= 3 and the prime divides the polynomial discriminant,
    with no override supplied)."""

    def __init__(self, p: int, reason: str = ""):
        self.p = p
        msg = f"splitting of prime {p} is not supported"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class NormOverflowError(IdealSumsError):
    """An ideal norm exceeded the 64-bit cap (2**63 - 1)."""


class InvalidPerronConfigError(IdealSumsError):
    """Contour parameters violate the preconditions (b > 1, x >= 2,
    T >= 2, H >= 2, N >= 2x, step small enough)."""
