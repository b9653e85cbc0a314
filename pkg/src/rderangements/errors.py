"""Exception types shared across the package."""


class InternalConsistencyError(ArithmeticError):
    """An exact identity that must hold turned out false (e.g. a non-exact division)."""


class PrecisionExhausted(ArithmeticError):
    """Working precision hit its cap before a comparison could be decided."""


class PeriodicityViolation(AssertionError):
    """A residue sequence broke the signed periodicity it is known to have."""

    def __init__(self, kind, r, d, n1, n2):
        self.pair = (n1, n2)
        super().__init__(
            f"{kind}_{r} mod {d}: signed residues differ at n1={n1}, n2={n2}"
        )


class NoCertifyingPrime(LookupError):
    """No prime in A_r was found below the search cap, so finiteness is not certified."""
