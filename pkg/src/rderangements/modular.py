"""Residues of D_r(n) and C_r(n), their signed periodicity, and the prime sets A_r / B_r.

A prime p is in A_r when it divides no C_r(n), n >= r.  Signed periodicity
mod p reduces that to the window n = r..r+p-1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .core import binomial, c_r, r_derangement
from .errors import PeriodicityViolation
from .polynomials import IntPolynomial, poly_sum

KINDS = ("D", "C")


def prime_sieve(x: int) -> list[int]:
    """All primes <= x, increasing."""
    return list(sympy.primerange(2, x + 1)) if x >= 2 else []


def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def first_index(kind: str, r: int) -> int:
    if kind == "D":
        return 0
    if kind == "C":
        if r < 1:
            raise ValueError("C_r needs r >= 1")
        return r
    raise ValueError(f"kind must be 'D' or 'C', got {kind!r}")


def sequence_value(kind: str, r: int, n: int) -> int:
    return r_derangement(r, n) if kind == "D" else c_r(r, n)


def residue_sequence(kind: str, r: int, d: int, upto: int) -> list[int]:
    """[a_n mod d for n = first..upto] with a = D_r (first 0) or C_r (first r)."""
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    start = first_index(kind, r)
    return [sequence_value(kind, r, n) % d for n in range(start, upto + 1)]


def claimed_period(d: int) -> int:
    return d if d % 2 == 0 else 2 * d


@dataclass(frozen=True)
class ResidueCertificate:
    kind: str
    r: int
    d: int
    claimed_period: int
    residues: tuple[int, ...]
    verified_up_to: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "d": self.d,
            "claimed_period": self.claimed_period,
            "first_index": first_index(self.kind, self.r),
            "residues": list(self.residues),
            "verified_up_to": self.verified_up_to,
        }


def certify_period(
    kind: str, r: int, d: int, horizon_multiple: int | None = None
) -> ResidueCertificate:
    """Check signed invariance and plain periodicity on first..first + horizon_multiple*d - 1.

    The default horizon is four claimed periods.  Raises PeriodicityViolation
    with the offending index pair if either property fails.
    """
    period = claimed_period(d)
    horizon = 4 * period if horizon_multiple is None else horizon_multiple * d
    if horizon < 3 * period:
        raise ValueError(f"horizon {horizon} is shorter than three periods of {period}")
    start = first_index(kind, r)
    upto = start + horizon - 1
    res = residue_sequence(kind, r, d, upto)

    signed_rep: dict[int, tuple[int, int]] = {}
    for offset, a in enumerate(res):
        n = start + offset
        s = a if n % 2 == 0 else (-a) % d
        seen = signed_rep.setdefault(n % d, (n, s))
        if seen[1] != s:
            raise PeriodicityViolation(kind, r, d, seen[0], n)
    for offset in range(len(res) - period):
        if res[offset] != res[offset + period]:
            raise PeriodicityViolation(kind, r, d, start + offset, start + offset + period)
    return ResidueCertificate(kind, r, d, period, tuple(res[:period]), upto)


def f_polynomial(r: int, d: int) -> IntPolynomial:
    """f_{r,d}(X) = sum_{j=r}^{d-1} (-1)^j C(j, r) (X)_j; D_r(n) = (-1)^n f_{r,d}(n) mod d."""
    return poly_sum(
        IntPolynomial.falling(0, j).scale((-1) ** j * binomial(j, r)) for j in range(r, d)
    )


def fhat_polynomial(r: int, d: int) -> IntPolynomial:
    """sum_{j=r}^{r+d-1} C(j, r) (-1)^j (X - r)_{j-r}; C_r(n) = (-1)^n fhat(n) mod d."""
    if r < 1 or d < 1:
        raise ValueError(f"need r >= 1 and d >= 1, got r={r}, d={d}")
    return poly_sum(
        IntPolynomial.falling(-r, j - r).scale((-1) ** j * binomial(j, r))
        for j in range(r, r + d)
    )


def congruence_polynomial_check(kind: str, r: int, d: int, upto: int) -> bool:
    """a_n mod d == (-1)^n poly(n) mod d on first..upto, poly = f_{r,d} (D) or fhat_{r,d} (C)."""
    poly = f_polynomial(r, d) if kind == "D" else fhat_polynomial(r, d)
    for n, a in enumerate(residue_sequence(kind, r, d, upto), start=first_index(kind, r)):
        v = poly.eval_mod(n, d)
        if n % 2:
            v = -v % d
        if v != a:
            return False
    return True


@dataclass(frozen=True)
class PrimeClassification:
    p: int
    r: int
    in_A: bool
    witness: int | None = None


def classify_prime(p: int, r: int) -> PrimeClassification:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    for n in range(r, p + r):
        if c_r(r, n) % p == 0:
            return PrimeClassification(p, r, False, n)
    return PrimeClassification(p, r, True)


def a_r_density(r: int, x: int) -> Fraction:
    """Fraction of primes <= x lying in A_r."""
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x}")
    primes = prime_sieve(x)
    return Fraction(sum(classify_prime(p, r).in_A for p in primes), len(primes))


@dataclass
class DensityReport:
    r: int
    x: int
    primes: int
    in_A: int
    members: list[int] = field(default_factory=list)

    @property
    def density(self) -> Fraction:
        return Fraction(self.in_A, self.primes)

    def to_json(self) -> dict:
        d = self.density
        return {
            "r": self.r,
            "x": self.x,
            "primes": self.primes,
            "in_A": self.in_A,
            "density": f"{d.numerator}/{d.denominator}",
            "decimal": f"{float(d):.6f}",
            "members": self.members,
        }


def density_report(r: int, x: int) -> DensityReport:
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x}")
    primes = prime_sieve(x)
    members = [p for p in primes if classify_prime(p, r).in_A]
    return DensityReport(r, x, len(primes), len(members), members)
