"""Saddle-point estimates of D_r(n)/n! and certification of the explicit error bound.

Everything is carried as exact rationals; 1/e enters only through alternating
partial sums, which bracket it, and decimals are produced at the very end.
"""
from __future__ import annotations

import decimal
import functools
from dataclasses import dataclass
from fractions import Fraction

from .core import binomial, factorial, r_derangement
from .errors import PrecisionExhausted

DEFAULT_DIGITS = 30
MAX_TERMS = 20_000


@functools.lru_cache(maxsize=64)
def inv_e_partial(K: int) -> Fraction:
    """sum_{k=0}^{K} (-1)^k / k!."""
    num, den = 0, 1
    term_den = 1
    for k in range(K + 1):
        if k:
            term_den *= k
        # num/den + (-1)^k/term_den, with den always dividing term_den
        num = num * (term_den // den) + (-1) ** k
        den = term_den
    return Fraction(num, den)


def terms_for_digits(digits: int) -> int:
    """Smallest K with 1/(K+1)! < 10^-(digits + 5)."""
    bound = 10 ** (digits + 5)
    K, f = 0, 1
    while f <= bound:
        K += 1
        f *= K + 1
    return K


def inv_e(digits: int) -> Fraction:
    return inv_e_partial(terms_for_digits(digits))


def inv_e_bracket(K: int) -> tuple[Fraction, Fraction]:
    """Rationals lo < 1/e < hi from two consecutive partial sums."""
    a, b = inv_e_partial(K), inv_e_partial(K + 1)
    return (a, b) if a < b else (b, a)


def to_decimal(x: Fraction, digits: int) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)


@dataclass(frozen=True)
class Estimate:
    value: decimal.Decimal
    precision_digits: int
    exact_reference: Fraction | None = None
    rational: Fraction | None = None

    @property
    def error(self) -> decimal.Decimal | None:
        if self.exact_reference is None:
            return None
        approx = self.rational if self.rational is not None else Fraction(self.value)
        return to_decimal(abs(approx - self.exact_reference), self.precision_digits)

    @property
    def exact_decimal(self) -> decimal.Decimal | None:
        if self.exact_reference is None:
            return None
        return to_decimal(self.exact_reference, self.precision_digits)


@dataclass(frozen=True)
class SaddleCoefficients:
    r: int
    coeffs: tuple[Fraction, ...]

    def weighted_sum(self, n: int) -> Fraction:
        """sum_k A(r, k) C(n + r - k, n); D_r(n)/n! is about this over e."""
        return sum(
            (a * binomial(n + self.r - k, n) for k, a in enumerate(self.coeffs)),
            Fraction(0),
        )


def saddle_coeffs(r: int) -> SaddleCoefficients:
    """A(r, k) = sum_{i=0}^{min(r,k)} (-1)^i / (k-i)! * C(r, i), k = 0..r."""
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    coeffs = tuple(
        sum(
            (Fraction((-1) ** i * binomial(r, i), factorial(k - i)) for i in range(min(r, k) + 1)),
            Fraction(0),
        )
        for k in range(r + 1)
    )
    return SaddleCoefficients(r, coeffs)


def saddle_estimate(
    r: int, n: int, digits: int = DEFAULT_DIGITS, normalized: bool = False
) -> Estimate:
    """Principal-part estimate of D_r(n)/n!, or of D_r(n)/(n+r)! when normalized."""
    if not 0 <= r <= n:
        raise ValueError(f"need n >= r >= 0, got r={r}, n={n}")
    if digits < 1:
        raise ValueError("digits must be positive")
    approx = saddle_coeffs(r).weighted_sum(n) * inv_e(digits)
    exact = Fraction(r_derangement(r, n), factorial(n))
    if normalized:
        rescale = Fraction(factorial(n), factorial(n + r))
        approx *= rescale
        exact *= rescale
    return Estimate(to_decimal(approx, digits), digits, exact, approx)


def limit_ratio(r: int, n: int, digits: int = DEFAULT_DIGITS) -> Estimate:
    """D_r(n)/(n+r)!, which tends to 1/(r! e)."""
    if not 0 <= r <= n:
        raise ValueError(f"need n >= r >= 0, got r={r}, n={n}")
    exact = Fraction(r_derangement(r, n), factorial(n + r))
    return Estimate(to_decimal(exact, digits), digits, exact, exact)


def limit_value(r: int, digits: int = DEFAULT_DIGITS) -> Fraction:
    return inv_e(digits) / factorial(r)


def deviation_bound(r: int, n: int) -> int:
    """2 n! C(n-1, r-1)."""
    return 2 * factorial(n) * binomial(n - 1, r - 1)


def deviation_bound_check(r: int, n: int, max_terms: int = MAX_TERMS) -> bool:
    """Decide |D_r(n) - n!/e C(n-1, r)| < 2 n! C(n-1, r-1) with bracketed 1/e."""
    if not 1 <= r <= n:
        raise ValueError(f"need n >= r >= 1, got r={r}, n={n}")
    value = r_derangement(r, n)
    scale = factorial(n) * binomial(n - 1, r)
    bound = deviation_bound(r, n)
    K = 8
    while K <= max_terms:
        lo, hi = inv_e_bracket(K)
        c_lo, c_hi = scale * lo, scale * hi
        far = max(abs(value - c_lo), abs(value - c_hi))
        near = 0 if c_lo <= value <= c_hi else min(abs(value - c_lo), abs(value - c_hi))
        if far < bound:
            return True
        if near >= bound:
            return False
        K *= 2
    raise PrecisionExhausted(f"deviation bound for r={r}, n={n} undecided with {max_terms} terms")
