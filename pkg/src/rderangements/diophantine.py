"""Complete finite searches for D_r(n) = q * m! and D_2(n) = p^k.

For a prime p in A_r the two inequalities

    valuation:  m >= (p-1) (1 + log_p m + r log_p(r + e r (2+q)) - v_p(q))
    growth:     m <= p^{v_p(q)/(r+1)} * p^{m/((r+1)(p-1))}

together rule out m as a solution.  Both are decided exactly: growth by raising
to the power (r+1)(p-1), valuation by exponentiating and bracketing e between
rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .asymptotics import inv_e_bracket
from .core import factorial, r_derangement
from .errors import InternalConsistencyError, NoCertifyingPrime, PrecisionExhausted
from .modular import classify_prime
from .padic import vp

PRIME_CAP = 25
STREAK = 64
MAX_E_TERMS = 4096


def _power(p: int, a: int) -> Fraction:
    return Fraction(p**a) if a >= 0 else Fraction(1, p ** (-a))


def holds_growth_bound(r: int, q: Fraction, p: int, m: int) -> bool:
    """Growth inequality, as m^{(r+1)(p-1)} <= p^{v_p(q)(p-1) + m}."""
    return m ** ((r + 1) * (p - 1)) <= _power(p, vp(q, p) * (p - 1) + m)


def holds_valuation_bound(r: int, q: Fraction, p: int, m: int, max_terms: int = MAX_E_TERMS) -> bool:
    """Valuation inequality, as p^{m-(p-1)+v_p(q)(p-1)} >= (m (r + e r (2+q))^r)^{p-1}."""
    lhs = _power(p, m - (p - 1) + vp(q, p) * (p - 1))
    K = 16
    while K <= max_terms:
        inv_lo, inv_hi = inv_e_bracket(K)
        e_lo, e_hi = 1 / inv_hi, 1 / inv_lo
        rhs_lo = (m * (r + e_lo * r * (2 + q)) ** r) ** (p - 1)
        rhs_hi = (m * (r + e_hi * r * (2 + q)) ** r) ** (p - 1)
        if lhs >= rhs_hi:
            return True
        if lhs < rhs_lo:
            return False
        K *= 2
    raise PrecisionExhausted(f"valuation inequality undecided at m={m} with {max_terms} terms of e")


def _check_args(r: int, q, p: int) -> Fraction:
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"need q > 0, got {q}")
    if not classify_prime(p, r).in_A:
        raise ValueError(f"{p} is not in A_{r}")
    return q


def exclusion_inequalities(r: int, q, p: int, m: int) -> tuple[bool, bool]:
    """(valuation holds, growth holds); when both hold, q * m! is not an r-derangement number."""
    q = _check_args(r, q, p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return holds_valuation_bound(r, q, p, m), holds_growth_bound(r, q, p, m)


def _margins_grow(r: int, p: int, m: int) -> bool:
    """Both inequality margins increase from m onward (hence for every m' >= m)."""
    e5, e7 = p - 1, (r + 1) * (p - 1)
    return p * m**e5 > (m + 1) ** e5 and p * m**e7 > (m + 1) ** e7


def factorial_search_bound(r: int, q, p: int, streak: int = STREAK) -> int:
    """Smallest m0 such that both inequalities hold for every m >= m0."""
    q = _check_args(r, q, p)
    last_fail, run, m = 0, 0, 1
    while True:
        if holds_valuation_bound(r, q, p, m) and holds_growth_bound(r, q, p, m):
            run += 1
            if run >= streak and _margins_grow(r, p, m):
                return last_fail + 1
        else:
            run, last_fail = 0, m
        m += 1


def is_in_sequence(r: int, v: int) -> int | None:
    """The n >= r with D_r(n) = v, if any; exponential then binary search."""
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if v < r_derangement(r, r):
        return None
    lo, hi, step = r, r, 1
    while r_derangement(r, hi) < v:
        lo, hi, step = hi, r + step, step * 2
    # D_r(lo) < v <= D_r(hi) unless lo == hi == r
    while lo < hi:
        mid = (lo + hi) // 2
        if r_derangement(r, mid) < v:
            lo = mid + 1
        else:
            hi = mid
    return hi if r_derangement(r, hi) == v else None


@dataclass
class SolutionSet:
    equation: str
    solutions: list[tuple[int, ...]] = field(default_factory=list)
    search_bound_m: int | None = None
    certifying_prime: int | None = None
    transcript: list[dict] = field(default_factory=list)
    certified_range: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "equation": self.equation,
            "solutions": [list(s) for s in self.solutions],
            "search_bound_m": self.search_bound_m,
            "certifying_prime": self.certifying_prime,
            "certified_range": list(self.certified_range) if self.certified_range else None,
            "transcript": self.transcript,
        }


def find_certifying_prime(r: int, prime_cap: int = PRIME_CAP) -> int:
    for p in (int(sympy.prime(i)) for i in range(1, prime_cap + 1)):
        if classify_prime(p, r).in_A:
            return p
    raise NoCertifyingPrime(f"no prime in A_{r} among the first {prime_cap} primes")


def solve_factorial(r: int, q, prime_cap: int = PRIME_CAP) -> SolutionSet:
    """All (n, m), m >= 1, with D_r(n) = q * m!."""
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    q = Fraction(q)
    equation = f"D_{r}(n) = {q} * m!"
    if q <= 0:
        return SolutionSet(equation, search_bound_m=0)
    p = find_certifying_prime(r, prime_cap)
    m0 = factorial_search_bound(r, q, p)
    out = SolutionSet(equation, search_bound_m=m0, certifying_prime=p)
    for m in range(1, m0):
        target = q * factorial(m)
        if target.denominator != 1:
            continue
        n = is_in_sequence(r, target.numerator)
        if n is None:
            continue
        value = r_derangement(r, n)
        if value != target:
            raise InternalConsistencyError(f"D_{r}({n}) != {q} * {m}!")
        out.solutions.append((n, m))
        out.transcript.append(
            {"n": n, "m": m, "D_r(n)": str(value), "q*m!": str(target.numerator), "verified": True}
        )
    return out


def _prime_power(v: int) -> tuple[int, int] | None:
    if v < 2:
        return None
    f = sympy.factorint(v)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return int(p), int(k)


def coprime_split(n: int) -> tuple[int, int]:
    """Coprime a, b with a * b = n(n-1)/2: (n/2, n-1) for even n, ((n-1)/2, n) for odd n."""
    return (n // 2, n - 1) if n % 2 == 0 else ((n - 1) // 2, n)


def solve_prime_power_r2(n_cap: int, divisibility_upto: int = 500) -> SolutionSet:
    """Solutions (p, n, k) of D_2(n) = p^k, k >= 1.

    n <= 3 is checked directly.  For 4 <= n <= n_cap the certificate is that
    n(n-1)/2, a divisor of D_2(n), splits into two coprime factors > 1; the
    divisibility itself is re-checked up to ``divisibility_upto``.
    """
    if n_cap < 4:
        raise ValueError(f"n_cap must be at least 4, got {n_cap}")
    out = SolutionSet("D_2(n) = p^k", certified_range=(4, n_cap))
    for n in range(4):
        value = r_derangement(2, n)
        pk = _prime_power(value)
        out.transcript.append({"n": n, "D_2(n)": str(value), "prime_power": pk})
        if pk:
            out.solutions.append((pk[0], n, pk[1]))
    for n in range(4, n_cap + 1):
        a, b = coprime_split(n)
        if not (a > 1 and b > 1 and math.gcd(a, b) == 1 and a * b == n * (n - 1) // 2):
            raise InternalConsistencyError(f"structural certificate fails at n={n}")
        if n <= divisibility_upto and r_derangement(2, n) % (a * b):
            raise InternalConsistencyError(f"n(n-1)/2 does not divide D_2({n})")
    return out
