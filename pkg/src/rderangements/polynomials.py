"""Dense integer polynomials and the family P_n(X) with D_r(n + r) = (n + r)_r P_n(r)."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import binomial, falling_factorial, r_derangement

ZERO_DEGREE = -1


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored constant term first with no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def of(cls, *coeffs: int) -> IntPolynomial:
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, a: int) -> IntPolynomial:
        return cls((a,))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def falling(cls, shift: int, j: int) -> IntPolynomial:
        """(X + shift)_j = (X + shift)(X + shift - 1)...(X + shift - j + 1)."""
        out = cls((1,))
        for i in range(j):
            out = out * cls((shift - i, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = IntPolynomial((1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: int) -> IntPolynomial:
        return IntPolynomial(tuple(c * a for a in self.coeffs))

    def evaluate(self, x: int | Fraction) -> int | Fraction:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    __call__ = evaluate

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * x + a) % m
        return acc

    def compose_shift(self, by: int) -> IntPolynomial:
        """p(X + by), expanded with binomial coefficients."""
        out = [0] * len(self.coeffs)
        for i, a in enumerate(self.coeffs):
            if a:
                power = 1
                for k in range(i, -1, -1):
                    out[k] += a * binomial(i, k) * power
                    power *= by
        return IntPolynomial(tuple(out))

    def reduce_mod(self, m: int) -> IntPolynomial:
        return IntPolynomial(tuple(a % m for a in self.coeffs))

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            mag = abs(a)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        s = ("-" if head_sign == "-" else "") + head
        return s + "".join(f" {sg} {b}" for sg, b in terms[1:])


def _lift(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial((p,))


def poly_sum(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial()
    for p in polys:
        out = out + p
    return out


@functools.lru_cache(maxsize=None)
def p_poly(n: int) -> IntPolynomial:
    """P_n via P_0 = 1, P_n(X) = (X + 1) P_{n-1}(X + 1) - P_{n-1}(X)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    prev = IntPolynomial((1,))
    for _ in range(n):
        prev = IntPolynomial.of(1, 1) * prev.compose_shift(1) - prev
    return prev


def p_poly_direct(n: int) -> IntPolynomial:
    """P_n(X) = sum_j (j + X)_j C(n, j) (-1)^{n-j}."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return poly_sum(
        IntPolynomial.falling(j, j).scale(binomial(n, j) * (-1) ** (n - j))
        for j in range(n + 1)
    )


def p_identity_check(r: int, n: int) -> bool:
    return falling_factorial(n + r, r) * p_poly(n)(r) == r_derangement(r, n + r)


TRINOMIAL = IntPolynomial.of(1, 1, 1)


def mod2_factor_check(n: int) -> bool:
    """P_n mod 2 equals (X^2+X+1)^{n/2} (n even) or X (X^2+X+1)^{(n-1)/2} (n odd)."""
    expected = TRINOMIAL ** (n // 2)
    if n % 2:
        expected = IntPolynomial.x() * expected
    return p_poly(n).reduce_mod(2) == expected.reduce_mod(2)
