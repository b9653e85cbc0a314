"""Property suites run by ``rderangements verify``; each yields named pass/fail checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import asymptotics, core, diophantine, modular, padic, polynomials


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _oracle() -> Iterator[Check]:
    for total in range(10):
        row = core.oracle_row(total)
        for r in range(total + 1):
            n = total - r
            got, want = row[r], core.r_derangement(r, n)
            yield Check("oracle", f"D_{r}({n})", got == want, f"oracle {got}, recurrence {want}")


def _formulas(max_r: int = 6, max_n: int = 200) -> Iterator[Check]:
    for r in range(1, max_r + 1):
        bad = []
        for n in range(r, max_n + 1):
            d = core.r_derangement(r, n)
            if core.r_derangement_closed(r, n) != d:
                bad.append(f"closed n={n}")
            for s in range(1, r + 1):
                if core.r_derangement_convolution(r, s, n) != d:
                    bad.append(f"conv s={s} n={n}")
            if core.r_derangement_lift(r, n) != core.r_derangement(r + 1, n):
                bad.append(f"lift n={n}")
            if d % core.factorial(r) or d % core.falling_factorial(n, r):
                bad.append(f"divisibility n={n}")
            if n < max_n and not d < core.r_derangement(r, n + 1):
                bad.append(f"monotone n={n}")
        yield Check("formulas", f"r={r}, n<={max_n}", not bad, ", ".join(bad[:5]))
    specials = all(core.r_derangement(r, r) == core.factorial(r) for r in range(1, 12))
    specials &= all(core.r_derangement(r, r + 1) == r * core.factorial(r + 1) for r in range(2, 12))
    specials &= all(core.r_derangement(1, n) == core.derangement(n + 1) for n in range(60))
    yield Check("formulas", "special values", specials)


def _lah() -> Iterator[Check]:
    for r in range(6):
        ok = all(core.lah_identity_check(r, n) for n in range(max(r, 1), 31))
        yield Check("lah", f"r={r}, n<=30", ok)


def _expectation() -> Iterator[Check]:
    for r in range(6):
        ok = all(
            core.fixed_point_expectation(r, n) == Fraction(n - r, n) for n in range(r + 1, 26)
        )
        yield Check("expectation", f"r={r}, n<=25", ok)


def _poly() -> Iterator[Check]:
    ok = all(polynomials.p_poly(n) == polynomials.p_poly_direct(n) for n in range(26))
    yield Check("poly", "recurrence == direct sum, n<=25", ok)
    ok = all(
        polynomials.p_poly(n).degree == n and polynomials.p_poly(n).leading() == 1
        for n in range(26)
    )
    yield Check("poly", "monic of degree n, n<=25", ok)
    for r in range(6):
        ok = all(polynomials.p_identity_check(r, n) for n in range(41))
        yield Check("poly", f"D_{r}(n+{r}) = (n+{r})_{r} P_n({r}), n<=40", ok)


def _mod2() -> Iterator[Check]:
    for n in range(21):
        yield Check("mod2", f"P_{n} mod 2", polynomials.mod2_factor_check(n))


def _period() -> Iterator[Check]:
    for kind in modular.KINDS:
        for r in range(1, 4):
            for d in range(1, 13):
                try:
                    modular.certify_period(kind, r, d, 10)
                    ok = modular.congruence_polynomial_check(
                        kind, r, d, modular.first_index(kind, r) + 10 * d - 1
                    )
                except AssertionError:
                    ok = False
                yield Check("period", f"{kind}_{r} mod {d}", ok)
    ok = all(
        modular.f_polynomial(r, r + d)
        == polynomials.IntPolynomial.falling(0, r) * modular.fhat_polynomial(r, d)
        for r in range(1, 5)
        for d in range(1, 9)
    )
    yield Check("period", "f_{r,r+d} = (X)_r fhat_{r,d}", ok)


def _padic() -> Iterator[Check]:
    ok = all(
        padic.vp_factorial(m, p) == padic.vp(core.factorial(m), p)
        for p in (2, 3, 5, 7)
        for m in range(301)
    )
    yield Check("padic", "Legendre formula, m<=300", ok)
    for p, r, k, lo in [(2, 2, 2, 2), (3, 1, 2, 1), (2, 3, 3, 3)]:
        ok = padic.pseudo_decomposition_check(p, r, k, range(lo, lo + 40))
        yield Check("padic", f"pseudo-polynomial decomposition p={p} r={r} k={k}", ok)
    try:
        nodes = padic.valuation_tree(2, 2, 3, 200)
        yield Check("padic", "valuation tree p=2 r=2 depth 3", bool(nodes), f"{len(nodes)} nodes")
    except ArithmeticError as exc:
        yield Check("padic", "valuation tree p=2 r=2 depth 3", False, str(exc))


def _asympt() -> Iterator[Check]:
    ok = all(asymptotics.deviation_bound_check(r, n) for r in range(1, 6) for n in range(r, 101))
    yield Check("asympt", "explicit bound, r<=5, n<=100", ok)
    two, three = asymptotics.saddle_coeffs(2), asymptotics.saddle_coeffs(3)
    ok = all(two.weighted_sum(n) == Fraction(n * n + n - 1, 2) for n in range(51))
    yield Check("asympt", "r=2 coefficient sum (n^2+n-1)/2", ok)
    ok = all(three.weighted_sum(n) == Fraction(n**3 - 4 * n + 1, 6) for n in range(51))
    yield Check("asympt", "r=3 coefficient sum (n^3-4n+1)/6", ok)


def _diophantine() -> Iterator[Check]:
    for r, want in [(2, [(2, 2)]), (3, [(3, 3)])]:
        sol = diophantine.solve_factorial(r, 1)
        yield Check("diophantine", f"D_{r}(n) = m!", sol.solutions == want, str(sol.solutions))
    sol = diophantine.solve_prime_power_r2(10**4)
    yield Check("diophantine", "D_2(n) = p^k", sol.solutions == [(2, 2, 1)])


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "oracle": _oracle,
    "formulas": _formulas,
    "lah": _lah,
    "expectation": _expectation,
    "poly": _poly,
    "mod2": _mod2,
    "period": _period,
    "padic": _padic,
    "asympt": _asympt,
    "diophantine": _diophantine,
}


def run(names: list[str] | None = None) -> list[Check]:
    names = list(SUITES) if not names or "all" in names else names
    return [check for name in names for check in SUITES[name]()]
