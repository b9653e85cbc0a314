"""Exact r-derangement numbers, reduced numbers, Lah numbers and the permutation oracle.

``D_r(n)`` counts fixed-point-free permutations of ``n + r`` letters in which
the first ``r`` letters lie in pairwise distinct cycles.  ``D_0(n)`` is the
classical derangement number.  All values are Python ints; rationals are
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
import math
import operator
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InternalConsistencyError

factorial = math.factorial
binomial = math.comb


def falling_factorial(n: int, r: int) -> int:
    """(n)_r = n (n-1) ... (n-r+1), with (n)_0 = 1."""
    return math.perm(n, r)


ORACLE_CAP = 10


@dataclass
class SequenceTable:
    """Memoized prefix D_r(0..max_n) for one fixed r."""

    r: int
    values: list[int] = field(default_factory=list)

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def next_value(self, lower: SequenceTable | None) -> int:
        n, r, v = len(self.values), self.r, self.values
        if r == 0:
            if n < 2:
                return 1 - n
            return (n - 1) * (v[n - 1] + v[n - 2])
        if n < r:
            return 0
        if n == r:
            return factorial(r)
        prev2 = v[n - 2] if n >= 2 else 0
        return r * lower.values[n - 1] + (n - 1) * prev2 + (n + r - 1) * v[n - 1]


class DerangementMemo:
    """Triangle of SequenceTables, filled bottom-up in both n and r.

    Readers need no lock (list appends are atomic); extension is serialized.
    """

    def __init__(self):
        self._tables: dict[int, SequenceTable] = {}
        self._lock = threading.RLock()

    def table(self, r: int) -> SequenceTable:
        t = self._tables.get(r)
        if t is None:
            with self._lock:
                t = self._tables.setdefault(r, SequenceTable(r))
        return t

    def get(self, r: int, n: int) -> int:
        t = self.table(r)
        if n > t.max_n:
            self._extend(r, n)
        return t.values[n]

    def _extend(self, r: int, n: int) -> None:
        with self._lock:
            # D_r(n) needs D_{r-1}(n-1); filling every lower row to n is simpler.
            for rr in range(r + 1):
                t = self.table(rr)
                lower = self._tables.get(rr - 1)
                while t.max_n < n:
                    t.values.append(t.next_value(lower))

    def seed(self, r: int, values: list[int]) -> bool:
        """Install a precomputed prefix for row r after checking it against the recurrence.

        Rows below r must already hold at least ``len(values) - 1`` entries.
        Returns False (and installs nothing) if any value disagrees.
        """
        with self._lock:
            probe = SequenceTable(r)
            lower = self._tables.get(r - 1)
            if r > 0 and (lower is None or lower.max_n < len(values) - 2):
                return False
            for v in values:
                if probe.next_value(lower) != v:
                    return False
                probe.values.append(v)
            current = self.table(r)
            if probe.max_n > current.max_n:
                self._tables[r] = probe
            return True

    def snapshot(self, max_n: int | None = None) -> dict[int, list[int]]:
        with self._lock:
            return {
                r: list(t.values[: None if max_n is None else max_n + 1])
                for r, t in sorted(self._tables.items())
            }

    def clear(self) -> None:
        with self._lock:
            self._tables.clear()


MEMO = DerangementMemo()


def _check_index(**kwargs):
    for name, value in kwargs.items():
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")


def derangement(n: int) -> int:
    """Classical D(n) via D(n) = (n-1)(D(n-1) + D(n-2))."""
    _check_index(n=n)
    return MEMO.get(0, n)


def r_derangement(r: int, n: int) -> int:
    """D_r(n) from the three-term recurrence in n and r; 0 when n < r."""
    _check_index(r=r, n=n)
    return MEMO.get(r, n)


def r_derangement_closed(r: int, n: int) -> int:
    """D_r(n) = sum_{j=r}^{n} C(j, r) (n)_j (-1)^{n-j}, summed from j = n downward."""
    _check_index(r=r, n=n)
    total = 0
    falling = factorial(n)  # (n)_n
    for j in range(n, r - 1, -1):
        term = binomial(j, r) * falling
        total += term if (n - j) % 2 == 0 else -term
        if j > 0:
            falling //= n - j + 1
    return total


def r_derangement_convolution(r: int, s: int, n: int) -> int:
    """D_r(n) = sum_{j=s}^{n} C(j-1, s-1) (n)_j D_{r-s}(n-j)."""
    _check_index(r=r, n=n)
    if not 1 <= s <= r:
        raise ValueError(f"split s must lie in [1, {r}], got {s}")
    total = 0
    falling = falling_factorial(n, s)
    for j in range(s, n + 1):
        total += binomial(j - 1, s - 1) * falling * r_derangement(r - s, n - j)
        falling *= n - j
    return total


def r_derangement_lift(r: int, n: int) -> int:
    """D_{r+1}(n) from row r: ((n - r) D_r(n) + n D_r(n-1)) / (r + 1)."""
    _check_index(r=r)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    numerator = (n - r) * r_derangement(r, n) + n * r_derangement(r, n - 1)
    q, rem = divmod(numerator, r + 1)
    if rem:
        raise InternalConsistencyError(f"lift of D_{r}({n}) not divisible by {r + 1}")
    return q


def c_r(r: int, n: int) -> int:
    """Reduced number C_r(n) = D_r(n) / (n)_r."""
    if r < 1 or n < r:
        raise ValueError(f"C_r(n) needs r >= 1 and n >= r, got r={r}, n={n}")
    q, rem = divmod(r_derangement(r, n), falling_factorial(n, r))
    if rem:
        raise InternalConsistencyError(f"(n)_r does not divide D_{r}({n})")
    return q


def lah(n: int, k: int) -> int:
    """Unsigned Lah number L(n, k) = n!/k! * C(n-1, k-1)."""
    _check_index(n=n, k=k)
    if k > n:
        return 0
    if k == 0:
        if n == 0:
            return 1
        raise ValueError("L(n, 0) is undefined for n > 0")
    return factorial(n) // factorial(k) * binomial(n - 1, k - 1)


def fixed_point_moment(r: int, n: int) -> int:
    """sum_{k=1}^{n} C(n, k) k D_r(n-k): total fixed points over P_{n,r}."""
    return sum(binomial(n, k) * k * r_derangement(r, n - k) for k in range(1, n + 1))


def lah_identity_check(r: int, n: int) -> bool:
    """(r+1)! L(n, r+1) == sum_k C(n, k) k D_r(n-k)."""
    if n < max(r, 1):
        raise ValueError(f"need n >= max(r, 1), got r={r}, n={n}")
    return factorial(r + 1) * lah(n, r + 1) == fixed_point_moment(r, n)


def pnr_count(r: int, n: int) -> int:
    """Permutations of n + r letters whose first r letters are non-fixed and in distinct cycles."""
    if not 0 <= r <= n:
        raise ValueError(f"need n >= r >= 0, got r={r}, n={n}")
    return factorial(n) // factorial(r) * falling_factorial(n, r)


def fixed_point_expectation(r: int, n: int) -> Fraction:
    """Mean number of fixed points of a uniform element of P_{n,r}; equals (n - r)/n."""
    if not 0 <= r < n:
        raise ValueError(f"need n > r >= 0, got r={r}, n={n}")
    return Fraction(fixed_point_moment(r, n), pnr_count(r, n))


def fixed_point_distribution(r: int, n: int) -> list[Fraction]:
    """p_k = C(n, k) D_r(n-k) / P_{n,r} for k = 0..n."""
    total = pnr_count(r, n)
    return [Fraction(binomial(n, k) * r_derangement(r, n - k), total) for k in range(n + 1)]


# -- brute-force oracle -------------------------------------------------------


def _distinguished_prefix(perm: tuple[int, ...], r: int) -> int:
    """Largest k <= r such that letters 0..k-1 lie in pairwise distinct cycles."""
    seen = [False] * len(perm)
    for a in range(r):
        if seen[a]:
            return a
        x = a
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return r


def _fixed_point_free(total: int):
    ident = range(total)
    for perm in itertools.permutations(ident):
        if not any(map(operator.eq, perm, ident)):
            yield perm


def _check_cap(total: int, cap: int | None) -> None:
    cap = ORACLE_CAP if cap is None else cap
    if total > cap:
        raise ValueError(f"oracle size n + r = {total} exceeds cap {cap}")


def oracle_count(r: int, n: int, cap: int | None = None) -> int:
    """Count FPF r-permutations of n + r letters by enumerating all (n + r)! permutations."""
    _check_index(r=r, n=n)
    _check_cap(n + r, cap)
    return sum(1 for perm in _fixed_point_free(n + r) if _distinguished_prefix(perm, r) == r)


def oracle_row(total: int, cap: int | None = None) -> list[int]:
    """[D_r(total - r) for r = 0..total] from a single enumeration of S_total."""
    _check_index(total=total)
    _check_cap(total, cap)
    counts = [0] * (total + 2)
    for perm in _fixed_point_free(total):
        counts[_distinguished_prefix(perm, total)] += 1
    # a permutation with prefix k counts toward every r <= k
    row = list(itertools.accumulate(reversed(counts)))[::-1]
    return row[: total + 1]
