"""p-adic valuations of C_r(n) and Hensel-type lifting of the classes where they grow.

The pair sequence (fhat_{r,p^k}, (-1)^n) is a pseudo-polynomial decomposition of
C_r modulo p, so a root class n_k of p^k | C_r(n) refines in one of three
ways depending on v_p(qhat(n_k)), qhat(n) = ((-1)^p C_r(n+p) - C_r(n)) / p.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .core import c_r
from .errors import InternalConsistencyError
from .modular import fhat_polynomial, is_prime

INFINITY = math.inf
DEFAULT_SCAN_BOUND = 500


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _vp_int(x: int, p: int) -> int:
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def vp(x: int | Fraction, p: int) -> int | float:
    """p-adic valuation; math.inf for 0, negative for rationals with p in the denominator."""
    _require_prime(p)
    if x == 0:
        return INFINITY
    if isinstance(x, Fraction):
        return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)
    return _vp_int(x, p)


def digit_sum(m: int, p: int) -> int:
    s = 0
    while m:
        m, d = divmod(m, p)
        s += d
    return s


def vp_factorial(m: int, p: int) -> int:
    """Legendre: v_p(m!) = (m - s_p(m)) / (p - 1)."""
    _require_prime(p)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return (m - digit_sum(m, p)) // (p - 1)


def q_hat(p: int, r: int, n_k: int) -> int:
    """((-1)^p C_r(n_k + p) - C_r(n_k)) / p, checked to be exact."""
    _require_prime(p)
    diff = (-1) ** p * c_r(r, n_k + p) - c_r(r, n_k)
    q, rem = divmod(diff, p)
    if rem:
        raise InternalConsistencyError(
            f"p={p} does not divide (-1)^p C_{r}({n_k + p}) - C_{r}({n_k})"
        )
    return q


class LiftCase(enum.Enum):
    UNIQUE = "UniqueLift"
    ALL = "AllLift"
    NONE = "NoneLift"


@dataclass(frozen=True)
class LiftOutcome:
    case: LiftCase
    p: int
    k: int
    n_k: int
    q_hat: int
    lifted_class: int | None = None

    @property
    def modulus(self) -> int:
        return self.p ** (self.k + 1)


def hensel_step(p: int, r: int, k: int, n_k: int) -> LiftOutcome:
    """Refine the class of n_k mod p^k (where p^k | C_r(n_k)) to level k + 1."""
    _require_prime(p)
    if k < 1 or n_k < r:
        raise ValueError(f"need k >= 1 and n_k >= r, got k={k}, n_k={n_k}")
    c = c_r(r, n_k)
    if c % p**k:
        raise ValueError(f"p^k = {p}^{k} does not divide C_{r}({n_k})")
    q = q_hat(p, r, n_k)
    mod = p ** (k + 1)
    if q % p:
        lifted = (n_k - c * pow(q, -1, mod)) % mod
        return LiftOutcome(LiftCase.UNIQUE, p, k, n_k, q, lifted)
    if c % mod == 0:
        return LiftOutcome(LiftCase.ALL, p, k, n_k, q)
    return LiftOutcome(LiftCase.NONE, p, k, n_k, q)


def fixed_slope_root(p: int, r: int, n_1: int, n_prev: int, level: int) -> int:
    """n_l = n_{l-1} - C_r(n_{l-1}) / ((-1)^{n_1 + n_{l-1}} qhat(n_1)) mod p^l.

    Requires v_p(qhat(n_1)) = 0; used as an independent route to the unique chain.
    """
    q = q_hat(p, r, n_1)
    if q % p == 0:
        raise ValueError("fixed-slope chain needs v_p(qhat(n_1)) = 0")
    mod = p**level
    q_signed = q if (n_1 + n_prev) % 2 == 0 else -q
    return (n_prev - c_r(r, n_prev) * pow(q_signed, -1, mod)) % mod


def least_member(residue: int, modulus: int, floor: int) -> int:
    """Smallest n >= floor with n = residue mod modulus."""
    return floor + (residue - floor) % modulus


@dataclass
class ValuationNode:
    p: int
    r: int
    k: int
    n_k: int
    representative: int
    samples: int
    case: LiftCase | None = None
    parent: int | None = None
    root: int | None = None

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def label(self) -> str:
        case = self.case.value if self.case else "leaf"
        return f"n ≡ {self.n_k} mod {self.p}^{self.k}, {case}"

    def to_json(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value if self.case else None
        return d


class _Valuations:
    """v_p(C_r(n)) for r <= n <= bound, computed once per tree."""

    def __init__(self, p: int, r: int, bound: int):
        self.p, self.r, self.bound = p, r, bound
        self.values = {n: _vp_int(c_r(r, n), p) for n in range(r, bound + 1)}

    def members(self, residue: int, modulus: int) -> list[int]:
        start = least_member(residue, modulus, self.r)
        return list(range(start, self.bound + 1, modulus))

    def all_at_least(self, residue: int, modulus: int, level: int) -> bool:
        return all(self.values[n] >= level for n in self.members(residue, modulus))

    def none_at_least(self, residue: int, modulus: int, level: int) -> bool:
        return all(self.values[n] < level for n in self.members(residue, modulus))


def lifting_classes(p: int, r: int, k: int, n_k: int, scan_bound: int = DEFAULT_SCAN_BOUND) -> list[int]:
    """Children of n_k mod p^k whose sampled members all have valuation >= k + 1.

    Children with no member up to scan_bound are left out.
    """
    return _lifting_classes(_Valuations(p, r, scan_bound), k, n_k % p**k)


def _lifting_classes(vals: _Valuations, k: int, residue: int) -> list[int]:
    p, mod = vals.p, vals.p ** (k + 1)
    children = [residue + t * p**k for t in range(p)]
    return [
        c for c in children
        if vals.members(c, mod) and vals.all_at_least(c, mod, k + 1)
    ]


def valuation_tree(
    p: int, r: int, max_level: int, scan_bound: int = DEFAULT_SCAN_BOUND
) -> list[ValuationNode]:
    """Residue classes n_k mod p^k (k <= max_level) on which p^k | C_r(n), sample-verified.

    Nodes come out level by level in increasing residue order.  Raises
    InternalConsistencyError if any emitted class disagrees with direct valuations.
    """
    _require_prime(p)
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    vals = _Valuations(p, r, scan_bound)

    def make(k: int, residue: int, parent: ValuationNode | None) -> ValuationNode:
        mod = p**k
        if not vals.all_at_least(residue, mod, k):
            raise InternalConsistencyError(f"class {residue} mod {p}^{k} fails v_p >= {k}")
        rep = least_member(residue, mod, r)
        node = ValuationNode(p, r, k, residue, rep, len(vals.members(residue, mod)))
        if parent is not None:
            node.parent, node.root = parent.n_k, parent.root
        else:
            node.root = rep
        return node

    level = [make(1, n % p, None) for n in range(r, r + p) if c_r(r, n) % p == 0]
    level.sort(key=lambda node: node.n_k)
    tree: list[ValuationNode] = []
    for k in range(1, max_level + 1):
        tree.extend(level)
        if k == max_level:
            break
        nxt = []
        for node in level:
            outcome = hensel_step(p, r, k, node.representative)
            node.case = outcome.case
            if outcome.case is LiftCase.UNIQUE:
                lifted = outcome.lifted_class
                confirmed = _lifting_classes(vals, k, node.n_k)
                if [c for c in confirmed if c != lifted] or (
                    lifted not in confirmed and vals.members(lifted, p ** (k + 1))
                ):
                    raise InternalConsistencyError(
                        f"unique lift of {node.n_k} mod {p}^{k} not confirmed among siblings"
                    )
                if q_hat(p, r, node.root) % p and (
                    fixed_slope_root(p, r, node.root, node.representative, k + 1)
                    != outcome.lifted_class
                ):
                    raise InternalConsistencyError(
                        f"lifting routes disagree above {node.n_k} mod {p}^{k}"
                    )
                nxt.append(make(k + 1, outcome.lifted_class, node))
            elif outcome.case is LiftCase.ALL:
                nxt.extend(make(k + 1, node.n_k + t * p**k, node) for t in range(p))
            elif not vals.none_at_least(node.n_k, p**k, k + 1):
                raise InternalConsistencyError(
                    f"class {node.n_k} mod {p}^{k} has members with v_p >= {k + 1}"
                )
        level = sorted(nxt, key=lambda node: node.n_k)
    return tree


def tree_to_json(nodes: list[ValuationNode]) -> str:
    return json.dumps([node.to_json() for node in nodes], indent=2, ensure_ascii=False)


def tree_to_dot(nodes: list[ValuationNode]) -> str:
    lines = ["digraph valuation_tree {", "  node [shape=box];"]

    def ident(k, n):
        return f"k{k}_n{n}"

    for node in nodes:
        lines.append(f'  {ident(node.k, node.n_k)} [label="{node.label()}"];')
    for node in nodes:
        if node.parent is not None:
            lines.append(f"  {ident(node.k - 1, node.parent)} -> {ident(node.k, node.n_k)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pseudo_decomposition_check(p: int, r: int, k: int, n_range) -> bool:
    """C_r(n) = (-1)^n fhat_{r,p^k}(n) mod p^k and fhat'_{r,p^k}(n) = fhat'_{r,p^2}(n) mod p."""
    _require_prime(p)
    if k < 2:
        raise ValueError("pseudo-polynomial decomposition starts at k = 2")
    mod = p**k
    fk = fhat_polynomial(r, mod)
    dk, d2 = fk.derivative(), fhat_polynomial(r, p * p).derivative()
    for n in n_range:
        v = fk.eval_mod(n, mod)
        if n % 2:
            v = -v % mod
        if c_r(r, n) % mod != v:
            return False
        if dk.eval_mod(n, p) != d2.eval_mod(n, p):
            return False
    return True
