"""Arithmetic-progression congruence claims on series coefficients.

A claim ``(series, A, B, M, exclude_p)`` states that the coefficient of
q^(A n + B) vanishes modulo M for every n >= 0, skipping n divisible by
``exclude_p`` when that is set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import lcm

from .arith import is_prime
from .qfactory import named_series
from .report import VerificationReport
from .series import TruncatedSeries

__all__ = [
    "ORDER_BUDGET",
    "SERIES_NAMES",
    "InsufficientOrderError",
    "CongruenceClaim",
    "check_claim",
    "theorem2_family",
    "unfold",
    "builtin_claims",
    "conjecture_claims",
    "default_nmax",
    "required_order",
    "build_series",
    "check_claims",
    "density_scan",
]

ORDER_BUDGET = 12000

SERIES_NAMES = ("c5", "c9", "b1", "b2", "b3", "b")


class InsufficientOrderError(ValueError):
    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(f"series known to order {available}, claim needs order {required}")


@dataclass(frozen=True)
class CongruenceClaim:
    series_name: str
    A: int
    B: int
    M: int
    exclude_p: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.A < 1:
            raise ValueError("progression modulus A must be >= 1")
        # with an exclusion, B cannot be reduced mod A without moving which n
        # are skipped, so only plain claims need B < A
        if self.B < 0 or (self.exclude_p is None and self.B >= self.A):
            raise ValueError(f"residue B={self.B} must lie in [0, {self.A})")
        if self.M < 2:
            raise ValueError("congruence modulus must be >= 2")
        if self.exclude_p is not None and not is_prime(self.exclude_p):
            raise ValueError(f"exclude_p={self.exclude_p} is not prime")

    @property
    def name(self) -> str:
        s = f"{self.series_name}({self.A}n+{self.B}) = 0 mod {self.M}"
        if self.exclude_p:
            s += f", {self.exclude_p}∤n"
        return s

    def index(self, n: int) -> int:
        return self.A * n + self.B


def required_order(claim: CongruenceClaim, n_max: int) -> int:
    return claim.A * n_max + claim.B


def default_nmax(claim: CongruenceClaim, budget: int = ORDER_BUDGET) -> int:
    """Largest n_max whose required order fits in ``budget``."""
    return max(0, (budget - claim.B) // claim.A)


def check_claim(s: TruncatedSeries, claim: CongruenceClaim, n_max: int) -> VerificationReport:
    """Check coefficient(A n + B) = 0 mod M for 0 <= n < n_max."""
    need = required_order(claim, n_max)
    if s.order < need:
        raise InsufficientOrderError(need, s.order)
    if s.ring.modulus and s.ring.modulus % claim.M:
        raise ValueError(f"series over {s.ring} cannot decide residues mod {claim.M}")
    start = time.perf_counter()
    c = s.coeffs
    violations = []
    checked = skipped = 0
    for n in range(n_max):
        if claim.exclude_p and n % claim.exclude_p == 0:
            skipped += 1
            continue
        v = int(c[claim.index(n)])
        if v % claim.M:
            violations.append((n, v % claim.M))
        checked += 1
    return VerificationReport(
        name=claim.label or claim.name,
        n_checked=checked,
        violations=violations,
        elapsed=time.perf_counter() - start,
        claim=claim,
        skipped=skipped,
        info={"n_max": n_max, "max_index": claim.index(n_max - 1) if n_max else None},
    )


def theorem2_family(p: int, k: int) -> CongruenceClaim:
    """c5(4 p^(2k+1) n + (8 p^(2k+2) + 1)/3) = 0 mod 4 for p not dividing n."""
    if not is_prime(p) or p % 8 != 7:
        raise ValueError(f"p must be a prime congruent to 7 mod 8, got {p}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 8 * p ** (2 * k + 2) + 1
    if num % 3:
        raise ArithmeticError(f"(8p^(2k+2)+1)/3 is not integral for p={p}")
    return CongruenceClaim("c5", 4 * p ** (2 * k + 1), num // 3, 4, exclude_p=p,
                           label=f"theorem2 p={p} k={k}")


def unfold(claim: CongruenceClaim) -> list[CongruenceClaim]:
    """Rewrite an excluded-multiple claim as plain claims modulo A*p.

    Writing n = p m + r with 1 <= r < p gives the progressions
    A p m + (A r + B), each reduced to a residue below A p.
    """
    p = claim.exclude_p
    if not p:
        return [claim]
    big = claim.A * p
    residues = sorted((claim.A * r + claim.B) % big for r in range(1, p))
    return [CongruenceClaim(claim.series_name, big, b, claim.M) for b in residues]


def _c(series, A, B, M, label=""):
    return CongruenceClaim(series, A, B, M, label=label)


def conjecture_claims() -> list[CongruenceClaim]:
    """The seven conjectured c5 families, with both mod-196 residue sets."""
    out = [_c("c5", 32, 31, 8), _c("c5", 128, 123, 8), _c("c5", 512, 491, 8),
           _c("c5", 64, 19, 4), _c("c5", 256, 75, 4)]
    out += [_c("c5", 196, i, 4) for i in (110, 138, 194)]
    out += [_c("c5", 196, j, 4) for j in (19, 47, 75, 103, 159, 187)]
    return out


def builtin_claims() -> list[tuple[CongruenceClaim, int]]:
    """Every proven claim paired with its default n_max (order budget 12000).

    The six c5 residues 19, 47, ... mod 196 are not listed separately; they
    are the unfolded form of ``theorem2_family(7, 0)``.
    """
    claims = [
        # previously known
        _c("c5", 8, 5, 2), _c("c5", 32, 31, 4), _c("c9", 16, 12, 2),
        *conjecture_claims()[:8],
        # b1 = 1/(A+B)
        _c("b1", 32, 31, 8), _c("b1", 128, 123, 8), _c("b1", 512, 491, 8),
        _c("b1", 64, 19, 4), _c("b1", 256, 75, 4),
        # b2 = B/(A+B)^2
        _c("b2", 32, 31, 4), _c("b2", 128, 123, 4), _c("b2", 512, 491, 4),
        _c("b2", 32, 19, 2), _c("b2", 128, 75, 2),
        # b3 = (A^2 B + A B^2)/(A+B)^4
        _c("b3", 16, 15, 2), _c("b3", 64, 59, 2), _c("b3", 256, 235, 2),
        *(_c("b1", 196, r, 4) for r in (110, 138, 194)),
        *(_c("b", 49, r, 4) for r in (27, 34, 48)),
        *(_c("b2", 196, s, 2) for s in (26, 54, 110, 138, 166, 194)),
    ]
    return [(c, default_nmax(c)) for c in claims]


def build_series(claims, order: int) -> dict[str, TruncatedSeries]:
    """Expand each named series once, modulo the lcm of its claims' moduli."""
    moduli: dict[str, int] = {}
    for c in claims:
        moduli[c.series_name] = lcm(moduli.get(c.series_name, 1), c.M)
    return {name: named_series(name, order, M) for name, M in moduli.items()}


def check_claims(pairs, order: int | None = None,
                 series: dict[str, TruncatedSeries] | None = None) -> list[VerificationReport]:
    """Check (claim, n_max) pairs against shared series, in input order."""
    pairs = list(pairs)
    if order is None:
        order = max(required_order(c, n) for c, n in pairs)
    if series is None:
        series = build_series([c for c, _ in pairs], order)
    return [check_claim(series[c.series_name], c, n) for c, n in pairs]


def density_scan(s: TruncatedSeries, M: int, n_max: int) -> tuple[int, float]:
    """Count n < n_max with coefficient(n) = 0 mod M."""
    if n_max > s.order + 1:
        raise InsufficientOrderError(n_max - 1, s.order)
    if s.ring.modulus and s.ring.modulus % M:
        raise ValueError(f"series over {s.ring} cannot decide residues mod {M}")
    if n_max <= 0:
        return 0, 0.0
    c = s.coeffs[:n_max]
    count = int(sum(1 for v in c.tolist() if int(v) % M == 0))
    return count, count / n_max
