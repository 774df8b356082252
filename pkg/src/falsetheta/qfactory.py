"""Constructors for the named q-series: products, eta quotients, theta and
false theta functions, quadratic-exponent sums and the derived series
A, B, b1, b2, b3, a1, a2, b and c_t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .series import (
    MAX_ORDER,
    CoeffRing,
    TruncatedSeries,
    _ring,
    add,
    invert,
    monomial,
    mul,
    one,
    power,
    substitute_power,
)

__all__ = [
    "SignedMonomial",
    "QuadSumSpec",
    "EtaQuotientSpec",
    "SIGN_MODES",
    "RANGES",
    "NAMED_SERIES",
    "pochhammer",
    "eta",
    "eta_quotient",
    "theta_f",
    "quad_sum",
    "false_theta_psi",
    "c_t_series",
    "named_series",
]


@dataclass(frozen=True)
class SignedMonomial:
    """The monomial sign * q^exponent."""

    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.exponent < 0:
            raise ValueError(f"exponent must be nonnegative, got {self.exponent}")

    def __neg__(self):
        return SignedMonomial(-self.sign, self.exponent)

    def __mul__(self, other):
        return SignedMonomial(self.sign * other.sign, self.exponent + other.exponent)

    def __pow__(self, k: int):
        return SignedMonomial(self.sign**k, self.exponent * k)

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}q^{self.exponent}"

    @classmethod
    def parse(cls, text: str) -> SignedMonomial:
        """Parse ``[+-]q^k`` (a bare ``q`` means ``q^1``)."""
        s = text.replace(" ", "")
        sign = 1
        if s[:1] in "+-":
            sign = -1 if s[0] == "-" else 1
            s = s[1:]
        if s == "q":
            return cls(sign, 1)
        if not s.startswith("q^") or not s[2:].isdigit():
            raise ValueError(f"malformed monomial {text!r}")
        return cls(sign, int(s[2:]))


def _check_pair(a: SignedMonomial, b: SignedMonomial):
    if a.exponent + b.exponent < 1:
        raise ValueError(f"theta arguments {a}, {b} need total exponent >= 1")


def _check_order(N: int):
    if not 0 <= N <= MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}], got {N}")


def _from_terms(terms, N: int, ring: CoeffRing) -> TruncatedSeries:
    c = [0] * (N + 1)
    for e, v in terms:
        if e <= N:
            c[e] += v
    return TruncatedSeries(c, ring)


# -- products ---------------------------------------------------------------

def pochhammer(arg: SignedMonomial, base: SignedMonomial, N: int, ring=None) -> TruncatedSeries:
    """(arg; base)_inf = prod_{k>=0} (1 - arg * base^k), truncated at q^N.

    The k-th factor carries the sign arg.sign * base.sign^k.
    """
    _check_order(N)
    ring = _ring(ring)
    if base.exponent < 1:
        raise ValueError("pochhammer base must have exponent >= 1")
    c = [0] * (N + 1)
    c[0] = 1
    k = 0
    while True:
        e = arg.exponent + k * base.exponent
        if e > N:
            break
        s = arg.sign * base.sign**k
        # multiply in place by (1 - s q^e), walking downward
        if e == 0:
            c = [v - s * v for v in c]
        else:
            for n in range(N, e - 1, -1):
                c[n] -= s * c[n - e]
        k += 1
    return TruncatedSeries(c, ring)


def _pentagonal(N: int) -> Iterator[tuple[int, int]]:
    n = 0
    while True:
        hit = False
        for n_ in {n, -n}:
            e = n_ * (3 * n_ - 1) // 2
            if e <= N:
                hit = True
                yield e, (-1) ** (n_ % 2)
        if not hit:
            return
        n += 1


def eta(m: int, N: int, ring=None) -> TruncatedSeries:
    """f_m = (q^m; q^m)_inf from the pentagonal number theorem."""
    if m < 1:
        raise ValueError("eta index must be >= 1")
    _check_order(N)
    ring = _ring(ring)
    return substitute_power(_from_terms(_pentagonal(N // m), N, ring), m)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """prod f_m^e over (m, e) pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(m), int(e)) for m, e in self.factors))
        ms = [m for m, _ in self.factors]
        if len(set(ms)) != len(ms):
            raise ValueError("eta quotient indices must be distinct")
        for m, e in self.factors:
            if m < 1:
                raise ValueError("eta index must be >= 1")
            if e == 0:
                raise ValueError("eta quotient exponents must be nonzero")


def eta_quotient(spec: EtaQuotientSpec, N: int, ring=None) -> TruncatedSeries:
    ring = _ring(ring)
    num = one(N, ring)
    den = one(N, ring)
    for m, e in spec.factors:
        f = eta(m, N, ring)
        if e > 0:
            num = mul(num, power(f, e))
        else:
            den = mul(den, power(f, -e))
    if den.order == N and all(v == 0 for v in den.tolist()[1:]):
        return num
    return mul(num, invert(den))


# -- theta functions --------------------------------------------------------

def _theta_terms(a: SignedMonomial, b: SignedMonomial, N: int, which: str):
    """Yield (n, exponent, sign) of a^{n(n+1)/2} b^{n(n-1)/2} with exponent <= N.

    The exponent is nondecreasing in |n| away from 0, so each direction stops
    at the first term past N.
    """
    def term(n):
        t_up, t_down = n * (n + 1) // 2, n * (n - 1) // 2
        return (a.exponent * t_up + b.exponent * t_down,
                a.sign**(t_up % 2) * b.sign**(t_down % 2))

    if which in ("nonneg", "all"):
        n = 0
        while True:
            e, s = term(n)
            if e > N:
                break
            yield n, e, s
            n += 1
    if which in ("neg", "all"):
        n = -1
        while True:
            e, s = term(n)
            if e > N:
                break
            yield n, e, s
            n -= 1


def theta_f(a: SignedMonomial, b: SignedMonomial, N: int, form: str = "sum",
            ring=None) -> TruncatedSeries:
    """Ramanujan's f(a, b) as a bilateral sum or as the triple product
    (-a, -b, ab; ab)_inf."""
    _check_pair(a, b)
    _check_order(N)
    ring = _ring(ring)
    if form == "sum":
        return _from_terms(((e, s) for _, e, s in _theta_terms(a, b, N, "all")), N, ring)
    if form == "product":
        ab = a * b
        return mul(mul(pochhammer(-a, ab, N, ring), pochhammer(-b, ab, N, ring)),
                   pochhammer(ab, ab, N, ring))
    raise ValueError(f"unknown theta form {form!r}")


def false_theta_psi(a: SignedMonomial, b: SignedMonomial, N: int, ring=None) -> TruncatedSeries:
    """Psi(a, b): the theta sum with its negative-index half subtracted."""
    _check_pair(a, b)
    _check_order(N)
    ring = _ring(ring)
    terms = ((e, s if n >= 0 else -s) for n, e, s in _theta_terms(a, b, N, "all"))
    return _from_terms(terms, N, ring)


# -- quadratic exponent sums ------------------------------------------------

SIGN_MODES = {
    "plus": lambda n: 1,
    "altn": lambda n: -1 if n % 2 else 1,
    "alt-tri-up": lambda n: -1 if (n * (n + 1) // 2) % 2 else 1,
    "alt-tri-down": lambda n: -1 if (n * (n - 1) // 2) % 2 else 1,
}

RANGES = ("n>=0", "n>=1", "n<=-1", "all")


@dataclass(frozen=True)
class QuadSumSpec:
    """sum over a range of n of sign(n) q^(a n^2 + b n + c)."""

    a: int
    b: int
    c: int
    sign_mode: str = "plus"
    range: str = "n>=0"

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("quadratic coefficient must be positive")
        if self.sign_mode not in SIGN_MODES:
            raise ValueError(f"unknown sign mode {self.sign_mode!r}")
        if self.range not in RANGES:
            raise ValueError(f"unknown range {self.range!r}")
        lo, hi = self._bounds()
        # integer points nearest the vertex give the minimum over the range
        vertex = -self.b / (2 * self.a)
        cands = {int(vertex) - 1, int(vertex), int(vertex) + 1, lo, hi}
        cands = [n for n in cands if n is not None and (lo is None or n >= lo)
                 and (hi is None or n <= hi)]
        for n in cands:
            if self.exponent(n) < 0:
                raise ValueError(f"exponent {self.exponent(n)} < 0 at n={n} in {self}")

    def _bounds(self):
        return {"n>=0": (0, None), "n>=1": (1, None), "n<=-1": (None, -1),
                "all": (None, None)}[self.range]

    def exponent(self, n: int) -> int:
        return self.a * n * n + self.b * n + self.c

    def terms(self, N: int):
        lo, hi = self._bounds()
        vertex = -self.b // (2 * self.a)
        up_start = vertex if lo is None else max(lo, vertex)
        if hi is not None:
            up_start = min(up_start, hi)
        # walk upward from the start, then downward from start-1
        n = up_start
        while hi is None or n <= hi:
            e = self.exponent(n)
            if e > N and self.a * (2 * n - 1) + self.b >= 0:
                break
            if e <= N:
                yield n, e, SIGN_MODES[self.sign_mode](n)
            n += 1
        n = up_start - 1
        while lo is None or n >= lo:
            e = self.exponent(n)
            if e > N and self.a * (2 * n + 1) + self.b <= 0:
                break
            if e <= N:
                yield n, e, SIGN_MODES[self.sign_mode](n)
            n -= 1


def quad_sum(spec: QuadSumSpec, N: int, ring=None) -> TruncatedSeries:
    _check_order(N)
    return _from_terms(((e, s) for _, e, s in spec.terms(N)), N, _ring(ring))


# -- derived series ---------------------------------------------------------

def c_t_series(t: int, N: int, ring=None) -> TruncatedSeries:
    """sum c_t(n) q^n = 1 / Psi(-q^t, q)."""
    if t < 1:
        raise ValueError("t must be positive")
    return invert(false_theta_psi(SignedMonomial(-1, t), SignedMonomial(1, 1), N, ring))


A_SPEC = QuadSumSpec(3, 2, 0, "alt-tri-up", "n>=0")
B_SPEC = QuadSumSpec(3, 2, 0, "alt-tri-up", "n<=-1")

NAMED_SERIES = ("A", "B", "b1", "b2", "b3", "a1", "a2", "b")


def _named(name: str, N: int, ring: CoeffRing) -> TruncatedSeries:
    if name == "A":
        return quad_sum(A_SPEC, N, ring)
    if name == "B":
        return quad_sum(B_SPEC, N, ring)
    if name in ("b1", "b2", "b3"):
        A = quad_sum(A_SPEC, N, ring)
        B = quad_sum(B_SPEC, N, ring)
        s = add(A, B)
        if name == "b1":
            return invert(s)
        inv_s2 = invert(mul(s, s))
        if name == "b2":
            return mul(B, inv_s2)
        return mul(mul(mul(A, B), s), mul(inv_s2, inv_s2))
    if name == "a1":
        return eta_quotient(EtaQuotientSpec(((3, 6), (1, -2))), N, ring)
    if name == "a2":
        return mul(eta_quotient(EtaQuotientSpec(((6, 3), (2, -1))), N, ring),
                   quad_sum(QuadSumSpec(3, 0, 0, "plus", "n>=1"), N, ring))
    if name == "b":
        return eta_quotient(EtaQuotientSpec(((1, 1), (3, 1), (6, 1))), N, ring)
    raise ValueError(f"unknown named series {name!r}")


def named_series(name: str, N: int, ring=None) -> TruncatedSeries:
    """One of A, B, b1, b2, b3, a1, a2, b, or c<t> (e.g. ``c5``).

    b1 = 1/(A+B), b2 = B/(A+B)^2, b3 = (A^2 B + A B^2)/(A+B)^4,
    a1 = f3^6/f1^2, a2 = (f6^3/f2) sum_{n>=1} q^{3n^2}, b = f1 f3 f6.
    """
    _check_order(N)
    ring = _ring(ring)
    if name.startswith("c") and name[1:].isdigit():
        return c_t_series(int(name[1:]), N, ring)
    return _named(name, N, ring)


def q_power(e: int, N: int, ring=None) -> TruncatedSeries:
    return monomial(1, e, N, ring)


def constant(c: int, N: int, ring=None) -> TruncatedSeries:
    return monomial(c, 0, N, ring)

