"""Elementary number theory: factorization, divisor sums, Legendre symbols,
p-adic valuations and representation by x^2 + y^2 and 2x^2 + y^2.
"""

from __future__ import annotations

import time
from math import isqrt

from .report import VerificationReport

__all__ = [
    "factorize",
    "is_prime",
    "sigma",
    "wang_a1",
    "legendre",
    "nu_p",
    "FORMS",
    "is_represented",
    "theorem2_index",
    "valuation_parity_audit",
]

FORMS = ("x^2+y^2", "2x^2+y^2")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 by trial division, primes ascending."""
    if n <= 0:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def sigma(n: int) -> int:
    """Sum of the divisors of n."""
    total = 1
    for p, e in factorize(n):
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def wang_a1(n: int) -> int:
    """Coefficient of q^n in f3^6/f1^2, computed as sigma(3n+2)/3."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = sigma(3 * n + 2)
    if s % 3:
        raise ArithmeticError(f"sigma({3 * n + 2}) = {s} is not divisible by 3")
    return s // 3


def legendre(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def nu_p(n: int, p: int) -> int:
    """Exponent of the prime p in n."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_represented(form: str, N: int) -> bool:
    """Whether N = x^2 + y^2 (or 2x^2 + y^2) for some integers x, y >= 0."""
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    if N < 0:
        return False
    c = 1 if form == "x^2+y^2" else 2
    x = 0
    while c * x * x <= N:
        rest = N - c * x * x
        if isqrt(rest) ** 2 == rest:
            return True
        x += 1
    return False


def theorem2_index(p: int, k: int, n: int) -> int:
    """p^(2k+1) n + 2(p^(2k+2) - 1)/3, the a1/a2 argument that 4m+3 maps to."""
    return p ** (2 * k + 1) * n + 2 * (p ** (2 * k + 2) - 1) // 3


def _check_family_prime(p: int):
    if not is_prime(p) or p % 8 != 7:
        raise ValueError(f"p must be a prime congruent to 7 mod 8, got {p}")


def valuation_parity_audit(p: int, k: int, n_max: int) -> VerificationReport:
    """For p | n skipped, check that N = 3 m + 2 (m = theorem2_index) has
    nu_p(N) = 2k+1 and is represented by neither x^2+y^2 nor 2x^2+y^2."""
    _check_family_prime(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    start = time.perf_counter()
    violations = []
    checked = skipped = 0
    for n in range(n_max):
        if n % p == 0:
            skipped += 1
            continue
        N = 3 * theorem2_index(p, k, n) + 2
        v = nu_p(N, p)
        bad = []
        if v != 2 * k + 1:
            bad.append(f"nu_{p}={v}")
        bad += [form for form in FORMS if is_represented(form, N)]
        if bad:
            violations.append((n, {"N": N, "failed": bad}))
        checked += 1
    return VerificationReport(
        name=f"audit-valuation p={p} k={k}",
        n_checked=checked,
        violations=violations,
        elapsed=time.perf_counter() - start,
        skipped=skipped,
    )
