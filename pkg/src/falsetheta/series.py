"""Truncated formal power series in q over Z or Z/MZ.

A series keeps every coefficient from q^0 up to q^order.  Binary operations
truncate to the smaller order of their operands, so precision loss is always
visible in the result rather than silently padded with zeros.

Modular rings store coefficients in int64 numpy arrays and multiply with
``np.convolve``.  The exact ring stores Python integers (object arrays) and
multiplies by Kronecker substitution: both operands are packed into one big
integer, multiplied with CPython's bigint arithmetic, and unpacked again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_ORDER",
    "CoeffRing",
    "ZZ",
    "RingMismatchError",
    "NonUnitError",
    "TruncatedSeries",
    "series",
    "zero",
    "one",
    "monomial",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "mul_naive",
    "kronecker_mul",
    "invert",
    "invert_naive",
    "power",
    "shift",
    "substitute_power",
    "dissect",
    "coeff",
    "reduce_mod",
    "undissect",
]

MAX_ORDER = 2**20

# int64 convolution is exact while (terms) * (M-1)^2 stays below this.
_INT64_SAFE = 2**62


class RingMismatchError(ValueError):
    pass


class NonUnitError(ArithmeticError):
    def __init__(self, value, ring):
        self.value = value
        self.ring = ring
        super().__init__(f"constant term {value} is not a unit in {ring}")


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring: exact integers when ``modulus == 0``, else Z/modulus."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"modulus must be 0 or >= 2, got {self.modulus}")

    @property
    def exact(self) -> bool:
        return self.modulus == 0

    @property
    def _native(self) -> bool:
        # small moduli live in int64 arrays; huge ones fall back to objects
        return 0 < self.modulus < 2**31

    def __str__(self):
        return "ZZ" if self.exact else f"ZZ/{self.modulus}"

    def normalize(self, value: int) -> int:
        return value % self.modulus if self.modulus else value

    def unit_inverse(self, value: int) -> int:
        if self.exact:
            if value in (1, -1):
                return value
            raise NonUnitError(value, self)
        try:
            return pow(value, -1, self.modulus)
        except ValueError:
            raise NonUnitError(value, self) from None

    def array(self, values: Iterable[int]) -> np.ndarray:
        if self._native:
            arr = np.array([int(v) % self.modulus for v in values], dtype=np.int64)
        else:
            vals = [int(v) for v in values]
            if self.modulus:
                vals = [v % self.modulus for v in vals]
            arr = np.empty(len(vals), dtype=object)
            arr[:] = vals
        return arr

    def zeros(self, n: int) -> np.ndarray:
        if self._native:
            return np.zeros(n, dtype=np.int64)
        arr = np.empty(n, dtype=object)
        arr[:] = [0] * n
        return arr


ZZ = CoeffRing(0)


def _ring(ring) -> CoeffRing:
    if ring is None:
        return ZZ
    if isinstance(ring, CoeffRing):
        return ring
    return CoeffRing(int(ring))


class TruncatedSeries:
    """Immutable series sum_{n<=order} coeffs[n] q^n over ``ring``.

    Arithmetic operators accept other series in the same ring or plain
    integers, which are promoted to constants.
    """

    __slots__ = ("ring", "_c")

    def __init__(self, coeffs, ring=None, *, _trusted=False):
        ring = _ring(ring)
        if _trusted:
            arr = coeffs
        else:
            arr = ring.array(coeffs)
            if len(arr) == 0:
                raise ValueError("a series needs at least the q^0 coefficient")
            if len(arr) - 1 > MAX_ORDER:
                raise ValueError(f"order {len(arr) - 1} exceeds cap {MAX_ORDER}")
        arr.flags.writeable = False
        self.ring = ring
        self._c = arr

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, index n holding the q^n coefficient."""
        return self._c

    def tolist(self) -> list[int]:
        return [int(v) for v in self._c.tolist()]

    def __len__(self):
        return len(self._c)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(v) for v in self._c[n].tolist()]
        return coeff(self, n)

    def __iter__(self):
        return iter(self.tolist())

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ring == other.ring and self.order == other.order
                and self.tolist() == other.tolist())

    def __hash__(self):
        return hash((self.ring, tuple(self.tolist())))

    def __repr__(self):
        head = self.tolist()[:10]
        more = ", ..." if self.order >= 10 else ""
        return (f"TruncatedSeries({head}{more}, order={self.order}, "
                f"ring={self.ring})")

    def is_zero(self) -> bool:
        return not np.any(self._c != 0)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return _wrap(self._c[: order + 1].copy(), self.ring)

    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, np.integer)):
            return monomial(int(other), 0, self.order, self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, invert(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, invert(self))

    def __pow__(self, e):
        return power(self, e)


def _wrap(arr: np.ndarray, ring: CoeffRing) -> TruncatedSeries:
    return TruncatedSeries(arr, ring, _trusted=True)


def _reduce_arr(arr: np.ndarray, ring: CoeffRing) -> np.ndarray:
    if ring.modulus:
        return arr % ring.modulus
    return arr


def series(coeffs: Sequence[int], ring=None, order: int | None = None) -> TruncatedSeries:
    """Build a series from a coefficient list, zero-padding up to ``order``."""
    coeffs = list(coeffs)
    if order is not None:
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = (coeffs + [0] * (order + 1))[: order + 1]
    return TruncatedSeries(coeffs, ring)


def zero(order: int, ring=None) -> TruncatedSeries:
    ring = _ring(ring)
    return _wrap(ring.zeros(order + 1), ring)


def one(order: int, ring=None) -> TruncatedSeries:
    return monomial(1, 0, order, ring)


def monomial(c: int, e: int, order: int, ring=None) -> TruncatedSeries:
    """c*q^e truncated at ``order`` (vanishes when e > order)."""
    ring = _ring(ring)
    if order < 0 or order > MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}], got {order}")
    if e < 0:
        raise ValueError("negative exponents are not supported")
    arr = ring.zeros(order + 1)
    if e <= order:
        arr[e] = ring.normalize(c)
    return _wrap(arr, ring)


def _check_rings(x: TruncatedSeries, y: TruncatedSeries) -> CoeffRing:
    if x.ring != y.ring:
        raise RingMismatchError(f"cannot combine series over {x.ring} and {y.ring}")
    return x.ring


def add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    ring = _check_rings(x, y)
    n = min(x.order, y.order) + 1
    return _wrap(_reduce_arr(x._c[:n] + y._c[:n], ring), ring)


def sub(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    ring = _check_rings(x, y)
    n = min(x.order, y.order) + 1
    return _wrap(_reduce_arr(x._c[:n] - y._c[:n], ring), ring)


def neg(x: TruncatedSeries) -> TruncatedSeries:
    return _wrap(_reduce_arr(-x._c, x.ring), x.ring)


def scale(x: TruncatedSeries, k: int) -> TruncatedSeries:
    ring = x.ring
    if ring._native:
        k = k % ring.modulus
    return _wrap(_reduce_arr(x._c * k, ring), ring)


# -- multiplication ---------------------------------------------------------

def _pack(values: list[int], width: int) -> int:
    """Sum of values[i] * 2^(width*i) for values in [0, 2^width)."""
    nbytes = width // 8
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _pack_signed(values: list[int], width: int) -> int:
    pos = [v if v > 0 else 0 for v in values]
    negs = [-v if v < 0 else 0 for v in values]
    return _pack(pos, width) - _pack(negs, width)


def kronecker_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer polynomials."""
    a = a[:n]
    b = b[:n]
    amax = max((abs(v) for v in a), default=0)
    bmax = max((abs(v) for v in b), default=0)
    if amax == 0 or bmax == 0:
        return [0] * n
    bound = amax * bmax * min(len(a), len(b))
    width = bound.bit_length() + 2
    width += -width % 8
    prod = _pack_signed(a, width) * _pack_signed(b, width)
    # Offsetting every digit by 2^(width-1) makes all digits nonnegative,
    # so plain byte slicing recovers them without borrow propagation.
    half = 1 << (width - 1)
    nbytes = width // 8
    offset = _pack([half] * n, width)
    total = (prod + offset) & ((1 << (width * n)) - 1)
    raw = total.to_bytes(nbytes * n, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
            for i in range(n)]


def _mul_arrays(a: np.ndarray, b: np.ndarray, n: int, ring: CoeffRing) -> np.ndarray:
    if ring._native and n * (ring.modulus - 1) ** 2 < _INT64_SAFE:
        return np.convolve(a[:n], b[:n])[:n] % ring.modulus
    prod = kronecker_mul([int(v) for v in a[:n].tolist()],
                         [int(v) for v in b[:n].tolist()], n)
    return ring.array(prod)


def mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    ring = _check_rings(x, y)
    n = min(x.order, y.order) + 1
    return _wrap(_mul_arrays(x._c, y._c, n, ring), ring)


def mul_naive(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Schoolbook Cauchy product; reference for :func:`mul`."""
    ring = _check_rings(x, y)
    n = min(x.order, y.order) + 1
    a, b = x.tolist(), y.tolist()
    out = [sum(a[k] * b[i - k] for k in range(i + 1)) for i in range(n)]
    return TruncatedSeries(out, ring)


# -- inversion --------------------------------------------------------------

def invert_naive(x: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal by forward substitution: y_n = -c0^{-1} sum_{k=1..n} x_k y_{n-k}."""
    ring = x.ring
    c = x.tolist()
    inv0 = ring.unit_inverse(c[0])
    y = [inv0]
    for n in range(1, len(c)):
        s = 0
        for k in range(1, n + 1):
            s += c[k] * y[n - k]
        y.append(ring.normalize(-inv0 * s))
    return TruncatedSeries(y, ring)


def invert(x: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse up to ``x.order``.

    Uses order-doubling Newton steps y <- y(2 - xy).  The inverse of a series
    with unit constant term is unique, so the result agrees with
    :func:`invert_naive` coefficient for coefficient.
    """
    ring = x.ring
    c0 = int(x._c[0])
    inv0 = ring.unit_inverse(c0)
    total = x.order + 1
    y = ring.array([inv0])
    prec = 1
    while prec < total:
        prec = min(2 * prec, total)
        ypad = ring.zeros(prec)
        ypad[: len(y)] = y
        xy = _mul_arrays(x._c, ypad, prec, ring)
        # 2 - xy without materialising a constant series
        corr = -xy
        corr[0] = corr[0] + 2
        y = _mul_arrays(ypad, _reduce_arr(corr, ring), prec, ring)
    return _wrap(_reduce_arr(y, ring), ring)


def power(x: TruncatedSeries, e: int) -> TruncatedSeries:
    """x^e by repeated squaring; negative e inverts the positive power."""
    if e < 0:
        return invert(power(x, -e))
    result = one(x.order, x.ring)
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# -- exponent manipulation --------------------------------------------------

def shift(x: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply by q^k, dropping the top k coefficients."""
    if k < 0:
        raise ValueError("shift amount must be nonnegative")
    if k == 0:
        return x
    arr = x.ring.zeros(x.order + 1)
    if k <= x.order:
        arr[k:] = x._c[: x.order + 1 - k]
    return _wrap(arr, x.ring)


def substitute_power(x: TruncatedSeries, m: int) -> TruncatedSeries:
    """Replace q by q^m, keeping the order of ``x``."""
    if m < 1:
        raise ValueError("substitution power must be positive")
    if m == 1:
        return x
    arr = x.ring.zeros(x.order + 1)
    src = x._c[: x.order // m + 1]
    arr[:: m][: len(src)] = src
    return _wrap(arr, x.ring)


def dissect(x: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """sum_n x_{mn+r} q^n, of order floor((order - r)/m).

    Equivalent to: keep the terms whose exponent is r mod m, divide by q^r,
    then replace q^m by q.  ``r > order`` yields the zero series of order 0.
    """
    if m < 1:
        raise ValueError("dissection modulus must be positive")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} not in [0, {m})")
    if r > x.order:
        return zero(0, x.ring)
    return _wrap(x._c[r::m].copy(), x.ring)


def undissect(parts: Sequence[TruncatedSeries], order: int) -> TruncatedSeries:
    """Inverse of dissection: sum_r q^r F_r(q^m) with m = len(parts)."""
    m = len(parts)
    ring = parts[0].ring
    arr = ring.zeros(order + 1)
    for r, part in enumerate(parts):
        if part.ring != ring:
            raise RingMismatchError("parts live in different rings")
        if r > order:
            continue
        span = len(arr[r::m])
        arr[r::m][: min(span, len(part))] = part._c[:span]
    return _wrap(arr, ring)


def coeff(x: TruncatedSeries, n: int) -> int:
    if not 0 <= n <= x.order:
        raise IndexError(f"coefficient {n} is outside the truncation 0..{x.order}")
    return int(x._c[n])


def reduce_mod(x: TruncatedSeries, M: int) -> TruncatedSeries:
    """Image of ``x`` in Z/M.  A modular source must have M dividing its modulus."""
    if M < 2:
        raise ValueError("modulus must be >= 2")
    src = x.ring.modulus
    if src and src % M:
        raise RingMismatchError(f"cannot reduce a series over ZZ/{src} modulo {M}")
    target = CoeffRing(M)
    if src == M:
        return x
    return TruncatedSeries([v % M for v in x.tolist()], target)
