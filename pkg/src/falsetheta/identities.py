"""Catalog of the q-series identities and mod-M congruences used in the
dissection arguments, with a coefficientwise verifier."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .expr import parse, serialize, evaluate
from .report import VerificationReport
from .series import dissect

__all__ = ["IdentityEntry", "IdentityEvaluationError", "catalog", "chain_checks", "lookup", "verify_identity"]

EXACT_ORDER = 1500
MODULAR_ORDER = 2000


class IdentityEvaluationError(RuntimeError):
    def __init__(self, name, cause):
        self.name = name
        super().__init__(f"[{name}] {type(cause).__name__}: {cause}")


@dataclass(frozen=True)
class IdentityEntry:
    """lhs == rhs exactly (modulus 0) or modulo ``modulus``.

    When ``lhs_dissect = (m, r)`` the left side is replaced by its
    m-dissection component sum_n lhs_{mn+r} q^n before comparing.
    """

    name: str
    lhs: str
    rhs: str
    modulus: int = 0
    default_order: int = 0
    lhs_dissect: tuple[int, int] | None = None
    note: str = ""

    def __post_init__(self):
        # normalise both sides to canonical text; rejects malformed entries early
        object.__setattr__(self, "lhs", serialize(parse(self.lhs)))
        object.__setattr__(self, "rhs", serialize(parse(self.rhs)))
        if not self.default_order:
            order = MODULAR_ORDER if self.modulus else EXACT_ORDER
            object.__setattr__(self, "default_order", order)


def _e(name, lhs, rhs, modulus=0, note="", dis=None):
    return IdentityEntry(name, lhs, rhs, modulus, lhs_dissect=dis, note=note)


_MOD7_BILATERAL = [(147, 14, 0), (147, -28, 1), (147, 56, 5), (147, -70, 8),
                   (147, 98, 16), (147, -112, 21), (147, 140, 33)]
_MOD7_POSITIVE = [(147, 35, 2), (147, 77, 10), (147, 119, 24), (147, 161, 44),
                  (147, 203, 70), (147, 245, 102)]


def _qs(a, b, c, sign="plus", rng="n>=0"):
    return f"quadsum({a},{b},{c};{sign};{rng})"


def _build_catalog() -> tuple[IdentityEntry, ...]:
    entries = [
        _e("jtp-f1", "theta(-q^1,-q^2)", "f1", note="pentagonal number theorem"),
        _e("jtp-phi", "theta(-q^1,-q^1)", "f1^2/f2"),
        _e("jtp-phi-sum", _qs(1, 0, 0, "altn", "all"), "f1^2/f2",
           note="sum_n (-1)^n q^(n^2)"),
        _e("jtp-psiodd", "theta(-q^1,-q^3)", "f1*f4/f2"),
        _e("AB-theta", "A + B", "theta(-q^5,q^1)"),
        _e("AB-product", "A + B", "poch(-q^1;-q^6)*poch(q^5;-q^6)*poch(-q^6;-q^6)"),
        _e("AB-product-12", "A + B",
           "poch(-q^1;q^12)*poch(q^5;q^12)*poch(q^7;q^12)*poch(-q^11;q^12)*f12^3/(f6*f24)"),
        _e("psi-5", "psi(5)", "A - B"),
        _e("recip-form", "b1",
           "f4*f6^2*f24/(f2*f12^6)*theta(-q^1,-q^11)*theta(q^5,q^7)"),
        _e("theta-mult", "theta(-q^1,-q^11)*theta(q^5,q^7)",
           "f6*f8*f24/f12 - q*f4*f6*f24^3/(f8*f12^2)"),
        _e("theta-mult-general", "theta(-q^1,-q^11)*theta(q^5,q^7)",
           "theta(-q^6,-q^18)*theta(-q^8,-q^16) - q*theta(-q^6,-q^18)*theta(-q^4,-q^20)",
           note="f(a,b)f(c,d) = f(ac,bd)f(ad,bc) + a f(b/c,ac^2d) f(b/d,acd^2) at ab=cd"),
        _e("b1-closed", "b1",
           "f4*f6^3*f24^2/(f2*f12^7)*(f8 - q*f4*f24^2/(f8*f12))"),
        _e("b1-odd", "b1", "-f3^3/f1*f2^2*f12^4/(f4*f6^8)", dis=(2, 1)),
        _e("xia-yao-cube", "f3^3/f1", "f4^3*f6^2/(f2^2*f12) + q*f12^3/f4"),
        _e("square-2dissect", "f1^2", "f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8"),
        _e("inv-square-2dissect", "1/f1^2",
           "f8^5/(f2^5*f16^2) + 2*q*f4^2*f16^2/(f2^5*f8)"),
        _e("ratio-3-29", "f3^2/f1^2",
           "f4^4*f6*f12^2/(f2^5*f8*f24) + 2*q*f4*f6^2*f8*f24/(f2^4*f12)"),
        _e("ratio-3-29-neg", "f1^2/f3^2",
           "f2*f4^2*f12^4/(f6^5*f8*f24) - 2*q*f2^2*f8*f12*f24/(f4*f6^4)",
           note="image of ratio-3-29 under q -> -q"),
        _e("cube-ratio", "f1^3/f3", "f4^3/f12 - 3*q*f2^2*f12^3/(f4*f6^2)"),
        _e("eta-6", "poch(q^1;q^6)*poch(q^5;q^6)*poch(q^6;q^6)", "f1*f6^2/(f2*f3)"),
        _e("split-3n2p2n", _qs(3, 2, 0), f"{_qs(12, 4, 0)} + q^5*{_qs(12, 16, 0)}"),
        _e("split-3n2p4n", _qs(3, 4, 0), f"{_qs(12, 8, 0)} + q^7*{_qs(12, 20, 0)}"),
        _e("split-mod7-bilateral", _qs(3, 2, 0, rng="all"),
           " + ".join(_qs(a, b, c, rng="all") for a, b, c in _MOD7_BILATERAL)),
        _e("split-mod7-positive", _qs(3, -1, 0, rng="n>=1"),
           " + ".join([_qs(147, -7, 0, rng="n>=1")]
                      + [_qs(a, b, c) for a, b, c in _MOD7_POSITIVE])),
        _e("b1-even", "b1", "f3^3/f1*f2*f4*f12^2/f6^7", dis=(2, 0)),
        _e("b1-4n2", "b1", "f1*f6^5/f3^7", dis=(4, 2)),
        _e("bilateral-eta", _qs(3, 2, 0, rng="all"), "f2^2*f3*f12/(f1*f4*f6)"),
        _e("AB-mod2", "A + B", "f1*f6^2/(f2*f3)", modulus=2),
        _e("AB-poch-mod2", "poch(-q^1;-q^6)*poch(q^5;-q^6)*poch(-q^6;-q^6)",
           "poch(q^1;q^6)*poch(q^5;q^6)*poch(q^6;q^6)", modulus=2),
        _e("cube-mod2", "f3^3/f1", _qs(3, 2, 0, rng="all"), modulus=2),
        _e("half-cube-mod2", "f3/f1", "f8/f6 + q*f6*f24/f4", modulus=2),
    ]
    for m in (1, 2, 3):
        for k in (1, 2, 3):
            entries.append(_e(f"freshman-m{m}-k{k}", f"f{k}^{2**m}",
                              f"f{2 * k}^{2 ** (m - 1)}", modulus=2**m,
                              note="f_k^(2^m) = f_2k^(2^(m-1)) mod 2^m"))
    return tuple(entries)


def _build_chain_checks() -> tuple[IdentityEntry, ...]:
    return (
        _e("chain-b1-2n1-mod8", "b1", "-f3^3/f1*f2^2/f4", modulus=8, dis=(2, 1)),
        _e("chain-b1-4n2", "b1", "f1*f6^5/f3^7", dis=(4, 2)),
        _e("chain-b1-4n3-mod8", "b1", "-f1^2*f6^3/f2^2", modulus=8, dis=(4, 3)),
        _e("chain-b1-4n2-mod4", "b1", "f1*f3*f6", modulus=4, dis=(4, 2)),
    )


_CATALOG = _build_catalog()
_CHAIN = _build_chain_checks()


def catalog() -> list[IdentityEntry]:
    return list(_CATALOG)


def chain_checks() -> list[IdentityEntry]:
    """Mid-derivation consistency checks on the b1 dissections."""
    return list(_CHAIN)


def lookup(name: str) -> IdentityEntry:
    for entry in _CATALOG + _CHAIN:
        if entry.name == name:
            return entry
    raise KeyError(f"no identity named {name!r}")


def verify_identity(entry, N: int | None = None, cache=None) -> VerificationReport:
    """Expand both sides to order N and compare coefficientwise.

    ``entry`` is an :class:`IdentityEntry`, a catalog name, or a tuple
    ``(lhs, rhs, modulus)`` of expression strings.  A failing report lists
    the first mismatch as ``(n, (lhs_n, rhs_n))`` with a five-coefficient
    window around it in ``info``.
    """
    if isinstance(entry, str):
        entry = lookup(entry)
    elif isinstance(entry, tuple):
        lhs, rhs, modulus = entry
        entry = IdentityEntry("adhoc", lhs, rhs, modulus)
    if N is None:
        N = entry.default_order
    start = time.perf_counter()
    try:
        if entry.lhs_dissect:
            m, r = entry.lhs_dissect
            left = dissect(evaluate(entry.lhs, m * N + r, entry.modulus, cache), m, r)
        else:
            left = evaluate(entry.lhs, N, entry.modulus, cache)
        right = evaluate(entry.rhs, N, entry.modulus, cache)
    except Exception as exc:
        raise IdentityEvaluationError(entry.name, exc) from exc
    a, b = left.tolist(), right.tolist()
    violations = []
    info = {"order": N, "modulus": entry.modulus}
    for n, (x, y) in enumerate(zip(a, b)):
        if x != y:
            violations.append((n, [x, y]))
            lo, hi = max(0, n - 2), min(N, n + 2)
            info["window"] = {"start": lo, "lhs": a[lo:hi + 1], "rhs": b[lo:hi + 1]}
            break
    return VerificationReport(
        name=entry.name,
        n_checked=N + 1 if not violations else violations[0][0] + 1,
        violations=violations,
        elapsed=time.perf_counter() - start,
        info=info,
    )
