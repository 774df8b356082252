"""A small expression language for q-series.

Grammar (whitespace between tokens is ignored)::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' ['-'] int)?
    atom   := 'f' int | 'psi(' int ')' | 'theta(' smon ',' smon ')'
            | 'poch(' smon ';' smon ')'
            | 'quadsum(' int ',' int ',' int ';' sign ';' range ')'
            | name | 'q' ('^' int)? | int | '(' expr ')'
    smon   := ('+'|'-')? 'q' ('^' int)?
    sign   := 'plus' | 'altn' | 'alt-tri-up' | 'alt-tri-down'
    range  := 'n>=0' | 'n>=1' | 'n<=-1' | 'all'
    name   := 'A' | 'B' | 'b1' | 'b2' | 'b3' | 'a1' | 'a2' | 'b' | 'c' int

``serialize`` produces the canonical text of an AST; parsing it back gives
the same AST, and the text doubles as the cache key.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from . import qfactory as qf
from .qfactory import QuadSumSpec, SignedMonomial
from .series import (
    CoeffRing,
    TruncatedSeries,
    _ring,
    add,
    invert,
    monomial,
    mul,
    neg,
    power,
    sub,
)

__all__ = [
    "ParseError",
    "Int", "QPow", "Eta", "Psi", "Theta", "Poch", "QuadSum", "Named",
    "Neg", "BinOp", "Pow",
    "parse",
    "serialize",
    "evaluate",
    "SeriesCache",
]


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class QPow:
    exp: int


@dataclass(frozen=True)
class Eta:
    m: int


@dataclass(frozen=True)
class Psi:
    t: int


@dataclass(frozen=True)
class Theta:
    a: SignedMonomial
    b: SignedMonomial


@dataclass(frozen=True)
class Poch:
    arg: SignedMonomial
    base: SignedMonomial


@dataclass(frozen=True)
class QuadSum:
    spec: QuadSumSpec


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Neg:
    x: "SeriesExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "SeriesExpr"
    right: "SeriesExpr"


@dataclass(frozen=True)
class Pow:
    base: "SeriesExpr"
    exp: int


SeriesExpr = Union[Int, QPow, Eta, Psi, Theta, Poch, QuadSum, Named, Neg, BinOp, Pow]

NAMES = ("A", "B", "b1", "b2", "b3", "a1", "a2", "b")


# -- tokenizer --------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col, self.msg = line, col, msg
        super().__init__(f"{msg} (line {line}, column {col})")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<range>n>=0|n>=1|n<=-1)
  | (?P<int>\d+)
  | (?P<sign>alt-tri-up|alt-tri-down)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*/^(),;])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def advance(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "ident"):
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.advance().text)

    def signed_integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * self.integer()

    def parse(self):
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        left = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        base = self.atom()
        if self.accept("^"):
            base = Pow(base, self.signed_integer())
        return base

    def smon(self) -> SignedMonomial:
        start = self.tok
        sign = 1
        if self.tok.text in ("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.text != "q":
            raise self.error("malformed monomial: expected [+-]q^k", start)
        self.advance()
        exp = 1
        if self.accept("^"):
            exp = self.integer()
        return SignedMonomial(sign, exp)

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            return Int(int(self.advance().text))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind != "ident":
            raise self.error(f"unexpected {tok.text or 'end of input'!r}")
        word = self.advance().text
        if word == "q":
            return QPow(self.integer()) if self.accept("^") else QPow(1)
        if word in NAMES:
            return Named(word)
        if re.fullmatch(r"f\d+", word):
            m = int(word[1:])
            if m < 1:
                raise self.error("eta index must be >= 1", tok)
            return Eta(m)
        if re.fullmatch(r"c\d+", word):
            t = int(word[1:])
            if t < 1:
                raise self.error("c_t index must be >= 1", tok)
            return Named(f"c{t}")
        if word == "psi":
            self.expect("(")
            t = self.integer()
            self.expect(")")
            if t < 1:
                raise self.error("psi index must be >= 1", tok)
            return Psi(t)
        if word == "theta":
            self.expect("(")
            a = self.smon()
            self.expect(",")
            b = self.smon()
            self.expect(")")
            if a.exponent + b.exponent < 1:
                raise self.error("theta arguments need total exponent >= 1", tok)
            return Theta(a, b)
        if word == "poch":
            self.expect("(")
            a = self.smon()
            self.expect(";")
            b = self.smon()
            self.expect(")")
            if b.exponent < 1:
                raise self.error("poch base must have exponent >= 1", tok)
            return Poch(a, b)
        if word == "quadsum":
            return self.quadsum(tok)
        raise self.error(f"unknown symbol {word!r}", tok)

    def quadsum(self, tok):
        self.expect("(")
        a = self.signed_integer()
        self.expect(",")
        b = self.signed_integer()
        self.expect(",")
        c = self.signed_integer()
        self.expect(";")
        sign_tok = self.advance()
        if sign_tok.text not in qf.SIGN_MODES:
            raise self.error(f"unknown sign mode {sign_tok.text!r}", sign_tok)
        self.expect(";")
        range_tok = self.advance()
        if range_tok.text not in qf.RANGES:
            raise self.error(f"unknown range {range_tok.text!r}", range_tok)
        self.expect(")")
        try:
            spec = QuadSumSpec(a, b, c, sign_tok.text, range_tok.text)
        except ValueError as exc:
            raise self.error(str(exc), tok) from None
        return QuadSum(spec)


def parse(text: str) -> SeriesExpr:
    return _Parser(text).parse()


# -- serialization ----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY, _POW, _ATOM = 3, 4, 5


def _prec(e) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Pow):
        return _POW
    return _ATOM


def _smon(m: SignedMonomial) -> str:
    return f"{'-' if m.sign < 0 else ''}q^{m.exponent}"


def serialize(e: SeriesExpr) -> str:
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, QPow):
        return f"q^{e.exp}"
    if isinstance(e, Eta):
        return f"f{e.m}"
    if isinstance(e, Psi):
        return f"psi({e.t})"
    if isinstance(e, Theta):
        return f"theta({_smon(e.a)},{_smon(e.b)})"
    if isinstance(e, Poch):
        return f"poch({_smon(e.arg)};{_smon(e.base)})"
    if isinstance(e, QuadSum):
        s = e.spec
        return f"quadsum({s.a},{s.b},{s.c};{s.sign_mode};{s.range})"
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Neg):
        inner = serialize(e.x)
        if _prec(e.x) < _UNARY:
            inner = f"({inner})"
        return "-" + inner
    if isinstance(e, Pow):
        inner = serialize(e.base)
        # q^k is an atom but q^k^e would not parse
        if _prec(e.base) < _ATOM or isinstance(e.base, QPow):
            inner = f"({inner})"
        return f"{inner}^{e.exp}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = serialize(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = serialize(e.right)
        if _prec(e.right) <= p:
            right = f"({right})"
        if e.op in "+-":
            return f"{left} {e.op} {right}"
        return f"{left}{e.op}{right}"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation -------------------------------------------------------------

def _leaf(e, N: int, ring: CoeffRing) -> TruncatedSeries:
    if isinstance(e, Int):
        return monomial(e.value, 0, N, ring)
    if isinstance(e, QPow):
        return monomial(1, e.exp, N, ring)
    if isinstance(e, Eta):
        return qf.eta(e.m, N, ring)
    if isinstance(e, Psi):
        return qf.false_theta_psi(SignedMonomial(-1, e.t), SignedMonomial(1, 1), N, ring)
    if isinstance(e, Theta):
        return qf.theta_f(e.a, e.b, N, "sum", ring)
    if isinstance(e, Poch):
        return qf.pochhammer(e.arg, e.base, N, ring)
    if isinstance(e, QuadSum):
        return qf.quad_sum(e.spec, N, ring)
    if isinstance(e, Named):
        return qf.named_series(e.name, N, ring)
    raise TypeError(f"not a leaf: {e!r}")


def _eval(e, N, ring, memo) -> TruncatedSeries:
    if e in memo:
        return memo[e]
    if isinstance(e, Neg):
        out = neg(_eval(e.x, N, ring, memo))
    elif isinstance(e, Pow):
        out = power(_eval(e.base, N, ring, memo), e.exp)
    elif isinstance(e, BinOp):
        left = _eval(e.left, N, ring, memo)
        right = _eval(e.right, N, ring, memo)
        if e.op == "+":
            out = add(left, right)
        elif e.op == "-":
            out = sub(left, right)
        elif e.op == "*":
            out = mul(left, right)
        else:
            out = mul(left, invert(right))
    else:
        out = _leaf(e, N, ring)
    memo[e] = out
    return out


def evaluate(e, N: int, M: int = 0, cache: "SeriesCache | None" = None) -> TruncatedSeries:
    """Expand ``e`` (an AST or expression text) to order N over Z (M=0) or Z/M."""
    if isinstance(e, str):
        e = parse(e)
    if N < 0:
        raise ValueError("order must be nonnegative")
    ring = _ring(M)
    if cache is not None:
        hit = cache.load(e, N, ring.modulus)
        if hit is not None:
            return hit
    out = _eval(e, N, ring, {})
    if cache is not None:
        cache.store(e, out)
    return out


# -- on-disk cache ----------------------------------------------------------

class SeriesCache:
    """Directory of evaluated series in a line-oriented text format::

        QSC1
        expr=<canonical expression>
        terms=<N>
        mod=<M>
        <N+1 decimal coefficients, one per line>
    """

    MAGIC = "QSC1"

    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def path(self, e, N: int, M: int) -> Path:
        key = f"{serialize(e)}|{N}|{M}".encode()
        return self.dir / f"{hashlib.sha256(key).hexdigest()[:32]}.qsc"

    @classmethod
    def dumps(cls, e, s: TruncatedSeries) -> str:
        lines = [cls.MAGIC, f"expr={serialize(e)}", f"terms={s.order}",
                 f"mod={s.ring.modulus}"]
        lines += [str(v) for v in s.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, e=None, N=None, M=None) -> TruncatedSeries | None:
        """Parse cache text; None if malformed or the header disagrees."""
        lines = text.splitlines()
        try:
            if lines[0] != cls.MAGIC:
                return None
            expr_s = lines[1].removeprefix("expr=")
            terms = int(lines[2].removeprefix("terms="))
            mod = int(lines[3].removeprefix("mod="))
            if not (lines[1].startswith("expr=") and lines[2].startswith("terms=")
                    and lines[3].startswith("mod=")):
                return None
            if e is not None and expr_s != serialize(e):
                return None
            if (N is not None and terms != N) or (M is not None and mod != M):
                return None
            values = [int(v) for v in lines[4:]]
        except (IndexError, ValueError):
            return None
        if len(values) != terms + 1:
            return None
        if mod and any(not 0 <= v < mod for v in values):
            return None
        return TruncatedSeries(values, mod)

    def load(self, e, N: int, M: int) -> TruncatedSeries | None:
        p = self.path(e, N, M)
        if not p.exists():
            return None
        return self.loads(p.read_text(), e, N, M)

    def store(self, e, s: TruncatedSeries) -> Path:
        p = self.path(e, s.order, s.ring.modulus)
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.dumps(e, s))
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p
