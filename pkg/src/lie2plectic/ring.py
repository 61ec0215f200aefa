"""Exact scalars: rationals and exponential polynomials on a coordinate chart.

An :class:`ExpPoly` is a finite sum ``c * q^alpha * exp(l . q)`` with rational
``c``, a monomial exponent vector ``alpha`` and a rational linear form ``l``.
The ring is closed under sums, products and partial derivatives, and two
canonical forms are equal exactly when the functions are equal, so every
zero test in the package is decidable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

__all__ = [
    "Rational",
    "ExpPoly",
    "EvalValue",
    "ParseError",
    "normalize",
    "multiply",
    "partial_derivative",
    "evaluate",
    "parse_expr",
    "parse_rational",
    "format_rational",
]


class ParseError(ValueError):
    """Raised when an expression string does not follow the grammar."""


def _num(x) -> int | Fraction:
    # Integral rationals are stored as ints so keys hash fast and print cleanly.
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-1/2"`` style strings (unicode minus accepted)."""
    s = str(text).strip().replace("−", "-")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class EvalValue:
    """Exact value ``sum_r c_r * e^r`` of an ExpPoly at a rational point."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping | None = None):
        clean = {}
        for r, c in (data or {}).items():
            c = Fraction(c)
            if c:
                clean[Fraction(r)] = c
        self._data = clean

    @property
    def data(self) -> dict:
        return dict(sorted(self._data.items()))

    def is_zero(self) -> bool:
        return not self._data

    def __add__(self, other: "EvalValue") -> "EvalValue":
        out = dict(self._data)
        for r, c in other._data.items():
            out[r] = out.get(r, 0) + c
        return EvalValue(out)

    def __mul__(self, other: "EvalValue") -> "EvalValue":
        out: dict = {}
        for r1, c1 in self._data.items():
            for r2, c2 in other._data.items():
                out[r1 + r2] = out.get(r1 + r2, 0) + c1 * c2
        return EvalValue(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, EvalValue):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self == EvalValue(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{format_rational(r)}: {format_rational(c)}" for r, c in sorted(self._data.items()))
        return f"EvalValue({{{inner}}})"


class ExpPoly:
    """Canonical exponential polynomial in ``dim`` chart coordinates.

    Terms are kept in a dict keyed by ``(exponent_form, monomial)``; both are
    tuples of length ``dim``. Instances are treated as immutable.
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping | None = None, *, _trusted: bool = False):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"chart dimension must be a positive integer, got {dim!r}")
        self.dim = dim
        if _trusted:
            self._terms = terms
            return
        clean: dict = {}
        for key, c in (terms or {}).items():
            ell, alpha = key
            if len(ell) != dim or len(alpha) != dim:
                raise ValueError("term does not match the chart dimension")
            key = (tuple(_num(Fraction(e)) for e in ell), tuple(int(a) for a in alpha))
            if any(a < 0 for a in key[1]):
                raise ValueError("monomial exponents must be non-negative")
            c = clean.get(key, 0) + Fraction(c)
            if c:
                clean[key] = _num(c)
            else:
                clean.pop(key, None)
        self._terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "ExpPoly":
        return cls(dim, {}, _trusted=True)

    @classmethod
    def const(cls, dim: int, c) -> "ExpPoly":
        c = Fraction(c)
        if not c:
            return cls.zero(dim)
        zero = (0,) * dim
        return cls(dim, {(zero, zero): _num(c)}, _trusted=True)

    @classmethod
    def coord(cls, dim: int, i: int) -> "ExpPoly":
        """The coordinate function q_i (1-based)."""
        if not 1 <= i <= dim:
            raise IndexError(f"coordinate index {i} out of range 1..{dim}")
        alpha = tuple(1 if k == i - 1 else 0 for k in range(dim))
        return cls(dim, {((0,) * dim, alpha): 1}, _trusted=True)

    @classmethod
    def exp(cls, dim: int, ell) -> "ExpPoly":
        ell = tuple(_num(Fraction(e)) for e in ell)
        if len(ell) != dim:
            raise ValueError("exponent form does not match the chart dimension")
        return cls(dim, {(ell, (0,) * dim): 1}, _trusted=True)

    # -- inspection -------------------------------------------------------
    def terms(self) -> list[tuple[Fraction, tuple, tuple]]:
        """Canonical list of ``(coefficient, monomial, exponent_form)``."""
        return [(Fraction(c), alpha, ell) for (ell, alpha), c in sorted(self._terms.items(), key=_term_order)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        zero = (0,) * self.dim
        return all(k == (zero, zero) for k in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("expression is not constant")
        return Fraction(sum(self._terms.values(), 0))

    def has_exponentials(self) -> bool:
        return any(any(ell) for ell, _ in self._terms)

    def polynomial_parts(self) -> dict[int, "ExpPoly"]:
        """Split a polynomial (no exponentials) into homogeneous degree parts."""
        if self.has_exponentials():
            raise ValueError("expression has exponential factors")
        parts: dict[int, dict] = {}
        for key, c in self._terms.items():
            parts.setdefault(sum(key[1]), {})[key] = c
        return {d: ExpPoly(self.dim, t, _trusted=True) for d, t in sorted(parts.items())}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "ExpPoly"):
        if other.dim != self.dim:
            raise ValueError(f"chart dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> "ExpPoly | None":
        if isinstance(other, ExpPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ExpPoly.const(self.dim, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return ExpPoly(self.dim, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(self.dim, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "ExpPoly":
        c = Fraction(c)
        if not c:
            return ExpPoly.zero(self.dim)
        if c == 1:
            return self
        return ExpPoly(self.dim, {k: v * c for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return ExpPoly.zero(self.dim)
        out: dict = {}
        for (l1, a1), c1 in self._terms.items():
            for (l2, a2), c2 in other._terms.items():
                key = (tuple(x + y for x, y in zip(l1, l2)), tuple(x + y for x, y in zip(a1, a2)))
                out[key] = out.get(key, 0) + c1 * c2
        return ExpPoly(self.dim, {k: v for k, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def partial(self, i: int) -> "ExpPoly":
        """d/dq_i, 1-based index."""
        if not 1 <= i <= self.dim:
            raise IndexError(f"coordinate index {i} out of range 1..{self.dim}")
        j = i - 1
        out: dict = {}
        for (ell, alpha), c in self._terms.items():
            if alpha[j]:
                lowered = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
                key = (ell, lowered)
                out[key] = out.get(key, 0) + c * alpha[j]
            if ell[j]:
                key = (ell, alpha)
                out[key] = out.get(key, 0) + c * ell[j]
        return ExpPoly(self.dim, {k: v for k, v in out.items() if v}, _trusted=True)

    def evaluate(self, point) -> EvalValue:
        point = [Fraction(p) for p in point]
        if len(point) != self.dim:
            raise ValueError(f"point has length {len(point)}, chart dimension is {self.dim}")
        out: dict = {}
        for (ell, alpha), c in self._terms.items():
            r = sum((e * p for e, p in zip(ell, point)), Fraction(0))
            v = Fraction(c)
            for a, p in zip(alpha, point):
                if a:
                    v *= p**a
            out[r] = out.get(r, 0) + v
        return EvalValue(out)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, ExpPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == ExpPoly.const(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_expr(self)

    def __repr__(self) -> str:
        return f"ExpPoly({self.dim}, {format_expr(self)!r})"


def _term_order(item):
    (ell, alpha), _ = item
    return (ell, alpha)


# -- functional spellings used across the package --------------------------

def normalize(raw_terms: Iterable, dim: int | None = None) -> ExpPoly:
    """Build the canonical ExpPoly from ``(coefficient, monomial, exponent_form)`` triples."""
    raw_terms = list(raw_terms)
    dims = {len(t[1]) for t in raw_terms} | {len(t[2]) for t in raw_terms}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise ValueError(f"mismatched chart dimensions in terms: {sorted(dims)}")
    if not dims:
        raise ValueError("cannot infer the chart dimension of an empty term list")
    (m,) = dims
    acc: dict = {}
    for c, alpha, ell in raw_terms:
        key = (tuple(ell), tuple(alpha))
        acc[key] = acc.get(key, 0) + Fraction(c)
    return ExpPoly(m, acc)


def multiply(a: ExpPoly, b: ExpPoly) -> ExpPoly:
    return a * b


def partial_derivative(a: ExpPoly, i: int) -> ExpPoly:
    return a.partial(i)


def evaluate(a: ExpPoly, point) -> EvalValue:
    return a.evaluate(point)


# -- printing ---------------------------------------------------------------

def _format_linform(ell) -> str:
    parts = []
    for i, e in enumerate(ell, start=1):
        if not e:
            continue
        e = Fraction(e)
        mag = "" if abs(e) == 1 else format_rational(abs(e)) + "*"
        sign = "-" if e < 0 else "+"
        parts.append((sign, f"{mag}q{i}"))
    text = "".join(f"{s}{p}" for s, p in parts)
    return text[1:] if text.startswith("+") else text


def _format_term(c: Fraction, alpha, ell) -> tuple[str, str]:
    factors = []
    for i, a in enumerate(alpha, start=1):
        if a == 1:
            factors.append(f"q{i}")
        elif a > 1:
            factors.append(f"q{i}^{a}")
    if any(ell):
        factors.append(f"exp({_format_linform(ell)})")
    mag = abs(c)
    if not factors:
        body = format_rational(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = format_rational(mag) + "*" + "*".join(factors)
    return ("-" if c < 0 else "+", body)


def format_expr(p: ExpPoly) -> str:
    """Render in the input grammar; ``parse_expr(format_expr(p)) == p``."""
    terms = p.terms()
    if not terms:
        return "0"
    out = []
    for k, (c, alpha, ell) in enumerate(terms):
        sign, body = _format_term(c, alpha, ell)
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<q>q(?P<qi>\d+))|(?P<exp>exp)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    pos, toks = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos} in {text!r}")
        if m.group("num"):
            toks.append(("num", m.group("num"), m.start("num")))
        elif m.group("q"):
            toks.append(("q", m.group("qi"), m.start("q")))
        elif m.group("exp"):
            toks.append(("exp", "exp", m.start("exp")))
        else:
            toks.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, dim: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.dim = dim

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} at offset {tok[2]} in {self.text!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def index(self, raw: str, at: int) -> int:
        k = int(raw)
        if not 1 <= k <= self.dim:
            raise ParseError(f"coordinate q{k} at offset {at} is outside the chart of dimension {self.dim}")
        return k

    def rational(self) -> Fraction:
        num = Fraction(int(self.take("num")[1]))
        if self.peek() == "/":
            self.take("/")
            den = int(self.take("num")[1])
            if den == 0:
                raise ParseError(f"zero denominator in {self.text!r}")
            num /= den
        return num

    def expr(self) -> ExpPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> ExpPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> ExpPoly:
        kind = self.peek()
        if kind == "num":
            return ExpPoly.const(self.dim, self.rational())
        if kind == "q":
            _, raw, at = self.take("q")
            base = ExpPoly.coord(self.dim, self.index(raw, at))
            if self.peek() == "^":
                self.take("^")
                power = int(self.take("num")[1])
                out = ExpPoly.const(self.dim, 1)
                for _ in range(power):
                    out = out * base
                return out
            return base
        if kind == "exp":
            self.take("exp")
            self.take("(")
            ell = self.linform()
            self.take(")")
            return ExpPoly.exp(self.dim, ell)
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        tok = self.toks[self.i] if self.i < len(self.toks) else None
        where = f"offset {tok[2]}" if tok else "end"
        raise ParseError(f"expected a factor at {where} in {self.text!r}")

    def linform(self) -> list[Fraction]:
        ell = [Fraction(0)] * self.dim
        first = True
        while True:
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            elif not first:
                break
            coef = Fraction(1)
            if self.peek() == "num":
                coef = self.rational()
                if self.peek() == "*":
                    self.take("*")
            _, raw, at = self.take("q")
            ell[self.index(raw, at) - 1] += sign * coef
            first = False
            if self.peek() not in ("+", "-"):
                break
        return ell


def _max_coord(text: str) -> int:
    found = [int(k) for k in re.findall(r"q(\d+)", text)]
    return max(found, default=1)


def parse_expr(text: str, dim: int | None = None) -> ExpPoly:
    """Parse the expression grammar, e.g. ``"-1/2*q1^2*exp(-3*q2) + q3"``.

    ``dim`` defaults to the largest coordinate index that appears.
    """
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {type(text).__name__}")
    if dim is None:
        dim = _max_coord(text)
    p = _Parser(text, dim)
    if not p.toks:
        raise ParseError("empty expression")
    out = p.expr()
    if p.i != len(p.toks):
        tok = p.toks[p.i]
        raise ParseError(f"trailing input at offset {tok[2]} in {text!r}")
    return out
