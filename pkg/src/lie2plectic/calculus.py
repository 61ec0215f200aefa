"""Multivector fields and differential forms on a coordinate chart.

Both are coefficient tables keyed by strictly increasing index tuples
(1-based coordinate indices) with :class:`ExpPoly` values. Contraction puts
the first vector into the first slot:

    iota_{X1 ^ ... ^ Xn} alpha = alpha(X1, ..., Xn, ...)

and the multi Lie derivative is ``L_v = d iota_v - (-1)^|v| iota_v d``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .ring import ExpPoly, ParseError, format_expr, parse_expr

# Insertion order used by every contraction in the package; not configurable.
CONTRACTION_CONVENTION = "first-vector-first-slot"

__all__ = [
    "CONTRACTION_CONVENTION",
    "Chart",
    "MultiVectorField",
    "DifferentialForm",
    "ObservablePair",
    "wedge",
    "contract",
    "exterior_derivative",
    "lie_derivative",
    "schouten",
    "parse_field",
    "random_function",
    "random_vector_field",
    "random_bivector",
    "random_form",
    "FieldAlgebra",
    "cartan_selfcheck",
    "Endo",
    "EndStructure",
    "endo_action",
    "verify_endo_morphism",
]


@dataclass(frozen=True)
class Chart:
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"chart dimension must be >= 1, got {self.dim!r}")


def _sort_sign(idx: tuple) -> tuple[int, tuple] | None:
    """Sign of the permutation sorting ``idx``, or None on a repeated index."""
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


def _as_coeff(dim: int, c) -> ExpPoly:
    if isinstance(c, ExpPoly):
        if c.dim != dim:
            raise ValueError(f"chart dimension mismatch: {c.dim} vs {dim}")
        return c
    if isinstance(c, (int, Fraction)):
        return ExpPoly.const(dim, c)
    if isinstance(c, str):
        return parse_expr(c, dim)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class _Graded:
    """Shared storage for multivector fields and forms."""

    __slots__ = ("dim", "degree", "coeffs")
    kind = ""
    _letter = ""

    def __init__(self, dim: int, degree: int, coeffs: Mapping | None = None, *, _trusted: bool = False):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"chart dimension must be >= 1, got {dim!r}")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.dim = dim
        self.degree = degree
        if _trusted:
            self.coeffs = coeffs
            return
        clean: dict = {}
        for idx, c in (coeffs or {}).items():
            idx = (idx,) if isinstance(idx, int) else tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} does not have length {degree}")
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"index tuple {idx} outside chart of dimension {dim}")
            ss = _sort_sign(idx)
            if ss is None:
                continue
            sign, key = ss
            val = _as_coeff(dim, c)
            if sign < 0:
                val = -val
            total = clean.get(key)
            total = val if total is None else total + val
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self.coeffs = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dim: int, degree: int):
        return cls(dim, degree, {}, _trusted=True)

    @classmethod
    def basis(cls, dim: int, idx, coeff=1):
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        return cls(dim, len(idx), {idx: coeff})

    @classmethod
    def scalar(cls, f: ExpPoly):
        return cls(f.dim, 0, {(): f} if f else {}, _trusted=True)

    def _new(self, degree: int, coeffs: dict):
        return type(self)(self.dim, degree, coeffs, _trusted=True)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"chart dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(self.degree, out)

    def __neg__(self):
        return self._new(self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            if not c:
                return self._new(self.degree, {})
            return self._new(self.degree, {k: v.scale(c) for k, v in self.coeffs.items()})
        if isinstance(c, ExpPoly):
            out = {}
            for k, v in self.coeffs.items():
                w = v * c
                if w:
                    out[k] = w
            return self._new(self.degree, out)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if type(other) is not type(self):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.dim, self.degree, frozenset(self.coeffs.items())))

    def coefficient(self, idx) -> ExpPoly:
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        ss = _sort_sign(idx)
        if ss is None:
            return ExpPoly.zero(self.dim)
        sign, key = ss
        c = self.coeffs.get(key, ExpPoly.zero(self.dim))
        return c if sign > 0 else -c

    def items(self):
        return sorted(self.coeffs.items())

    def has_exponentials(self) -> bool:
        return any(c.has_exponentials() for c in self.coeffs.values())

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs.values())

    def map_coeffs(self, fn: Callable[[ExpPoly], ExpPoly]):
        out = {}
        for k, c in self.coeffs.items():
            v = fn(c)
            if v:
                out[k] = v
        return self._new(self.degree, out)

    # -- printing ---------------------------------------------------------
    def _basis_name(self, idx: tuple) -> str:
        return "^".join(f"{self._letter}{i}" for i in idx)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx, c in self.items():
            if self.degree == 0:
                text = format_expr(c)
                parts.append(text if not parts else ("- " + text[1:] if text.startswith("-") else "+ " + text))
                continue
            terms = c.terms()
            base = self._basis_name(idx)
            if len(terms) == 1:
                coef, alpha, ell = terms[0]
                neg = coef < 0
                body = format_expr(-c if neg else c)
                piece = base if body == "1" else f"{body}*{base}"
            else:
                neg = False
                piece = f"({format_expr(c)})*{base}"
            if not parts:
                parts.append(("-" if neg else "") + piece)
            else:
                parts.append(("- " if neg else "+ ") + piece)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.dim}, {self.degree}, {str(self)!r})"


class MultiVectorField(_Graded):
    """Element of X^k on the chart; ``e1^e2`` denotes d/dq1 ^ d/dq2."""

    __slots__ = ()
    kind = "vector"
    _letter = "e"


class DifferentialForm(_Graded):
    """Element of Omega^p on the chart; ``dq1^dq2`` is the usual basis form."""

    __slots__ = ()
    kind = "form"
    _letter = "dq"


@dataclass(frozen=True)
class ObservablePair:
    """A function together with a 1-form, both on the same chart."""

    f: ExpPoly
    alpha: DifferentialForm

    def __post_init__(self):
        if self.f.dim != self.alpha.dim:
            raise ValueError("function and form live on different charts")
        if self.alpha.coeffs and self.alpha.degree != 1:
            raise ValueError("the form component must have degree 1")


# -- algebra ----------------------------------------------------------------

def _merge_sign(a: tuple, b: tuple) -> int:
    inv = 0
    for i in a:
        for j in b:
            if i > j:
                inv += 1
    return -1 if inv % 2 else 1


def wedge(a: _Graded, b: _Graded) -> _Graded:
    a._check(b)
    deg = a.degree + b.degree
    out: dict = {}
    if deg <= a.dim:
        for ia, ca in a.coeffs.items():
            sa = set(ia)
            for ib, cb in b.coeffs.items():
                if sa.intersection(ib):
                    continue
                key = tuple(sorted(ia + ib))
                term = ca * cb
                if _merge_sign(ia, ib) < 0:
                    term = -term
                v = out.get(key)
                out[key] = term if v is None else v + term
    return a._new(deg, {k: v for k, v in out.items() if v})


def _contract_sign(sub: tuple, full: tuple) -> tuple[int, tuple]:
    rest = tuple(j for j in full if j not in sub)
    inv = sum(1 for r in rest for i in sub if r < i)
    return (-1 if inv % 2 else 1), rest


def contract(v: MultiVectorField, alpha: DifferentialForm) -> DifferentialForm:
    """iota_v alpha with the first vector inserted into the first slot."""
    if not isinstance(v, MultiVectorField) or not isinstance(alpha, DifferentialForm):
        raise TypeError("contract expects a multivector field and a differential form")
    if v.dim != alpha.dim:
        raise ValueError(f"chart dimension mismatch: {v.dim} vs {alpha.dim}")
    n, p = v.degree, alpha.degree
    if p < n:
        return DifferentialForm.zero(alpha.dim, 0)
    out: dict = {}
    for iv, cv in v.coeffs.items():
        sv = set(iv)
        for ia, ca in alpha.coeffs.items():
            if not sv.issubset(ia):
                continue
            sign, rest = _contract_sign(iv, ia)
            term = cv * ca
            if sign < 0:
                term = -term
            prev = out.get(rest)
            out[rest] = term if prev is None else prev + term
    return DifferentialForm(alpha.dim, p - n, {k: c for k, c in out.items() if c}, _trusted=True)


def exterior_derivative(alpha: DifferentialForm) -> DifferentialForm:
    if not isinstance(alpha, DifferentialForm):
        raise TypeError("exterior derivative expects a differential form")
    m, p = alpha.dim, alpha.degree
    out: dict = {}
    if p + 1 <= m:
        for idx, c in alpha.coeffs.items():
            for i in range(1, m + 1):
                if i in idx:
                    continue
                dc = c.partial(i)
                if not dc:
                    continue
                pos = sum(1 for j in idx if j < i)
                key = idx[:pos] + (i,) + idx[pos:]
                if pos % 2:
                    dc = -dc
                prev = out.get(key)
                out[key] = dc if prev is None else prev + dc
    return DifferentialForm(m, p + 1, {k: c for k, c in out.items() if c}, _trusted=True)


def function_form(f: ExpPoly) -> DifferentialForm:
    return DifferentialForm.scalar(f)


def differential(f: ExpPoly) -> DifferentialForm:
    return exterior_derivative(DifferentialForm.scalar(f))


def lie_derivative(v: MultiVectorField, alpha: DifferentialForm,
                   contraction: Callable = contract) -> DifferentialForm:
    """L_v alpha = d iota_v alpha - (-1)^|v| iota_v d alpha."""
    first = exterior_derivative(contraction(v, alpha))
    second = contraction(v, exterior_derivative(alpha))
    if not second.coeffs:
        return first
    if not first.coeffs:
        return second if v.degree % 2 else -second
    return first + second if v.degree % 2 else first - second


def apply_vector(X: MultiVectorField, f: ExpPoly) -> ExpPoly:
    """X(f) for a vector field X."""
    out = ExpPoly.zero(f.dim)
    for (i,), c in X.coeffs.items():
        d = f.partial(i)
        if d:
            out = out + c * d
    return out


def _bracket_vectors(X: MultiVectorField, Y: MultiVectorField) -> MultiVectorField:
    m = X.dim
    out: dict = {}
    for i in range(1, m + 1):
        yi = Y.coeffs.get((i,))
        xi = X.coeffs.get((i,))
        acc = ExpPoly.zero(m)
        if yi is not None:
            acc = acc + apply_vector(X, yi)
        if xi is not None:
            acc = acc - apply_vector(Y, xi)
        if acc:
            out[(i,)] = acc
    return MultiVectorField(m, 1, out, _trusted=True)


def _bracket_vector_bivector(X: MultiVectorField, w: MultiVectorField) -> MultiVectorField:
    # [X, f d_i^d_j] = X(f) d_i^d_j + f ([X,d_i]^d_j + d_i^[X,d_j]),
    # with [X, d_i] = -sum_k d_i(X^k) d_k.
    m = X.dim
    bracket_with_basis = {}
    for i in range(1, m + 1):
        comps = {}
        for (k,), xk in X.coeffs.items():
            d = xk.partial(i)
            if d:
                comps[(k,)] = -d
        bracket_with_basis[i] = MultiVectorField(m, 1, comps, _trusted=True)
    out = MultiVectorField.zero(m, 2)
    for (i, j), f in w.coeffs.items():
        xf = apply_vector(X, f)
        if xf:
            out = out + MultiVectorField(m, 2, {(i, j): xf}, _trusted=True)
        di = MultiVectorField.basis(m, i)
        dj = MultiVectorField.basis(m, j)
        inner = wedge(bracket_with_basis[i], dj) + wedge(di, bracket_with_basis[j])
        if inner:
            out = out + inner * f
    return out


def schouten(u: MultiVectorField, w: MultiVectorField) -> MultiVectorField:
    """Schouten bracket for the degree pairs (1,1), (1,2) and (2,1)."""
    if not isinstance(u, MultiVectorField) or not isinstance(w, MultiVectorField):
        raise TypeError("schouten expects multivector fields")
    if u.dim != w.dim:
        raise ValueError(f"chart dimension mismatch: {u.dim} vs {w.dim}")
    du = u.degree if u.coeffs else None
    dw = w.degree if w.coeffs else None
    pair = (u.degree, w.degree)
    if pair not in ((1, 1), (1, 2), (2, 1)):
        raise ValueError(f"unsupported degree pair {pair} for the Schouten bracket")
    if du is None or dw is None:
        return MultiVectorField.zero(u.dim, u.degree + w.degree - 1)
    if pair == (1, 1):
        return _bracket_vectors(u, w)
    if pair == (1, 2):
        return _bracket_vector_bivector(u, w)
    return -_bracket_vector_bivector(w, u)


# -- literals ---------------------------------------------------------------

_BASIS_RE = re.compile(r"^(?:(dq)\d+|(e)\d+)(?:\^(?:dq|e)\d+)*$")


def _split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at separators outside parentheses; returns (separator, chunk) pairs."""
    out, depth, cur, sep = [], 0, [], ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps and (seps != "+-" or prev not in ("*", "/", "^", "(")):
            out.append((sep, "".join(cur)))
            cur, sep = [], ch
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    out.append((sep, "".join(cur)))
    return out


def parse_field(text: str, dim: int, kind: str | None = None, degree: int | None = None) -> _Graded:
    """Parse a literal like ``"q1*dq2 - exp(q1)*dq1^dq3"`` or ``"(q1+q2)*e1"``.

    ``kind`` is ``"vector"`` or ``"form"``; it is inferred from the basis
    symbols when omitted. ``"0"`` needs ``kind`` and ``degree``.
    """
    if not isinstance(text, str):
        raise ParseError(f"field literal must be a string, got {type(text).__name__}")
    src = text.replace("−", "-").strip()
    if not src:
        raise ParseError("empty field literal")
    if kind is None:
        if re.search(r"dq\d", src):
            kind = "form"
        elif re.search(r"(?<![a-z])e\d", src):
            kind = "vector"
    cls = {"vector": MultiVectorField, "form": DifferentialForm}.get(kind or "")
    if src == "0":
        if cls is None or degree is None:
            raise ParseError("a zero literal needs an explicit kind and degree")
        return cls.zero(dim, degree)
    terms: list[tuple[int, ExpPoly, tuple]] = []
    for sep, chunk in _split_top(src, "+-"):
        chunk = chunk.strip()
        if not chunk:
            if sep == "" and not terms:
                continue
            raise ParseError(f"empty term in field literal {text!r}")
        sign = -1 if sep == "-" else 1
        factors = [f.strip() for _, f in _split_top(chunk, "*")]
        basis = [f for f in factors if _BASIS_RE.match(f.replace(" ", ""))]
        coef_parts = [f for f in factors if not _BASIS_RE.match(f.replace(" ", ""))]
        if len(basis) > 1:
            raise ParseError(f"term {chunk!r} has more than one basis factor")
        idx: tuple = ()
        if basis:
            symbols = basis[0].replace(" ", "").split("^")
            letters = {re.match(r"[a-z]+", s).group(0) for s in symbols}
            expected = "dq" if kind == "form" else "e"
            if letters != {expected}:
                raise ParseError(f"basis {basis[0]!r} does not match a {kind} literal")
            idx = tuple(int(re.sub(r"[a-z]+", "", s)) for s in symbols)
            if any(not 1 <= i <= dim for i in idx):
                raise ParseError(f"basis {basis[0]!r} outside the chart of dimension {dim}")
        coef = parse_expr("*".join(coef_parts), dim) if coef_parts else ExpPoly.const(dim, 1)
        terms.append((sign, coef, idx))
    degrees = {len(idx) for _, _, idx in terms}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) != 1:
        raise ParseError(f"field literal {text!r} mixes degrees {sorted(degrees)}")
    (deg,) = degrees
    if cls is None:
        if deg != 0:
            raise ParseError(f"cannot tell whether {text!r} is a vector or a form")
        cls = DifferentialForm
    acc: dict = {}
    for sign, coef, idx in terms:
        ss = _sort_sign(idx)
        if ss is None:
            continue
        s, key = ss
        val = coef if sign * s > 0 else -coef
        acc[key] = acc[key] + val if key in acc else val
    return cls(dim, deg, acc)


def vector(text: str, dim: int, degree: int | None = None) -> MultiVectorField:
    return parse_field(text, dim, "vector", degree)


def form(text: str, dim: int, degree: int | None = None) -> DifferentialForm:
    return parse_field(text, dim, "form", degree)


# -- random generation --------------------------------------------------------

def random_function(rng: random.Random, dim: int, max_terms: int = 2) -> ExpPoly:
    """Random ExpPoly: monomial degree <= 2, at most one exponential, coefficients in -2..2."""
    acc: dict = {}
    for _ in range(rng.randint(0, max_terms)):
        c = rng.choice([-2, -1, 1, 2])
        alpha = [0] * dim
        for _ in range(rng.randint(0, 2)):
            alpha[rng.randrange(dim)] += 1
        ell = [0] * dim
        if rng.random() < 0.3:
            ell[rng.randrange(dim)] = rng.choice([-2, -1, 1, 2])
        key = (tuple(ell), tuple(alpha))
        acc[key] = acc.get(key, 0) + c
    return ExpPoly(dim, acc)


def _random_graded(cls, rng: random.Random, dim: int, degree: int, density: float = 0.7):
    coeffs = {}
    for idx in combinations(range(1, dim + 1), degree):
        if rng.random() < density:
            f = random_function(rng, dim)
            if f:
                coeffs[idx] = f
    return cls(dim, degree, coeffs)


def random_vector_field(rng: random.Random, dim: int) -> MultiVectorField:
    return _random_graded(MultiVectorField, rng, dim, 1)


def random_bivector(rng: random.Random, dim: int) -> MultiVectorField:
    return _random_graded(MultiVectorField, rng, dim, 2)


def random_form(rng: random.Random, dim: int, degree: int) -> DifferentialForm:
    return _random_graded(DifferentialForm, rng, dim, degree)


# -- the field Lie 2-algebra --------------------------------------------------

class FieldAlgebra:
    """Bivector and vector fields with the Schouten brackets.

    Degree -1 elements are bivector fields, degree 0 elements are vector
    fields. ``l1`` and ``l3`` vanish, ``l2p`` is the vector field bracket and
    the stored mixed bracket is ``l2m(w, X) = [w, X]_S = -[X, w]_S``.
    """

    def __init__(self, dim: int):
        self.dim = dim

    def l1(self, w: MultiVectorField) -> MultiVectorField:
        return MultiVectorField.zero(self.dim, 1)

    def l2p(self, X: MultiVectorField, Y: MultiVectorField) -> MultiVectorField:
        return schouten(X, Y)

    def l2m(self, w: MultiVectorField, X: MultiVectorField) -> MultiVectorField:
        return schouten(w, X)

    def l3(self, X, Y, Z) -> MultiVectorField:
        return MultiVectorField.zero(self.dim, 2)

    @staticmethod
    def is_zero(e) -> bool:
        return e.is_zero()

    @staticmethod
    def fmt(e) -> str:
        return str(e)


# -- Cartan identities --------------------------------------------------------

def cartan_selfcheck(chart_dim: int, seed: int, trials: int, contraction: Callable = contract):
    """Check the seven commutation rules between iota, L and the Schouten bracket.

    Every trial draws vector fields X, Y, a bivector v and a form alpha of
    random degree, then compares both sides applied to alpha exactly.
    ``contraction`` replaces iota everywhere (including inside L) and exists
    for mutation testing.
    """
    from .report import Report, run_check

    if chart_dim < 3:
        raise ValueError("the Cartan self check needs a chart of dimension >= 3")
    m = chart_dim
    rng = random.Random(seed)
    samples = []
    for _ in range(trials):
        X = random_vector_field(rng, m)
        Y = random_vector_field(rng, m)
        v = random_bivector(rng, m)
        alpha = random_form(rng, m, rng.randint(0, 3))
        samples.append((X, Y, v, alpha))

    i = contraction

    def L(u, a):
        return lie_derivative(u, a, contraction=contraction)

    def ident1(X, Y, v, a):
        return [i(X, i(Y, a)) + i(Y, i(X, a))]

    def ident2(X, Y, v, a):
        return [i(X, i(v, a)) - i(v, i(X, a))]

    def ident3(X, Y, v, a):
        return [L(X, i(Y, a)) - i(Y, L(X, a)) - i(schouten(X, Y), a)]

    def ident4(X, Y, v, a):
        return [L(X, i(v, a)) - i(v, L(X, a)) - i(schouten(X, v), a)]

    def ident5(X, Y, v, a):
        return [L(X, L(Y, a)) - L(Y, L(X, a)) - L(schouten(X, Y), a)]

    def ident6(X, Y, v, a):
        return [L(v, L(X, a)) - L(X, L(v, a)) - L(schouten(v, X), a)]

    def ident7(X, Y, v, a):
        direct = L(wedge(X, Y), a)
        bracket = i(schouten(X, Y), a)
        return [
            L(Y, i(X, a)) - i(Y, L(X, a)) - direct,
            i(X, L(Y, a)) - i(Y, L(X, a)) - bracket - direct,
            L(Y, i(X, a)) - L(X, i(Y, a)) + bracket - direct,
        ]

    checks = [
        ("i_X i_Y + i_Y i_X = 0", ident1),
        ("i_X i_v - i_v i_X = 0", ident2),
        ("L_X i_Y - i_Y L_X = i_[X,Y]", ident3),
        ("L_X i_v - i_v L_X = i_[X,v]", ident4),
        ("L_X L_Y - L_Y L_X = L_[X,Y]", ident5),
        ("L_v L_X - L_X L_v = L_[v,X]", ident6),
        ("L_(X^Y) three expressions", ident7),
    ]
    rep = Report("cartan")
    rep.data = {"chart_dim": m, "seed": seed, "trials": trials}

    def is_zero(defects):
        return all(d.is_zero() for d in defects)

    for name, fn in checks:
        def evaluate(k, fn=fn):
            return fn(*samples[k])

        def describe(k, defects):
            X, Y, v, a = samples[k]
            return {"trial": k, "X": str(X), "Y": str(Y), "v": str(v), "alpha": str(a),
                    "defect": [str(d) for d in defects]}
        rep.add(run_check(name, range(trials), evaluate, is_zero, describe))
    return rep


# -- endomorphisms of functions plus 1-forms ----------------------------------

class Endo:
    """Linear operator on pairs (f, alpha) of a function and a 1-form.

    Degree 0 operators act diagonally as ``(s_f, s_alpha)``; degree -1
    operators send ``(f, alpha)`` to ``(phi(alpha), 0)``. Sums and composites
    are formed lazily, equality is only ever tested on sample pairs.
    """

    __slots__ = ("fn", "label")

    def __init__(self, fn: Callable[[ObservablePair], ObservablePair], label: str = ""):
        self.fn = fn
        self.label = label

    def __call__(self, obs: ObservablePair) -> ObservablePair:
        return self.fn(obs)

    def __add__(self, other: "Endo") -> "Endo":
        return Endo(lambda o: _pair_add(self(o), other(o)), f"({self.label} + {other.label})")

    def __neg__(self) -> "Endo":
        return Endo(lambda o: _pair_neg(self(o)), f"-{self.label}")

    def __sub__(self, other: "Endo") -> "Endo":
        return self + (-other)

    def compose(self, other: "Endo") -> "Endo":
        return Endo(lambda o: self(other(o)), f"{self.label}.{other.label}")


def _pair_add(p: ObservablePair, q: ObservablePair) -> ObservablePair:
    return ObservablePair(p.f + q.f, p.alpha + q.alpha)


def _pair_neg(p: ObservablePair) -> ObservablePair:
    return ObservablePair(-p.f, -p.alpha)


def _zero_pair(dim: int) -> ObservablePair:
    return ObservablePair(ExpPoly.zero(dim), DifferentialForm.zero(dim, 1))


def endo_action(v: MultiVectorField, obs: ObservablePair) -> ObservablePair:
    """Apply the operator attached to a vector or bivector field.

    A vector field X acts by ``(L_X f, L_X alpha)``; a bivector field w sends
    ``(f, alpha)`` to ``(L_w alpha, 0)``, ignoring f.
    """
    if v.dim != obs.f.dim:
        raise ValueError(f"chart dimension mismatch: {v.dim} vs {obs.f.dim}")
    m = v.dim
    if v.degree == 1:
        f_form = lie_derivative(v, DifferentialForm.scalar(obs.f))
        return ObservablePair(f_form.coefficient(()), lie_derivative(v, obs.alpha))
    if v.degree == 2:
        value = lie_derivative(v, obs.alpha)
        return ObservablePair(value.coefficient(()) if value.coeffs else ExpPoly.zero(m),
                              DifferentialForm.zero(m, 1))
    raise ValueError(f"endo_action supports degrees 1 and 2, got {v.degree}")


class EndStructure:
    """The Lie 2-algebra of endomorphisms of functions plus 1-forms.

    ``l1`` and ``l3`` vanish, ``l2p`` is the commutator and the mixed bracket
    is ``l2m(phi, s) = phi.s - s.phi``. Zero tests run on ``samples``.
    ``tau2m_sign`` multiplies the mixed bracket and exists for mutation tests.
    """

    def __init__(self, dim: int, samples, tau2m_sign: int = 1):
        self.dim = dim
        self.samples = list(samples)
        self.tau2m_sign = tau2m_sign
        self._zero = Endo(lambda o: _zero_pair(dim), "0")

    def l1(self, phi):
        return self._zero

    def l2p(self, s, t):
        return s.compose(t) - t.compose(s)

    def l2m(self, phi, s):
        out = phi.compose(s) - s.compose(phi)
        return out if self.tau2m_sign > 0 else -out

    def l3(self, s, t, u):
        return self._zero

    def is_zero(self, e: Endo) -> bool:
        for o in self.samples:
            r = e(o)
            if r.f or r.alpha:
                return False
        return True

    def fmt(self, e: Endo) -> str:
        for o in self.samples:
            r = e(o)
            if r.f or r.alpha:
                return f"({o.f}, {o.alpha}) -> ({r.f}, {r.alpha})"
        return "0"


def endo_of(v: MultiVectorField) -> Endo:
    return Endo(lambda o: endo_action(v, o), f"L[{v}]")


def verify_endo_morphism(chart_dim: int, seed: int, trials: int, tau2m_sign: int = 1):
    """Check that fields act on (functions, 1-forms) by a Lie 2-morphism.

    Each trial samples vector fields X, Y, Z, bivector fields w1, w2 and
    three test pairs (f, alpha); operator identities are compared on the
    test pairs only.
    """
    from .laws import check_morphism
    from .report import CheckResult, Report

    if chart_dim < 3:
        raise ValueError("the endomorphism check needs a chart of dimension >= 3")
    m = chart_dim
    rng = random.Random(seed)
    source = FieldAlgebra(m)
    rep = Report("endomorphism representation")
    rep.data = {"chart_dim": m, "seed": seed, "trials": trials}
    totals = {name: 0 for name in ("A1", "A2", "A3", "A4")}
    failures: dict = {}
    for t in range(trials):
        X = [random_vector_field(rng, m) for _ in range(3)]
        W = [random_bivector(rng, m) for _ in range(2)]
        samples = [ObservablePair(random_function(rng, m), random_form(rng, m, 1)) for _ in range(3)]
        target = EndStructure(m, samples, tau2m_sign)
        sub = check_morphism(source, target, endo_of, endo_of, lambda x, y: target._zero,
                             W, X, ["w1", "w2"], ["X", "Y", "Z"], subject=f"trial {t}")
        for c in sub.checks:
            totals[c.name] += c.checked
            if not c.passed and c.name not in failures:
                w = dict(c.witness)
                w["trial"] = t
                failures[c.name] = w
    for name in ("A1", "A2", "A3", "A4"):
        rep.add(CheckResult(name, name not in failures, totals[name], failures.get(name)))
    return rep
