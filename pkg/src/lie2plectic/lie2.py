"""Finite-dimensional Lie 2-algebras over the rationals.

Structure constants live on basis indices: ``l1`` on degree -1 basis
vectors, ``l2p`` and ``l3`` on strictly increasing index tuples (the other
orders follow by antisymmetry), and the mixed bracket one-sided as
``l2m(a, x)`` with ``l2(x, a) = -l2m(a, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from .laws import check_morphism, check_relations
from .linalg import rank
from .report import CheckResult, Report, run_check
from .ring import ParseError, format_rational, parse_rational
from .schema import InputError, field

__all__ = [
    "Vec",
    "Lie2Algebra",
    "Lie2Morphism",
    "CrossedModule",
    "verify_axioms",
    "classify_flags",
    "structure_flags",
    "verify_morphism",
    "compose",
    "to_crossed_module",
    "from_crossed_module",
    "verify_crossed_module",
    "verify_crossed_module_morphism",
]


class Vec:
    """Coordinate vector of a given degree (-1 or 0) with rational entries."""

    __slots__ = ("deg", "c")

    def __init__(self, deg: int, entries):
        self.deg = deg
        self.c = tuple(Fraction(e) for e in entries)

    @classmethod
    def zero(cls, deg: int, n: int) -> "Vec":
        return cls(deg, (0,) * n)

    @classmethod
    def unit(cls, deg: int, n: int, i: int) -> "Vec":
        return cls(deg, (1 if k == i else 0 for k in range(n)))

    def __add__(self, other: "Vec") -> "Vec":
        if self.deg != other.deg or len(self.c) != len(other.c):
            raise ValueError("adding vectors of different spaces")
        return Vec(self.deg, (a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "Vec") -> "Vec":
        return self + (-other)

    def __neg__(self) -> "Vec":
        return Vec(self.deg, (-a for a in self.c))

    def scale(self, s) -> "Vec":
        return Vec(self.deg, (a * s for a in self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def support(self):
        return [(i, a) for i, a in enumerate(self.c) if a]

    def __eq__(self, other) -> bool:
        return isinstance(other, Vec) and self.deg == other.deg and self.c == other.c

    def __hash__(self):
        return hash((self.deg, self.c))

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i]

    def __repr__(self) -> str:
        return f"Vec({self.deg}, [{', '.join(format_rational(a) for a in self.c)}])"


def _sorted_with_sign(idx: tuple):
    if len(set(idx)) != len(idx):
        return 0, None
    sign, lst = 1, list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


def _clean(table: Mapping) -> dict:
    return {k: v for k, v in table.items() if not v.is_zero()}


class Lie2Algebra:
    """A 2-term graded space with brackets given by structure constants.

    ``l1``: {a index: Vec(0)}; ``l2p``: {(i, j) with i < j: Vec(0)};
    ``l2m``: {(a index, x index): Vec(-1)}; ``l3``: {(i, j, k) increasing: Vec(-1)}.
    Missing entries are zero. Instances are immutable.
    """

    def __init__(self, labels_m1: Sequence[str], labels_0: Sequence[str],
                 l1=None, l2p=None, l2m=None, l3=None, name: str = ""):
        self.labels_m1 = tuple(labels_m1)
        self.labels_0 = tuple(labels_0)
        self.name = name
        all_labels = self.labels_m1 + self.labels_0
        if len(set(all_labels)) != len(all_labels):
            raise ValueError("basis labels must be distinct across both degrees")
        n1, n0 = self.dim_m1, self.dim_0
        self._l1 = _clean(dict(l1 or {}))
        self._l2p = _clean(dict(l2p or {}))
        self._l2m = _clean(dict(l2m or {}))
        self._l3 = _clean(dict(l3 or {}))
        for k, v in self._l1.items():
            if not 0 <= k < n1 or v.deg != 0 or len(v) != n0:
                raise ValueError(f"bad l1 entry for index {k}")
        for k, v in self._l2p.items():
            if len(k) != 2 or not k[0] < k[1] < n0 or v.deg != 0 or len(v) != n0:
                raise ValueError(f"bad l2p entry {k}")
        for k, v in self._l2m.items():
            if not (0 <= k[0] < n1 and 0 <= k[1] < n0) or v.deg != -1 or len(v) != n1:
                raise ValueError(f"bad l2m entry {k}")
        for k, v in self._l3.items():
            if len(k) != 3 or not k[0] < k[1] < k[2] < n0 or v.deg != -1 or len(v) != n1:
                raise ValueError(f"bad l3 entry {k}")

    # -- basic data ---------------------------------------------------------
    @property
    def dim_m1(self) -> int:
        return len(self.labels_m1)

    @property
    def dim_0(self) -> int:
        return len(self.labels_0)

    def basis_m1(self) -> list[Vec]:
        return [Vec.unit(-1, self.dim_m1, i) for i in range(self.dim_m1)]

    def basis_0(self) -> list[Vec]:
        return [Vec.unit(0, self.dim_0, i) for i in range(self.dim_0)]

    def zero(self, deg: int) -> Vec:
        return Vec.zero(deg, self.dim_m1 if deg == -1 else self.dim_0)

    def index(self, label: str) -> tuple[int, int]:
        """(degree, index) of a basis label."""
        if label in self.labels_m1:
            return -1, self.labels_m1.index(label)
        if label in self.labels_0:
            return 0, self.labels_0.index(label)
        raise KeyError(label)

    def vec(self, coords: Mapping[str, object]) -> Vec:
        """Vector from {label: rational}; all labels must share a degree."""
        degs = {self.index(lab)[0] for lab in coords}
        if len(degs) > 1:
            raise ValueError("labels from both degrees in one vector")
        deg = degs.pop() if degs else 0
        out = [Fraction(0)] * (self.dim_m1 if deg == -1 else self.dim_0)
        for lab, c in coords.items():
            out[self.index(lab)[1]] += Fraction(c)
        return Vec(deg, out)

    # -- structure constants on basis indices ------------------------------
    def l1_entry(self, a: int) -> Vec:
        return self._l1.get(a) or self.zero(0)

    def l2p_entry(self, i: int, j: int) -> Vec:
        sign, key = _sorted_with_sign((i, j))
        if not sign:
            return self.zero(0)
        v = self._l2p.get(key)
        if v is None:
            return self.zero(0)
        return v if sign > 0 else -v

    def l2m_entry(self, a: int, i: int) -> Vec:
        return self._l2m.get((a, i)) or self.zero(-1)

    def l3_entry(self, i: int, j: int, k: int) -> Vec:
        sign, key = _sorted_with_sign((i, j, k))
        if not sign:
            return self.zero(-1)
        v = self._l3.get(key)
        if v is None:
            return self.zero(-1)
        return v if sign > 0 else -v

    @property
    def tables(self) -> dict:
        return {"l1": dict(self._l1), "l2p": dict(self._l2p), "l2m": dict(self._l2m), "l3": dict(self._l3)}

    # -- multilinear brackets -----------------------------------------------
    def l1(self, a: Vec) -> Vec:
        out = self.zero(0)
        for i, c in a.support():
            e = self._l1.get(i)
            if e is not None:
                out = out + e.scale(c)
        return out

    def l2p(self, x: Vec, y: Vec) -> Vec:
        out = self.zero(0)
        for (i, ci), (j, cj) in product(x.support(), y.support()):
            if i != j:
                out = out + self.l2p_entry(i, j).scale(ci * cj)
        return out

    def l2m(self, a: Vec, x: Vec) -> Vec:
        out = self.zero(-1)
        for (i, ci), (j, cj) in product(a.support(), x.support()):
            e = self._l2m.get((i, j))
            if e is not None:
                out = out + e.scale(ci * cj)
        return out

    def l2(self, x: Vec, a: Vec) -> Vec:
        """Mixed bracket with the degree 0 argument first."""
        return -self.l2m(a, x)

    def l3(self, x: Vec, y: Vec, z: Vec) -> Vec:
        out = self.zero(-1)
        if not self._l3:
            return out
        for (i, ci), (j, cj), (k, ck) in product(x.support(), y.support(), z.support()):
            if i != j and j != k and i != k:
                out = out + self.l3_entry(i, j, k).scale(ci * cj * ck)
        return out

    @staticmethod
    def is_zero(v: Vec) -> bool:
        return v.is_zero()

    def fmt(self, v: Vec) -> dict:
        labels = self.labels_m1 if v.deg == -1 else self.labels_0
        return {labels[i]: format_rational(c) for i, c in v.support()}

    def l1_matrix(self) -> list[list[Fraction]]:
        """Matrix of l1 with rows indexed by degree 0, columns by degree -1."""
        cols = [self.l1_entry(a).c for a in range(self.dim_m1)]
        return [[cols[a][i] for a in range(self.dim_m1)] for i in range(self.dim_0)]

    # -- comparison and serialization ---------------------------------------
    def same_structure(self, other: "Lie2Algebra") -> bool:
        return (self.labels_m1 == other.labels_m1 and self.labels_0 == other.labels_0
                and self.tables == other.tables)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lie2Algebra) and self.same_structure(other)

    def __hash__(self):
        return hash((self.labels_m1, self.labels_0))

    def to_dict(self) -> dict:
        def out(v: Vec):
            return self.fmt(v)
        L0, L1 = self.labels_0, self.labels_m1
        doc = {
            "basis_gm1": list(L1),
            "basis_g0": list(L0),
            "l1": [{"in": [L1[a]], "out": out(v)} for a, v in sorted(self._l1.items())],
            "l2p": [{"in": [L0[i], L0[j]], "out": out(v)} for (i, j), v in sorted(self._l2p.items())],
            "l2m": [{"in": [L1[a], L0[i]], "out": out(v)} for (a, i), v in sorted(self._l2m.items())],
            "l3": [{"in": [L0[i], L0[j], L0[k]], "out": out(v)} for (i, j, k), v in sorted(self._l3.items())],
        }
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping, path: str = "algebra") -> "Lie2Algebra":
        if not isinstance(doc, Mapping):
            raise InputError("algebra must be a JSON object", path)
        L1 = field(doc, "basis_gm1", path, list, default=[])
        L0 = field(doc, "basis_g0", path, list, default=[])
        for key, labs in (("basis_gm1", L1), ("basis_g0", L0)):
            for n, lab in enumerate(labs):
                if not isinstance(lab, str) or not lab:
                    raise InputError("basis labels must be non-empty strings", f"{path}.{key}[{n}]")
        if len(set(L1 + L0)) != len(L1 + L0):
            raise InputError("basis labels must be distinct across both degrees", path)
        where = {lab: (-1, i) for i, lab in enumerate(L1)}
        where.update({lab: (0, i) for i, lab in enumerate(L0)})

        def parse_out(entry, epath, deg):
            raw = field(entry, "out", epath, dict)
            labels = L1 if deg == -1 else L0
            vals = [Fraction(0)] * len(labels)
            for lab, val in raw.items():
                if lab not in labels:
                    raise InputError(f"output label {lab!r} is not a degree {deg} basis label", f"{epath}.out")
                try:
                    vals[labels.index(lab)] += parse_rational(val)
                except ParseError as exc:
                    raise InputError(str(exc), f"{epath}.out.{lab}") from exc
            return Vec(deg, vals)

        def entries(key):
            raw = field(doc, key, path, list, default=[])
            for n, entry in enumerate(raw):
                epath = f"{path}.{key}[{n}]"
                if not isinstance(entry, Mapping):
                    raise InputError("entry must be an object", epath)
                ins = field(entry, "in", epath, list)
                for lab in ins:
                    if lab not in where:
                        raise InputError(f"unknown basis label {lab!r}", f"{epath}.in")
                yield epath, ins, entry

        tables: dict = {"l1": {}, "l2p": {}, "l2m": {}, "l3": {}}

        def store(table, key, vec, epath):
            if key in tables[table]:
                raise InputError("duplicate entry", epath)
            tables[table][key] = vec

        for epath, ins, entry in entries("l1"):
            if len(ins) != 1 or where[ins[0]][0] != -1:
                raise InputError("l1 takes one degree -1 label", f"{epath}.in")
            store("l1", where[ins[0]][1], parse_out(entry, epath, 0), epath)
        for epath, ins, entry in entries("l2p"):
            if len(ins) != 2 or any(where[lab][0] != 0 for lab in ins):
                raise InputError("l2p takes two degree 0 labels", f"{epath}.in")
            vec = parse_out(entry, epath, 0)
            sign, key = _sorted_with_sign(tuple(where[lab][1] for lab in ins))
            if not sign:
                if not vec.is_zero():
                    raise InputError("l2p of a basis vector with itself must vanish", epath)
                continue
            store("l2p", key, vec if sign > 0 else -vec, epath)
        for epath, ins, entry in entries("l2m"):
            degs = [where[lab][0] for lab in ins]
            if sorted(degs) != [-1, 0]:
                raise InputError("l2m takes one degree -1 and one degree 0 label", f"{epath}.in")
            vec = parse_out(entry, epath, -1)
            if degs[0] == 0:
                ins, vec = [ins[1], ins[0]], -vec
            store("l2m", (where[ins[0]][1], where[ins[1]][1]), vec, epath)
        for epath, ins, entry in entries("l3"):
            if len(ins) != 3 or any(where[lab][0] != 0 for lab in ins):
                raise InputError("l3 takes three degree 0 labels", f"{epath}.in")
            vec = parse_out(entry, epath, -1)
            sign, key = _sorted_with_sign(tuple(where[lab][1] for lab in ins))
            if not sign:
                if not vec.is_zero():
                    raise InputError("l3 with a repeated argument must vanish", epath)
                continue
            store("l3", key, vec if sign > 0 else -vec, epath)
        return cls(L1, L0, name=str(doc.get("name", "")), **tables)

    @classmethod
    def build(cls, gm1: Sequence[str], g0: Sequence[str], l1=None, l2p=None, l2m=None, l3=None,
              name: str = "") -> "Lie2Algebra":
        """Convenience constructor from label-keyed tables.

        ``l2p={("x1", "x2"): {"x2": -1}}``; the mixed bracket key may list
        its arguments in either order, the value is then ``l2`` in that order.
        """
        def conv(table, arity):
            out = []
            for key, val in (table or {}).items():
                ins = [key] if isinstance(key, str) else list(key)
                out.append({"in": ins, "out": {k: str(Fraction(v)) for k, v in val.items()}})
            return out
        doc = {"basis_gm1": list(gm1), "basis_g0": list(g0), "l1": conv(l1, 1), "l2p": conv(l2p, 2),
               "l2m": conv(l2m, 2), "l3": conv(l3, 3), "name": name}
        return cls.from_dict(doc)

    def replace(self, **tables) -> "Lie2Algebra":
        data = self.tables
        data.update(tables)
        return Lie2Algebra(self.labels_m1, self.labels_0, name=self.name, **data)

    def __repr__(self) -> str:
        return f"Lie2Algebra({self.name or '?'}: dim {self.dim_m1} + {self.dim_0})"


def verify_axioms(L: Lie2Algebra) -> Report:
    """R1-R6 on all basis tuples, with the first failing tuple as witness."""
    return check_relations(L, L.basis_m1(), L.basis_0(), L.labels_m1, L.labels_0,
                           subject=f"axioms {L.name}".strip())


def _l1_l3_vanishes(L: Lie2Algebra) -> bool:
    X = L.basis_0()
    return all(L.l1(L.l3(*(X[k] for k in c))).is_zero() for c in combinations(range(L.dim_0), 3))


def classify_flags(L: Lie2Algebra) -> dict:
    X, A = L.basis_0(), L.basis_m1()
    l3_on_im = all(L.l3(L.l1(a), x, y).is_zero() for a in A for x, y in combinations(X, 2))
    return {
        "skeletal": not L.tables["l1"],
        "strict": not L.tables["l3"],
        "g0_is_lie": _l1_l3_vanishes(L),
        "l3_vanishes_on_im_l1": l3_on_im,
    }


def structure_flags(L: Lie2Algebra) -> str:
    """Shorthand of the classification table: ``"S0"`` or ``"S" + three digits``."""
    if not _l1_l3_vanishes(L):
        return "S0"
    t = L.tables
    return "S" + ("1" if t["l1"] else "2") + ("3" if t["l2p"] or t["l2m"] else "4") + ("5" if t["l3"] else "6")


@dataclass
class Lie2Morphism:
    """Linear data of a Lie 2-morphism between finite algebras.

    ``F10``: {source degree 0 index: Vec(0) of target}; ``F1m1``: {source
    degree -1 index: Vec(-1) of target}; ``F2``: {(i, j) with i < j: Vec(-1)
    of target}. Missing entries are zero.
    """

    source: Lie2Algebra
    target: Lie2Algebra
    F10: dict = dc_field(default_factory=dict)
    F1m1: dict = dc_field(default_factory=dict)
    F2: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        S, T = self.source, self.target
        for k, v in self.F10.items():
            if not 0 <= k < S.dim_0 or v.deg != 0 or len(v) != T.dim_0:
                raise ValueError(f"bad F10 column {k}")
        for k, v in self.F1m1.items():
            if not 0 <= k < S.dim_m1 or v.deg != -1 or len(v) != T.dim_m1:
                raise ValueError(f"bad F1m1 column {k}")
        for k, v in self.F2.items():
            if len(k) != 2 or not 0 <= k[0] < k[1] < S.dim_0 or v.deg != -1 or len(v) != T.dim_m1:
                raise ValueError(f"bad F2 entry {k}")
        self.F10 = _clean(self.F10)
        self.F1m1 = _clean(self.F1m1)
        self.F2 = _clean(self.F2)

    @classmethod
    def identity(cls, L: Lie2Algebra) -> "Lie2Morphism":
        return cls(L, L, {i: v for i, v in enumerate(L.basis_0())}, {i: v for i, v in enumerate(L.basis_m1())})

    def f10(self, x: Vec) -> Vec:
        out = self.target.zero(0)
        for i, c in x.support():
            e = self.F10.get(i)
            if e is not None:
                out = out + e.scale(c)
        return out

    def f1m1(self, a: Vec) -> Vec:
        out = self.target.zero(-1)
        for i, c in a.support():
            e = self.F1m1.get(i)
            if e is not None:
                out = out + e.scale(c)
        return out

    def f2_entry(self, i: int, j: int) -> Vec:
        sign, key = _sorted_with_sign((i, j))
        v = self.F2.get(key) if sign else None
        if v is None:
            return self.target.zero(-1)
        return v if sign > 0 else -v

    def f2(self, x: Vec, y: Vec) -> Vec:
        out = self.target.zero(-1)
        for (i, ci), (j, cj) in product(x.support(), y.support()):
            if i != j:
                out = out + self.f2_entry(i, j).scale(ci * cj)
        return out

    @property
    def is_strict(self) -> bool:
        return not self.F2

    def same_data(self, other: "Lie2Morphism") -> bool:
        return (self.F10, self.F1m1, self.F2) == (other.F10, other.F1m1, other.F2)

    def to_dict(self) -> dict:
        S, T = self.source, self.target
        return {
            "F10": {S.labels_0[i]: T.fmt(v) for i, v in sorted(self.F10.items())},
            "F1m1": {S.labels_m1[i]: T.fmt(v) for i, v in sorted(self.F1m1.items())},
            "F2": [{"in": [S.labels_0[i], S.labels_0[j]], "out": T.fmt(v)} for (i, j), v in sorted(self.F2.items())],
        }

    @classmethod
    def from_dict(cls, doc: Mapping, source: Lie2Algebra, target: Lie2Algebra, path: str = "morphism"):
        def vec(raw, deg, p):
            if not isinstance(raw, Mapping):
                raise InputError("expected an object of label: rational", p)
            try:
                v = target.vec({k: parse_rational(x) for k, x in raw.items()})
            except KeyError as exc:
                raise InputError(f"unknown target label {exc.args[0]!r}", p) from exc
            except ParseError as exc:
                raise InputError(str(exc), p) from exc
            if v.is_zero():
                return target.zero(deg)
            if v.deg != deg:
                raise InputError(f"expected degree {deg} target labels", p)
            return v

        F10, F1m1, F2 = {}, {}, {}
        for lab, raw in field(doc, "F10", path, dict, default={}).items():
            deg, i = _label(source, lab, f"{path}.F10")
            if deg != 0:
                raise InputError("F10 is indexed by degree 0 labels", f"{path}.F10.{lab}")
            F10[i] = vec(raw, 0, f"{path}.F10.{lab}")
        for lab, raw in field(doc, "F1m1", path, dict, default={}).items():
            deg, i = _label(source, lab, f"{path}.F1m1")
            if deg != -1:
                raise InputError("F1m1 is indexed by degree -1 labels", f"{path}.F1m1.{lab}")
            F1m1[i] = vec(raw, -1, f"{path}.F1m1.{lab}")
        for n, entry in enumerate(field(doc, "F2", path, list, default=[])):
            p = f"{path}.F2[{n}]"
            ins = field(entry, "in", p, list)
            if len(ins) != 2:
                raise InputError("F2 takes two degree 0 labels", p)
            idx = [_label(source, lab, p) for lab in ins]
            if any(d != 0 for d, _ in idx):
                raise InputError("F2 takes two degree 0 labels", p)
            v = vec(field(entry, "out", p, dict), -1, f"{p}.out")
            sign, key = _sorted_with_sign((idx[0][1], idx[1][1]))
            if sign:
                F2[key] = v if sign > 0 else -v
        return cls(source, target, F10, F1m1, F2)


def _label(L: Lie2Algebra, lab, path):
    try:
        return L.index(lab)
    except KeyError:
        raise InputError(f"unknown basis label {lab!r}", path) from None


def verify_morphism(F: Lie2Morphism, names: Sequence[str] = ("A1", "A2", "A3", "A4")) -> Report:
    S = F.source
    return check_morphism(S, F.target, F.f10, F.f1m1, F.f2, S.basis_m1(), S.basis_0(),
                          S.labels_m1, S.labels_0, subject="morphism", names=names)


def compose(Fp: Lie2Morphism, F: Lie2Morphism) -> Lie2Morphism:
    """``Fp o F``: linear parts compose, ``F2'' = F2'(F10 x, F10 y) + F1m1'(F2(x, y))``."""
    if F.target is not Fp.source and not F.target.same_structure(Fp.source):
        raise ValueError("cannot compose: target of the first morphism is not the source of the second")
    S = F.source
    X = S.basis_0()
    F10 = {i: Fp.f10(F.f10(x)) for i, x in enumerate(X)}
    F1m1 = {i: Fp.f1m1(F.f1m1(a)) for i, a in enumerate(S.basis_m1())}
    F2 = {(i, j): Fp.f2(F.f10(X[i]), F.f10(X[j])) + Fp.f1m1(F.f2(X[i], X[j]))
          for i, j in combinations(range(S.dim_0), 2)}
    return Lie2Morphism(S, Fp.target, F10, F1m1, F2)


# -- crossed modules ------------------------------------------------------------

@dataclass
class CrossedModule:
    """Lie algebra crossed module ``(g, h, tau, r)`` by structure constants.

    ``g_bracket[(i, j)]`` and ``h_bracket[(a, b)]`` hold brackets of basis
    vectors for ``i < j`` (resp. ``a < b``); ``tau[a]`` is the image of the
    h basis vector ``a`` in g; ``r[(i, a)]`` is ``r(g_i)(h_a)`` in h.
    """

    labels_g: tuple
    labels_h: tuple
    g_bracket: dict = dc_field(default_factory=dict)
    h_bracket: dict = dc_field(default_factory=dict)
    tau: dict = dc_field(default_factory=dict)
    r: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.labels_g, self.labels_h = tuple(self.labels_g), tuple(self.labels_h)
        self.g_bracket, self.h_bracket = _clean(self.g_bracket), _clean(self.h_bracket)
        self.tau, self.r = _clean(self.tau), _clean(self.r)

    @property
    def dim_g(self) -> int:
        return len(self.labels_g)

    @property
    def dim_h(self) -> int:
        return len(self.labels_h)

    def g_zero(self) -> Vec:
        return Vec.zero(0, self.dim_g)

    def h_zero(self) -> Vec:
        return Vec.zero(-1, self.dim_h)

    def bracket_g(self, x: Vec, y: Vec) -> Vec:
        return _bilinear(self.g_bracket, x, y, self.g_zero(), antisym=True)

    def bracket_h(self, a: Vec, b: Vec) -> Vec:
        return _bilinear(self.h_bracket, a, b, self.h_zero(), antisym=True)

    def tau_of(self, a: Vec) -> Vec:
        out = self.g_zero()
        for i, c in a.support():
            e = self.tau.get(i)
            if e is not None:
                out = out + e.scale(c)
        return out

    def act(self, x: Vec, a: Vec) -> Vec:
        """r(x)(a)."""
        return _bilinear(self.r, x, a, self.h_zero(), antisym=False)

    def same_data(self, other: "CrossedModule") -> bool:
        return (self.labels_g, self.labels_h, self.g_bracket, self.h_bracket, self.tau, self.r) == (
            other.labels_g, other.labels_h, other.g_bracket, other.h_bracket, other.tau, other.r)


def _bilinear(table: dict, u: Vec, w: Vec, zero: Vec, antisym: bool) -> Vec:
    out = zero
    for (i, ci), (j, cj) in product(u.support(), w.support()):
        if antisym:
            if i == j:
                continue
            e = table.get((i, j)) if i < j else table.get((j, i))
            if e is None:
                continue
            if i > j:
                e = -e
        else:
            e = table.get((i, j))
            if e is None:
                continue
        out = out + e.scale(ci * cj)
    return out


def verify_crossed_module(CM: CrossedModule) -> Report:
    """Lie algebra axioms of g and h, tau and r morphisms, r(x) derivations, the two compatibilities."""
    rep = Report("crossed module")
    G = [Vec.unit(0, CM.dim_g, i) for i in range(CM.dim_g)]
    H = [Vec.unit(-1, CM.dim_h, i) for i in range(CM.dim_h)]
    lg, lh = CM.labels_g, CM.labels_h

    def desc(kinds):
        def inner(case, defect):
            labs = [lg[k] if kind == "g" else lh[k] for kind, k in zip(kinds, case)]
            labels = lg if defect.deg == 0 else lh
            return {"inputs": labs, "defect": {labels[i]: format_rational(c) for i, c in defect.support()}}
        return inner

    zero = Vec.is_zero

    def jac(br, E):
        def ev(case):
            x, y, z = (E[k] for k in case)
            return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)
        return ev
    rep.add(run_check("g Jacobi", combinations(range(CM.dim_g), 3), jac(CM.bracket_g, G), zero, desc("ggg")))
    rep.add(run_check("h Jacobi", combinations(range(CM.dim_h), 3), jac(CM.bracket_h, H), zero, desc("hhh")))

    def tau_morph(case):
        a, b = H[case[0]], H[case[1]]
        return CM.tau_of(CM.bracket_h(a, b)) - CM.bracket_g(CM.tau_of(a), CM.tau_of(b))
    rep.add(run_check("tau Lie morphism", combinations(range(CM.dim_h), 2), tau_morph, zero, desc("hh")))

    def r_morph(case):
        x, y, a = G[case[0]], G[case[1]], H[case[2]]
        return CM.act(CM.bracket_g(x, y), a) - (CM.act(x, CM.act(y, a)) - CM.act(y, CM.act(x, a)))
    cases = ((i, j, a) for i, j in combinations(range(CM.dim_g), 2) for a in range(CM.dim_h))
    rep.add(run_check("r Lie morphism", cases, r_morph, zero, desc("ggh")))

    def r_der(case):
        x, a, b = G[case[0]], H[case[1]], H[case[2]]
        return CM.act(x, CM.bracket_h(a, b)) - CM.bracket_h(CM.act(x, a), b) - CM.bracket_h(a, CM.act(x, b))
    cases = ((i, a, b) for i in range(CM.dim_g) for a, b in combinations(range(CM.dim_h), 2))
    rep.add(run_check("r derivation", cases, r_der, zero, desc("ghh")))

    def equiv(case):
        x, a = G[case[0]], H[case[1]]
        return CM.tau_of(CM.act(x, a)) - CM.bracket_g(x, CM.tau_of(a))
    rep.add(run_check("tau(r(x)a) = [x, tau a]", product(range(CM.dim_g), range(CM.dim_h)), equiv, zero, desc("gh")))

    def peiffer(case):
        a, b = H[case[0]], H[case[1]]
        return CM.act(CM.tau_of(a), b) - CM.bracket_h(a, b)
    rep.add(run_check("r(tau a)b = [a, b]", product(range(CM.dim_h), repeat=2), peiffer, zero, desc("hh")))
    return rep


def to_crossed_module(L: Lie2Algebra) -> CrossedModule:
    """h = degree -1 with ``[a, b] = l2m(a, l1 b)``, g = degree 0, tau = l1, ``r(x)a = l2(x, a)``."""
    if L.tables["l3"]:
        raise ValueError("only strict Lie 2-algebras (l3 = 0) correspond to crossed modules")
    A, X = L.basis_m1(), L.basis_0()
    g_br = {(i, j): L.l2p(X[i], X[j]) for i, j in combinations(range(L.dim_0), 2)}
    h_br = {(a, b): L.l2m(A[a], L.l1(A[b])) for a, b in combinations(range(L.dim_m1), 2)}
    tau = {a: L.l1(A[a]) for a in range(L.dim_m1)}
    r = {(i, a): L.l2(X[i], A[a]) for i in range(L.dim_0) for a in range(L.dim_m1)}
    return CrossedModule(L.labels_0, L.labels_m1, g_br, h_br, tau, r)


def from_crossed_module(CM: CrossedModule, name: str = "") -> Lie2Algebra:
    """Strict Lie 2-algebra with ``l1 = tau``, ``l2p = [,]_g``, ``l2m(a, x) = -r(x)(a)``."""
    rep = verify_crossed_module(CM)
    if not rep.passed:
        bad = rep.failures()[0]
        raise ValueError(f"crossed module axiom fails: {bad.name} at {bad.witness}")
    l2m = {(a, i): -v for (i, a), v in CM.r.items()}
    return Lie2Algebra(CM.labels_h, CM.labels_g, l1=dict(CM.tau), l2p=dict(CM.g_bracket), l2m=l2m, name=name)


def verify_crossed_module_morphism(Phi: dict, psi: dict, CM: CrossedModule, CMp: CrossedModule) -> Report:
    """Check ``(Phi, psi)`` and compare with the strict Lie 2-morphism it induces.

    ``Phi[a]`` is the image of the h basis vector ``a`` in h', ``psi[i]`` the
    image of the g basis vector ``i`` in g'. The report's data records whether
    the induced strict morphism verifies, which must agree with this report.
    """
    rep = Report("crossed module morphism")
    G = [Vec.unit(0, CM.dim_g, i) for i in range(CM.dim_g)]
    H = [Vec.unit(-1, CM.dim_h, i) for i in range(CM.dim_h)]
    for k, v in Phi.items():
        if len(v) != CMp.dim_h or v.deg != -1:
            raise ValueError(f"Phi image {k} has the wrong dimension")
    for k, v in psi.items():
        if len(v) != CMp.dim_g or v.deg != 0:
            raise ValueError(f"psi image {k} has the wrong dimension")

    def phi(a):
        return _linear(Phi, a, CMp.h_zero())

    def ps(x):
        return _linear(psi, x, CMp.g_zero())

    def desc(kinds, labels_out):
        def inner(case, defect):
            labs = [CM.labels_g[k] if kind == "g" else CM.labels_h[k] for kind, k in zip(kinds, case)]
            return {"inputs": labs, "defect": {labels_out[i]: format_rational(c) for i, c in defect.support()}}
        return inner

    zero = Vec.is_zero
    rep.add(run_check("psi Lie morphism", combinations(range(CM.dim_g), 2),
                      lambda c: ps(CM.bracket_g(G[c[0]], G[c[1]])) - CMp.bracket_g(ps(G[c[0]]), ps(G[c[1]])),
                      zero, desc("gg", CMp.labels_g)))
    rep.add(run_check("Phi Lie morphism", combinations(range(CM.dim_h), 2),
                      lambda c: phi(CM.bracket_h(H[c[0]], H[c[1]])) - CMp.bracket_h(phi(H[c[0]]), phi(H[c[1]])),
                      zero, desc("hh", CMp.labels_h)))
    rep.add(run_check("tau' Phi = psi tau", ((a,) for a in range(CM.dim_h)),
                      lambda c: CMp.tau_of(phi(H[c[0]])) - ps(CM.tau_of(H[c[0]])),
                      zero, desc("h", CMp.labels_g)))
    rep.add(run_check("Phi(r(x)a) = r'(psi x)(Phi a)", product(range(CM.dim_g), range(CM.dim_h)),
                      lambda c: phi(CM.act(G[c[0]], H[c[1]])) - CMp.act(ps(G[c[0]]), phi(H[c[1]])),
                      zero, desc("gh", CMp.labels_h)))
    L, Lp = from_crossed_module(CM), from_crossed_module(CMp)
    F = Lie2Morphism(L, Lp, dict(psi), dict(Phi), {})
    induced = verify_morphism(F)
    rep.data = {"strict_morphism_passed": induced.passed, "agrees": induced.passed == rep.passed}
    return rep


def _linear(table: dict, v: Vec, zero: Vec) -> Vec:
    out = zero
    for i, c in v.support():
        e = table.get(i)
        if e is not None:
            out = out + e.scale(c)
    return out
