"""Chevalley-Eilenberg cochains of the degree 0 Lie algebra with values in degree -1.

The module structure is ``p(x)(a) = l2(x, a) = -l2m(a, x)``, the order that
makes ``p`` a Lie algebra morphism. Cochains are dense alternating tables on
strictly increasing index tuples and the differential is

    dc(x_1..x_{k+1}) = sum_i (-1)^(i+1) p(x_i) c(..^x_i..)
                     + sum_{i<j} (-1)^(i+j) c([x_i, x_j], ..^x_i..^x_j..)
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable

from .lie2 import Lie2Algebra, Lie2Morphism, Vec, _sorted_with_sign, classify_flags, compose, verify_morphism
from .linalg import rank, solve
from .report import CheckResult, Report
from .skeletal import _Splitting, skeletalize

__all__ = ["Cochain", "CEComplex", "wagemann_compare"]


@dataclass
class Cochain:
    """Alternating k-linear map from an n-dimensional Lie algebra to an m-dimensional module."""

    k: int
    n: int
    m: int
    values: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, v in self.values.items():
            key = tuple(key)
            if len(key) != self.k or list(key) != sorted(set(key)) or (key and not 0 <= key[0] <= key[-1] < self.n):
                raise ValueError(f"cochain key {key} is not an increasing {self.k}-tuple")
            v = v if isinstance(v, Vec) else Vec(-1, v)
            if len(v) != self.m:
                raise ValueError("cochain value has the wrong module dimension")
            if not v.is_zero():
                clean[key] = v
        self.values = clean

    def value(self, idx: tuple) -> Vec:
        sign, key = _sorted_with_sign(tuple(idx))
        if not sign:
            return Vec.zero(-1, self.m)
        v = self.values.get(key)
        if v is None:
            return Vec.zero(-1, self.m)
        return v if sign > 0 else -v

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Cochain") -> "Cochain":
        keys = set(self.values) | set(other.values)
        return Cochain(self.k, self.n, self.m, {key: self.value(key) + other.value(key) for key in keys})

    def __neg__(self) -> "Cochain":
        return Cochain(self.k, self.n, self.m, {key: -v for key, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and (self.k, self.n, self.m) == (other.k, other.n, other.m) \
            and self.values == other.values

    def coords(self) -> list[Fraction]:
        out = []
        for key in combinations(range(self.n), self.k):
            out.extend(self.value(key).c)
        return out

    @classmethod
    def from_coords(cls, k: int, n: int, m: int, coords) -> "Cochain":
        vals = {}
        coords = list(coords)
        for pos, key in enumerate(combinations(range(n), k)):
            vals[key] = Vec(-1, coords[pos * m:(pos + 1) * m])
        return cls(k, n, m, vals)

    def to_dict(self, labels_g, labels_mod) -> list:
        return [{"in": [labels_g[i] for i in key],
                 "out": {labels_mod[i]: str(c) for i, c in v.support()}}
                for key, v in sorted(self.values.items())]


class CEComplex:
    """Cochain complex of a Lie algebra with coefficients in a module.

    ``bracket(i, j)`` returns ``[e_i, e_j]`` as a Vec of degree 0 and
    ``action(i, a)`` returns ``p(e_i)(a)`` for a module vector ``a``.
    """

    def __init__(self, n: int, m: int, bracket: Callable, action: Callable,
                 labels_g=None, labels_mod=None, check: bool = True):
        self.n, self.m = n, m
        self._bracket = bracket
        self._action = action
        self.labels_g = list(labels_g or [f"g{i + 1}" for i in range(n)])
        self.labels_mod = list(labels_mod or [f"v{i + 1}" for i in range(m)])
        self._br = {(i, j): bracket(i, j) for i, j in combinations(range(n), 2)}
        self._act = {(i, a): action(i, Vec.unit(-1, m, a)) for i in range(n) for a in range(m)}
        self._rank_cache: dict = {}
        if check:
            rep = self.check_module()
            if not rep.passed:
                bad = rep.failures()[0]
                raise ValueError(f"not a Lie algebra module: {bad.name} fails at {bad.witness}")

    @classmethod
    def from_algebra(cls, L: Lie2Algebra, check: bool = True) -> "CEComplex":
        if check and not classify_flags(L)["g0_is_lie"]:
            raise ValueError("the degree 0 part is not a Lie algebra (l1 o l3 != 0)")
        X = L.basis_0()
        return cls(L.dim_0, L.dim_m1, lambda i, j: L.l2p(X[i], X[j]), lambda i, a: L.l2(X[i], a),
                   L.labels_0, L.labels_m1, check=check)

    # -- structure -------------------------------------------------------------
    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = Vec.zero(0, self.n)
        for i, ci in x.support():
            for j, cj in y.support():
                if i < j:
                    out = out + self._br[(i, j)].scale(ci * cj)
                elif i > j:
                    out = out - self._br[(j, i)].scale(ci * cj)
        return out

    def act(self, x: Vec, a: Vec) -> Vec:
        out = Vec.zero(-1, self.m)
        for i, ci in x.support():
            for k, ck in a.support():
                out = out + self._act[(i, k)].scale(ci * ck)
        return out

    def check_module(self) -> Report:
        rep = Report("module")
        E = [Vec.unit(0, self.n, i) for i in range(self.n)]
        A = [Vec.unit(-1, self.m, a) for a in range(self.m)]
        fails = None
        count = 0
        for i, j, k in combinations(range(self.n), 3):
            count += 1
            x, y, z = E[i], E[j], E[k]
            jac = self.bracket(self.bracket(x, y), z) + self.bracket(self.bracket(y, z), x) \
                + self.bracket(self.bracket(z, x), y)
            if not jac.is_zero():
                fails = {"inputs": [self.labels_g[t] for t in (i, j, k)],
                         "defect": {self.labels_g[t]: str(c) for t, c in jac.support()}}
                break
        rep.add(CheckResult("Jacobi", fails is None, count, fails))
        fails, count = None, 0
        for i, j in combinations(range(self.n), 2):
            for a in range(self.m):
                count += 1
                x, y, v = E[i], E[j], A[a]
                d = self.act(self.bracket(x, y), v) - (self.act(x, self.act(y, v)) - self.act(y, self.act(x, v)))
                if not d.is_zero():
                    fails = {"inputs": [self.labels_g[i], self.labels_g[j], self.labels_mod[a]],
                             "defect": {self.labels_mod[t]: str(c) for t, c in d.support()}}
                    break
            if fails:
                break
        rep.add(CheckResult("action is a Lie morphism", fails is None, count, fails))
        return rep

    # -- cochains ----------------------------------------------------------------
    def dim_cochains(self, k: int) -> int:
        return comb(self.n, k) * self.m if 0 <= k <= self.n else 0

    def cochain(self, k: int, values=None) -> Cochain:
        return Cochain(k, self.n, self.m, values or {})

    def differential(self, c: Cochain) -> Cochain:
        if c.n != self.n or c.m != self.m:
            raise ValueError("cochain does not belong to this complex")
        k = c.k
        if k < 0:
            raise ValueError(f"negative cochain degree {k}")
        out = {}
        E = [Vec.unit(0, self.n, i) for i in range(self.n)]
        for key in combinations(range(self.n), k + 1):
            acc = Vec.zero(-1, self.m)
            for pos, i in enumerate(key):
                rest = key[:pos] + key[pos + 1:]
                term = self.act(E[i], c.value(rest))
                acc = acc + term if pos % 2 == 0 else acc - term
            for p, q in combinations(range(k + 1), 2):
                rest = tuple(t for s, t in enumerate(key) if s not in (p, q))
                br = self._br[(key[p], key[q])]
                term = Vec.zero(-1, self.m)
                for t, ct in br.support():
                    term = term + c.value((t,) + rest).scale(ct)
                acc = acc + term if (p + q) % 2 == 0 else acc - term
            out[key] = acc
        return Cochain(k + 1, self.n, self.m, out)

    def matrix(self, k: int) -> list[list[Fraction]]:
        """Matrix of ``d: C^k -> C^(k+1)`` in the coordinates of :meth:`Cochain.coords`."""
        m = self.m
        src = {key: t for t, key in enumerate(combinations(range(self.n), k))}
        rows = [[Fraction(0)] * (len(src) * m) for _ in range(self.dim_cochains(k + 1))]
        acts = [[self.act(Vec.unit(0, self.n, i), Vec.unit(-1, m, s)) for s in range(m)] for i in range(self.n)]
        for r0, key in enumerate(combinations(range(self.n), k + 1)):
            base = r0 * m
            for pos, i in enumerate(key):
                col0 = src[key[:pos] + key[pos + 1:]] * m
                sign = 1 if pos % 2 == 0 else -1
                for s in range(m):
                    for r, c in acts[i][s].support():
                        rows[base + r][col0 + s] += sign * c
            for p, q in combinations(range(k + 1), 2):
                rest = tuple(t for u, t in enumerate(key) if u not in (p, q))
                outer = 1 if (p + q) % 2 == 0 else -1
                for t, ct in self._br[(key[p], key[q])].support():
                    sign, skey = _sorted_with_sign((t,) + rest)
                    if not sign:
                        continue
                    col0 = src[skey] * m
                    for s in range(m):
                        rows[base + s][col0 + s] += outer * sign * ct
        return rows

    def rank_d(self, k: int) -> int:
        if k < 0 or k >= self.n or not self.dim_cochains(k) or not self.dim_cochains(k + 1):
            return 0
        if k not in self._rank_cache:
            self._rank_cache[k] = rank(self.matrix(k), self.dim_cochains(k))
        return self._rank_cache[k]

    def cohomology_dim(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"negative cochain degree {k}")
        return self.dim_cochains(k) - self.rank_d(k) - self.rank_d(k - 1)

    def is_cocycle(self, c: Cochain) -> bool:
        return self.differential(c).is_zero()

    def is_coboundary(self, c: Cochain) -> Cochain | None:
        """A cochain ``b`` with ``d b = c``, or None."""
        k = c.k
        if k == 0:
            # no (-1)-cochains: only zero is exact, witnessed by the zero 0-cochain
            return Cochain(0, self.n, self.m, {}) if c.is_zero() else None
        if c.is_zero():
            return Cochain(k - 1, self.n, self.m, {})
        if not self.dim_cochains(k - 1):
            return None
        sol = solve(self.matrix(k - 1), c.coords(), self.dim_cochains(k - 1))
        if sol is None:
            return None
        return Cochain.from_coords(k - 1, self.n, self.m, sol)


def l3_cochain(L: Lie2Algebra) -> Cochain:
    vals = {key: L.l3_entry(*key) for key in combinations(range(L.dim_0), 3)}
    return Cochain(3, L.dim_0, L.dim_m1, vals)


def wagemann_compare(L: Lie2Algebra) -> dict:
    """Compare the skeletal ``l3`` with the cocycle of the section construction.

    The section morphism is ``(inclusion of ker l1, sigma, Phi2)`` with
    ``l1 Phi2(x, y) = sigma [x, y] - l2p(sigma x, sigma y)`` solved on ``C``;
    its ``l3`` is gamma. Composing with the skeletalization gives a morphism
    ``F'`` with identity linear parts, and ``-F'2`` is a coboundary witness
    for ``l3bar - gamma``.
    """
    if L.tables["l3"]:
        raise ValueError("the comparison needs a strict Lie 2-algebra (l3 = 0)")
    res = skeletalize(L)
    Lb, F = res.skeletal, res.F
    sp = _Splitting(L)
    nb0, nb1 = Lb.dim_0, Lb.dim_m1
    Xb = Lb.basis_0()
    sig = [res.section[i] for i in range(nb0)]

    def sigma(xb: Vec) -> Vec:
        out = L.zero(0)
        for i, c in xb.support():
            out = out + sig[i].scale(c)
        return out

    phi2 = {}
    for i, j in combinations(range(nb0), 2):
        rhs = sigma(Lb.l2p(Xb[i], Xb[j])) - L.l2p(sig[i], sig[j])
        if not sp.split0(rhs)[1].is_zero():
            raise ArithmeticError("section defect is not in the image of l1")
        phi2[(i, j)] = sp.preimage(rhs)

    def phi2_of(xb: Vec, yb: Vec) -> Vec:
        out = L.zero(-1)
        for i, ci in xb.support():
            for j, cj in yb.support():
                if i < j:
                    out = out + phi2[(i, j)].scale(ci * cj)
                elif i > j:
                    out = out - phi2[(j, i)].scale(ci * cj)
        return out

    gamma_vals = {}
    for i, j, k in combinations(range(nb0), 3):
        x, y, z = Xb[i], Xb[j], Xb[k]
        acted = (L.l2(sigma(x), phi2_of(y, z)) + L.l2(sigma(y), phi2_of(z, x)) + L.l2(sigma(z), phi2_of(x, y)))
        pulled = (phi2_of(Lb.l2p(x, y), z) + phi2_of(Lb.l2p(y, z), x) + phi2_of(Lb.l2p(z, x), y))
        g = acted - pulled
        if not L.l1(g).is_zero():
            raise ArithmeticError("gamma leaves the kernel of l1")
        gamma_vals[(i, j, k)] = sp.f1m1(g)
    gamma = Cochain(3, nb0, nb1, gamma_vals)
    l3bar = l3_cochain(Lb)
    cx = CEComplex.from_algebra(Lb)

    # the section morphism, with gamma as the l3 of its source
    Lw = Lb.replace(l3=dict(gamma.values))
    Phi = Lie2Morphism(Lw, L, {i: sig[i] for i in range(nb0)},
                       {k: res.kernel[k] for k in range(nb1)}, dict(phi2))
    phi_report = verify_morphism(Phi)
    Fp = compose(F, Phi)
    witness = Cochain(2, nb0, nb1, {key: -v for key, v in Fp.F2.items()})
    diff = l3bar - gamma
    witness_ok = cx.differential(witness) == diff
    solved = cx.is_coboundary(diff)
    return {
        "skeletal": Lb,
        "gamma": gamma,
        "l3bar": l3bar,
        "phi2": phi2,
        "section_morphism_passed": phi_report.passed,
        "composite_linear_identity": all(Fp.f10(x) == x for x in Xb)
        and all(Fp.f1m1(a) == a for a in Lb.basis_m1()),
        "witness": witness,
        "witness_ok": witness_ok,
        "class_equal": witness_ok and solved is not None,
        "solved_witness": solved,
        "complex": cx,
    }
