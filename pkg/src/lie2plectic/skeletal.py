"""Quasi-isomorphism from any finite Lie 2-algebra to a skeletal one.

The degree -1 space splits as ``ker l1 + C`` and degree 0 as ``im l1 + C'``.
Both complements are spanned by standard basis vectors picked by reduced
row echelon elimination (pivot columns of the ``l1`` matrix for ``C``,
non-pivot coordinates of ``im l1`` for ``C'``), so the output only depends
on the input. The skeletal algebra keeps the labels of the free degree -1
coordinates (one kernel vector each) and of the ``C'`` coordinates.

The correction term is the antisymmetric

    F2(x, y) = F1m1(l2m(cx, l1 cy)) + F1m1(l2m(cx, y')) - F1m1(l2m(cy, x'))

where ``x = l1(cx) + x'`` with ``cx`` in ``C`` and ``x'`` in ``C'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .lie2 import Lie2Algebra, Lie2Morphism, Vec, verify_axioms, verify_morphism
from .linalg import nullspace, rank, rref, solve
from .report import CheckResult, Report

__all__ = ["SkeletalizationResult", "skeletalize", "check_quasi_iso"]


@dataclass
class SkeletalizationResult:
    source: Lie2Algebra
    skeletal: Lie2Algebra
    F: Lie2Morphism
    kernel: list          # kernel vectors of l1 in source coordinates, one per skeletal degree -1 label
    complement_m1: list   # labels spanning C
    complement_0: list    # labels spanning C'
    section: dict         # skeletal degree 0 index -> source vector

    def to_dict(self) -> dict:
        S = self.source
        return {
            "skeletal": self.skeletal.to_dict(),
            "morphism": self.F.to_dict(),
            "complement_gm1": list(self.complement_m1),
            "complement_g0": list(self.complement_0),
            "kernel": {self.skeletal.labels_m1[i]: S.fmt(v) for i, v in enumerate(self.kernel)},
            "section": {self.skeletal.labels_0[i]: S.fmt(v) for i, v in sorted(self.section.items())},
        }


class _Splitting:
    """Coordinates for ``L_-1 = ker + C`` and ``L_0 = im + C'``."""

    def __init__(self, L: Lie2Algebra):
        self.L = L
        n1, n0 = L.dim_m1, L.dim_0
        M = L.l1_matrix()
        _, piv = rref(M, n1) if n0 else ([], [])
        self.c_idx = list(piv)
        self.free = [a for a in range(n1) if a not in piv]
        self.kernel = [Vec(-1, v) for v in nullspace(M, n1)] if n0 else [
            Vec.unit(-1, n1, a) for a in range(n1)]
        image_rows = [L.l1_entry(a).c for a in range(n1)]
        R, ipiv = rref(image_rows, n0) if image_rows else ([], [])
        self.im_rows, self.im_piv = R, list(ipiv)
        self.rest = [i for i in range(n0) if i not in ipiv]
        # l1 restricted to C, as a dim_0 x |C| matrix
        self.l1_on_c = [[row[a] for a in self.c_idx] for row in M]

    def f1m1(self, a: Vec) -> Vec:
        return Vec(-1, (a.c[f] for f in self.free))

    def split0(self, x: Vec) -> tuple[Vec, Vec]:
        """``(im part, C' part)`` of a degree 0 vector."""
        im = [Fraction(0)] * self.L.dim_0
        for row, p in zip(self.im_rows, self.im_piv):
            s = x.c[p]
            if s:
                for k, r in enumerate(row):
                    im[k] += s * r
        im_v = Vec(0, im)
        return im_v, x - im_v

    def f10(self, x: Vec) -> Vec:
        rest = self.split0(x)[1]
        return Vec(0, (rest.c[i] for i in self.rest))

    def sigma(self, xb: Vec) -> Vec:
        out = [Fraction(0)] * self.L.dim_0
        for k, i in enumerate(self.rest):
            out[i] = xb.c[k]
        return Vec(0, out)

    def preimage(self, y: Vec) -> Vec:
        """The unique ``c`` in ``C`` with ``l1(c) = y`` for ``y`` in the image."""
        n1 = self.L.dim_m1
        if not self.c_idx:
            return Vec.zero(-1, n1)
        u = solve(self.l1_on_c, y.c, len(self.c_idx))
        if u is None:
            raise ArithmeticError("vector is not in the image of l1")
        out = [Fraction(0)] * n1
        for a, val in zip(self.c_idx, u):
            out[a] = val
        return Vec(-1, out)

    def f2(self, x: Vec, y: Vec) -> Vec:
        L = self.L
        xi, xr = self.split0(x)
        yi, yr = self.split0(y)
        cx, cy = self.preimage(xi), self.preimage(yi)
        val = L.l2m(cx, L.l1(cy)) + L.l2m(cx, yr) - L.l2m(cy, xr)
        return self.f1m1(val)


def skeletalize(L: Lie2Algebra) -> SkeletalizationResult:
    sp = _Splitting(L)
    labels_m1 = [L.labels_m1[f] for f in sp.free]
    labels_0 = [L.labels_0[i] for i in sp.rest]
    nb1, nb0 = len(labels_m1), len(labels_0)
    K = sp.kernel
    Xb = [Vec.unit(0, nb0, k) for k in range(nb0)]
    sig = [sp.sigma(xb) for xb in Xb]

    l2p = {(i, j): sp.f10(L.l2p(sig[i], sig[j])) for i, j in combinations(range(nb0), 2)}
    l2m = {(k, i): sp.f1m1(L.l2m(K[k], sig[i])) for k in range(nb1) for i in range(nb0)}
    F2 = {}
    X = L.basis_0()
    for i, j in combinations(range(L.dim_0), 2):
        F2[(i, j)] = sp.f2(X[i], X[j])

    def l2m_bar(kb: Vec, xb: Vec) -> Vec:
        out = Vec.zero(-1, nb1)
        for (k, ck), (i, ci) in ((p, q) for p in kb.support() for q in xb.support()):
            e = l2m.get((k, i))
            if e is not None:
                out = out + e.scale(ck * ci)
        return out

    l3 = {}
    for i, j, k in combinations(range(nb0), 3):
        x, y, z = sig[i], sig[j], sig[k]
        val = (sp.f1m1(L.l3(x, y, z)) + sp.f2(L.l2p(x, y), z) + sp.f2(L.l2p(y, z), x)
               + sp.f2(L.l2p(z, x), y))
        val = val + l2m_bar(sp.f2(y, z), Xb[i]) + l2m_bar(sp.f2(z, x), Xb[j]) + l2m_bar(sp.f2(x, y), Xb[k])
        l3[(i, j, k)] = val

    name = f"{L.name} skeletal" if L.name else ""
    Lb = Lie2Algebra(labels_m1, labels_0, l1={}, l2p=l2p, l2m=l2m, l3=l3, name=name)
    F10 = {i: sp.f10(x) for i, x in enumerate(X)}
    F1m1 = {a: sp.f1m1(v) for a, v in enumerate(L.basis_m1())}
    F = Lie2Morphism(L, Lb, F10, F1m1, F2)
    return SkeletalizationResult(
        source=L, skeletal=Lb, F=F, kernel=K,
        complement_m1=[L.labels_m1[a] for a in sp.c_idx],
        complement_0=labels_0,
        section={i: s for i, s in enumerate(sig)},
    )


def check_quasi_iso(result: SkeletalizationResult) -> Report:
    """Dimension counts, injectivity on ``ker l1``, the morphism laws and the skeletal axioms."""
    L, Lb, F = result.source, result.skeletal, result.F
    rep = Report("quasi-isomorphism")
    M = L.l1_matrix()
    r = rank(M, L.dim_m1) if L.dim_0 and L.dim_m1 else 0
    rep.add(CheckResult("dim ker l1", L.dim_m1 - r == Lb.dim_m1, 1,
                        None if L.dim_m1 - r == Lb.dim_m1 else {"expected": L.dim_m1 - r, "got": Lb.dim_m1}))
    rep.add(CheckResult("dim coker l1", L.dim_0 - r == Lb.dim_0, 1,
                        None if L.dim_0 - r == Lb.dim_0 else {"expected": L.dim_0 - r, "got": Lb.dim_0}))
    images = [F.f1m1(k).c for k in result.kernel]
    inj = (rank(images, Lb.dim_m1) if images and Lb.dim_m1 else 0) == len(result.kernel) == Lb.dim_m1
    rep.add(CheckResult("F1m1 bijective on ker l1", inj, len(result.kernel),
                        None if inj else {"kernel_dim": len(result.kernel), "image_rank": rank(images, Lb.dim_m1) if images else 0}))
    f10_rank = rank([F.f10(x).c for x in L.basis_0()], Lb.dim_0) if Lb.dim_0 else 0
    onto = f10_rank == Lb.dim_0
    rep.add(CheckResult("F10 onto quotient", onto, L.dim_0, None if onto else {"rank": f10_rank}))
    rep.add(CheckResult("skeletal l1 = 0", not Lb.tables["l1"], 1))
    rep.extend(verify_morphism(F))
    rep.extend(verify_axioms(Lb), prefix="skeletal ")
    return rep
