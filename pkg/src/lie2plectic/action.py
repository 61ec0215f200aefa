"""2-actions of finite Lie 2-algebras on a chart.

A 2-action is a Lie 2-morphism into the field algebra (bivectors in degree
-1, vector fields in degree 0). It is stored as finite tables over the basis
of the algebra and extended linearly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Mapping

from .calculus import FieldAlgebra, MultiVectorField, contract, exterior_derivative, lie_derivative
from .laws import check_morphism
from .lie2 import Lie2Algebra, Vec, _sorted_with_sign
from .report import CheckResult, Report
from .ring import ParseError
from .schema import InputError, field

__all__ = ["TwoAction", "verify_action", "classify_action", "plectic_class", "pushforward_along_skeletal"]


def _parse_vector(text, dim, degree, path):
    from .calculus import vector
    try:
        return vector(str(text), dim, degree)
    except (ParseError, ValueError) as exc:
        raise InputError(str(exc), path) from exc


@dataclass
class TwoAction:
    """Tables ``rho10[i]``, ``rho1m1[a]`` and ``rho2[(i, j)]`` with ``i < j``."""

    algebra: Lie2Algebra
    dim: int
    rho10: dict = dc_field(default_factory=dict)
    rho1m1: dict = dc_field(default_factory=dict)
    rho2: dict = dc_field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        L, m = self.algebra, self.dim
        for table, deg, size in ((self.rho10, 1, L.dim_0), (self.rho1m1, 2, L.dim_m1)):
            for i, v in list(table.items()):
                if not 0 <= i < size:
                    raise ValueError(f"action index {i} out of range")
                self._check_field(v, deg)
                if v.is_zero():
                    del table[i]
        clean = {}
        for key, v in self.rho2.items():
            self._check_field(v, 2)
            sign, k = _sorted_with_sign(tuple(key))
            if not sign or k[-1] >= L.dim_0:
                raise ValueError(f"rho2 key {key} is not a pair of distinct degree 0 indices")
            v = v if sign > 0 else -v
            if not v.is_zero():
                clean[k] = clean[k] + v if k in clean else v
        self.rho2 = {k: v for k, v in clean.items() if not v.is_zero()}

    def _check_field(self, v, deg):
        if not isinstance(v, MultiVectorField):
            raise TypeError("action values must be multivector fields")
        if v.dim != self.dim:
            raise ValueError(f"chart dimension mismatch: field on {v.dim}, action on {self.dim}")
        if v.coeffs and v.degree != deg:
            raise ValueError(f"expected a degree {deg} multivector field, got degree {v.degree}")

    # -- evaluation ---------------------------------------------------------
    def r10(self, x: Vec) -> MultiVectorField:
        out = MultiVectorField.zero(self.dim, 1)
        for i, c in x.support():
            if i in self.rho10:
                out = out + self.rho10[i] * c
        return out

    def r1m1(self, a: Vec) -> MultiVectorField:
        out = MultiVectorField.zero(self.dim, 2)
        for i, c in a.support():
            if i in self.rho1m1:
                out = out + self.rho1m1[i] * c
        return out

    def r2(self, x: Vec, y: Vec) -> MultiVectorField:
        out = MultiVectorField.zero(self.dim, 2)
        for i, ci in x.support():
            for j, cj in y.support():
                if i == j:
                    continue
                key, s = ((i, j), 1) if i < j else ((j, i), -1)
                if key in self.rho2:
                    out = out + self.rho2[key] * (ci * cj * s)
        return out

    def is_strict(self) -> bool:
        return not self.rho2

    def images(self):
        """Every stored image field, labelled."""
        L = self.algebra
        for i, v in sorted(self.rho10.items()):
            yield f"rho10({L.labels_0[i]})", v
        for a, v in sorted(self.rho1m1.items()):
            yield f"rho1m1({L.labels_m1[a]})", v
        for (i, j), v in sorted(self.rho2.items()):
            yield f"rho2({L.labels_0[i]},{L.labels_0[j]})", v

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        L = self.algebra
        return {
            "chart_dim": self.dim,
            "rho10": {L.labels_0[i]: str(v) for i, v in sorted(self.rho10.items())},
            "rho1m1": {L.labels_m1[a]: str(v) for a, v in sorted(self.rho1m1.items())},
            "rho2": [{"in": [L.labels_0[i], L.labels_0[j]], "out": str(v)}
                     for (i, j), v in sorted(self.rho2.items())],
        }

    @classmethod
    def from_dict(cls, doc: Mapping, algebra: Lie2Algebra, path: str = "action", name: str = "") -> "TwoAction":
        if not isinstance(doc, Mapping):
            raise InputError("action must be a JSON object", path)
        dim = field(doc, "chart_dim", path, int)
        if dim < 1:
            raise InputError("chart_dim must be positive", f"{path}.chart_dim")
        L = algebra
        rho10, rho1m1, rho2 = {}, {}, {}
        for lab, text in field(doc, "rho10", path, dict, default={}).items():
            p = f"{path}.rho10.{lab}"
            if lab not in L.labels_0:
                raise InputError(f"{lab!r} is not a degree 0 label", p)
            rho10[L.labels_0.index(lab)] = _parse_vector(text, dim, 1, p)
        for lab, text in field(doc, "rho1m1", path, dict, default={}).items():
            p = f"{path}.rho1m1.{lab}"
            if lab not in L.labels_m1:
                raise InputError(f"{lab!r} is not a degree -1 label", p)
            rho1m1[L.labels_m1.index(lab)] = _parse_vector(text, dim, 2, p)
        for n, entry in enumerate(field(doc, "rho2", path, list, default=[])):
            p = f"{path}.rho2[{n}]"
            if not isinstance(entry, Mapping):
                raise InputError("entry must be an object", p)
            ins = field(entry, "in", p, list)
            if len(ins) != 2 or any(lab not in L.labels_0 for lab in ins) or ins[0] == ins[1]:
                raise InputError("rho2 takes two distinct degree 0 labels", f"{p}.in")
            i, j = (L.labels_0.index(lab) for lab in ins)
            v = _parse_vector(field(entry, "out", p), dim, 2, f"{p}.out")
            key, v = ((i, j), v) if i < j else ((j, i), -v)
            if key in rho2:
                raise InputError("duplicate entry", p)
            rho2[key] = v
        return cls(L, dim, rho10, rho1m1, rho2, name=name)


def verify_action(rho: TwoAction) -> Report:
    """Check A1-A4 on all basis tuples with exact field arithmetic."""
    L = rho.algebra
    rep = check_morphism(L, FieldAlgebra(rho.dim), rho.r10, rho.r1m1, rho.r2, L.basis_m1(), L.basis_0(),
                         L.labels_m1, L.labels_0, subject=f"action {rho.name}".strip())
    rep.data["chart_dim"] = rho.dim
    return rep


def classify_action(rho: TwoAction) -> dict:
    flags = ("T1" if rho.rho10 else "T2") + ("3" if rho.rho1m1 else "4") + ("5" if rho.rho2 else "6")
    return {"flags": flags, "strict": rho.is_strict()}


def plectic_class(rho: TwoAction, omega) -> dict:
    """``two_plectic``, ``quasi_two_plectic`` or ``neither`` with every failing image."""
    om = getattr(omega, "omega", omega)
    if om.dim != rho.dim:
        raise ValueError("the form and the action live on different charts")
    failures = []
    for label, v in rho.images():
        if not lie_derivative(v, om).is_zero():
            failures.append({"field": label, "value": str(v), "d_iota_omega": str(exterior_derivative(contract(v, om)))})
    first_two = [f for f in failures if not f["field"].startswith("rho2")]
    if not failures:
        cls = "two_plectic"
    elif not first_two:
        cls = "quasi_two_plectic"
    else:
        cls = "neither"
    return {"class": cls, "failures": failures}


def pushforward_along_skeletal(rho: TwoAction, skel) -> dict:
    """Try to factor ``rho`` through the skeletalization morphism ``F``.

    The candidate is forced: ``rhobar10 = rho10 o sigma``, ``rhobar1m1`` is
    ``rho1m1`` on the kernel basis and ``rhobar2`` is fixed by the third
    condition on section images. The conditions are then checked on every
    basis element; failing degree -1 elements with ``F1m1(a) = 0`` but
    ``rho1m1(a) != 0`` are reported as witnesses.
    """
    L, Lb, F = skel.source, skel.skeletal, skel.F
    if L is not rho.algebra and not L.same_structure(rho.algebra):
        raise ValueError("the skeletalization belongs to a different algebra")
    sig = [skel.section[i] for i in range(Lb.dim_0)]
    rb10 = {i: rho.r10(sig[i]) for i in range(Lb.dim_0)}
    rb1m1 = {k: rho.r1m1(skel.kernel[k]) for k in range(Lb.dim_m1)}
    bar = TwoAction(Lb, rho.dim, dict(rb10), dict(rb1m1), {}, name=f"{rho.name} pushed")

    rb2 = {}
    for i, j in combinations(range(Lb.dim_0), 2):
        rb2[(i, j)] = rho.r2(sig[i], sig[j]) - bar.r1m1(F.f2(sig[i], sig[j]))
    bar = TwoAction(Lb, rho.dim, dict(rb10), dict(rb1m1), rb2, name=bar.name)

    rep = Report("pushforward")
    X, A = L.basis_0(), L.basis_m1()

    def first_fail(cases, defect, desc):
        count = 0
        for case in cases:
            count += 1
            d = defect(case)
            if not d.is_zero():
                return count, {"inputs": desc(case), "defect": str(d)}
        return count, None

    n, w = first_fail(range(L.dim_0), lambda i: rho.r10(X[i]) - bar.r10(F.f10(X[i])), lambda i: [L.labels_0[i]])
    rep.add(CheckResult("C1", w is None, n, w))
    n, w = first_fail(range(L.dim_m1), lambda a: rho.r1m1(A[a]) - bar.r1m1(F.f1m1(A[a])),
                      lambda a: [L.labels_m1[a]])
    rep.add(CheckResult("C2", w is None, n, w))
    n, w = first_fail(combinations(range(L.dim_0), 2),
                      lambda c: rho.r2(X[c[0]], X[c[1]]) - bar.r2(F.f10(X[c[0]]), F.f10(X[c[1]]))
                      - bar.r1m1(F.f2(X[c[0]], X[c[1]])),
                      lambda c: [L.labels_0[c[0]], L.labels_0[c[1]]])
    rep.add(CheckResult("C3", w is None, n, w))

    witnesses = [{"element": L.labels_m1[a], "F1m1": Lb.fmt(F.f1m1(A[a])), "rho1m1": str(rho.r1m1(A[a]))}
                 for a in range(L.dim_m1) if F.f1m1(A[a]).is_zero() and not rho.r1m1(A[a]).is_zero()]
    action_rep = verify_action(bar) if rep.passed else None
    return {
        "possible": rep.passed and action_rep.passed,
        "conditions": rep,
        "action": bar,
        "action_report": action_rep,
        "witnesses": witnesses,
    }
