"""Comomentum maps: lifts of a 2-action into the extended observable algebra.

A comomentum ``lambda`` assigns a Hamiltonian form to each degree 0 basis
element, a degree -1 observable to each degree -1 basis element and an
observable to each pair of degree 0 basis elements. It is checked in two
ways:

* as a Lie 2-morphism into the observable algebra (A1-A4),
* against the action through the gradient (C1-C3).

Entries are stored as given, so data that is not Hamiltonian can still be
loaded and reported on.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Mapping

from .action import TwoAction
from .calculus import (
    DifferentialForm,
    MultiVectorField,
    differential,
    exterior_derivative,
    form as parse_form,
    vector as parse_vector,
)
from .laws import check_morphism
from .lie2 import Vec, _sorted_with_sign
from .plectic import (
    ExtendedObservableAlgebra,
    HamiltonianForm,
    HamiltonianPair,
    NotHamiltonian,
    Observable,
    PlecticForm,
    ObservableAlgebra,
    homotopy_primitive,
    morphism_I,
    morphism_Phi,
)
from .report import CheckResult, Report, run_check
from .ring import ExpPoly, ParseError, parse_expr
from .schema import InputError, field

__all__ = [
    "Comomentum",
    "verify_comoment",
    "classify_comoment",
    "WeakLift",
    "find_weak_lift",
    "HomotopyMomentMap",
    "verify_homotopy_moment_map",
    "bridge_from_homotopy",
    "bridge_to_homotopy",
    "DiscrepancyRecord",
    "condition_defects",
    "apply_corrections",
    "reconcile_reference_data",
]


def _zero_form(m, p):
    return DifferentialForm.zero(m, p)


def _iota(v: MultiVectorField, P: PlecticForm) -> DifferentialForm:
    deg = v.degree if v.coeffs else None
    if deg is None:
        return None
    return P.contract(v)


def _d(alpha: DifferentialForm | None, m: int, p: int) -> DifferentialForm:
    if alpha is None or not alpha.coeffs:
        return _zero_form(m, p)
    return exterior_derivative(alpha)


def _as_form(alpha, m, p):
    return alpha if alpha is not None and alpha.coeffs else _zero_form(m, p)


@dataclass
class Comomentum:
    """Tables ``lambda10[i]``, ``lambda1m1[a]`` and ``lambda2[(i, j)]`` with ``i < j``.

    ``psi2`` is the second component of the gradient; ``None`` means strict.
    """

    action: TwoAction
    P: PlecticForm
    lambda10: dict = dc_field(default_factory=dict)
    lambda1m1: dict = dc_field(default_factory=dict)
    lambda2: dict = dc_field(default_factory=dict)
    psi2: Callable | None = None
    name: str = ""

    def __post_init__(self):
        if self.P.dim != self.action.dim:
            raise ValueError("the form and the action live on different charts")
        L = self.action.algebra
        for i in self.lambda10:
            if not 0 <= i < L.dim_0:
                raise ValueError(f"lambda10 index {i} out of range")
        for a in self.lambda1m1:
            if not 0 <= a < L.dim_m1:
                raise ValueError(f"lambda1m1 index {a} out of range")
        clean = {}
        for key, ob in self.lambda2.items():
            sign, k = _sorted_with_sign(tuple(key))
            if not sign or k[-1] >= L.dim_0:
                raise ValueError(f"lambda2 key {key} is not a pair of distinct degree 0 indices")
            ob = ob if sign > 0 else -ob
            clean[k] = clean[k] + ob if k in clean else ob
        self.lambda2 = clean

    @property
    def algebra(self):
        return self.action.algebra

    @property
    def dim(self) -> int:
        return self.P.dim

    @property
    def fundamental(self) -> bool:
        return self.psi2 is None

    # -- evaluation ---------------------------------------------------------
    def l10(self, x: Vec) -> HamiltonianForm:
        out = self.P.zero_form()
        for i, c in x.support():
            if i in self.lambda10:
                out = out + self.lambda10[i].scale(c)
        return out

    def l1m1(self, a: Vec) -> Observable:
        out = self.P.zero_observable()
        for i, c in a.support():
            if i in self.lambda1m1:
                out = out + self.lambda1m1[i].scale(c)
        return out

    def l2(self, x: Vec, y: Vec) -> Observable:
        out = self.P.zero_observable()
        for i, ci in x.support():
            for j, cj in y.support():
                if i == j:
                    continue
                key, s = ((i, j), 1) if i < j else ((j, i), -1)
                if key in self.lambda2:
                    out = out + self.lambda2[key].scale(ci * cj * s)
        return out

    def psi(self, a: HamiltonianForm, b: HamiltonianForm) -> MultiVectorField:
        if self.psi2 is None:
            return MultiVectorField.zero(self.dim, 2)
        return self.psi2(a, b)

    def entries(self):
        """Every stored entry with its path, e.g. ``lambda2.x1,x2``."""
        L = self.algebra
        for i, h in sorted(self.lambda10.items()):
            yield f"lambda10.{L.labels_0[i]}", h
        for a, ob in sorted(self.lambda1m1.items()):
            yield f"lambda1m1.{L.labels_m1[a]}", ob
        for (i, j), ob in sorted(self.lambda2.items()):
            yield f"lambda2.{L.labels_0[i]},{L.labels_0[j]}", ob

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        L = self.algebra
        return {
            "omega": str(self.P.omega),
            "lambda10": {L.labels_0[i]: h.to_dict() for i, h in sorted(self.lambda10.items())},
            "lambda1m1": {L.labels_m1[a]: ob.to_dict() for a, ob in sorted(self.lambda1m1.items())},
            "lambda2": [dict(ob.to_dict(), **{"in": [L.labels_0[i], L.labels_0[j]]})
                        for (i, j), ob in sorted(self.lambda2.items())],
        }

    @classmethod
    def from_dict(cls, doc: Mapping, action: TwoAction, path: str = "comoment", name: str = "") -> "Comomentum":
        """Read a definition. Missing ``X`` or ``v`` entries default to the action's field."""
        if not isinstance(doc, Mapping):
            raise InputError("comoment must be a JSON object", path)
        L, m = action.algebra, action.dim
        omega = _read(parse_form, field(doc, "omega", path, str), m, 3, f"{path}.omega")
        try:
            P = PlecticForm(omega)
        except ValueError as exc:
            raise InputError(str(exc), f"{path}.omega") from exc

        lam10, lam1m1, lam2 = {}, {}, {}
        for lab, entry in field(doc, "lambda10", path, dict, default={}).items():
            p = f"{path}.lambda10.{lab}"
            if lab not in L.labels_0:
                raise InputError(f"{lab!r} is not a degree 0 label", p)
            i = L.labels_0.index(lab)
            if isinstance(entry, str):
                entry = {"alpha": entry}
            if not isinstance(entry, Mapping):
                raise InputError("expected a 1-form literal or an object", p)
            alpha = _read(parse_form, field(entry, "alpha", p, str), m, 1, f"{p}.alpha")
            X = (_read(parse_vector, entry["X"], m, 1, f"{p}.X") if "X" in entry
                 else action.rho10.get(i, MultiVectorField.zero(m, 1)))
            lam10[i] = HamiltonianForm(alpha, X)
        for lab, entry in field(doc, "lambda1m1", path, dict, default={}).items():
            p = f"{path}.lambda1m1.{lab}"
            if lab not in L.labels_m1:
                raise InputError(f"{lab!r} is not a degree -1 label", p)
            a = L.labels_m1.index(lab)
            lam1m1[a] = _read_observable(entry, m, p, action.rho1m1.get(a))
        for n, entry in enumerate(field(doc, "lambda2", path, list, default=[])):
            p = f"{path}.lambda2[{n}]"
            if not isinstance(entry, Mapping):
                raise InputError("entry must be an object", p)
            ins = field(entry, "in", p, list)
            if len(ins) != 2 or any(lab not in L.labels_0 for lab in ins) or ins[0] == ins[1]:
                raise InputError("lambda2 takes two distinct degree 0 labels", f"{p}.in")
            i, j = (L.labels_0.index(lab) for lab in ins)
            ob = _read_observable(entry, m, p, action.r2(L.basis_0()[i], L.basis_0()[j]))
            key, ob = ((i, j), ob) if i < j else ((j, i), -ob)
            if key in lam2:
                raise InputError("duplicate entry", p)
            lam2[key] = ob
        return cls(action, P, lam10, lam1m1, lam2, name=name)


def _read(parser, text, m, degree, path):
    if not isinstance(text, str):
        raise InputError("expected a string literal", path)
    try:
        return parser(text, m, degree)
    except (ParseError, ValueError) as exc:
        raise InputError(str(exc), path) from exc


def _read_function(text, m, path) -> ExpPoly:
    if isinstance(text, (int,)) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise InputError("expected a function literal", path)
    try:
        return parse_expr(text, m)
    except (ParseError, ValueError) as exc:
        raise InputError(str(exc), path) from exc


def _read_observable(entry, m, path, default_v) -> Observable:
    if not isinstance(entry, Mapping):
        raise InputError("expected an observable object", path)
    ft = _read_function(entry.get("ftilde", "0"), m, f"{path}.ftilde")
    f = _read_function(entry.get("f", "0"), m, f"{path}.f")
    if "v" in entry:
        v = _read(parse_vector, entry["v"], m, 2, f"{path}.v")
    else:
        v = default_v if default_v is not None else MultiVectorField.zero(m, 2)
    return Observable(ft, HamiltonianPair(f, v))


# -- verification -------------------------------------------------------------

class _Pair:
    """A defect made of a field part and a form part."""

    def __init__(self, field_part, form_part):
        self.field_part, self.form_part = field_part, form_part

    def is_zero(self) -> bool:
        return self.field_part.is_zero() and self.form_part.is_zero()

    def __str__(self) -> str:
        return f"field {self.field_part}; form {self.form_part}"


def _hamiltonian_check(lam: Comomentum) -> CheckResult:
    m, P = lam.dim, lam.P

    def defect(item):
        path, e = item
        if isinstance(e, HamiltonianForm):
            return _d(e.alpha, m, 2) + _as_form(_iota(e.X, P), m, 2)
        return differential(e.f) + _as_form(_iota(e.v, P), m, 1)

    return run_check("H", lam.entries(), defect, lambda d: d.is_zero(),
                     lambda item, d: {"inputs": [item[0]], "defect": str(d)})


def condition_defects(lam: Comomentum) -> Report:
    """Evaluate C1-C3 on basis tuples; the defects pair a field part with a form part.

    C1: ``X = rho10(x)`` and ``iota_{rho10 x} omega = -d lambda10(x)``.
    C2: ``v = rho1m1(a)`` and ``iota_{rho1m1 a} omega = -d f``.
    C3: ``v + psi2 = rho2(x, y)`` and ``iota_{rho2 - psi2} omega = -d f``.
    """
    rho, P, m = lam.action, lam.P, lam.dim
    L = rho.algebra
    X, A = L.basis_0(), L.basis_m1()
    rep = Report(f"conditions {lam.name}".strip())

    def c1(case):
        x = X[case[0]]
        h, r = lam.l10(x), rho.r10(x)
        return _Pair(h.X - r, _as_form(_iota(r, P), m, 2) + _d(h.alpha, m, 2))

    def c2(case):
        a = A[case[0]]
        ob, r = lam.l1m1(a), rho.r1m1(a)
        return _Pair(ob.v - r, _as_form(_iota(r, P), m, 1) + differential(ob.f))

    def c3(case):
        x, y = X[case[0]], X[case[1]]
        ob, r = lam.l2(x, y), rho.r2(x, y)
        s = lam.psi(lam.l10(x), lam.l10(y))
        return _Pair(ob.v + s - r, _as_form(_iota(r - s, P), m, 1) + differential(ob.f))

    def describe(kinds):
        def inner(case, d):
            labs = [L.labels_m1[k] if kind == "a" else L.labels_0[k] for kind, k in zip(kinds, case)]
            return {"inputs": labs, "defect": str(d)}
        return inner

    zero = lambda d: d.is_zero()  # noqa: E731
    rep.add(run_check("C1", ((i,) for i in range(L.dim_0)), c1, zero, describe("x")))
    rep.add(run_check("C2", ((a,) for a in range(L.dim_m1)), c2, zero, describe("a")))
    rep.add(run_check("C3", combinations(range(L.dim_0), 2), c3, zero, describe("xx")))
    return rep


def _morphism_report(lam: Comomentum) -> Report:
    L = lam.algebra
    target = ExtendedObservableAlgebra(lam.P, validate=False)
    try:
        return check_morphism(L, target, lam.l10, lam.l1m1, lam.l2, L.basis_m1(), L.basis_0(),
                              L.labels_m1, L.labels_0, subject="lambda")
    except NotHamiltonian as exc:
        rep = Report("lambda")
        rep.add(CheckResult("A", False, 0, detail=str(exc)))
        return rep


def verify_comoment(lam: Comomentum) -> Report:
    """Check the Hamiltonian data, A1-A4 for lambda and C1-C3 against the action.

    ``data["strong"]`` is true iff everything passes; ``data["weak"]`` iff
    the Hamiltonian data and C1-C3 pass.
    """
    rep = Report(f"comoment {lam.name}".strip())
    rep.add(_hamiltonian_check(lam))
    rep.extend(_morphism_report(lam))
    cond = condition_defects(lam)
    rep.extend(cond)
    weak = rep["H"].passed and cond.passed
    rep.data.update({"strong": rep.passed, "weak": weak, "fundamental": lam.fundamental})
    return rep


def classify_comoment(lam: Comomentum, report: Report | None = None) -> dict:
    rep = report or verify_comoment(lam)
    strong, weak = rep.data["strong"], rep.data["weak"]
    return {"fundamental": lam.fundamental, "strong": strong, "weak": weak, "weak_only": weak and not strong}


# -- weak lifts -----------------------------------------------------------------

@dataclass
class WeakLift:
    liftable: bool
    obstructions: list
    comoment: Comomentum | None = None

    def to_dict(self) -> dict:
        out = {"liftable": self.liftable, "obstructions": self.obstructions}
        if self.comoment is not None:
            out["comoment"] = self.comoment.to_dict()
        return out


def find_weak_lift(rho: TwoAction, omega) -> WeakLift:
    """Build primitives for C1-C3 with the homotopy operator, or list the obstructions.

    Every contraction ``iota_v omega`` of an image field must be closed.
    Non-closed contractions are returned as obstructions. With closed
    contractions but exponential coefficients a ``ValueError`` is raised,
    since the homotopy operator does not close over that ring.
    """
    P = omega if isinstance(omega, PlecticForm) else PlecticForm(omega)
    if P.dim != rho.dim:
        raise ValueError("the form and the action live on different charts")
    obstructions, contractions = [], {}
    for label, v in rho.images():
        beta = P.contract(v)
        contractions[label] = beta
        dbeta = exterior_derivative(beta)
        if not dbeta.is_zero():
            obstructions.append({"field": label, "value": str(v), "d_iota_omega": str(dbeta)})
    if obstructions:
        return WeakLift(False, obstructions)
    if any(v.has_exponentials() for _, v in rho.images()):
        raise ValueError("exponential coefficients: primitives cannot be built, only verified")

    m = P.dim
    zero = ExpPoly.zero(m)

    def f_of(form0: DifferentialForm) -> ExpPoly:
        return form0.coefficient(()) if form0.coeffs else zero

    lam10 = {i: HamiltonianForm(-homotopy_primitive(P.contract(v)), v) for i, v in rho.rho10.items()}
    lam1m1 = {a: Observable(zero, HamiltonianPair(-f_of(homotopy_primitive(P.contract(v))), v))
              for a, v in rho.rho1m1.items()}
    lam2 = {k: Observable(zero, HamiltonianPair(-f_of(homotopy_primitive(P.contract(v))), v))
            for k, v in rho.rho2.items()}
    return WeakLift(True, [], Comomentum(rho, P, lam10, lam1m1, lam2, name=f"{rho.name} weak lift".strip()))


# -- homotopy moment maps --------------------------------------------------------

@dataclass
class HomotopyMomentMap:
    """A Lie 2-morphism into the function/form algebra lifting ``rho10``.

    Degree -1 values and ``lambda2`` values are functions.
    """

    action: TwoAction
    P: PlecticForm
    lambda10: dict = dc_field(default_factory=dict)
    lambda1m1: dict = dc_field(default_factory=dict)
    lambda2: dict = dc_field(default_factory=dict)

    def l10(self, x: Vec) -> HamiltonianForm:
        out = self.P.zero_form()
        for i, c in x.support():
            if i in self.lambda10:
                out = out + self.lambda10[i].scale(c)
        return out

    def l1m1(self, a: Vec) -> ExpPoly:
        out = ExpPoly.zero(self.P.dim)
        for i, c in a.support():
            if i in self.lambda1m1:
                out = out + self.lambda1m1[i].scale(c)
        return out

    def l2(self, x: Vec, y: Vec) -> ExpPoly:
        out = ExpPoly.zero(self.P.dim)
        for i, ci in x.support():
            for j, cj in y.support():
                if i != j:
                    key, s = ((i, j), 1) if i < j else ((j, i), -1)
                    if key in self.lambda2:
                        out = out + self.lambda2[key].scale(ci * cj * s)
        return out


def verify_homotopy_moment_map(hm: HomotopyMomentMap) -> Report:
    """A1-A4 into the function/form algebra and ``X_{lambda10(x)} = rho10(x)``."""
    L, rho, P, m = hm.action.algebra, hm.action, hm.P, hm.P.dim
    rep = Report("homotopy moment map")
    forms = [(L.labels_0[i], h) for i, h in sorted(hm.lambda10.items())]
    rep.add(run_check("H", forms, lambda it: _d(it[1].alpha, m, 2) + _as_form(_iota(it[1].X, P), m, 2),
                      lambda d: d.is_zero(), lambda it, d: {"inputs": [it[0]], "defect": str(d)}))
    try:
        rep.extend(check_morphism(L, ObservableAlgebra(P, validate=False), hm.l10, hm.l1m1, hm.l2,
                                  L.basis_m1(), L.basis_0(), L.labels_m1, L.labels_0))
    except NotHamiltonian as exc:
        rep.add(CheckResult("A", False, 0, detail=str(exc)))
    X = L.basis_0()
    rep.add(run_check("C1", range(L.dim_0), lambda i: hm.l10(X[i]).X - rho.r10(X[i]),
                      lambda d: d.is_zero(), lambda i, d: {"inputs": [L.labels_0[i]], "defect": str(d)}))
    return rep


def bridge_from_homotopy(hm: HomotopyMomentMap) -> Comomentum:
    """Compose with the inclusion: functions ``f`` become ``(f, (0, 0))``."""
    rho = hm.action
    if rho.rho1m1 or rho.rho2:
        raise ValueError("the bridge needs an action with rho1m1 = 0 and rho2 = 0")
    return Comomentum(rho, hm.P, dict(hm.lambda10),
                      {a: morphism_I(f) for a, f in hm.lambda1m1.items()},
                      {k: morphism_I(f) for k, f in hm.lambda2.items()}, name="bridged")


def bridge_to_homotopy(lam: Comomentum) -> HomotopyMomentMap:
    """Compose with the projection onto the first component."""
    return HomotopyMomentMap(lam.action, lam.P, dict(lam.lambda10),
                             {a: morphism_Phi(ob) for a, ob in lam.lambda1m1.items()},
                             {k: morphism_Phi(ob) for k, ob in lam.lambda2.items()})


# -- discrepancies ----------------------------------------------------------------

@dataclass
class DiscrepancyRecord:
    """A comomentum entry whose printed value fails a condition, with the value that passes."""

    example_id: str
    path: str
    reference_value: object
    derived_value: object
    kind: str
    condition: str
    comoment: str = ""

    def to_dict(self) -> dict:
        return {"example": self.example_id, "comoment": self.comoment, "path": self.path,
                "reference": self.reference_value, "derived": self.derived_value,
                "kind": self.kind, "condition": self.condition}


def _locate(doc: dict, path: str):
    """Return ``(container, key)`` for an entry path inside a comoment document."""
    table, _, label = path.partition(".")
    if table in ("lambda10", "lambda1m1"):
        return doc.setdefault(table, {}), label
    if table == "lambda2":
        pair = label.split(",")
        entries = doc.setdefault("lambda2", [])
        for n, e in enumerate(entries):
            if list(e.get("in", [])) == pair:
                return entries, n
        entries.append({"in": pair})
        return entries, len(entries) - 1
    raise KeyError(path)


def _get(doc: dict, path: str):
    cont, key = _locate(doc, path)
    value = cont[key] if not isinstance(cont, list) else {k: v for k, v in cont[key].items() if k != "in"}
    return value if value != {} else None


def apply_corrections(doc: dict, records, skip: str | None = None) -> dict:
    """Substitute derived values for every record path except ``skip``."""
    import copy

    out = copy.deepcopy(doc)
    for rec in records:
        path = rec.path if isinstance(rec, DiscrepancyRecord) else rec["path"]
        if path == skip:
            continue
        derived = rec.derived_value if isinstance(rec, DiscrepancyRecord) else rec["derived"]
        cont, key = _locate(out, path)
        if isinstance(cont, list):
            cont[key] = dict(derived, **{"in": cont[key]["in"]})
        else:
            cont[key] = derived
    return out


def _negate_entry(value, m: int):
    """Flip the sign of the primitive only; fields are fixed by the action."""
    if value is None:
        return None
    if isinstance(value, str):
        return str(-parse_form(value, m, 1))
    out = dict(value)
    if "alpha" in out:
        out["alpha"] = str(-parse_form(out["alpha"], m, 1))
    if "f" in out:
        out["f"] = str(-parse_expr(str(out["f"]), m))
    return out


def _condition_of(path: str) -> str:
    return {"lambda10": "C1", "lambda1m1": "C2", "lambda2": "C3"}[path.partition(".")[0]]


def _passes(doc, action, conditions) -> Report:
    lam = Comomentum.from_dict(doc, action)
    rep = verify_comoment(lam)
    return all(rep[c].passed for c in conditions)


def reconcile_reference_data(example_id: str) -> list[DiscrepancyRecord]:
    """Check every shipped record and detect C-condition failures it does not cover.

    A shipped record must fail its condition with the reference value (all other
    records applied) and pass with the derived value. Each remaining entry
    that fails its C-condition gets a new record: a sign flip when the
    negated value passes, otherwise a homotopy primitive replacement.
    Raises ``ValueError`` when a shipped record does not hold up.
    """
    from .catalog import load_example

    entry = load_example(example_id)
    out: list[DiscrepancyRecord] = []
    for cm in entry.comoments:
        action = entry.actions[cm["action"]]
        reference, records = cm["reference"], cm.get("corrections", [])
        for rec in records:
            base = apply_corrections(reference, records, skip=rec["path"])
            if _passes(base, action, [rec["condition"]]):
                raise ValueError(f"{example_id}/{cm['name']} {rec['path']}: reference value passes {rec['condition']}")
            fixed = apply_corrections(reference, records)
            if not _passes(fixed, action, [rec["condition"]]):
                raise ValueError(f"{example_id}/{cm['name']} {rec['path']}: derived value fails {rec['condition']}")
            out.append(DiscrepancyRecord(example_id, rec["path"], rec["reference"], rec["derived"], rec["kind"],
                                         rec["condition"], cm["name"]))
        fixed = apply_corrections(reference, records)
        covered = {r["path"] for r in records}
        out.extend(_detect(example_id, cm["name"], fixed, action, covered))
    return out


def _detect(example_id, cm_name, doc, action, covered) -> list[DiscrepancyRecord]:
    lam = Comomentum.from_dict(doc, action)
    found = []
    for path, _ in list(lam.entries()):
        cond = _condition_of(path)
        if path in covered or _entry_ok(lam, path, cond):
            continue
        value = _get(doc, path)
        flipped = _negate_entry(value, action.dim)
        trial = apply_corrections(doc, [{"path": path, "derived": flipped}])
        if _entry_ok(Comomentum.from_dict(trial, action), path, cond):
            found.append(DiscrepancyRecord(example_id, path, value, flipped, "sign flip", cond, cm_name))
            continue
        derived = None
        try:
            lift = find_weak_lift(action, lam.P)
            if lift.liftable:
                derived = _get(lift.comoment.to_dict(), path)
        except ValueError:
            pass
        found.append(DiscrepancyRecord(example_id, path, value, derived, "replacement", cond, cm_name))
    return found


def _entry_ok(lam: Comomentum, path: str, cond: str) -> bool:
    """C-condition restricted to the basis tuple named by ``path``."""
    L, rho, P, m = lam.algebra, lam.action, lam.P, lam.dim
    table, _, label = path.partition(".")
    if cond == "C1":
        x = L.basis_0()[L.labels_0.index(label)]
        h, r = lam.l10(x), rho.r10(x)
        return _Pair(h.X - r, _as_form(_iota(r, P), m, 2) + _d(h.alpha, m, 2)).is_zero()
    if cond == "C2":
        a = L.basis_m1()[L.labels_m1.index(label)]
        ob, r = lam.l1m1(a), rho.r1m1(a)
        return _Pair(ob.v - r, _as_form(_iota(r, P), m, 1) + differential(ob.f)).is_zero()
    i, j = (L.labels_0.index(s) for s in label.split(","))
    x, y = L.basis_0()[i], L.basis_0()[j]
    ob, r = lam.l2(x, y), rho.r2(x, y)
    s = lam.psi(lam.l10(x), lam.l10(y))
    return _Pair(ob.v + s - r, _as_form(_iota(r - s, P), m, 1) + differential(ob.f)).is_zero()
