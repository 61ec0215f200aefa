"""The builtin example catalog and its replay.

Each example is a JSON file in ``catalog/``. Algebras and actions are
either written out or produced by the basic generator; expectations
(verification outcome, flags, plectic class, lift data) are stored next
to the data so that a replay is a comparison, not a judgement.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from itertools import combinations

from .action import TwoAction, classify_action, plectic_class, pushforward_along_skeletal, verify_action
from .calculus import form as parse_form, vector
from .linalg import rank
from .lie2 import Lie2Algebra, structure_flags, verify_axioms
from .report import CheckResult, Report
from .schema import InputError

__all__ = [
    "Example",
    "list_examples",
    "load_example",
    "load_table",
    "cell_matches",
    "basic_algebra",
    "basic_action",
    "build_algebra",
    "build_action",
    "apply_mutation",
    "rho2_constraint_rows",
    "run_example",
    "run_catalog",
]

EXAMPLE_IDS = ("1a", "1b", "2a", "2b", "2c", "3a", "3b", "4a", "4b", "5")


def _read(name: str) -> dict:
    text = resources.files(__package__).joinpath("catalog", name).read_text(encoding="utf-8")
    return json.loads(text)


def list_examples() -> list[str]:
    return list(EXAMPLE_IDS)


def load_table() -> dict:
    """``{T flags: {S flags: [example tokens]}}``."""
    return _read("table.json")["rows"]


def cell_matches(cell: list[str], example_id: str) -> bool:
    """A token names the example itself or its whole family (``"2"`` covers ``"2b"``)."""
    return example_id in cell or example_id[0] in cell


# -- basic generator ------------------------------------------------------------

def basic_algebra(l: int = 1, k: int = 1, *, l1: bool = True, l2p: bool = True, l2m: bool = True,
                  l3: bool = True, name: str = "basic") -> Lie2Algebra:
    """Sums of ``ax+b`` pieces with a triple bracket on consecutive generators.

    Degree 0: ``y1..y3l``, ``x1..x3l`` (with ``[x_i, y_i] = x_i``) and, if
    ``l1``, ``y(3l+1)..y(3l+k)``. Degree -1: ``a1..al`` (if ``l3``),
    ``b1..bk`` and ``c<j>_<i>`` (if ``l2m``). ``l1(b_j) = y(3l+j)``,
    ``l3(y(3i+1), y(3i+2), y(3i+3)) = a(i+1)``, ``l2m(b_j, y_i) = c<j>_<i>``.
    """
    if l < 1 or k < 0 or (l1 and k < 1):
        raise ValueError("need l >= 1, and k >= 1 when l1 is on")
    n = 3 * l
    ys = [f"y{i}" for i in range(1, n + 1)]
    xs = [f"x{i}" for i in range(1, n + 1)] if l2p else []
    top = [f"y{n + j}" for j in range(1, k + 1)] if l1 else []
    a_s = [f"a{i}" for i in range(1, l + 1)] if l3 else []
    bs = [f"b{j}" for j in range(1, k + 1)]
    cs = [f"c{j}_{i}" for j in range(1, k + 1) for i in range(1, n + 1)] if l2m else []
    t1 = {b: {y: 1} for b, y in zip(bs, top)} if l1 else {}
    tp = {(x, y): {x: 1} for x, y in zip(xs, ys)}
    tm = {(f"b{j}", f"y{i}"): {f"c{j}_{i}": 1} for j in range(1, k + 1) for i in range(1, n + 1)} if l2m else {}
    t3 = {(ys[3 * i], ys[3 * i + 1], ys[3 * i + 2]): {a_s[i]: 1} for i in range(l)} if l3 else {}
    return Lie2Algebra.build(a_s + bs + cs, ys + xs + top, l1=t1, l2p=tp, l2m=tm, l3=t3, name=name)


def basic_action(L: Lie2Algebra, l: int = 1, *, rho10: bool = True, rho1m1: bool = True, rho2: bool = True,
                 name: str = "") -> TwoAction:
    """Translations and ``exp``-scaled translations on the first ``3l - 2`` axes,
    the invariant bivector ``e(3l-1)^e(3l)`` on the degree -1 generators ``b``
    and on ``(y(3l-1), y(3l))``."""
    n = 3 * l
    pi = vector(f"e{n - 1}^e{n}", n)
    r10, r1m1, r2 = {}, {}, {}
    if rho10:
        for j in range(1, n - 1):
            r10[L.labels_0.index(f"y{j}")] = vector(f"e{j}", n)
            if f"x{j}" in L.labels_0:
                r10[L.labels_0.index(f"x{j}")] = vector(f"exp(-q{j})*e{j}", n)
    if rho1m1:
        for a, lab in enumerate(L.labels_m1):
            if lab.startswith("b"):
                r1m1[a] = pi
    if rho2:
        r2[(L.labels_0.index(f"y{n - 1}"), L.labels_0.index(f"y{n}"))] = pi
    return TwoAction(L, n, r10, r1m1, r2, name=name)


# -- mutations and constraint rows ---------------------------------------------

def apply_mutation(doc: dict, mutation: dict) -> dict:
    """Replace (or add) the entry of ``mutation["table"]`` with inputs ``mutation["in"]``."""
    out = copy.deepcopy(doc)
    table = out.setdefault(mutation["table"], [])
    for e in table:
        if e["in"] == mutation["in"]:
            e["out"] = dict(mutation["out"])
            break
    else:
        table.append({"in": list(mutation["in"]), "out": dict(mutation["out"])})
    return out


def rho2_constraint_rows(L: Lie2Algebra) -> tuple[list, list]:
    """Linear conditions on ``rho2`` for an action with ``rho10 = 0`` of an algebra with
    trivial degree -1 part: ``sum_cyc rho2(l2(x, y), z) = 0``.

    Returns the coordinate pairs and the rows.
    """
    n = L.dim_0
    pairs = list(combinations(range(n), 2))
    pos = {p: q for q, p in enumerate(pairs)}
    X = L.basis_0()
    rows = []
    for x, y, z in combinations(range(n), 3):
        row = [Fraction(0)] * len(pairs)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for i, ci in L.l2p(X[a], X[b]).support():
                if i != c:
                    key, s = ((i, c), 1) if i < c else ((c, i), -1)
                    row[pos[key]] += ci * s
        if any(row):
            rows.append(row)
    return pairs, rows


def _condition_row(L, pairs, terms):
    pos = {p: q for q, p in enumerate(pairs)}
    row = [Fraction(0)] * len(pairs)
    for coeff, u, w in terms:
        i, j = L.labels_0.index(u), L.labels_0.index(w)
        key, s = ((i, j), 1) if i < j else ((j, i), -1)
        row[pos[key]] += Fraction(coeff) * s
    return row


# -- loading ------------------------------------------------------------------

@dataclass
class Example:
    id: str
    title: str
    doc: dict
    algebras: dict = dc_field(default_factory=dict)
    actions: dict = dc_field(default_factory=dict)

    @property
    def comoments(self) -> list:
        return self.doc.get("comoments", [])

    def omega_for(self, spec: dict):
        return spec.get("omega", self.doc.get("omega"))

    def algebra_doc(self, name: str) -> dict:
        return self.doc["algebras"][name]


def build_algebra(spec: dict, path: str) -> Lie2Algebra:
    if "generator" in spec:
        if spec["generator"] != "basic":
            raise InputError(f"unknown generator {spec['generator']!r}", path)
        opts = {k: spec[k] for k in ("l1", "l2p", "l2m", "l3") if k in spec}
        return basic_algebra(spec.get("l", 1), spec.get("k", 1), **opts)
    return Lie2Algebra.from_dict(spec, path)


def build_action(spec: dict, L: Lie2Algebra, gen: dict | None, name: str, path: str) -> TwoAction:
    if "generator" in spec:
        opts = {k: spec[k] for k in ("rho10", "rho1m1", "rho2") if k in spec}
        return basic_action(L, (gen or {}).get("l", 1), name=name, **opts)
    return TwoAction.from_dict(spec, L, path, name=name)


def load_example(example_id: str) -> Example:
    if example_id not in EXAMPLE_IDS:
        raise KeyError(f"unknown example {example_id!r}; known: {', '.join(EXAMPLE_IDS)}")
    doc = _read(f"{example_id}.json")
    ex = Example(example_id, doc.get("title", ""), doc)
    for name, spec in doc["algebras"].items():
        ex.algebras[name] = build_algebra(spec, f"{example_id}.algebras.{name}")
    for n, spec in enumerate(doc.get("actions", [])):
        alg = spec["algebra"]
        gen = doc["algebras"][alg] if "generator" in doc["algebras"][alg] else None
        ex.actions[spec["name"]] = build_action(spec["action"], ex.algebras[alg], gen, spec["name"],
                                                 f"{example_id}.actions[{n}]")
    return ex


# -- replay -------------------------------------------------------------------

def _expect(rep: Report, name: str, got, want, detail: str | None = None) -> None:
    ok = got == want
    rep.add(CheckResult(name, ok, 1, None if ok else {"expected": want, "computed": got}, detail))


def run_example(example_id: str) -> Report:
    """Replay one example; every check compares a computed value with the stored expectation."""
    from .comoment import (Comomentum, apply_corrections, classify_comoment, find_weak_lift,
                           reconcile_reference_data, verify_comoment)
    from .plectic import PlecticForm
    from .skeletal import skeletalize

    ex = load_example(example_id)
    doc = ex.doc
    rep = Report(f"example {example_id}")
    table = load_table()
    rep.data["title"] = ex.title

    sflags = {}
    for name, L in ex.algebras.items():
        ar = verify_axioms(L)
        rep.add(CheckResult(f"algebra {name}: axioms", ar.passed, len(ar.checks),
                            None if ar.passed else ar.failures()[0].witness))
        sflags[name] = structure_flags(L)
        want = doc.get("algebra_flags", {}).get(name)
        if want is not None:
            _expect(rep, f"algebra {name}: flags", sflags[name], want)
        for m, mut in enumerate(doc.get("mutations", {}).get(name, [])):
            mutated = Lie2Algebra.from_dict(apply_mutation(ex.algebra_doc(name), mut))
            mr = verify_axioms(mutated)
            fails = [c.name for c in mr.failures()]
            rep.add(CheckResult(f"algebra {name}: mutation {m + 1} detected", bool(fails), len(mr.checks),
                                {"fails": fails, "witness": mr.failures()[0].witness} if fails else None))

    for name, spec in doc.get("rejected_algebras", {}).items():
        try:
            ar = verify_axioms(Lie2Algebra.from_dict(spec, path=f"rejected_algebras.{name}"))
            fails = [c.name for c in ar.failures()]
        except InputError as exc:
            fails = [str(exc)]
        rep.add(CheckResult(f"algebra {name}: rejected", bool(fails), 1, {"fails": fails} if fails else None))

    actions = {}
    for spec in doc.get("actions", []):
        name, rho = spec["name"], ex.actions[spec["name"]]
        exp = spec.get("expect", {})
        vr = verify_action(rho)
        _expect(rep, f"action {name}: verified", vr.passed, exp.get("verified", True),
                None if vr.passed else f"first failure {vr.failures()[0].name}")
        T = classify_action(rho)["flags"]
        S = sflags[spec["algebra"]]
        actions[name] = {"verified": vr.passed, "flags": S + "/" + T}
        if "flags" in exp:
            _expect(rep, f"action {name}: flags", f"{S}/{T}", exp["flags"])
        if vr.passed and exp.get("in_table", True):
            cell = table.get(T, {}).get(S, [])
            rep.add(CheckResult(f"action {name}: table cell {T}/{S}", cell_matches(cell, example_id), 1,
                                None if cell_matches(cell, example_id) else {"cell": cell}))
        om = ex.omega_for(spec)
        if om is not None and "plectic" in exp:
            got = plectic_class(rho, parse_form(om, rho.dim, 3))["class"]
            _expect(rep, f"action {name}: plectic class", got, exp["plectic"])
    rep.data["actions"] = actions

    for spec in doc.get("lifts", []):
        rho = ex.actions[spec["action"]]
        om = spec.get("omega", doc.get("omega"))
        lift = find_weak_lift(rho, PlecticForm(parse_form(om, rho.dim, 3)))
        _expect(rep, f"lift {spec['action']}: liftable", lift.liftable, spec["expect"]["liftable"])
        if "obstructed" in spec["expect"]:
            _expect(rep, f"lift {spec['action']}: obstructions", [o["field"] for o in lift.obstructions],
                    spec["expect"]["obstructed"])

    for spec in doc.get("pushforward", []):
        rho = ex.actions[spec["action"]]
        res = pushforward_along_skeletal(rho, skeletalize(rho.algebra))
        _expect(rep, f"pushforward {spec['action']}: possible", res["possible"], spec["expect"]["possible"])
        _expect(rep, f"pushforward {spec['action']}: witnesses", [w["element"] for w in res["witnesses"]],
                spec["expect"]["witnesses"])

    for spec in doc.get("constraints", []):
        L = ex.algebras[spec["algebra"]]
        pairs, rows = rho2_constraint_rows(L)
        r = rank(rows, len(pairs)) if rows else 0
        _expect(rep, f"constraints {spec['algebra']}: rank", r, spec["expect"]["rank"])
        implied = []
        for terms in spec["listed"]:
            row = _condition_row(L, pairs, terms)
            implied.append(rank(rows + [row], len(pairs)) == r)
        _expect(rep, f"constraints {spec['algebra']}: listed conditions implied", implied, spec["expect"]["implied"])

    for cm in ex.comoments:
        rho = ex.actions[cm["action"]]
        fixed = apply_corrections(cm["reference"], cm.get("corrections", []))
        lam = Comomentum.from_dict(fixed, rho, name=cm["name"])
        cr = verify_comoment(lam)
        cls = classify_comoment(lam, cr)
        exp = cm.get("expect", {})
        for key in ("strong", "weak"):
            if key in exp:
                _expect(rep, f"comoment {cm['name']}: {key}", cls[key], exp[key],
                        None if cr.passed else f"failing {', '.join(c.name for c in cr.failures())}")
    if ex.comoments:
        try:
            records = reconcile_reference_data(example_id)
            extra = [r.to_dict() for r in records if not _shipped(ex, r)]
            rep.add(CheckResult("discrepancy records hold", True, len(records)))
            rep.add(CheckResult("no unrecorded discrepancies", not extra, len(records),
                                {"unrecorded": extra} if extra else None))
            rep.data["discrepancies"] = [r.to_dict() for r in records]
        except ValueError as exc:
            rep.add(CheckResult("discrepancy records hold", False, 0, detail=str(exc)))
    return rep


def _shipped(ex: Example, record) -> bool:
    for cm in ex.comoments:
        if cm["name"] == record.comoment:
            return any(c["path"] == record.path for c in cm.get("corrections", []))
    return False


def run_catalog(ids=None) -> Report:
    rep = Report("catalog")
    for i in ids or EXAMPLE_IDS:
        sub = run_example(i)
        rep.extend(sub, prefix=f"{i}: ")
        rep.data[i] = {"passed": sub.passed, **sub.data}
    return rep

