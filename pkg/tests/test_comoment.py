import copy
import random

import pytest

from lie2plectic.action import TwoAction, verify_action
from lie2plectic.calculus import DifferentialForm, contract, differential, exterior_derivative, form, vector
from lie2plectic.catalog import EXAMPLE_IDS, load_example
from lie2plectic.comoment import (Comomentum, HomotopyMomentMap, apply_corrections, bridge_from_homotopy,
                                  bridge_to_homotopy, classify_comoment, condition_defects, find_weak_lift,
                                  reconcile_reference_data, verify_comoment, verify_homotopy_moment_map)
from lie2plectic.lie2 import Lie2Algebra
from lie2plectic.plectic import HamiltonianForm, Observable, PlecticForm
from lie2plectic.ring import ExpPoly, parse_expr
from lie2plectic.schema import InputError

VOL = form("dq1^dq2^dq3", 3, 3)
P3 = PlecticForm(VOL)


def catalog_comoment(ex_id, name=None, corrected=True):
    ex = load_example(ex_id)
    cm = next(c for c in ex.comoments if name is None or c["name"] == name)
    doc = apply_corrections(cm["reference"], cm.get("corrections", [])) if corrected else cm["reference"]
    return Comomentum.from_dict(doc, ex.actions[cm["action"]], name=cm["name"]), cm


def all_comoments():
    out = []
    for i in EXAMPLE_IDS:
        for cm in load_example(i).comoments:
            out.append(pytest.param(i, cm["name"], id=f"{i}-{cm['name']}"))
    return out


# -- verification -------------------------------------------------------------

def test_reference_values_fail_and_corrected_values_pass_for_3a():
    ref, cm = catalog_comoment("3a", corrected=False)
    rep = verify_comoment(ref)
    assert not rep["C1"].passed
    assert rep["C1"].witness["inputs"] == ["x2"]
    fixed, _ = catalog_comoment("3a")
    rep = verify_comoment(fixed)
    assert rep.passed, rep.summary()
    assert rep.data == {"strong": True, "weak": True, "fundamental": True}


def test_corrected_3a_values():
    lam, _ = catalog_comoment("3a")
    L = lam.algebra
    x1, x2, x3 = L.basis_0()
    assert lam.l10(x2).alpha == form("q2*dq3", 3, 1)
    assert lam.l10(x3).alpha == form("-q2*dq3", 3, 1)
    ob = lam.l2(x1, x2)
    assert ob.f == parse_expr("q2", 3) and ob.v == vector("e1^e3", 3)


@pytest.mark.parametrize("ex_id,name", all_comoments())
def test_catalog_comoments_match_stored_verdicts(ex_id, name):
    lam, cm = catalog_comoment(ex_id, name)
    c = classify_comoment(lam)
    assert c["strong"] == cm["expect"]["strong"]
    assert c["weak"] == cm["expect"]["weak"]
    assert c["fundamental"]


@pytest.mark.parametrize("ex_id,name", all_comoments())
def test_strong_implies_weak(ex_id, name):
    lam, _ = catalog_comoment(ex_id, name)
    rep = verify_comoment(lam)
    if rep.data["strong"]:
        assert condition_defects(lam).passed


@pytest.mark.parametrize("ex_id,name", all_comoments())
def test_contractions_have_explicit_primitives(ex_id, name):
    """For a passing comomentum every contraction of an image field is exact with the stored primitive."""
    lam, _ = catalog_comoment(ex_id, name)
    if not verify_comoment(lam).data["weak"]:
        pytest.skip("only weak comomenta carry primitives")
    rho, P, L = lam.action, lam.P, lam.algebra
    for x in L.basis_0():
        v = rho.r10(x)
        if v.coeffs:
            assert contract(v, P.omega) == -exterior_derivative(lam.l10(x).alpha)
    for a in L.basis_m1():
        v = rho.r1m1(a)
        if v.coeffs:
            assert contract(v, P.omega) == -differential(lam.l1m1(a).f)
    X = L.basis_0()
    for i in range(L.dim_0):
        for j in range(i + 1, L.dim_0):
            v = rho.r2(X[i], X[j])
            if v.coeffs:
                assert contract(v, P.omega) == -differential(lam.l2(X[i], X[j]).f)


def test_zero_comoment_for_zero_action():
    L = Lie2Algebra.build(["a"], ["x", "y"], l2p={("x", "y"): {"x": 1}}, l2m={("a", "x"): {"a": 1}})
    rho = TwoAction(L, 3)
    lam = Comomentum(rho, P3)
    rep = verify_comoment(lam)
    assert rep.passed, rep.summary()


def test_second_component_perturbation_gives_weak_only():
    lam, _ = catalog_comoment("3a")
    key = next(iter(sorted(lam.lambda2)))
    ob = lam.lambda2[key]
    lam2 = dict(lam.lambda2)
    lam2[key] = Observable(ob.ftilde + parse_expr("q1", 3), ob.pair)
    bad = Comomentum(lam.action, lam.P, lam.lambda10, lam.lambda1m1, lam2)
    c = classify_comoment(bad)
    assert c == {"fundamental": True, "strong": False, "weak": True, "weak_only": True}
    assert not verify_comoment(bad)["A2"].passed


def test_nonstrict_gradient_is_not_fundamental():
    lam, _ = catalog_comoment("5")
    other = Comomentum(lam.action, lam.P, lam.lambda10, lam.lambda1m1, lam.lambda2,
                       psi2=lambda a, b: vector("0", lam.dim, 2))
    assert classify_comoment(other)["fundamental"] is False


def test_fundamental_example_5():
    lam, _ = catalog_comoment("5")
    c = classify_comoment(lam)
    assert c["fundamental"] and c["strong"]


# -- weak lifts ---------------------------------------------------------------

def test_weak_lift_of_translation():
    L = Lie2Algebra.build([], ["x"])
    rho = TwoAction(L, 3, {0: vector("e1", 3)})
    lift = find_weak_lift(rho, VOL)
    assert lift.liftable
    alpha = lift.comoment.l10(L.basis_0()[0]).alpha
    assert alpha == form("-1/2*q2*dq3 + 1/2*q3*dq2", 3, 1)
    assert exterior_derivative(alpha) == -contract(vector("e1", 3), VOL)


def test_weak_lift_of_zero_action_is_zero():
    L = load_example("1a").algebras["main"]
    lift = find_weak_lift(TwoAction(L, 3), VOL)
    assert lift.liftable
    assert not list(lift.comoment.entries())


@pytest.mark.parametrize("ex_id", ["1a", "1b", "3a", "4a"])
def test_weak_lifts_pass_the_conditions(ex_id):
    ex = load_example(ex_id)
    for spec in ex.doc.get("actions", []):
        rho = ex.actions[spec["name"]]
        om = ex.omega_for(spec)
        if not om or not verify_action(rho).passed:
            continue
        if any(v.has_exponentials() for _, v in rho.images()):
            with pytest.raises(ValueError):
                find_weak_lift(rho, form(om, rho.dim, 3))
            continue
        lift = find_weak_lift(rho, form(om, rho.dim, 3))
        if lift.liftable:
            assert condition_defects(lift.comoment).passed, spec["name"]
        else:
            assert lift.obstructions


def test_exponential_action_is_obstructed():
    ex = load_example("2b")
    lift = find_weak_lift(ex.actions["main"], form(ex.doc["omega"], 6, 3))
    assert not lift.liftable
    assert [o["field"] for o in lift.obstructions] == ["rho10(x1)", "rho10(x2)", "rho10(x3)", "rho10(x4)"]


def test_closed_exponential_contractions_cannot_be_integrated():
    L = Lie2Algebra.build([], ["x"])
    om6 = form("dq1^dq5^dq6 - dq2^dq4^dq6 + dq3^dq4^dq5", 6, 3)
    rho = TwoAction(L, 6, {0: vector("exp(-q4)*e2", 6)})
    with pytest.raises(ValueError):
        find_weak_lift(rho, om6)


# -- bridge -------------------------------------------------------------------

def _abelian_homotopy_map():
    # g0 = <x> + im l1 with l1(a) = y; lambda10 vanishes on im l1
    L = Lie2Algebra.build(["a"], ["x", "y"], l1={"a": {"y": 1}})
    rho = TwoAction(L, 3, {0: vector("e1", 3)})
    lam10 = {0: P3.form(form("-1/2*q2*dq3 + 1/2*q3*dq2", 3, 1))}
    return HomotopyMomentMap(rho, P3, lam10, {0: parse_expr("1", 3)}, {})


def test_forward_bridge_verifies():
    hm = _abelian_homotopy_map()
    assert verify_homotopy_moment_map(hm).passed
    lam = bridge_from_homotopy(hm)
    rep = verify_comoment(lam)
    assert rep.passed, rep.summary()


def test_bridge_round_trip_is_identity():
    hm = _abelian_homotopy_map()
    back = bridge_to_homotopy(bridge_from_homotopy(hm))
    assert back.lambda10 == hm.lambda10 and back.lambda1m1 == hm.lambda1m1 and back.lambda2 == hm.lambda2


def test_zero_homotopy_map_bridges_to_zero():
    L = Lie2Algebra.build(["a"], ["x"])
    lam = bridge_from_homotopy(HomotopyMomentMap(TwoAction(L, 3), P3))
    assert not list(lam.entries())
    assert verify_comoment(lam).passed


def test_bridge_requires_vanishing_higher_action():
    lam, _ = catalog_comoment("3a")
    with pytest.raises(ValueError):
        bridge_from_homotopy(bridge_to_homotopy(lam))


@pytest.mark.parametrize("ex_id,name", all_comoments())
def test_projection_after_inclusion_on_catalog_comoments(ex_id, name):
    lam, _ = catalog_comoment(ex_id, name)
    hm = bridge_to_homotopy(lam)
    for a, ob in lam.lambda1m1.items():
        assert hm.lambda1m1[a] == ob.ftilde


# -- discrepancy records --------------------------------------------------------

@pytest.mark.parametrize("ex_id", EXAMPLE_IDS)
def test_shipped_records_hold_and_nothing_else_is_found(ex_id):
    records = reconcile_reference_data(ex_id)
    shipped = [(cm["name"], r["path"]) for cm in load_example(ex_id).comoments for r in cm.get("corrections", [])]
    assert [(r.comoment, r.path) for r in records] == shipped


def test_heisenberg_record_is_a_sign_flip_of_the_translation_primitive():
    rec = next(r for r in reconcile_reference_data("4a") if r.path == "lambda10.x")
    assert (rec.reference_value, rec.derived_value, rec.kind, rec.condition) == \
        ("q2*dq3", "-q2*dq3", "sign flip", "C1")


def test_each_record_fails_verbatim_and_passes_derived():
    for ex_id in EXAMPLE_IDS:
        ex = load_example(ex_id)
        for cm in ex.comoments:
            recs = cm.get("corrections", [])
            for rec in recs:
                without = apply_corrections(cm["reference"], recs, skip=rec["path"])
                lam = Comomentum.from_dict(without, ex.actions[cm["action"]])
                assert not verify_comoment(lam)[rec["condition"]].passed
            lam = Comomentum.from_dict(apply_corrections(cm["reference"], recs), ex.actions[cm["action"]])
            assert condition_defects(lam).passed


def test_consistent_entry_gives_no_record():
    assert reconcile_reference_data("5") == []


def test_planted_sign_error_is_detected():
    ex = load_example("3a")
    cm = ex.comoments[0]
    doc = apply_corrections(cm["reference"], cm["corrections"])
    doc = copy.deepcopy(doc)
    doc["lambda1m1"]["a"]["f"] = "q2"
    from lie2plectic.comoment import _detect
    found = _detect("3a", "sub1", doc, ex.actions[cm["action"]], set())
    assert [(r.path, r.kind, r.derived_value["f"]) for r in found] == [("lambda1m1.a", "sign flip", "-q2")]


# -- input validation -----------------------------------------------------------

@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.update(omega="dq1^dq2"), "comoment.omega"),
    (lambda d: d.update(omega="dq1^dq2^dq3 - dq1^dq2^dq3"), "comoment.omega"),
    (lambda d: d["lambda10"].update(zz="dq1"), "comoment.lambda10.zz"),
    (lambda d: d["lambda10"].update(x1="e1"), "comoment.lambda10.x1.alpha"),
    (lambda d: d["lambda1m1"]["a"].update(f=[1]), "comoment.lambda1m1.a.f"),
    (lambda d: d["lambda2"][0].update({"in": ["x1", "x1"]}), "comoment.lambda2[0].in"),
])
def test_malformed_comoment_reports_field_path(mutate, path):
    ex = load_example("3a")
    cm = ex.comoments[0]
    doc = copy.deepcopy(cm["reference"])
    mutate(doc)
    with pytest.raises(InputError) as info:
        Comomentum.from_dict(doc, ex.actions[cm["action"]])
    assert info.value.path == path
