import random

import pytest
from hypothesis import given, strategies as st

from lie2plectic.action import TwoAction, classify_action, plectic_class, pushforward_along_skeletal, verify_action
from lie2plectic.calculus import MultiVectorField, contract, exterior_derivative, form, schouten, vector
from lie2plectic.catalog import basic_action, basic_algebra, load_example
from lie2plectic.lie2 import Lie2Algebra
from lie2plectic.schema import InputError
from lie2plectic.skeletal import skeletalize

VOL = form("dq1^dq2^dq3", 3, 3)
OMEGA6 = form("dq1^dq5^dq6 - dq2^dq4^dq6 + dq3^dq4^dq5", 6, 3)


def first_example():
    return load_example("1a").algebras["main"]


def action(L, doc, name="test"):
    return TwoAction.from_dict(doc, L, name=name)


SUB1 = {"chart_dim": 3, "rho10": {"x3": "e3"}, "rho1m1": {"a": "e2^e3"},
        "rho2": [{"in": ["x2", "x1"], "out": "e2^e3"}]}


def test_first_sub_example_is_an_action():
    rho = action(first_example(), SUB1)
    rep = verify_action(rho)
    assert rep.passed, rep.summary()
    assert [c.name for c in rep.checks] == ["A1", "A2", "A3", "A4"]


def test_zero_action_passes():
    rho = action(first_example(), {"chart_dim": 3})
    assert verify_action(rho).passed
    assert classify_action(rho) == {"flags": "T246", "strict": True}
    assert plectic_class(rho, VOL)["class"] == "two_plectic"


def test_rho2_zero_with_nonzero_rho1m1_fails_third_condition():
    doc = dict(SUB1, rho2=[])
    rep = verify_action(action(first_example(), doc))
    assert not rep["A3"].passed
    assert rep["A1"].passed and rep["A2"].passed


def test_classification_of_first_sub_example():
    assert classify_action(action(first_example(), SUB1)) == {"flags": "T135", "strict": False}


def test_lie_algebra_action_gives_strict_action():
    # two-dimensional nonabelian Lie algebra by linear fields, nothing in degree -1
    L = Lie2Algebra.build([], ["h", "e"], l2p={("h", "e"): {"e": 2}})
    assert schouten(vector("-2*q1*e1", 2), vector("e1", 2)) == vector("2*e1", 2)
    rho = action(L, {"chart_dim": 2, "rho10": {"h": "-2*q1*e1", "e": "e1"}})
    rep = verify_action(rho)
    assert rep.passed, rep.summary()
    assert classify_action(rho) == {"flags": "T146", "strict": True}


def test_broken_bracket_compatibility_reports_defect():
    L = Lie2Algebra.build([], ["h", "e"], l2p={("h", "e"): {"e": 2}})
    rep = verify_action(action(L, {"chart_dim": 2, "rho10": {"h": "2*q1*e1", "e": "e1"}}))
    assert not rep["A2"].passed
    assert rep["A2"].witness is not None


@pytest.mark.parametrize("ex", ["1a", "1b", "2a", "2b", "2c", "3a", "3b", "4a", "4b", "5"])
def test_catalog_actions_match_stored_verdicts(ex):
    e = load_example(ex)
    for spec in e.doc.get("actions", []):
        rho = e.actions[spec["name"]]
        want = spec.get("expect", {})
        if "verified" in want:
            assert verify_action(rho).passed == want["verified"], spec["name"]
        if "flags" in want:
            assert want["flags"].split("/")[1] == classify_action(rho)["flags"], spec["name"]


def test_second_example_not_2plectic_with_four_witnesses():
    rho = load_example("2b").actions["main"]
    pc = plectic_class(rho, OMEGA6)
    assert pc["class"] == "neither"
    assert [f["field"] for f in pc["failures"]] == ["rho10(x1)", "rho10(x2)", "rho10(x3)", "rho10(x4)"]


def test_constant_bivectors_on_volume_are_2plectic():
    assert plectic_class(action(first_example(), SUB1), VOL)["class"] == "two_plectic"


def test_quasi_2plectic_when_only_rho2_fails():
    L = Lie2Algebra.build([], ["x", "y"])
    rho = action(L, {"chart_dim": 3, "rho2": [{"in": ["x", "y"], "out": "q1*e1^e2"}]})
    assert verify_action(rho).passed
    assert plectic_class(rho, VOL)["class"] == "quasi_two_plectic"


def test_chart_mismatch_between_action_and_form():
    with pytest.raises(ValueError):
        plectic_class(action(first_example(), SUB1), OMEGA6)


@pytest.mark.parametrize("ex", ["1a", "1b", "2a", "2b", "3a", "4a"])
def test_two_plectic_means_every_contraction_is_closed(ex):
    e = load_example(ex)
    for spec in e.doc.get("actions", []):
        om_text = e.omega_for(spec)
        rho = e.actions[spec["name"]]
        if not om_text:
            continue
        om = form(om_text, rho.dim, 3)
        if plectic_class(rho, om)["class"] == "two_plectic":
            for _, v in rho.images():
                assert exterior_derivative(contract(v, om)).is_zero()


def test_trivial_image_flags_make_bracket_condition_vacuous():
    L = first_example()
    rho = action(L, {"chart_dim": 3, "rho1m1": {"a": "e2^e3"}, "rho2": [{"in": ["x2", "x1"], "out": "e2^e3"}]})
    assert classify_action(rho)["flags"].startswith("T2")
    for x in L.basis_0():
        for y in L.basis_0():
            assert rho.r10(L.l2p(x, y)).is_zero()
            assert schouten(rho.r10(x), rho.r10(y)).is_zero()


# -- pushforward along the skeletalization --------------------------------

def test_pushforward_fails_for_small_basic_instance():
    L = basic_algebra(1, 1)
    rho = basic_action(L, 1)
    assert verify_action(rho).passed
    out = pushforward_along_skeletal(rho, skeletalize(L))
    assert not out["possible"]
    assert [w["element"] for w in out["witnesses"]] == ["b1"]
    assert out["witnesses"][0]["rho1m1"] == "e2^e3"
    assert not out["conditions"]["C2"].passed


def test_pushforward_on_skeletal_input_reproduces_action():
    L = load_example("3a").algebras["main"]
    for name, rho in load_example("3a").actions.items():
        if not verify_action(rho).passed:
            continue
        out = pushforward_along_skeletal(rho, skeletalize(L))
        assert out["possible"], name
        bar = out["action"]
        assert bar.rho10 == rho.rho10 and bar.rho1m1 == rho.rho1m1 and bar.rho2 == rho.rho2


def test_pushforward_succeeds_when_rho1m1_lives_on_kernel():
    # a -> x is injective, c spans ker l1; rho1m1 only on c
    L = Lie2Algebra.build(["a", "c"], ["x", "y"], l1={"a": {"x": 1}})
    rho = action(L, {"chart_dim": 3, "rho10": {"y": "e3"}, "rho1m1": {"c": "e1^e2"}})
    assert verify_action(rho).passed
    out = pushforward_along_skeletal(rho, skeletalize(L))
    assert out["possible"]
    assert out["witnesses"] == []
    assert all(c.passed for c in out["conditions"].checks)


def test_pushforward_rejects_foreign_skeletalization():
    rho = action(first_example(), SUB1)
    with pytest.raises(ValueError):
        pushforward_along_skeletal(rho, skeletalize(load_example("3b").algebras["main"]))


# -- input validation -----------------------------------------------------

@pytest.mark.parametrize("doc,path", [
    ({"chart_dim": 0}, "action.chart_dim"),
    ({"chart_dim": 3, "rho10": {"zz": "e1"}}, "action.rho10.zz"),
    ({"chart_dim": 3, "rho10": {"x1": "e1^e2"}}, "action.rho10.x1"),
    ({"chart_dim": 3, "rho1m1": {"a": "e1"}}, "action.rho1m1.a"),
    ({"chart_dim": 3, "rho2": [{"in": ["x1", "x1"], "out": "e1^e2"}]}, "action.rho2[0].in"),
    ({"chart_dim": 3, "rho2": [{"in": ["x1", "x2"], "out": "e1^e2"}, {"in": ["x2", "x1"], "out": "e1^e3"}]},
     "action.rho2[1]"),
])
def test_malformed_action_reports_field_path(doc, path):
    with pytest.raises(InputError) as info:
        action(first_example(), doc)
    assert info.value.path == path


def test_round_trip():
    rho = action(first_example(), SUB1)
    again = TwoAction.from_dict(rho.to_dict(), rho.algebra)
    assert (again.rho10, again.rho1m1, again.rho2) == (rho.rho10, rho.rho1m1, rho.rho2)


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_rescaled_sub_example_stays_an_action_only_consistently(s, t):
    # scaling rho1m1(a) and rho2(x2,x1) together keeps A3; scaling them apart breaks it
    L = first_example()
    doc = {"chart_dim": 3, "rho10": {"x3": "e3"}, "rho1m1": {"a": f"{s}*e2^e3"},
           "rho2": [{"in": ["x2", "x1"], "out": f"{t}*e2^e3"}]}
    rho = action(L, doc)
    assert verify_action(rho)["A3"].passed == (s == t)
