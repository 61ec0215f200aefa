import json

import pytest

from lie2plectic.action import classify_action, verify_action
from lie2plectic.catalog import (EXAMPLE_IDS, apply_mutation, basic_action, basic_algebra, cell_matches,
                                 list_examples, load_example, load_table, run_catalog, run_example)
from lie2plectic.lie2 import Lie2Algebra, structure_flags, verify_axioms


def test_ten_examples():
    assert list_examples() == ["1a", "1b", "2a", "2b", "2c", "3a", "3b", "4a", "4b", "5"]


def test_unknown_example():
    with pytest.raises(KeyError):
        load_example("6")


@pytest.mark.parametrize("ex_id", EXAMPLE_IDS)
def test_replay_passes(ex_id):
    rep = run_example(ex_id)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("ex_id", EXAMPLE_IDS)
def test_every_algebra_passes_axioms(ex_id):
    for name, L in load_example(ex_id).algebras.items():
        assert verify_axioms(L).passed, name


@pytest.mark.parametrize("ex_id", ["1a", "1b", "3a", "3b"])
def test_six_shipped_mutations_each_fail_with_witness(ex_id):
    ex = load_example(ex_id)
    muts = ex.doc["mutations"]["main"]
    assert len(muts) == 6
    for mut in muts:
        rep = verify_axioms(Lie2Algebra.from_dict(apply_mutation(ex.algebra_doc("main"), mut)))
        fails = rep.failures()
        assert fails and fails[0].witness is not None, mut


@pytest.mark.parametrize("ex_id", EXAMPLE_IDS)
def test_verified_actions_land_in_populated_table_cells(ex_id):
    ex = load_example(ex_id)
    table = load_table()
    for spec in ex.doc.get("actions", []):
        rho = ex.actions[spec["name"]]
        if not verify_action(rho).passed or not spec.get("expect", {}).get("in_table", True):
            continue
        S = structure_flags(ex.algebras[spec["algebra"]])
        T = classify_action(rho)["flags"]
        assert cell_matches(table[T][S], ex_id), (spec["name"], T, S)


def test_table_shape():
    doc = json.loads(json.dumps(load_table()))
    assert sorted(doc) == ["T135", "T136", "T145", "T146", "T235", "T236", "T245", "T246"]
    for row in doc.values():
        assert sorted(row) == ["S0", "S135", "S136", "S145", "S146", "S235", "S236", "S245", "S246"]


def test_family_token_matches_members():
    assert cell_matches(["2"], "2b") and cell_matches(["2a"], "2a") and not cell_matches(["2a"], "2b")


def test_basic_generator_default_instance():
    L = basic_algebra()
    assert verify_axioms(L).passed
    assert list(L.labels_0) == ["y1", "y2", "y3", "x1", "x2", "x3", "y4"]
    assert list(L.labels_m1) == ["a1", "b1", "c1_1", "c1_2", "c1_3"]
    rho = basic_action(L)
    assert rho.dim == 3
    assert verify_action(rho).passed


@pytest.mark.parametrize("l,k", [(1, 2), (2, 1)])
def test_basic_generator_larger_instances(l, k):
    L = basic_algebra(l, k)
    assert verify_axioms(L).passed
    assert verify_action(basic_action(L, l)).passed


def test_basic_generator_rejects_bad_sizes():
    with pytest.raises(ValueError):
        basic_algebra(0, 1)
    with pytest.raises(ValueError):
        basic_algebra(1, 0)


def test_eight_dimensional_algebra_as_printed_is_rejected():
    rep = run_example("4a")
    assert rep["algebra nilpotent8_as_listed: rejected"].passed


def test_second_example_replay_reports_obstruction_and_witness():
    rep = run_example("2b")
    assert rep["action main: plectic class"].passed
    assert rep["lift main: obstructions"].passed
    assert rep["pushforward main: witnesses"].passed


def test_full_catalog_is_deterministic():
    a = json.dumps(run_catalog().to_dict(), sort_keys=True, default=str)
    b = json.dumps(run_catalog().to_dict(), sort_keys=True, default=str)
    assert a == b
