import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given

from lie2plectic.calculus import (CONTRACTION_CONVENTION, DifferentialForm, FieldAlgebra, MultiVectorField,
                                  ObservablePair, cartan_selfcheck, contract, endo_action, exterior_derivative,
                                  form, lie_derivative, random_form, random_vector_field, schouten, vector,
                                  verify_endo_morphism, wedge)
from lie2plectic.laws import check_relations
from lie2plectic.ring import ExpPoly, parse_expr

from conftest import bivectors, forms, functions, seeds, vector_fields


def V(text, dim=3):
    return vector(text, dim)


def F(text, degree, dim=3):
    return form(text, dim, degree)


VOL = F("dq1^dq2^dq3", 3)


def test_wedge_examples():
    assert wedge(V("e1"), V("e2")) == V("e1^e2")
    assert wedge(V("e1"), V("e1")).is_zero()
    assert wedge(F("q1*dq2", 1), F("dq1", 1)) == F("-q1*dq1^dq2", 2)


def test_wedge_beyond_top_degree_is_zero():
    assert wedge(F("dq1^dq2", 2), F("dq1^dq3", 2)).is_zero()


def test_chart_mismatch_rejected():
    with pytest.raises(ValueError):
        wedge(V("e1", 3), V("e1", 4))
    with pytest.raises(ValueError):
        contract(V("e1", 4), VOL)


def test_contraction_examples():
    assert contract(V("e1"), VOL) == F("dq2^dq3", 2)
    assert contract(V("e1^e2"), VOL) == F("dq3", 1)
    assert contract(V("e1^e2"), F("dq1", 1)).is_zero()
    assert CONTRACTION_CONVENTION == "first-vector-first-slot"


def _eval_constant_form(alpha, vectors):
    """alpha(v1, ..., vp) for constant alpha and constant vectors via the permutation expansion."""
    total = Fraction(0)
    p = alpha.degree
    for idx, c in alpha.coeffs.items():
        c = c.constant_value()
        for perm in permutations(range(p)):
            sign = 1
            for i in range(p):
                for j in range(i + 1, p):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = Fraction(1)
            for slot, k in enumerate(perm):
                prod *= vectors[slot].get(idx[k], 0)
            total += sign * c * prod
    return total


def _const_vec(rng, dim):
    return {i: Fraction(rng.randint(-2, 2)) for i in range(1, dim + 1)}


def _as_field(vec, dim):
    return MultiVectorField(dim, 1, {(i,): c for i, c in vec.items() if c})


def test_contraction_matches_slot_evaluation_oracle():
    rng = random.Random(11)
    dim = 4
    for _ in range(60):
        coeffs = {}
        for idx in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
            c = rng.randint(-2, 2)
            if c:
                coeffs[idx] = c
        alpha = DifferentialForm(dim, 3, coeffs)
        u, w, z = (_const_vec(rng, dim) for _ in range(3))
        # iota_{u^w} alpha evaluated on z equals alpha(u, w, z): first vector into first slot
        two = contract(wedge(_as_field(u, dim), _as_field(w, dim)), alpha)
        got = contract(_as_field(z, dim), two)
        want = _eval_constant_form(alpha, [u, w, z])
        assert got == DifferentialForm(dim, 0, {(): want} if want else {})


def test_exterior_derivative_examples():
    assert exterior_derivative(F("q2*dq3", 1)) == F("dq2^dq3", 2)
    assert exterior_derivative(F("exp(q1)*dq2", 1)) == F("exp(q1)*dq1^dq2", 2)
    assert exterior_derivative(F("dq1", 1)).is_zero()


def test_lie_derivative_examples():
    assert lie_derivative(V("e1"), F("q1*dq2", 1)) == F("dq2", 1)
    assert lie_derivative(V("e1^e2"), F("q1*q2*dq1^dq2", 2)) == F("q2*dq1 + q1*dq2", 1)
    assert lie_derivative(V("q1*e1^e3"), DifferentialForm.zero(3, 2)).is_zero()


def _classical_lie_1form(X, alpha, dim):
    """(L_X alpha)_i = X^j d_j alpha_i + alpha_j d_i X^j."""
    zero = ExpPoly.zero(dim)
    out = {}
    for i in range(1, dim + 1):
        acc = zero
        for j in range(1, dim + 1):
            Xj = X.coefficient((j,))
            acc = acc + Xj * alpha.coefficient((i,)).partial(j) + alpha.coefficient((j,)) * Xj.partial(i)
        out[(i,)] = acc
    return DifferentialForm(dim, 1, out)


@given(vector_fields(), forms(1))
def test_lie_derivative_of_vector_field_is_classical(X, alpha):
    assert lie_derivative(X, alpha) == _classical_lie_1form(X, alpha, 3)


def test_schouten_examples():
    assert schouten(V("e1"), V("e2")).is_zero()
    assert schouten(V("q1*e2"), V("e1^e3")) == V("-e2^e3")
    assert schouten(V("e1"), V("q1*e1^e2")) == V("e1^e2")


def test_schouten_antisymmetry_rule_for_bivector_first():
    X, w = V("q2*e1 + exp(q3)*e2"), V("q1*e2^e3 - e1^e2")
    assert schouten(w, X) == -schouten(X, w)


def test_schouten_unsupported_degrees():
    with pytest.raises(ValueError):
        schouten(V("e1^e2"), V("e2^e3"))


@given(vector_fields(), vector_fields())
def test_schouten_on_vectors_is_commutator(X, Y):
    f = parse_expr("q1*q2 + exp(-q3)", 3)

    def apply(Z, g):
        return sum((Z.coefficient((j,)) * g.partial(j) for j in range(1, 4)), ExpPoly.zero(3))
    assert apply(schouten(X, Y), f) == apply(X, apply(Y, f)) - apply(Y, apply(X, f))


@given(forms(0), forms(1), forms(2))
def test_d_squared_vanishes(f, a, b):
    for x in (f, a, b):
        assert exterior_derivative(exterior_derivative(x)).is_zero()


@given(vector_fields(), vector_fields(), bivectors(), forms(2))
def test_insertions_anticommute_and_commute(X, Y, v, alpha):
    assert (contract(X, contract(Y, alpha)) + contract(Y, contract(X, alpha))).is_zero()
    assert (contract(X, contract(v, VOL)) - contract(v, contract(X, VOL))).is_zero()


@given(vector_fields(), vector_fields(), seeds)
def test_three_expressions_for_wedge_lie_derivative_agree(X, Y, seed):
    rng = random.Random(seed)
    for degree in (1, 2, 3):
        a = random_form(rng, 3, degree)
        direct = lie_derivative(wedge(X, Y), a)
        br = contract(schouten(X, Y), a)
        assert lie_derivative(Y, contract(X, a)) - contract(Y, lie_derivative(X, a)) == direct
        assert contract(X, lie_derivative(Y, a)) - contract(Y, lie_derivative(X, a)) - br == direct
        assert lie_derivative(Y, contract(X, a)) - lie_derivative(X, contract(Y, a)) + br == direct


@given(bivectors(), bivectors(), functions(), forms(3))
def test_contraction_is_coefficient_linear(v, w, f, alpha):
    fv = v.map_coeffs(lambda c: f * c)
    assert contract(fv + w, alpha) == contract(v, alpha).map_coeffs(lambda c: f * c) + contract(w, alpha)


@given(seeds)
def test_field_algebra_jacobi_relations(seed):
    rng = random.Random(seed)
    X = [random_vector_field(rng, 3) for _ in range(3)]
    from lie2plectic.calculus import random_bivector
    A = [random_bivector(rng, 3) for _ in range(2)]
    rep = check_relations(FieldAlgebra(3), A, X, ["w1", "w2"], ["X", "Y", "Z"])
    assert rep["R4"].passed and rep["R5"].passed, rep.summary()
    assert rep.passed, rep.summary()


def test_cartan_selfcheck_seeded_passes():
    rep = cartan_selfcheck(3, 42, 100)
    assert rep.passed, rep.summary()
    assert len(rep.checks) == 7
    assert all(c.checked == 100 for c in rep.checks)


def test_cartan_selfcheck_zero_trials():
    rep = cartan_selfcheck(3, 1, 0)
    assert rep.passed and all(c.checked == 0 for c in rep.checks)


def test_cartan_selfcheck_detects_sign_flipped_contraction():
    def flipped(v, a):
        out = contract(v, a)
        return -out if v.degree == 1 else out
    rep = cartan_selfcheck(3, 42, 20, contraction=flipped)
    bad = [c.name for c in rep.failures()]
    assert "L_X i_v - i_v L_X = i_[X,v]" in bad
    assert rep["L_X i_v - i_v L_X = i_[X,v]"].witness is not None


def test_cartan_selfcheck_needs_three_dimensions():
    with pytest.raises(ValueError):
        cartan_selfcheck(2, 0, 1)


def test_endo_action_examples():
    one = endo_action(V("e1"), ObservablePair(parse_expr("q1", 3), F("q2*dq3", 1)))
    assert one.f == parse_expr("1", 3) and one.alpha.is_zero()
    two = endo_action(V("e1^e2"), ObservablePair(parse_expr("0", 3), F("q1*dq2", 1)))
    assert two.f == parse_expr("-1", 3) and two.alpha.is_zero()
    zero = endo_action(V("q1*e2"), ObservablePair(parse_expr("0", 3), DifferentialForm.zero(3, 1)))
    assert zero.f.is_zero() and zero.alpha.is_zero()


def test_endo_action_rejects_other_degrees():
    with pytest.raises(ValueError):
        endo_action(MultiVectorField(3, 3, {(1, 2, 3): 1}), ObservablePair(parse_expr("0", 3),
                                                                             DifferentialForm.zero(3, 1)))


def test_endomorphism_representation_passes():
    rep = verify_endo_morphism(3, 7, 50)
    assert rep.passed, rep.summary()


def test_endomorphism_representation_detects_sign_mutation():
    rep = verify_endo_morphism(3, 7, 10, tau2m_sign=-1)
    assert "A3" in [c.name for c in rep.failures()]
    assert rep["A3"].witness is not None


def test_literal_round_trip():
    for text, deg in [("q1*e1^e3 - exp(-q2)*e2^e3", 2), ("e1 + 1/2*e3", 1)]:
        v = V(text)
        assert v.degree == deg and V(str(v)) == v
    a = F("q1*dq2^dq3 - exp(2*q1)*dq1^dq2", 2)
    assert F(str(a), 2) == a


@pytest.mark.parametrize("bad", ["e4", "e1^e1^", "dq1^e2", "q1*e1 + dq2"])
def test_bad_literals(bad):
    with pytest.raises(ValueError):
        vector(bad, 3)
