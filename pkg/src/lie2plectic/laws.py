"""Relation and morphism checks shared by every Lie 2-algebra in the package.

A *structure* is any object with the methods

    l1(a), l2p(x, y), l2m(a, x), l3(x, y, z), is_zero(e), fmt(e)

acting on degree -1 elements ``a, b`` and degree 0 elements ``x, y, z``.
Elements must support ``+``, ``-`` and unary ``-``. The mixed bracket is
stored one-sided as ``l2m(a, x)`` and the other order is ``l2(x, a) = -l2m(a, x)``.

Finite algebras feed their basis vectors; the field and observable algebras
feed sampled elements. By multilinearity and antisymmetry the alternating
relations only need increasing index tuples.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Sequence

from .report import CheckResult, Report, run_check


def check_relations(S, A: Sequence, X: Sequence, labels_a: Sequence[str], labels_x: Sequence[str],
                    subject: str = "relations") -> Report:
    """Check R1-R6 on the given degree -1 elements ``A`` and degree 0 elements ``X``."""
    rep = Report(subject)
    rep.add(CheckResult("R1", True, 0, detail="holds by degree: l1 vanishes on degree 0"))

    zero = S.is_zero
    idx_a, idx_x = range(len(A)), range(len(X))

    def fmt_case(names):
        def describe(case, defect):
            return {"inputs": [lab for lab in case_labels(case, names)], "defect": S.fmt(defect)}
        return describe

    def case_labels(case, names):
        return [labels_a[k] if kind == "a" else labels_x[k] for kind, k in zip(names, case)]

    # R2: l1(l2(x, a)) = l2(x, l1(a)), i.e. -l1(l2m(a, x)) = l2p(x, l1 a)
    def r2(case):
        x, a = X[case[0]], A[case[1]]
        return -S.l1(S.l2m(a, x)) - S.l2p(x, S.l1(a))
    rep.add(run_check("R2", product(idx_x, idx_a), r2, zero, fmt_case("xa")))

    # R3: l2(l1 a, b) = l2(a, l1 b), i.e. -l2m(b, l1 a) = l2m(a, l1 b)
    def r3(case):
        a, b = A[case[0]], A[case[1]]
        return -S.l2m(b, S.l1(a)) - S.l2m(a, S.l1(b))
    rep.add(run_check("R3", combinations_with_replacement(idx_a, 2), r3, zero, fmt_case("aa")))

    # R4: l1 l3(x,y,z) = -(l2p(l2p(x,y),z) + c.p.)
    def r4(case):
        x, y, z = (X[k] for k in case)
        jac = S.l2p(S.l2p(x, y), z) + S.l2p(S.l2p(y, z), x) + S.l2p(S.l2p(z, x), y)
        return S.l1(S.l3(x, y, z)) + jac
    rep.add(run_check("R4", combinations(idx_x, 3), r4, zero, fmt_case("xxx")))

    # R5: l3(l1 a, x, y) = -l2(l2(x,y),a) - l2(l2(y,a),x) - l2(l2(a,x),y)
    def r5(case):
        a, x, y = A[case[0]], X[case[1]], X[case[2]]
        rhs = S.l2m(a, S.l2p(x, y)) + S.l2m(S.l2m(a, y), x) - S.l2m(S.l2m(a, x), y)
        return S.l3(S.l1(a), x, y) - rhs
    cases5 = ((a, x, y) for a in idx_a for x, y in combinations(idx_x, 2))
    rep.add(run_check("R5", cases5, r5, zero, fmt_case("axx")))

    # R6: the quadratic l3 relation on four degree 0 elements
    def r6(case):
        x, y, z, t = (X[k] for k in case)
        lhs = (S.l3(S.l2p(x, y), z, t) - S.l3(S.l2p(x, z), y, t) + S.l3(S.l2p(x, t), y, z)
               + S.l3(S.l2p(y, z), x, t) - S.l3(S.l2p(y, t), x, z) + S.l3(S.l2p(z, t), x, y))
        rhs = (S.l2m(S.l3(x, y, z), t) - S.l2m(S.l3(x, y, t), z)
               + S.l2m(S.l3(x, z, t), y) - S.l2m(S.l3(y, z, t), x))
        return lhs - rhs
    rep.add(run_check("R6", combinations(idx_x, 4), r6, zero, fmt_case("xxxx")))
    return rep


def check_morphism(S, T, F10: Callable, F1m1: Callable, F2: Callable, A: Sequence, X: Sequence,
                   labels_a: Sequence[str], labels_x: Sequence[str], subject: str = "morphism",
                   names: Sequence[str] = ("A1", "A2", "A3", "A4")) -> Report:
    """Check A1-A4 for ``F = (F10, F1m1, F2)`` from ``S`` to ``T``.

    ``T.is_zero`` decides every defect; the mixed target bracket with the
    degree 0 argument first is ``l2'(X, b) = -l2m'(b, X)``.
    """
    rep = Report(subject)
    zero = T.is_zero

    def describe(kinds):
        def inner(case, defect):
            labs = [labels_a[k] if kind == "a" else labels_x[k] for kind, k in zip(kinds, case)]
            return {"inputs": labs, "defect": T.fmt(defect)}
        return inner

    idx_a, idx_x = range(len(A)), range(len(X))

    def a1(case):
        a = A[case[0]]
        return T.l1(F1m1(a)) - F10(S.l1(a))
    rep.add(run_check(names[0], ((k,) for k in idx_a), a1, zero, describe("a")))

    def a2(case):
        x, y = X[case[0]], X[case[1]]
        return T.l1(F2(x, y)) - (F10(S.l2p(x, y)) - T.l2p(F10(x), F10(y)))
    rep.add(run_check(names[1], combinations(idx_x, 2), a2, zero, describe("xx")))

    def a3(case):
        a, x = A[case[0]], X[case[1]]
        return F1m1(S.l2m(a, x)) - (F2(S.l1(a), x) + T.l2m(F1m1(a), F10(x)))
    rep.add(run_check(names[2], product(idx_a, idx_x), a3, zero, describe("ax")))

    def a4(case):
        x, y, z = (X[k] for k in case)
        fx, fy, fz = F10(x), F10(y), F10(z)
        lhs = F1m1(S.l3(x, y, z)) + F2(S.l2p(x, y), z) + F2(S.l2p(y, z), x) + F2(S.l2p(z, x), y)
        rhs = T.l3(fx, fy, fz) - T.l2m(F2(y, z), fx) - T.l2m(F2(z, x), fy) - T.l2m(F2(x, y), fz)
        return lhs - rhs
    rep.add(run_check(names[3], combinations(idx_x, 3), a4, zero, describe("xxx")))
    return rep
