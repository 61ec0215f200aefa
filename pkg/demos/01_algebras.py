"""Verify a small Lie 2-algebra, break it, and compute its skeletal model."""

from lie2plectic.catalog import apply_mutation, load_example
from lie2plectic.lie2 import Lie2Algebra, classify_flags, structure_flags, verify_axioms
from lie2plectic.skeletal import check_quasi_iso, skeletalize

ex = load_example("1a")
L = ex.algebras["main"]
print("degree -1:", list(L.labels_m1), " degree 0:", list(L.labels_0))
print(verify_axioms(L).summary())
print("flags:", structure_flags(L), classify_flags(L))

# change one structure constant and watch a relation break
mut = {"table": "l2p", "in": ["x1", "x3"], "out": {"x1": "2"}}
broken = Lie2Algebra.from_dict(apply_mutation(ex.algebra_doc("main"), mut))
for c in verify_axioms(broken).failures():
    print("fails", c.name, c.witness)

res = skeletalize(L)
S = res.skeletal
print("\nskeletal model:", list(S.labels_m1), list(S.labels_0))
x1, x3 = S.basis_0()
print("l2(x1, x3) =", S.fmt(S.l2p(x1, x3)), " l3 entries:", len(S.tables["l3"]))
print(check_quasi_iso(res).summary())
