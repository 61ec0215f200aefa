"""Lie algebra cohomology and the cocycle carried by the ternary bracket."""

from lie2plectic.catalog import load_example
from lie2plectic.cohomology import CEComplex, l3_cochain, wagemann_compare
from lie2plectic.lie2 import Lie2Algebra, Vec
from lie2plectic.skeletal import skeletalize


def trivial(L):
    X = L.basis_0()
    return CEComplex(L.dim_0, 1, lambda i, j: L.l2p(X[i], X[j]), lambda i, a: Vec.zero(-1, 1), check=False)


H = Lie2Algebra.build([], ["x", "y", "z"], l2p={("x", "y"): {"z": 1}})
print("Heisenberg, trivial coefficients:", [trivial(H).cohomology_dim(k) for k in range(4)])
A = Lie2Algebra.build([], ["x1", "x2", "x3", "x4"])
print("abelian R^4:", [trivial(A).cohomology_dim(k) for k in range(5)])

# a strict algebra: its skeletal ternary bracket is a 3-cocycle, cohomologous to the section cocycle
L = load_example("3b").algebras["main"]
S = skeletalize(L).skeletal
cx = CEComplex.from_algebra(S)
print("\nskeletal dims:", S.dim_m1, S.dim_0, " l3 closed:", cx.is_cocycle(l3_cochain(S)))
w = wagemann_compare(L)
print("section cocycle vs l3: same class =", w["class_equal"], " witness checks:", w["witness_ok"])
