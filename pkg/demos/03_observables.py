"""Hamiltonian forms, Hamiltonian pairs and observable brackets on constant 3-forms."""

from lie2plectic.calculus import form, vector
from lie2plectic.plectic import (Observable, PlecticForm, bracket_D2t, bracket_L2, check_2plectic, kernel2,
                                 solve_hamiltonian_pair)
from lie2plectic.ring import ExpPoly, parse_expr

vol = form("dq1^dq2^dq3", 3, 3)
P = PlecticForm(vol)
a, b, c = (P.form(form(t, 3, 1)) for t in ("q2*dq3", "q3*dq1", "q1*dq2"))
print("X for q2 dq3:", a.X, "  X for q3 dq1:", b.X)
print("l2(a, b) =", bracket_L2(P, "l2", a, b).alpha)
print("l3(a, b, c) =", bracket_L2(P, "l3", a, b, c))
print("pair for q3:", solve_hamiltonian_pair(parse_expr("q3", 3), vol))

obs = Observable(ExpPoly.zero(3), P.pair(parse_expr("q3", 3), vector("-e1^e2", 3)))
print("mixed bracket with q1 dq2:", bracket_D2t(P, "l2m", obs, c))

# a 5-dimensional form: nondegenerate on vectors, large kernel on bivectors
w5 = form("dq1^dq2^dq3 + dq1^dq4^dq5", 5, 3)
print("\n", check_2plectic(w5).summary())
for u in kernel2(w5):
    print("  kernel bivector:", u)
