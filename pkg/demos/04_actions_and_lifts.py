"""2-actions on charts, their lifts to comomentum maps, and where lifting breaks down."""

from lie2plectic.action import classify_action, plectic_class, pushforward_along_skeletal, verify_action
from lie2plectic.calculus import form
from lie2plectic.catalog import load_example
from lie2plectic.comoment import Comomentum, apply_corrections, find_weak_lift, verify_comoment
from lie2plectic.skeletal import skeletalize

ex = load_example("3a")
rho = ex.actions["sub1"]
print(verify_action(rho).summary(), classify_action(rho))
cm = ex.comoments[0]
as_given = Comomentum.from_dict(cm["reference"], rho)
print("\ncomomentum as given:", verify_comoment(as_given).summary())
for rec in cm["corrections"]:
    print(f"  {rec['path']}: {rec['reference']} -> {rec['derived']} ({rec['kind']}, {rec['condition']})")
fixed = Comomentum.from_dict(apply_corrections(cm["reference"], cm["corrections"]), rho)
print("corrected:", verify_comoment(fixed).summary())

lift = find_weak_lift(rho, form("dq1^dq2^dq3", 3, 3))
print("\nconstructed weak lift:", verify_comoment(lift.comoment).data)

# exponential translations do not preserve the 6-dimensional form
ex2 = load_example("2b")
rho2 = ex2.actions["main"]
w6 = form(ex2.doc["omega"], 6, 3)
print("\nplectic class:", plectic_class(rho2, w6)["class"])
print("obstructions:", [o["field"] for o in find_weak_lift(rho2, w6).obstructions])
out = pushforward_along_skeletal(rho2, skeletalize(rho2.algebra))
print("pushforward to the skeletal model possible:", out["possible"], " witnesses:", out["witnesses"])
