"""
Explicit cocycles on the unramified Weil group
==============================================

In the unramified case the Weil group acts through Z, the element m standing
for Fr^m with log_q|omega| = -m.  An invariant Lie vector nu gives the
cocycle zeta_nu(m) = -m nu, a torsion point s gives z_s(m) = -m s mod 1, and
the exponential sends one to the other.
"""

from fractions import Fraction as F

from galtori.catalog import norm_one_cyclic, weil_restriction
from galtori.weil import (
    UnramifiedWeilModel,
    cocycle_suite,
    exp_compatibility,
    is_coboundary_zeta,
    model_h1_count,
    verify_zeta_cocycle,
    zeta,
)

model = UnramifiedWeilModel(weil_restriction(2))
nu = (F(1, 3), F(1, 3))
print("zeta_nu(2)           =", ", ".join(map(str, zeta(nu, 2, model))))
print("cocycle identity     :", verify_zeta_cocycle(nu, model).ok)
print("coboundary?          :", is_coboundary_zeta(nu, model), "(only nu = 0 is)")
print("e o zeta = z_e(nu)   :", exp_compatibility(nu, model).ok)

# A non-invariant vector is not a cocycle: the identity fails at a named pair.
print("non-invariant (1, 0) : fails at (m1, m2) =", verify_zeta_cocycle((1, 0), model).first_failure)

# Frobenius coinvariants of the m-torsion count H^1 of the Weil model.
for lat in (weil_restriction(3), norm_one_cyclic(3)):
    m = UnramifiedWeilModel(lat)
    print(f"{lat.name}: H^1 with T^[6] coefficients =", model_h1_count(m, 6))

print(cocycle_suite(model, max_den=6, samples=20).checks)
