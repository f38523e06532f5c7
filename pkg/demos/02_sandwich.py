"""
The unramified character torus and its lattice sandwich
=======================================================

Given inertia I and Frobenius Fr, the unramified characters of T(F) form a
torus X_T.  Its cocharacter lattice, placed inside Q (x) X^Gamma, sits between
the invariants X^Gamma and their saturation Pr_Gamma(X).  How far it is from
each end depends on ramification.
"""

from galtori import sandwich_report, xs_comparison
from galtori.catalog import weil_restriction
from galtori.galois import admissible_arithmetic

# Weil restriction of G_m along a cyclic extension of degree 4.  The Galois
# group Z/4 has three choices of inertia with cyclic quotient: 1, Z/2, Z/4.
lat = weil_restriction(4)
print("X^Gamma     =", sandwich_report(lat, admissible_arithmetic(lat.group)[0]).x_gamma)
print("Pr_Gamma(X) =", sandwich_report(lat, admissible_arithmetic(lat.group)[0]).pr_lattice)
print()
for arith in admissible_arithmetic(lat.group):
    s = sandwich_report(lat, arith)
    xs = xs_comparison(lat, arith)
    print(f"|I| = {len(arith.inertia)}, Fr = {arith.frobenius}:  X_*(X_T) = {s.cochar_xt}")
    print(f"    [X_*(X_T) : X^Gamma] = {s.index_xt_over_x}, "
          f"[Pr_Gamma(X) : X_*(X_T)] = {s.index_pr_over_xt}, equals X_S: {xs.lattices_equal}")

# Unramified: X_T reaches the top of the sandwich and agrees with the
# maximal split quotient.  Totally ramified: X_T collapses onto X^Gamma.
