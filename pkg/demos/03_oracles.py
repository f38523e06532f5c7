"""
Checking the bar resolution against independent oracles
=======================================================

The bar-resolution engine computes H^n as a subquotient via Smith forms.  Two
independent checks are available.  For finite coefficient modules all
normalized cocycles can be enumerated directly.  For cyclic groups the
closed forms ker N / (s - 1)M and M^Gamma / N M apply.
"""

import time

from galtori import CoefficientModule, brute_force_cohomology, cohomology_group, cyclic_oracle
from galtori.catalog import a2_weyl, norm_one_cyclic
from galtori.oracle import enumeration_sweep
from galtori.sequences import check_inflation_restriction, sequence_cases

# S3 acting on the A2 weight lattice, reduced mod 3.
lat = a2_weyl()
mod = CoefficientModule.from_lattice(lat, 3)
for n in (1, 2):
    print(f"H^{n}(S3, X/3X): resolution {cohomology_group(lat.group, mod, n).group}, "
          f"enumeration {brute_force_cohomology(lat.group, mod, n)}")

lat = norm_one_cyclic(5)
print("H^1(Z/5, X):", cohomology_group(lat.group, lat, 1).group, "closed form",
      cyclic_oracle(lat.group, lat, 1))

# A small sweep, first honest and then with a deliberately flipped sign in
# the coboundary.  Over Z/2 the flip is invisible, so the sweep includes m = 3.
start = time.perf_counter()
print("sweep:", enumeration_sweep(max_group=4, max_mod=3).counts(),
      f"{time.perf_counter() - start:.1f} s")
print("with a sign fault:", enumeration_sweep(max_group=4, max_mod=3, fault="wrong_sign").counts())

# The five-term inflation-restriction sequence, every map evaluated on
# explicit cocycles.
group, normal, modules = sequence_cases()[1]
for m in modules[:3]:
    report = check_inflation_restriction(group, normal, m)
    print(f"{m.name:12} exact: {report.ok}   {report.notes[0]}")
