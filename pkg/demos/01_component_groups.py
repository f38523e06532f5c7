"""
Component groups of dual tori
=============================

For a torus with character lattice X, the first cohomology H^1(Gamma, X) is
a finite abelian group.  On the dual side, the fixed points of Gamma on the
dual torus form a diagonalizable group whose component group is dual to the
torsion of the coinvariants of the dual lattice.  The two finite groups agree.
"""

from galtori import catalog_lattices, cohomology_group, component_group, fixed_points

# The norm-one torus of a quadratic extension: Z with the nontrivial element acting by -1.
from galtori.catalog import sign

lat = sign()
print("H^1(Gamma, X)       =", cohomology_group(lat.group, lat, 1).group)
print("T^^Gamma            =", fixed_points(lat))
print("pi_0(T^^Gamma)      =", component_group(fixed_points(lat)))

# The same comparison across the catalog.  Weil restrictions have connected
# fixed points (H^1 vanishes by Shapiro's lemma); norm-one tori of cyclic
# extensions of degree n have n components.
print()
print(f"{'lattice':24} {'H^1':12} {'T^^Gamma':20} agree")
for lat in catalog_lattices(max_cyclic=6):
    h1 = cohomology_group(lat.group, lat, 1).group
    fp = fixed_points(lat)
    print(f"{lat.name:24} {str(h1):12} {fp.describe():20} {h1 == component_group(fp)}")
