import pytest

from galtori.catalog import a2_weyl, norm_one_cyclic, sign, weil_restriction
from galtori.cohomology import (
    CoefficientModule,
    NotCyclic,
    cochain_complex,
    cohomology_group,
    corestriction,
    cyclic_oracle,
    inflation,
    restriction,
)
from galtori.galois import FiniteGroup, GaloisLattice, regular_representation
from galtori.linalg import FinGenAbGroup, IntegerMatrix

C2 = FiniteGroup.cyclic(2)
ZMOD2 = FinGenAbGroup(0, (2,))


def inversion_mod(m):
    return CoefficientModule(C2, (IntegerMatrix([[1]]), IntegerMatrix([[-1]])), m)


def test_h1_z2_on_z4_by_inversion():
    # every a in Z/4 is a cocycle value (a + (-a) = 0); coboundaries are 2 Z/4
    assert cohomology_group(C2, inversion_mod(4), 1).group == ZMOD2


def test_integral_cohomology_of_z2():
    triv = GaloisLattice.trivial(C2, 1)
    assert [cohomology_group(C2, triv, n).group for n in range(3)] == [
        FinGenAbGroup(1, ()), FinGenAbGroup(), ZMOD2]
    assert [cohomology_group(C2, sign(), n).group for n in range(3)] == [
        FinGenAbGroup(), ZMOD2, FinGenAbGroup()]


def test_dense_and_sparse_paths_agree():
    lat = a2_weyl()
    for n in range(3):
        sparse = cohomology_group(lat.group, lat, n).group
        dense = cohomology_group(lat.group, lat, n, representatives=True).group
        assert sparse == dense


@pytest.mark.parametrize("module", [sign(), norm_one_cyclic(3), a2_weyl()],
                         ids=lambda m: m.name)
def test_d_squared_is_zero(module):
    ds = cochain_complex(module.group, module, 2)
    for d0, d1 in zip(ds, ds[1:]):
        assert (d1 @ d0).is_zero()


def test_shapiro_regular_module():
    for g in (FiniteGroup.cyclic(3), a2_weyl().group):
        reg = regular_representation(g)
        assert cohomology_group(g, reg, 1).group.is_trivial()
        assert cohomology_group(g, reg, 2).group.is_trivial()


def test_cyclic_oracle_values():
    for n in range(2, 7):
        lat = norm_one_cyclic(n)
        assert cyclic_oracle(lat.group, lat, 1) == FinGenAbGroup(0, (n,))
        assert cyclic_oracle(lat.group, lat, 2).is_trivial()
    with pytest.raises(NotCyclic):
        cyclic_oracle(a2_weyl().group, a2_weyl(), 1)


def test_wrong_sign_fault_is_visible():
    lat = weil_restriction(2)
    clean = cohomology_group(lat.group, lat, 2).group
    ds = cochain_complex(lat.group, lat, 2)
    assert (ds[2] @ ds[1]).is_zero()
    from galtori.cohomology import coboundary_matrix
    d1 = coboundary_matrix(lat.group, lat, 1, fault="wrong_sign")
    d2 = coboundary_matrix(lat.group, lat, 2, fault="wrong_sign")
    assert not (d2 @ d1).is_zero()
    try:
        faulty = cohomology_group(lat.group, lat, 2, fault="wrong_sign").group
    except ValueError:
        return
    assert faulty != clean


def test_cor_res_on_sign():
    mod = CoefficientModule.from_lattice(sign())
    h1 = cohomology_group(C2, mod, 1, representatives=True)
    (z,) = h1.representatives()
    down = restriction(C2, [0], mod, 1, z)
    up = corestriction(C2, [0], mod, 1, down)
    # [G:1] = 2 kills H^1 = Z/2
    assert h1.class_of(up) == (0,)
    assert h1.class_of(z) == (1,)


def test_cor_res_generator_multiplies_by_index():
    g = FiniteGroup.cyclic(4)
    mod = CoefficientModule(g, tuple(IntegerMatrix.identity(1) for _ in range(4)), 8)
    h1 = cohomology_group(g, mod, 1, representatives=True)
    assert h1.group == FinGenAbGroup(0, (4,))
    (z,) = h1.representatives()
    sub = [0, 2]
    up = corestriction(g, sub, mod, 1, restriction(g, sub, mod, 1, z))
    assert h1.class_of(up) == tuple((2 * c) % 4 for c in h1.class_of(z))


def test_inflation_lands_in_cocycles():
    g = FiniteGroup.cyclic(4)
    lat = GaloisLattice.trivial(g, 1)
    quot, _, _ = g.quotient([0, 2])
    # the Z/2-valued degree-2 generator of H^2(Z/2, Z) inflates to twice a generator
    from galtori.galois import fixed_submodule
    qmod, _, _ = fixed_submodule(lat, [0, 2])
    hq = cohomology_group(quot, qmod, 2, representatives=True)
    (z,) = hq.representatives()
    up = inflation(g, [0, 2], lat, 2, z)
    hg = cohomology_group(g, lat, 2, representatives=True)
    assert hg.is_cocycle(up)
    assert hg.group == FinGenAbGroup(0, (4,))
    assert hg.class_of(up)[0] % 2 == 0 and hg.class_of(up)[0] != 0


def test_module_validation():
    with pytest.raises(ValueError):
        CoefficientModule(C2, (IntegerMatrix([[1]]), IntegerMatrix([[2]])), 4)
    with pytest.raises(ValueError):
        CoefficientModule(C2, (IntegerMatrix([[1]]), IntegerMatrix([[-1]])), 1)
