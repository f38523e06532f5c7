import pytest

from galtori.catalog import (
    BadParams,
    UnknownPreset,
    a2_weyl,
    catalog_keys,
    norm_one_cyclic,
    parse_preset_spec,
    preset,
    sign,
    weil_restriction,
)
from galtori.galois import (
    FiniteGroup,
    GaloisLattice,
    InvalidArithmeticData,
    InvalidGroup,
    InvalidLattice,
    LocalArithmeticData,
    admissible_arithmetic,
    coinvariants,
    dual_module,
    induce,
    invariants,
    projection_lattice,
    regular_representation,
    unramified_data,
)
from galtori.lattice import RationalLattice
from galtori.linalg import FinGenAbGroup, IntegerMatrix


def test_group_table_validation():
    with pytest.raises(InvalidGroup):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(InvalidGroup):
        FiniteGroup([[0, 1], [1, 0]], identity=1)
    g = FiniteGroup.cyclic(6)
    assert g.is_cyclic() and g.element_order(g.cyclic_generator()) == 6


def test_lattice_validation_reports_all_problems():
    g = FiniteGroup.cyclic(2)
    with pytest.raises(InvalidLattice) as info:
        GaloisLattice(g, (IntegerMatrix([[1]]), IntegerMatrix([[2]])))
    assert "not invertible" in str(info.value)


def test_invariants_coinvariants_on_presets():
    assert invariants(sign()) == RationalLattice.zero(1)
    assert coinvariants(sign()) == FinGenAbGroup(0, (2,))
    w = weil_restriction(2)
    assert invariants(w).basis == [[1, 1]]
    assert coinvariants(w) == FinGenAbGroup(1, ())
    assert str(projection_lattice(w)) == "<(1/2, 1/2)>"
    assert coinvariants(norm_one_cyclic(5)) == FinGenAbGroup(0, (5,))
    assert coinvariants(a2_weyl()) == FinGenAbGroup(0, (3,))


def test_dual_module_is_contragredient():
    lat = norm_one_cyclic(3)
    dual = dual_module(lat)
    for g in range(3):
        a, b = lat.action[g], dual.action[g]
        pairing = b.T @ a
        assert pairing == IntegerMatrix.identity(2)
    assert dual_module(dual).action == lat.action


def test_induced_from_trivial_is_regular():
    g = FiniteGroup.cyclic(3)
    reg = regular_representation(g)
    assert reg.rank == 3
    assert coinvariants(reg) == FinGenAbGroup(1, ())
    ind = induce(g, [0], GaloisLattice.trivial(FiniteGroup.trivial(), 2))
    assert ind.rank == 6


def test_arithmetic_data():
    s3 = a2_weyl().group
    with pytest.raises(InvalidArithmeticData):
        unramified_data(s3)
    bad = LocalArithmeticData(frozenset({0}), 1)
    with pytest.raises(InvalidArithmeticData):
        bad.check(s3)
    # only the normal subgroups A3 and S3 have cyclic quotients
    assert sorted(len(a.inertia) for a in admissible_arithmetic(s3)) == [3, 6]
    c4 = admissible_arithmetic(FiniteGroup.cyclic(4))
    assert sorted((len(a.inertia), a.frobenius) for a in c4) == [(1, 1), (1, 3), (2, 1), (4, 0)]


def test_catalog_keys_and_params():
    assert catalog_keys() == ["split", "sign", "norm_one_cyclic", "weil_restriction",
                              "a2_weyl", "dihedral_plane"]
    assert parse_preset_spec("weil_restriction:3") == ("weil_restriction", {"n": "3"})
    assert parse_preset_spec("split:rank=2") == ("split", {"rank": "2"})
    lat, arith = preset("weil_restriction", "unramified", n=3)
    assert lat.rank == 3 and arith.is_unramified
    with pytest.raises(UnknownPreset):
        preset("torus")
    with pytest.raises(BadParams):
        preset("sign", n=2)
