import pytest

from galtori.catalog import a2_weyl, catalog_lattices, dihedral_plane, norm_one_cyclic, sign, split, weil_restriction
from galtori.cohomology import cohomology_group
from galtori.dual_torus import (
    DiagonalizableGroup,
    coinvariant_group,
    component_group,
    dual_torus_of,
    fixed_points,
    frobenius_coinvariant_group,
    identity_component,
    sandwich_report,
    unramified_character_torus,
    xs_comparison,
)
from galtori.galois import admissible_arithmetic, totally_ramified_data, unramified_data
from galtori.lattice import INFINITE
from galtori.linalg import FinGenAbGroup


def test_sign_fixed_points_are_mu2():
    fp = fixed_points(sign())
    assert fp.describe() == "mu_2"
    assert component_group(fp) == FinGenAbGroup(0, (2,))
    assert identity_component(fp).dimension == 0
    assert coinvariant_group(sign()).describe() == "1"
    assert dual_torus_of(sign()).describe() == "(C*)^1"


def test_weil_restriction_fixed_points_connected():
    fp = fixed_points(weil_restriction(3))
    assert fp.is_connected and fp.dimension == 1


def test_h1_is_component_group_of_fixed_points():
    for lat in catalog_lattices(6):
        h1 = cohomology_group(lat.group, lat, 1).group
        assert component_group(fixed_points(lat)) == h1, lat.name


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_weil_restriction_sandwich_indices(n):
    lat = weil_restriction(n)
    unr = sandwich_report(lat, unramified_data(lat.group))
    assert (unr.index_xt_over_x, unr.index_pr_over_xt) == (n, 1)
    ram = sandwich_report(lat, totally_ramified_data(lat.group))
    assert (ram.index_xt_over_x, ram.index_pr_over_xt) == (1, n)
    assert unr.holds and ram.holds


def test_intermediate_inertia():
    lat = weil_restriction(4)
    (arith,) = [a for a in admissible_arithmetic(lat.group) if len(a.inertia) == 2]
    s = sandwich_report(lat, arith)
    assert (s.index_xt_over_x, s.index_pr_over_xt) == (2, 2)


def test_x_t_rank_and_frobenius_characters():
    torus, cochar = unramified_character_torus(split(3), unramified_data(split(3).group))
    assert torus.dimension == 3 and cochar.rank == 3
    lat = norm_one_cyclic(4)
    frob = frobenius_coinvariant_group(lat, totally_ramified_data(lat.group))
    assert frob.describe() == "mu_4"
    s3 = a2_weyl()
    torus, cochar = unramified_character_torus(s3, totally_ramified_data(s3.group))
    assert torus.dimension == 0 and cochar.rank == 0


def test_xs_comparison():
    lat = weil_restriction(2)
    unr = xs_comparison(lat, unramified_data(lat.group))
    assert unr.lattices_equal and unr.consistent
    ram = xs_comparison(lat, totally_ramified_data(lat.group))
    assert not ram.lattices_equal and ram.consistent


def test_sandwich_all_catalog_pairs():
    for lat in catalog_lattices(6) + [dihedral_plane()]:
        for arith in admissible_arithmetic(lat.group):
            s = sandwich_report(lat, arith)
            assert s.holds
            assert s.xt_rank == s.x_gamma.rank
            assert INFINITE not in (s.index_xt_over_x, s.index_pr_over_xt)


def test_describe_mixed():
    g = DiagonalizableGroup(FinGenAbGroup(2, (2, 6)))
    assert g.describe() == "(C*)^2 x mu_2 x mu_6"
    assert not g.is_connected and not g.is_finite
