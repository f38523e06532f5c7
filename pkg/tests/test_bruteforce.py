import numpy as np
import pytest

from galtori.bruteforce import (
    BUDGET_ENV,
    BudgetExceeded,
    ClassTable,
    TableModule,
    brute_force_cohomology,
    enumerate_cohomology,
    enumeration_budget,
)
from galtori.catalog import a2_weyl, norm_one_cyclic, weil_restriction
from galtori.cohomology import CoefficientModule, cohomology_group
from galtori.galois import FiniteGroup
from galtori.linalg import FinGenAbGroup, IntegerMatrix


def trivial_module(group, r, m):
    return CoefficientModule(group, (IntegerMatrix.identity(r),) * group.order, m)


def test_trivial_coefficients_match_hom():
    # H^1(Z/n, Z/m) = Hom(Z/n, Z/m) = Z/gcd(n, m); H^2 is the same for cyclic groups
    for n, m in [(2, 4), (3, 3), (4, 2), (4, 6), (6, 4)]:
        g = FiniteGroup.cyclic(n)
        from math import gcd
        expect = FinGenAbGroup.from_cyclic_orders([gcd(n, m)])
        assert brute_force_cohomology(g, trivial_module(g, 1, m), 1) == expect
        assert brute_force_cohomology(g, trivial_module(g, 1, m), 2) == expect


def test_klein_group_with_z2():
    # H^1(V4, F2) = Hom(V4, F2) = F2^2 and H^2(V4, F2) = F2^3
    v4 = FiniteGroup([[a ^ b for b in range(4)] for a in range(4)])
    mod = trivial_module(v4, 1, 2)
    assert brute_force_cohomology(v4, mod, 1) == FinGenAbGroup(0, (2, 2))
    result = enumerate_cohomology(TableModule.from_matrices(v4, mod.action, 2), 2)
    assert result.group == FinGenAbGroup(0, (2, 2, 2))
    assert result.cocycles == 8 * result.coboundaries


def test_degree_zero_is_fixed_points():
    g = FiniteGroup.cyclic(2)
    mod = CoefficientModule(g, (IntegerMatrix([[1]]), IntegerMatrix([[-1]])), 4)
    assert brute_force_cohomology(g, mod, 0) == FinGenAbGroup(0, (2,))


def test_modules_with_more_than_sixteen_elements():
    # table codes are uint8; sums of code * size used to wrap around
    cases = [(norm_one_cyclic(6), 2, 1, FinGenAbGroup(0, (2,))),
             (norm_one_cyclic(6), 3, 1, FinGenAbGroup(0, (3,))),
             (weil_restriction(5), 2, 2, FinGenAbGroup()),
             (a2_weyl(), 3, 2, FinGenAbGroup(0, (3,)))]
    for lat, m, n, expect in cases:
        mod = CoefficientModule.from_lattice(lat, m)
        assert cohomology_group(lat.group, mod, n).group == expect
        assert brute_force_cohomology(lat.group, mod, n) == expect


def test_budget_guard(monkeypatch):
    g = FiniteGroup.cyclic(6)
    mod = trivial_module(g, 2, 4)
    with pytest.raises(BudgetExceeded):
        brute_force_cohomology(g, mod, 2, budget=1000)
    monkeypatch.setenv(BUDGET_ENV, "500")
    assert enumeration_budget() == 500
    with pytest.raises(BudgetExceeded):
        brute_force_cohomology(g, mod, 2)


def test_rejects_lattices():
    g = FiniteGroup.cyclic(2)
    with pytest.raises(ValueError):
        brute_force_cohomology(g, CoefficientModule(g, (IntegerMatrix([[1]]),) * 2), 1)


def test_class_table_bookkeeping():
    g = FiniteGroup.cyclic(4)
    ct = ClassTable(TableModule.from_matrices(g, (IntegerMatrix.identity(1),) * 4, 4), 1)
    assert ct.order == 4
    assert len(ct.representatives) == 4
    indices = {ct.class_index(z) for z in ct.representatives}
    assert indices == {0, 1, 2, 3}
    z = ct.representatives[1]
    assert ct.is_coboundary(ct.scale(z, ct.order))
    assert ct.is_coboundary(ct.sub(z, z))
    zero = np.zeros(len(ct.variables), dtype=ct.mod.neg.dtype)
    assert ct.is_cocycle(zero)
