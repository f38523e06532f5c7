from fractions import Fraction

import pytest

from galtori.lattice import INFINITE, RationalLattice, dual_lattice, lattice_index, push_forward
from galtori.linalg import (
    BasisSolver,
    FinGenAbGroup,
    IntegerMatrix,
    cokernel,
    hnf_rows,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
    sparse_invariant_factors,
)


def test_smith_form_small():
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal == [2, 4]
    assert snf.U @ IntegerMatrix([[2, 4], [6, 8]]) @ snf.V == snf.D
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1


def test_smith_form_rectangular_and_zero():
    assert smith_normal_form([[0, 0, 0], [0, 0, 0]]).diagonal == [0, 0]
    snf = smith_normal_form([[1, 2, 3], [4, 5, 6]])
    assert snf.diagonal == [1, 3]
    assert smith_normal_form(IntegerMatrix.zeros(0, 3)).D.shape == (0, 3)


def test_big_entries_stay_exact():
    big = 10 ** 40
    snf = smith_normal_form([[big, 0], [0, big * 6]])
    assert snf.diagonal == [big, 6 * big]


def test_sparse_invariants_agree_with_dense():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    rows = [{j: x for j, x in enumerate(r) if x} for r in m]
    assert sparse_invariant_factors(rows, 3) == [x for x in invariant_factors(m) if x]
    assert invariant_factors(m) == [2, 6, 12]


def test_cokernel_and_group_normalization():
    assert cokernel([[2, 0], [0, 3]]) == FinGenAbGroup(0, (6,))
    assert cokernel([[2], [0]]) == FinGenAbGroup(1, (2,))
    g = FinGenAbGroup.from_cyclic_orders([4, 6, 0, 1])
    assert g == FinGenAbGroup(1, (2, 12))
    assert str(g) == "Z + Z/2 + Z/12"
    assert g.order is None and g.torsion_order == 24
    with pytest.raises(ValueError):
        FinGenAbGroup(0, (4, 6))


def test_hnf_and_kernel():
    assert hnf_rows([[2, 4], [1, 3]], 2) == [[1, 1], [0, 2]]
    k = kernel_basis([[1, 1, 1]])
    assert len(k) == 2
    assert all(sum(v) == 0 for v in k)
    assert rank([[1, 2], [2, 4]]) == 1


def test_basis_solver():
    s = BasisSolver([[2, 0], [0, 3]], 2)
    assert s.solve([1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
    assert s.solve_integral([1, 1]) is None
    assert s.solve_integral([4, 9]) == [2, 3]


def test_rational_lattice_canonical():
    a = RationalLattice.from_generators([[Fraction(1, 2), Fraction(1, 2)], [1, -1]], 2)
    b = RationalLattice.from_generators([[Fraction(1, 2), Fraction(1, 2)], [0, 1]], 2)
    assert a != b
    c = RationalLattice.from_generators([[1, -1], [Fraction(1, 2), Fraction(1, 2)]], 2)
    assert a == c
    assert lattice_index(RationalLattice.standard(2), b) == 2
    assert lattice_index(RationalLattice.zero(2), b) == INFINITE


def test_dual_lattice_and_push_forward():
    lat = RationalLattice.from_generators([[2]], 1)
    assert dual_lattice(lat) == RationalLattice.from_generators([[Fraction(1, 2)]], 1)
    diag = push_forward(RationalLattice.standard(1), [[1, 1]], 2)
    assert diag.basis == [[1, 1]]
    assert dual_lattice(diag).basis == [[Fraction(1, 2), Fraction(1, 2)]]
