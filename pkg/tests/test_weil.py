from fractions import Fraction as F

import pytest

from galtori.catalog import a2_weyl, norm_one_cyclic, sign, split, weil_restriction
from galtori.cohomology import NotCyclic
from galtori.galois import LocalArithmeticData, admissible_arithmetic, totally_ramified_data
from galtori.linalg import FinGenAbGroup
from galtori.weil import (
    NotInvariant,
    UnramifiedWeilModel,
    cocycle_suite,
    exp_compatibility,
    exponential,
    frobenius_h1,
    frobenius_h1_enumerated,
    invariant_torsion_points,
    is_coboundary_zeta,
    model_h1_count,
    model_h1_enumerated,
    verify_z_cocycle,
    verify_zeta_cocycle,
    z_cocycle,
    zeta,
)

W2 = UnramifiedWeilModel(weil_restriction(2))


def test_model_requires_cyclic_group():
    with pytest.raises(NotCyclic):
        UnramifiedWeilModel(a2_weyl())
    assert W2.image(3) == 1 and W2.image(-2) == 0
    assert W2.act(1, [1, 0]) == [0, 1]


def test_zeta_values_and_cocycle_identity():
    assert zeta((1, 1), 3, W2) == (-3, -3)
    assert verify_zeta_cocycle((F(1, 2), F(1, 2)), W2).ok
    # a non-invariant vector breaks the identity, which is how misuse shows up
    bad = verify_zeta_cocycle((1, 0), W2)
    assert not bad.ok and bad.first_failure is not None
    with pytest.raises(NotInvariant):
        zeta((1, 0), 1, W2)


def test_coboundary_exactly_at_zero():
    assert is_coboundary_zeta((0, 0), W2)
    assert not is_coboundary_zeta((1, 1), W2)
    assert not is_coboundary_zeta((F(1, 7), F(1, 7)), W2)


def test_z_cocycle_and_exponential():
    s = (F(1, 2), F(1, 2))
    assert z_cocycle(s, 1, W2) == (F(1, 2), F(1, 2))
    assert verify_z_cocycle(s, W2).ok
    assert exponential((F(5, 3), F(-1, 3))) == (F(2, 3), F(2, 3))
    assert exp_compatibility((F(1, 3), F(1, 3)), W2).ok


def test_invariant_torsion_points():
    assert len(invariant_torsion_points(UnramifiedWeilModel(sign()), 2)) == 2
    assert len(invariant_torsion_points(W2, 4)) == 4


def test_suite_on_sign_covers_component_torsion():
    result = cocycle_suite(UnramifiedWeilModel(sign()), max_den=4, samples=5, modulus=2)
    assert result.ok
    # X^Gamma = 0 so only nu = 0; torsion points include the fixed point 1/2
    assert result.counts["nu"] == 1 and result.counts["torsion points"] == 2


def test_model_h1_counts():
    # coinvariants of the swap on (Z/4)^2, detected by the coordinate sum
    assert model_h1_count(W2, 4) == FinGenAbGroup(0, (4,))
    assert model_h1_count(UnramifiedWeilModel(sign()), 4) == FinGenAbGroup(0, (2,))
    n3 = UnramifiedWeilModel(norm_one_cyclic(3))
    assert model_h1_count(n3, 6) == model_h1_enumerated(n3, 6) == FinGenAbGroup(0, (3,))


def test_frobenius_h1_with_inertia():
    lat = norm_one_cyclic(4)
    arith = totally_ramified_data(lat.group)
    # inertia is everything, so A = X/mX fixed by Gamma and Frobenius is trivial
    assert frobenius_h1(lat, arith, 4) == frobenius_h1_enumerated(lat, arith, 4)
    for a in admissible_arithmetic(lat.group):
        for m in range(2, 7):
            assert frobenius_h1(lat, a, m) == frobenius_h1_enumerated(lat, a, m)


def test_split_model_trivial():
    model = UnramifiedWeilModel(split(2))
    assert model.degree == 1
    assert verify_zeta_cocycle((F(1, 3), F(2, 5)), model).ok
    assert model_h1_count(model, 5) == FinGenAbGroup(0, (5, 5))
