import random

from galtori.catalog import catalog_groups
from galtori.galois import FiniteGroup
from galtori.oracle import (
    cyclic_lattices,
    cyclic_sweep,
    enumeration_sweep,
    module_homomorphisms,
    sweep_modules,
)


def test_homomorphism_count_z2_on_f2_squared():
    # involutions in GL2(F2) together with the identity: 1 + 3 transvections
    assert len(module_homomorphisms(FiniteGroup.cyclic(2), 2, 2)) == 4
    assert len(module_homomorphisms(FiniteGroup.cyclic(3), 1, 4)) == 1


def test_catalog_groups_distinct_tables():
    orders = [g.order for g in catalog_groups(6)]
    assert orders == [1, 2, 3, 4, 5, 6, 6]


def test_sweep_modules_deterministic():
    g = FiniteGroup.cyclic(4)
    a = sweep_modules(g, 3, 2, random.Random(1))
    b = sweep_modules(g, 3, 2, random.Random(1))
    assert [m.action for _, m in a] == [m.action for _, m in b]
    assert a[0][0] == "trivial"


def test_small_enumeration_sweep_passes_and_repeats():
    first = enumeration_sweep(max_group=3, max_mod=3, max_rank=2, seed=5)
    second = enumeration_sweep(max_group=3, max_mod=3, max_rank=2, seed=5)
    assert first.ok and not first.skipped
    assert [(c.label, c.degree, c.resolution) for c in first.cases] == \
        [(c.label, c.degree, c.resolution) for c in second.cases]


def test_fault_hook_detected_by_both_sweeps():
    # over Z/2 the flipped sign is invisible, so the scope needs m = 3
    assert not enumeration_sweep(max_group=3, max_mod=2, max_rank=1, fault="wrong_sign").mismatches
    assert enumeration_sweep(max_group=3, max_mod=3, max_rank=1, fault="wrong_sign").mismatches
    assert cyclic_sweep(max_order=4, fault="wrong_sign").mismatches


def test_cyclic_sweep_small():
    assert len(cyclic_lattices(4)) == 2 + 3 * 3
    assert cyclic_sweep(max_order=5).ok
