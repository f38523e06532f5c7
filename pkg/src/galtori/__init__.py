"""Galois cohomology of character lattices, dual tori and their unramified characters."""

from .bruteforce import BudgetExceeded, brute_force_cohomology
from .catalog import catalog_keys, catalog_lattices, parse_preset_spec, preset
from .cohomology import (
    CoefficientModule,
    NotCyclic,
    cohomology_group,
    corestriction,
    cyclic_oracle,
    inflation,
    restriction,
)
from .dual_torus import (
    DiagonalizableGroup,
    component_group,
    fixed_points,
    sandwich_report,
    unramified_character_torus,
    xs_comparison,
)
from .galois import (
    FiniteGroup,
    GaloisLattice,
    LocalArithmeticData,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
)
from .lattice import RationalLattice, dual_lattice, lattice_index
from .linalg import FinGenAbGroup, IntegerMatrix, hnf_rows, smith_normal_form
from .weil import UnramifiedWeilModel, cocycle_suite, frobenius_h1, model_h1_count

__all__ = [
    "BudgetExceeded", "CoefficientModule", "DiagonalizableGroup", "FinGenAbGroup",
    "FiniteGroup", "GaloisLattice", "IntegerMatrix", "LocalArithmeticData", "NotCyclic",
    "RationalLattice", "UnramifiedWeilModel", "brute_force_cohomology", "catalog_keys",
    "catalog_lattices", "cocycle_suite", "cohomology_group", "coinvariants", "component_group",
    "corestriction", "cyclic_oracle", "dual_lattice", "dual_module", "fixed_points",
    "frobenius_h1", "hnf_rows", "inflation", "invariants", "lattice_index", "model_h1_count",
    "parse_preset_spec", "preset", "projection_lattice", "restriction", "sandwich_report",
    "smith_normal_form", "unramified_character_torus", "xs_comparison",
]
