"""Diagonalizable groups through their character groups.

A diagonalizable complex group D is recorded by its character group
X*(D), a finitely generated abelian group.  The dual torus of X is
Hom(X^, C*), whose character group is X^ = dual_module(X).  Taking fixed
points dualizes to coinvariants of characters and vice versa; the identity
component has the free part of X*(D) as characters, the component group is
dual to the torsion part (and isomorphic to it, being finite abelian).

The unramified character torus is modeled as the identity component of
(T^^I)_Fr, whose characters are the Frobenius-invariants of X^_I.  Its
cocharacter lattice is placed inside Q (x) X^Gamma by pairing characters with
X^Gamma (the map iota); that placement is a modeling choice and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .galois import (
    GaloisLattice,
    LocalArithmeticData,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
)
from .lattice import (
    RationalLattice,
    dual_lattice,
    lattice_index,
    push_forward,
)
from .linalg import BasisSolver, FinGenAbGroup, cokernel, hnf_rows, kernel_basis

IOTA_NOTE = ("modeling choice iota: a character class y of X^_I is sent to x -> <x, y> "
             "on X^Gamma; the cocharacter lattice is the dual of the image")


@dataclass(frozen=True)
class DiagonalizableGroup:
    """Complex diagonalizable group with the given character group."""

    character_group: FinGenAbGroup
    generators: tuple | None = field(default=None, compare=False)
    label: str = field(default="", compare=False)
    action: GaloisLattice | None = field(default=None, compare=False)

    @property
    def dimension(self) -> int:
        return self.character_group.free_rank

    @property
    def is_connected(self) -> bool:
        return not self.character_group.torsion

    @property
    def is_finite(self) -> bool:
        return self.character_group.free_rank == 0

    def describe(self) -> str:
        parts = []
        if self.dimension:
            parts.append(f"(C*)^{self.dimension}")
        parts += [f"mu_{t}" for t in self.character_group.torsion]
        return " x ".join(parts) if parts else "1"

    def __str__(self):
        return self.describe()


def dual_torus_of(lat: GaloisLattice) -> DiagonalizableGroup:
    """T^ = Hom(X^, C*), with the Galois action on X^ kept alongside."""
    return DiagonalizableGroup(FinGenAbGroup(lat.rank, ()), label="dual torus",
                               action=dual_module(lat))


def fixed_points(lat: GaloisLattice) -> DiagonalizableGroup:
    """T^^Gamma: characters are the coinvariants of X^."""
    return DiagonalizableGroup(coinvariants(dual_module(lat)), label="fixed points")


def coinvariant_group(lat: GaloisLattice) -> DiagonalizableGroup:
    """T^_Gamma: characters are the invariants of X^ (a free group)."""
    inv = invariants(dual_module(lat))
    return DiagonalizableGroup(FinGenAbGroup(inv.rank, ()), inv.hnf, "coinvariants")


def identity_component(d: DiagonalizableGroup) -> DiagonalizableGroup:
    return DiagonalizableGroup(d.character_group.free_part(), label="identity component")


def component_group(d: DiagonalizableGroup) -> FinGenAbGroup:
    return d.character_group.torsion_part()


# ---------------------------------------------------------------------------
# the unramified character torus


@dataclass(frozen=True)
class FrobeniusCharacters:
    """Frobenius-invariant classes in X^_I = Z^r / R, presented as K / R."""

    relations: tuple[tuple[int, ...], ...]  # basis of R
    invariant_lift: tuple[tuple[int, ...], ...]  # basis of K
    group: FinGenAbGroup  # K / R


def frobenius_invariant_characters(lat: GaloisLattice, arith: LocalArithmeticData) -> FrobeniusCharacters:
    arith.check(lat.group)
    dual = dual_module(lat)
    r = lat.rank
    rel = []
    for i in sorted(arith.inertia):
        a = dual.action[i]
        rel += [[a.rows[row][col] - (row == col) for row in range(r)] for col in range(r)]
    rel = hnf_rows(rel, r)
    # K = {y : (F - 1) y in R}: kernel of [F - 1 | -R^T], first r coordinates
    f = dual.action[arith.frobenius]
    big = [[f.rows[i][j] - (i == j) for j in range(r)] + [-v[i] for v in rel] for i in range(r)]
    kern = kernel_basis(big) if r else []
    lift = hnf_rows([v[:r] for v in kern], r)
    solver = BasisSolver(lift, r) if lift else None
    coords = [solver.solve_integral(v) for v in rel] if rel else []
    if any(c is None for c in coords):
        raise AssertionError("relations are not inside the invariant preimage")
    mat = [[c[i] for c in coords] for i in range(len(lift))]
    group = cokernel(mat, len(lift)) if coords else FinGenAbGroup(len(lift), ())
    return FrobeniusCharacters(tuple(map(tuple, rel)), tuple(map(tuple, lift)), group)


def frobenius_coinvariant_group(lat: GaloisLattice, arith: LocalArithmeticData) -> DiagonalizableGroup:
    """(T^^I)_Fr, torsion retained."""
    chars = frobenius_invariant_characters(lat, arith)
    return DiagonalizableGroup(chars.group, chars.invariant_lift, "(T^^I)_Fr")


def _invariant_basis(lat: GaloisLattice) -> list[list[int]]:
    return [list(r) for r in invariants(lat).hnf]


def _cocharacters(lat: GaloisLattice, characters) -> RationalLattice:
    """Dual of iota(characters), placed in Q (x) X^Gamma inside Q^rank."""
    basis = _invariant_basis(lat)
    k = len(basis)
    if k == 0:
        return RationalLattice.zero(lat.rank)
    image = [[sum(b[i] * y[i] for i in range(lat.rank)) for b in basis] for y in characters]
    lt = RationalLattice.from_generators(image, k)
    if lt.rank != k:
        raise AssertionError("pairing image does not have full rank on X^Gamma")
    return push_forward(dual_lattice(lt), basis, lat.rank)


def unramified_character_torus(lat: GaloisLattice, arith: LocalArithmeticData):
    """X_T as a torus, and its cocharacter lattice inside Q (x) X^Gamma."""
    chars = frobenius_invariant_characters(lat, arith)
    torus = DiagonalizableGroup(chars.group.free_part(), label="X_T")
    return torus, _cocharacters(lat, chars.invariant_lift)


@dataclass(frozen=True)
class SandwichReport:
    x_gamma: RationalLattice
    cochar_xt: RationalLattice
    pr_lattice: RationalLattice
    x_in_xt: bool
    xt_in_pr: bool
    index_xt_over_x: int | float | None
    index_pr_over_xt: int | float | None
    xt_rank: int
    a_lattice: None = None  # not computable from finite data
    note: str = IOTA_NOTE

    @property
    def holds(self) -> bool:
        return self.x_in_xt and self.xt_in_pr


def _index(inner, outer, included):
    return lattice_index(inner, outer) if included else None


def sandwich_report(lat: GaloisLattice, arith: LocalArithmeticData) -> SandwichReport:
    x_gamma = invariants(lat)
    _, xt = unramified_character_torus(lat, arith)
    pr = projection_lattice(lat)
    a, b = xt.contains(x_gamma), pr.contains(xt)
    return SandwichReport(x_gamma, xt, pr, a, b, _index(x_gamma, xt, a), _index(xt, pr, b),
                          xt.rank)


@dataclass(frozen=True)
class XSComparison:
    xs: DiagonalizableGroup
    cochar_xs: RationalLattice
    cochar_xt: RationalLattice
    rank_xs: int
    rank_xt: int
    lattices_equal: bool
    equality_expected: bool
    note: str = IOTA_NOTE

    @property
    def consistent(self) -> bool:
        return self.rank_xs == self.rank_xt and (self.lattices_equal or not self.equality_expected)


def xs_comparison(lat: GaloisLattice, arith: LocalArithmeticData) -> XSComparison:
    """X_T against X_S = T^_Gamma, both cocharacter lattices placed by iota."""
    xs = coinvariant_group(lat)
    _, xt = unramified_character_torus(lat, arith)
    cochar_xs = _cocharacters(lat, [list(r) for r in xs.generators])
    return XSComparison(xs, cochar_xs, xt, cochar_xs.rank, xt.rank, cochar_xs == xt,
                        arith.is_unramified)
