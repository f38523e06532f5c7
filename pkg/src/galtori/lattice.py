"""Lattices with rational coordinates, stored canonically.

A lattice L in Q^n is kept as ``(denominator, hnf)`` where ``denominator`` is
the least d with d*L inside Z^n and ``hnf`` is the row Hermite normal form of
d*L.  Both are intrinsic to L, so equality of lattices is equality of the
stored data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .linalg import (
    BasisSolver,
    IntegerMatrix,
    as_matrix,
    bareiss_det,
    hnf_rows,
    inverse_fraction_matrix,
    kernel_basis,
    lcm,
)

INFINITE = math.inf


class NotASublattice(ValueError):
    pass


class DegeneratePairing(ValueError):
    pass


@dataclass(frozen=True)
class RationalLattice:
    ambient_dim: int
    denominator: int
    hnf: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "RationalLattice":
        vecs = [[Fraction(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ValueError("generator of the wrong length")
        den = reduce(lcm, (x.denominator for v in vecs for x in v), 1)
        ints = [[int(x * den) for x in v] for v in vecs]
        h = hnf_rows(ints, ambient_dim)
        g = math.gcd(den, *(x for r in h for x in r))
        if g > 1:
            den //= g
            h = [[x // g for x in r] for r in h]
        return cls(ambient_dim, den, tuple(tuple(r) for r in h))

    @classmethod
    def zero(cls, ambient_dim: int) -> "RationalLattice":
        return cls(ambient_dim, 1, ())

    @classmethod
    def standard(cls, ambient_dim: int) -> "RationalLattice":
        return cls.from_generators(
            [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)],
            ambient_dim)

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @property
    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in r] for r in self.hnf]

    def is_integral(self) -> bool:
        return self.denominator == 1

    def scaled(self, k) -> "RationalLattice":
        return RationalLattice.from_generators(
            [[k * x for x in b] for b in self.basis], self.ambient_dim)

    def coordinates(self, vec: Sequence) -> list[Fraction] | None:
        """Coefficients of ``vec`` in this basis, None outside the rational span."""
        if not self.hnf:
            return [] if not any(vec) else None
        solver = BasisSolver(self.hnf, self.ambient_dim)
        scaled = [Fraction(x) * self.denominator for x in vec]
        den = reduce(lcm, (x.denominator for x in scaled), 1)
        c = solver.solve([int(x * den) for x in scaled])
        return None if c is None else [x / den for x in c]

    def contains_vector(self, vec: Sequence) -> bool:
        c = self.coordinates(vec)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains(self, other: "RationalLattice") -> bool:
        return all(self.contains_vector(b) for b in other.basis)

    def __str__(self):
        if not self.hnf:
            return "0"
        vecs = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"<{vecs}>"


def kernel_lattice(m) -> RationalLattice:
    m = as_matrix(m)
    return RationalLattice(m.ncols, 1, tuple(tuple(r) for r in kernel_basis(m)))


def _coordinate_matrix(inner: RationalLattice, outer: RationalLattice) -> list[list[Fraction]]:
    rows = []
    for b in inner.basis:
        c = outer.coordinates(b)
        if c is None or any(x.denominator != 1 for x in c):
            raise NotASublattice(f"{inner} is not contained in {outer}")
        rows.append(c)
    return rows


def lattice_index(inner: RationalLattice, outer: RationalLattice):
    """[outer : inner] as an int, or ``INFINITE`` when the ranks differ."""
    if inner.ambient_dim != outer.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    coords = _coordinate_matrix(inner, outer)
    if inner.rank != outer.rank:
        return INFINITE
    return abs(bareiss_det([[int(x) for x in r] for r in coords]))


def dual_lattice(lat: RationalLattice, pairing=None) -> RationalLattice:
    """{v in span(lat) : <v, l> in Z for all l in lat}.

    ``pairing`` is an ambient bilinear form (defaults to the dot product);
    ``<v, l> = v^T P l``.
    """
    n = lat.ambient_dim
    p = IntegerMatrix.identity(n) if pairing is None else as_matrix(pairing)
    if p.shape != (n, n):
        raise ValueError("pairing has the wrong shape")
    b = lat.basis
    if not b:
        return RationalLattice.zero(n)
    pb = [p.apply(v) for v in b]  # P l for each basis vector l
    gram = [[sum(x * y for x, y in zip(bi, pbj)) for pbj in pb] for bi in b]
    inv = inverse_fraction_matrix(gram)
    if inv is None:
        raise DegeneratePairing("pairing is singular on the span of the lattice")
    dual = [[sum(inv[i][k] * b[k][j] for k in range(len(b))) for j in range(n)]
            for i in range(len(b))]
    return RationalLattice.from_generators(dual, n)


def push_forward(coords_lattice: RationalLattice, basis: Sequence[Sequence],
                 ambient_dim: int) -> RationalLattice:
    """Image of a lattice of coefficient vectors under c -> sum c_i basis_i."""
    vecs = [[sum(c[i] * Fraction(basis[i][j]) for i in range(len(basis)))
             for j in range(ambient_dim)] for c in coords_lattice.basis]
    return RationalLattice.from_generators(vecs, ambient_dim)
