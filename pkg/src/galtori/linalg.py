"""Exact integer linear algebra: Smith and Hermite forms, kernels, cokernels.

Everything here works on Python ints, so entries never overflow.  Matrices are
stored row-major as tuples of tuples; the reduction routines copy them into
lists of lists and only ever apply *row* operations, handling column
operations by transposing.  That keeps the inner loops to list
comprehensions over a single row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntegerMatrix:
    """Immutable rectangular matrix of unbounded integers.

    Zero-sized shapes (0 x n, n x 0) are legal; the shape is stored explicitly
    because it cannot be recovered from an empty row tuple.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), ncols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, entries: Sequence[int], nrows: int | None = None,
             ncols: int | None = None) -> "IntegerMatrix":
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        out = [[0] * ncols for _ in range(nrows)]
        for i, e in enumerate(entries):
            out[i][i] = e
        return cls(out, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> "IntegerMatrix":
        if self.nrows and self.ncols:
            return IntegerMatrix(zip(*self.rows), self.nrows)
        return IntegerMatrix([[] for _ in range(self.ncols)], self.nrows)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a + b for a, b in zip(r, s)]
                              for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a - b for a, b in zip(r, s)]
                              for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix([[k * a for a in r] for r in self.rows], self.ncols)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector (works for Fractions too)."""
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det([list(r) for r in self.rows])

    @staticmethod
    def hstack(blocks: Sequence["IntegerMatrix"], nrows: int) -> "IntegerMatrix":
        ncols = sum(b.ncols for b in blocks)
        rows = [[] for _ in range(nrows)]
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for acc, r in zip(rows, b.rows):
                acc.extend(r)
        return IntegerMatrix(rows, ncols)

    @staticmethod
    def vstack(blocks: Sequence["IntegerMatrix"], ncols: int) -> "IntegerMatrix":
        rows = []
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("vstack column mismatch")
            rows.extend(b.rows)
        return IntegerMatrix(rows, ncols)


def as_matrix(m) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    rows = [list(r) for r in m]
    return IntegerMatrix(rows, len(rows[0]) if rows else 0)


def bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# row reduction with mirrored transforms


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _transpose_rows(a: list[list[int]], ncols: int) -> list[list[int]]:
    if not a:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*a)]


class _Ops:
    """Row operations on ``a`` replayed on companion matrices.

    ``fwd`` companions receive the same operation (they accumulate the
    transform).  ``inv`` companions hold the *transpose of the inverse*
    transform, which for ``row_i += q row_j`` means ``row_j -= q row_i``.
    """

    __slots__ = ("a", "fwd", "inv")

    def __init__(self, a, fwd=(), inv=()):
        self.a = a
        self.fwd = [m for m in fwd if m is not None]
        self.inv = [m for m in inv if m is not None]

    def addmul(self, i: int, j: int, q: int) -> None:
        for m in [self.a, *self.fwd]:
            ri, rj = m[i], m[j]
            m[i] = [x + q * y for x, y in zip(ri, rj)]
        for m in self.inv:
            ri, rj = m[i], m[j]
            m[j] = [y - q * x for x, y in zip(ri, rj)]

    def swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for m in [self.a, *self.fwd, *self.inv]:
            m[i], m[j] = m[j], m[i]

    def negate(self, i: int) -> None:
        for m in [self.a, *self.fwd, *self.inv]:
            m[i] = [-x for x in m[i]]


def _echelon(ops: _Ops, ncols: int, reduce_above: bool = False) -> list[int]:
    """Bring ``ops.a`` to row echelon form by unimodular row operations.

    Pivots end up positive.  With ``reduce_above`` entries above each pivot
    are reduced into ``[0, pivot)``, giving the row Hermite normal form.
    """
    a = ops.a
    nrows = len(a)
    pivots: list[int] = []
    p = 0
    for c in range(ncols):
        if p == nrows:
            break
        nz = [i for i in range(p, nrows) if a[i][c]]
        if not nz:
            continue
        while True:
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            piv = a[i0][c]
            rest = []
            for i in nz:
                if i == i0:
                    continue
                q = a[i][c] // piv
                if q:
                    ops.addmul(i, i0, -q)
                if a[i][c]:
                    rest.append(i)
            if not rest:
                break
            nz = rest + [i0]
        ops.swap(p, i0)
        if a[p][c] < 0:
            ops.negate(p)
        if reduce_above:
            piv = a[p][c]
            for i in range(p):
                q = a[i][c] // piv
                if q:
                    ops.addmul(i, p, -q)
        pivots.append(c)
        p += 1
    return pivots


def _is_diagonal(a: list[list[int]]) -> bool:
    for i, r in enumerate(a):
        for j, x in enumerate(r):
            if x and i != j:
                return False
    return True


def _snf_core(rows: list[list[int]], nrows: int, ncols: int, *, want_u=False,
              want_uinv=False, want_v=False, want_vinv=False):
    """Smith form of ``rows``; returns (diag, U, Uinv, V, Vinv) with Nones.

    U and V are returned as row lists in the usual orientation.
    """
    d = [list(r) for r in rows]
    u = _identity_rows(nrows) if want_u else None
    uinv_t = _identity_rows(nrows) if want_uinv else None
    v_t = _identity_rows(ncols) if want_v else None
    vinv = _identity_rows(ncols) if want_vinv else None

    def row_pass():
        _echelon(_Ops(d, [u], [uinv_t]), ncols)

    def col_pass():
        nonlocal d
        dt = _transpose_rows(d, ncols)
        _echelon(_Ops(dt, [v_t], [vinv]), nrows)
        d = _transpose_rows(dt, nrows)

    while True:
        row_pass()
        if _is_diagonal(d):
            pass
        else:
            col_pass()
            if not _is_diagonal(d):
                continue
        k = min(nrows, ncols)
        bad = None
        for i in range(k):
            if not d[i][i]:
                continue
            for j in range(i + 1, k):
                if d[j][j] % d[i][i]:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad is None:
            break
        # column i += column j, then rediagonalize
        i, j = bad
        dt = _transpose_rows(d, ncols)
        _Ops(dt, [v_t], [vinv]).addmul(i, j, 1)
        d = _transpose_rows(dt, nrows)

    k = min(nrows, ncols)
    diag = [d[i][i] for i in range(k)]
    for i in range(k):
        if diag[i] < 0:
            diag[i] = -diag[i]
            # fold the sign into U when tracked, else into V
            if u is not None or uinv_t is not None or (v_t is None and vinv is None):
                _Ops(d, [u], [uinv_t]).negate(i)
            else:
                dt = _transpose_rows(d, ncols)
                _Ops(dt, [v_t], [vinv]).negate(i)
                d = _transpose_rows(dt, nrows)
    v = _transpose_rows(v_t, ncols) if v_t is not None else None
    uinv = _transpose_rows(uinv_t, nrows) if uinv_t is not None else None
    return diag, u, uinv, v, vinv


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D.rows[i][i] for i in range(min(self.D.shape))]


def smith_normal_form(m) -> SnfDecomposition:
    m = as_matrix(m)
    diag, u, _, v, _ = _snf_core(m.tolist(), m.nrows, m.ncols, want_u=True, want_v=True)
    return SnfDecomposition(
        IntegerMatrix(u, m.nrows),
        IntegerMatrix.diag(diag, m.nrows, m.ncols),
        IntegerMatrix(v, m.ncols),
    )


# ---------------------------------------------------------------------------
# sparse elimination, invariants only


def sparse_invariant_factors(rows: Sequence[dict], ncols: int) -> list[int]:
    """Nonzero Smith invariants of a sparse matrix given as ``{col: val}`` rows.

    Unit pivots are eliminated greedily (cheapest column first); whatever
    survives is handed to the dense routine.  Bar-complex coboundaries are
    overwhelmingly +-1 entries, so the dense remainder is tiny in practice.
    """
    R = {}
    cols: dict[int, set] = {}
    for i, r in enumerate(rows):
        r = {c: v for c, v in r.items() if v}
        if r:
            R[i] = r
            for c in r:
                cols.setdefault(c, set()).add(i)
    units = 0
    while True:
        best = None
        for c in sorted(cols, key=lambda c: len(cols[c])):
            cand = [i for i in cols[c] if R[i][c] in (1, -1)]
            if cand:
                best = (c, min(cand, key=lambda i: len(R[i])))
                break
        if best is None:
            break
        c, p = best
        prow = R.pop(p)
        pv = prow[c]  # +-1, its own inverse
        for i in list(cols[c]):
            if i == p:
                continue
            row = R[i]
            f = row[c] * pv
            for cc, x in prow.items():
                nv = row.get(cc, 0) - f * x
                if nv:
                    if cc not in row:
                        cols[cc].add(i)
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    cols[cc].discard(i)
            if not row:
                del R[i]
        for cc in prow:
            cols[cc].discard(p)
        del cols[c]
        for cc in [cc for cc in prow if cc in cols and not cols[cc]]:
            del cols[cc]
        units += 1
    if not R:
        return [1] * units
    col_ids = sorted(cols)
    pos = {c: k for k, c in enumerate(col_ids)}
    dense = []
    for r in R.values():
        row = [0] * len(col_ids)
        for c, x in r.items():
            row[pos[c]] = x
        dense.append(row)
    diag = _snf_core(dense, len(dense), len(col_ids))[0]
    return [1] * units + sorted(x for x in diag if x)


def invariant_factors(m) -> list[int]:
    """Nonzero Smith invariants d1 | d2 | ... of ``m``."""
    m = as_matrix(m)
    return sparse_invariant_factors(
        [{j: x for j, x in enumerate(r) if x} for r in m.rows], m.ncols)


def rank(m) -> int:
    return len(invariant_factors(m))


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True, order=True)
class FinGenAbGroup:
    """Z^free_rank + Z/t1 + ... + Z/tk with t1 | t2 | ... and every ti >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(x < 2 for x in t):
            raise ValueError(f"invariant factors must be >= 2, got {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {t}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FinGenAbGroup":
        """Normalize a direct sum of cyclic groups; 0 means a copy of Z."""
        orders = [abs(int(o)) for o in orders]
        free = sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(free, ())
        diag = _snf_core([[o if i == j else 0 for j in range(len(finite))]
                          for i, o in enumerate(finite)], len(finite), len(finite))[0]
        return cls(free, tuple(x for x in diag if x > 1))

    @property
    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def is_trivial(self) -> bool:
        return not self.free_rank and not self.torsion

    def torsion_part(self) -> "FinGenAbGroup":
        return FinGenAbGroup(0, self.torsion)

    def free_part(self) -> "FinGenAbGroup":
        return FinGenAbGroup(self.free_rank, ())

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m, target_rank: int | None = None) -> FinGenAbGroup:
    """Z^target_rank modulo the column span of ``m``."""
    m = as_matrix(m)
    if target_rank is None:
        target_rank = m.nrows
    if m.nrows != target_rank:
        raise ValueError(f"matrix has {m.nrows} rows, expected {target_rank}")
    inv = invariant_factors(m)
    return FinGenAbGroup(target_rank - len(inv), tuple(x for x in inv if x > 1))


# ---------------------------------------------------------------------------
# Hermite forms, kernels, solving


def hnf_rows(vectors: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors``."""
    a = [list(v) for v in vectors]
    _echelon(_Ops(a), ncols, reduce_above=True)
    return [r for r in a if any(r)]


def kernel_basis(m) -> list[list[int]]:
    """Saturated basis (HNF rows) of {x in Z^ncols : m x = 0}."""
    m = as_matrix(m)
    n = m.ncols
    if n == 0:
        return []
    at = _transpose_rows(m.tolist(), m.ncols) if m.nrows else [[] for _ in range(n)]
    u = _identity_rows(n)
    _echelon(_Ops(at, [u]), m.nrows)
    kern = [u[i] for i in range(n) if not any(at[i])]
    return hnf_rows(kern, n)


class BasisSolver:
    """Coordinates of integer vectors with respect to a fixed integer basis.

    ``basis`` rows must be linearly independent.  ``solve`` returns the
    rational coefficient vector c with c @ basis == x, or None when x is not
    in the rational span.
    """

    def __init__(self, basis: Sequence[Sequence[int]], ncols: int):
        self.k = len(basis)
        self.ncols = ncols
        h = [list(b) for b in basis]
        t = _identity_rows(self.k)
        self.pivots = _echelon(_Ops(h, [t]), ncols)
        if len(self.pivots) != self.k:
            raise ValueError("basis vectors are linearly dependent")
        self.h = h
        self.t = t

    def solve(self, x: Sequence[int]) -> list[Fraction] | None:
        r = [Fraction(v) for v in x]
        cprime = []
        for row, p in zip(self.h, self.pivots):
            coef = r[p] / row[p]
            cprime.append(coef)
            if coef:
                r = [a - coef * b for a, b in zip(r, row)]
        if any(r):
            return None
        return [sum(cp * self.t[i][j] for i, cp in enumerate(cprime))
                for j in range(self.k)]

    def solve_integral(self, x: Sequence[int]) -> list[int] | None:
        c = self.solve(x)
        if c is None or any(v.denominator != 1 for v in c):
            return None
        return [int(v) for v in c]


def inverse_fraction_matrix(a: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Exact Gauss-Jordan inverse; None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [r[n:] for r in m]


def rational_rank(rows: Sequence[Sequence], ncols: int) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        for i in range(rk + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[rk][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0
