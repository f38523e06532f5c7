"""Cohomology of finite groups with lattice or (Z/m)^r coefficients.

Cochains are inhomogeneous and *not* normalized: C^k = Maps(G^k, M) is
Z^(r * |G|^k) (or (Z/m)^(r * |G|^k)) with the tuple (g1, ..., gk) at block
index sum g_i |G|^(k-i) and coordinate a at offset a inside the block.

Two computational paths share the complexes:

* invariants only, for lattice coefficients: the free rank comes from the
  rank of d^n and the torsion from the Smith invariants of d^(n-1), both via
  sparse unit-pivot elimination.  This is what scales to |G| = 12.
* a dense presentation keeping the change-of-basis data, used for finite
  coefficients and whenever explicit classes or representatives are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Sequence

from .galois import FiniteGroup, GaloisLattice, NotASubgroup, fixed_submodule
from .linalg import (
    FinGenAbGroup,
    IntegerMatrix,
    _snf_core,
    as_matrix,
    sparse_invariant_factors,
)

MAX_DEGREE = 3


class NotCyclic(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientModule:
    """(Z/m)^rank with a group action, or Z^rank when ``modulus == 0``.

    Finite modules only need a homomorphism to GL_rank(Z/m); the matrices are
    integer lifts and need not come from a lattice.
    """

    group: FiniteGroup
    action: tuple[IntegerMatrix, ...]
    modulus: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        acts = tuple(as_matrix(a) for a in self.action)
        m = self.modulus
        if m < 0 or m == 1:
            raise ValueError("modulus must be 0 (lattice) or >= 2")
        if m:
            acts = tuple(IntegerMatrix([[x % m for x in r] for r in a.rows], a.ncols)
                         for a in acts)
        object.__setattr__(self, "action", acts)
        if len(acts) != self.group.order:
            raise ValueError("one action matrix per group element required")
        n = self.rank
        for g, h in product(range(self.group.order), repeat=2):
            prod = acts[g] @ acts[h]
            target = acts[self.group.mul(g, h)]
            if m:
                ok = all((a - b) % m == 0 for r, s in zip(prod.rows, target.rows)
                         for a, b in zip(r, s))
            else:
                ok = prod == target
            if not ok:
                raise ValueError(f"not an action: {g} * {h}")
        if acts[self.group.identity] != IntegerMatrix.identity(n):
            raise ValueError("identity does not act trivially")

    @classmethod
    def from_lattice(cls, lat: GaloisLattice, modulus: int = 0) -> "CoefficientModule":
        name = lat.name if not modulus else f"{lat.name} mod {modulus}"
        return cls(lat.group, lat.action, modulus, name)

    @property
    def kind(self) -> str:
        return "finite" if self.modulus else "lattice"

    @property
    def rank(self) -> int:
        return self.action[0].nrows

    def restrict(self, sub_elements: Sequence[int]) -> "CoefficientModule":
        sub, emb = self.group.subgroup(sub_elements)
        return CoefficientModule(sub, tuple(self.action[g] for g in emb), self.modulus,
                                 self.name)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        m = self.modulus
        return tuple(x % m for x in vec) if m else tuple(vec)


def _as_module(module) -> CoefficientModule:
    if isinstance(module, CoefficientModule):
        return module
    if isinstance(module, GaloisLattice):
        return CoefficientModule.from_lattice(module)
    raise TypeError(f"expected a coefficient module, got {type(module).__name__}")


# ---------------------------------------------------------------------------
# cochain complexes


def cochain_dim(group: FiniteGroup, module: CoefficientModule, k: int) -> int:
    return module.rank * group.order ** k


def _sparse_coboundary(group: FiniteGroup, module: CoefficientModule, k: int,
                       fault: str | None = None) -> list[dict]:
    """Rows of d^k : C^k -> C^(k+1) as ``{column: value}`` dicts."""
    n, r = group.order, module.rank
    t = group.mult_table
    acts = [a.rows for a in module.action]
    rows = []
    last_sign = (-1) ** (k + 1)
    if fault == "wrong_sign" and k >= 1:
        last_sign = -last_sign
    for tup in product(range(n), repeat=k + 1):
        g1 = tup[0]
        head = 0
        for x in tup[1:]:
            head = head * n + x
        faces = []
        for i in range(1, k + 1):
            merged = tup[:i - 1] + (t[tup[i - 1]][tup[i]],) + tup[i + 1:]
            idx = 0
            for x in merged:
                idx = idx * n + x
            faces.append(((-1) ** i, idx))
        tail = 0
        for x in tup[:k]:
            tail = tail * n + x
        faces.append((last_sign, tail))
        a1 = acts[g1]
        for a in range(r):
            row: dict[int, int] = {}
            base = head * r
            for b, x in enumerate(a1[a]):
                if x:
                    row[base + b] = x
            for s, idx in faces:
                c = idx * r + a
                v = row.get(c, 0) + s
                if v:
                    row[c] = v
                else:
                    row.pop(c, None)
            rows.append(row)
    return rows


def _dense(rows: list[dict], ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        row = [0] * ncols
        for c, x in r.items():
            row[c] = x
        out.append(row)
    return out


def coboundary_matrix(group: FiniteGroup, module, k: int, fault: str | None = None) -> IntegerMatrix:
    module = _as_module(module)
    rows = _sparse_coboundary(group, module, k, fault)
    ncols = cochain_dim(group, module, k)
    return IntegerMatrix(_dense(rows, ncols), ncols)


def cochain_complex(group: FiniteGroup, module, n_max: int) -> list[IntegerMatrix]:
    """Coboundary matrices d^0, ..., d^n_max."""
    if not 0 <= n_max <= MAX_DEGREE:
        raise ValueError(f"n_max must be in 0..{MAX_DEGREE}")
    return [coboundary_matrix(group, module, k) for k in range(n_max + 1)]


# ---------------------------------------------------------------------------
# subquotients Z/B of Z^N with explicit coordinates


class Subquotient:
    """Z/B for Z = {x : K x = 0 mod m} and B = <generators> + m Z^N.

    ``K`` is an integer matrix (rows x N) or None for Z = Z^N.  Keeps the
    change-of-basis data so that elements of Z can be mapped to coordinates
    in the invariant-factor decomposition and generators can be lifted.
    """

    def __init__(self, kernel_of: list[list[int]] | None, dim: int,
                 image_gens: Sequence[Sequence[int]], modulus: int = 0):
        self.dim = dim
        self.modulus = m = modulus
        if kernel_of is None or not kernel_of:
            diag, v, vinv = [], _eye(dim), _eye(dim)
        else:
            diag, _, _, v, vinv = _snf_core(kernel_of, len(kernel_of), dim,
                                            want_v=True, want_vinv=True)
        # Z = V * diag(e) * Z^N restricted to the e_j != 0 coordinates
        scale = []
        for j in range(dim):
            s = diag[j] if j < len(diag) else 0
            if s == 0:
                scale.append(1)
            elif m == 0:
                scale.append(0)
            else:
                scale.append(m // gcd(s, m))
        self.keep = [j for j in range(dim) if scale[j]]
        self.scale = scale
        self.v = v
        self.vinv = vinv
        gens = [list(g) for g in image_gens]
        if m:
            gens += [[m * int(i == j) for j in range(dim)] for i in range(dim)]
        coords = [self._z_coords(g) for g in gens]
        k = len(self.keep)
        # columns of C are the generators in Z-coordinates
        c_rows = [[coords[t][i] for t in range(len(coords))] for i in range(k)]
        if k and coords:
            tdiag, u, uinv, _, _ = _snf_core(c_rows, k, len(coords), want_u=True, want_uinv=True)
        else:
            tdiag, u, uinv = [], _eye(k), _eye(k)
        orders = [tdiag[i] if i < len(tdiag) else 0 for i in range(k)]
        self.u = u
        self.uinv = uinv
        torsion = [i for i in range(k) if orders[i] > 1]
        free = [i for i in range(k) if orders[i] == 0]
        self.components = torsion + free
        self.orders = [orders[i] for i in self.components]
        self.group = FinGenAbGroup(len(free), tuple(orders[i] for i in torsion))

    def _z_coords(self, x: Sequence[int]) -> list[int]:
        y = [sum(a * b for a, b in zip(row, x)) for row in self.vinv]
        out = []
        for j in range(self.dim):
            e = self.scale[j]
            if e == 0:
                if y[j]:
                    raise ValueError("vector is not in the kernel")
                continue
            if y[j] % e:
                raise ValueError("vector is not in the kernel")
            out.append(y[j] // e)
        return out

    def in_kernel(self, x: Sequence[int]) -> bool:
        try:
            self._z_coords(x)
        except ValueError:
            return False
        return True

    def class_of(self, x: Sequence[int]) -> tuple[int, ...]:
        c = self._z_coords(x)
        w = [sum(a * b for a, b in zip(self.u[i], c)) for i in self.components]
        return tuple(wi % o if o else wi for wi, o in zip(w, self.orders))

    def lift(self, coords: Sequence[int]) -> list[int]:
        """A vector of Z whose class has the given coordinates."""
        k = len(self.keep)
        c = [0] * k
        for comp, val in zip(self.components, coords):
            for i in range(k):
                c[i] += self.uinv[i][comp] * val
        x = [0] * self.dim
        for ci, j in zip(c, self.keep):
            if ci:
                e = self.scale[j] * ci
                for row_idx in range(self.dim):
                    x[row_idx] += self.v[row_idx][j] * e
        if self.modulus:
            x = [a % self.modulus for a in x]
        return x

    def generators(self) -> list[list[int]]:
        n = len(self.components)
        return [self.lift([int(i == j) for j in range(n)]) for i in range(n)]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def subquotient_group(kernel_of, dim: int, image_gens, modulus: int = 0) -> FinGenAbGroup:
    k = None if kernel_of is None else as_matrix(kernel_of).tolist()
    return Subquotient(k, dim, image_gens, modulus).group


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass
class CohomologyClassGroup:
    degree: int
    group: FinGenAbGroup
    presentation: Subquotient | None = field(default=None, repr=False, compare=False)

    def class_of(self, cochain: Sequence[int]) -> tuple[int, ...]:
        if self.presentation is None:
            raise ValueError("computed without representatives")
        return self.presentation.class_of(cochain)

    def is_cocycle(self, cochain: Sequence[int]) -> bool:
        return self.presentation is not None and self.presentation.in_kernel(cochain)

    def representatives(self) -> list[list[int]]:
        if self.presentation is None:
            raise ValueError("computed without representatives")
        return self.presentation.generators()

    @property
    def orders(self) -> list[int]:
        return list(self.presentation.orders) if self.presentation else \
            list(self.group.torsion) + [0] * self.group.free_rank


def cohomology_group(group: FiniteGroup, module, n: int, representatives: bool = False,
                     fault: str | None = None) -> CohomologyClassGroup:
    """H^n(group, module) for n in 0..2 as ker d^n / im d^(n-1)."""
    module = _as_module(module)
    if module.group != group:
        raise ValueError("module is over a different group")
    if not 0 <= n <= 2:
        raise ValueError("degree must be 0, 1 or 2")
    dim_n = cochain_dim(group, module, n)
    if module.modulus == 0 and not representatives:
        rank_n = len(sparse_invariant_factors(_sparse_coboundary(group, module, n, fault),
                                              dim_n))
        if n == 0:
            return CohomologyClassGroup(0, FinGenAbGroup(dim_n - rank_n, ()))
        inv = sparse_invariant_factors(_sparse_coboundary(group, module, n - 1, fault),
                                       cochain_dim(group, module, n - 1))
        return CohomologyClassGroup(
            n, FinGenAbGroup(dim_n - rank_n - len(inv), tuple(x for x in inv if x > 1)))
    pres = cohomology_presentation(group, module, n, fault)
    return CohomologyClassGroup(n, pres.group, pres)


def cohomology_presentation(group: FiniteGroup, module, n: int,
                            fault: str | None = None) -> Subquotient:
    module = _as_module(module)
    dim_n = cochain_dim(group, module, n)
    d_n = _dense(_sparse_coboundary(group, module, n, fault), dim_n)
    if n == 0:
        gens = []
    else:
        prev = coboundary_matrix(group, module, n - 1, fault)
        gens = [list(c) for c in zip(*prev.rows)] if prev.nrows else []
    return Subquotient(d_n, dim_n, gens, module.modulus)


# ---------------------------------------------------------------------------
# the cyclic closed form


def cyclic_oracle(group: FiniteGroup, module, n: int, generator: int | None = None) -> FinGenAbGroup:
    """Tate-style closed form for cyclic groups.

    n = 0: M^G;  odd n: ker N / (s - 1)M;  even n >= 2: M^G / N M.
    """
    module = _as_module(module)
    if generator is None:
        generator = group.cyclic_generator()
        if generator is None:
            raise NotCyclic(f"{group} is not cyclic")
    elif group.element_order(generator) != group.order:
        raise NotCyclic(f"element {generator} does not generate {group}")
    r, m = module.rank, module.modulus
    s = module.action[generator]
    s_minus = [[s.rows[i][j] - (i == j) for j in range(r)] for i in range(r)]
    norm = [[sum(module.action[g].rows[i][j] for g in range(group.order)) for j in range(r)]
            for i in range(r)]
    cols = lambda a: [list(c) for c in zip(*a)] if r else []
    if n == 0:
        return Subquotient(s_minus, r, [], m).group
    if n % 2:
        return Subquotient(norm, r, cols(s_minus), m).group
    return Subquotient(s_minus, r, cols(norm), m).group


# ---------------------------------------------------------------------------
# restriction, corestriction, inflation on cochains


def _tuple_index(tup, n):
    idx = 0
    for x in tup:
        idx = idx * n + x
    return idx


def _value(cochain, tup, n, r):
    i = _tuple_index(tup, n) * r
    return cochain[i:i + r]


def _apply(mat: IntegerMatrix, vec):
    return [sum(a * b for a, b in zip(row, vec)) for row in mat.rows]


def restriction(group: FiniteGroup, sub_elements: Sequence[int], module, n: int,
                cochain: Sequence[int]) -> list[int]:
    """Restrict an n-cochain on ``group`` to the subgroup (ordered as
    ``group.subgroup(sub_elements)`` orders it)."""
    module = _as_module(module)
    sub, emb = group.subgroup(sub_elements)
    r, big = module.rank, group.order
    out = []
    for tup in product(range(sub.order), repeat=n):
        out.extend(_value(cochain, tuple(emb[h] for h in tup), big, r))
    return _reduce(out, module.modulus)


def _reduce(vec, m):
    return [x % m for x in vec] if m else list(vec)


def corestriction(group: FiniteGroup, sub_elements: Sequence[int], module, n: int,
                  cochain: Sequence[int]) -> list[int]:
    """Transfer an n-cochain on the subgroup up to ``group``.

    Goes through homogeneous cochains: the subgroup cochain is pulled back
    along g -> h(g), where g = h(g) s(g) with s(g) a fixed right coset
    representative, and then summed over left coset representatives.
    """
    module = _as_module(module)
    if not group.is_subgroup(sub_elements):
        raise NotASubgroup(f"{sorted(sub_elements)} is not a subgroup")
    sub, emb = group.subgroup(sub_elements)
    pos = {g: i for i, g in enumerate(emb)}
    r, big, small = module.rank, group.order, sub.order
    t, inv = group.mult_table, group.inverse

    right_rep = {}
    for g in range(big):
        if g in right_rep:
            continue
        for h in emb:
            right_rep[t[h][g]] = g
    h_of = [pos[t[g][inv[right_rep[g]]]] for g in range(big)]
    lefts = group.left_coset_reps(emb)

    def homog_sub(hs):
        # F(h0, ..., hn) = h0 . f(h0^-1 h1, ..., h_{n-1}^-1 h_n)
        args = tuple(sub.mult_table[sub.inverse[hs[i]]][hs[i + 1]] for i in range(n))
        val = _value(cochain, args, small, r)
        return _apply(module.action[emb[hs[0]]], val)

    out = []
    for tup in product(range(big), repeat=n):
        chain = [group.identity]
        for g in tup:
            chain.append(t[chain[-1]][g])
        total = [0] * r
        for rep in lefts:
            ri = inv[rep]
            hs = [h_of[t[ri][g]] for g in chain]
            v = _apply(module.action[rep], homog_sub(hs))
            total = [a + b for a, b in zip(total, v)]
        out.extend(total)
    return _reduce(out, module.modulus)


def inflation(group: FiniteGroup, normal_elements: Sequence[int], lattice: GaloisLattice,
              n: int, cochain: Sequence[int]) -> list[int]:
    """Inflate an n-cochain of G/N with values in X^N (coordinates in the basis
    returned by :func:`fixed_submodule`) to an n-cochain of G with values in X."""
    quot, basis, proj = fixed_submodule(lattice, normal_elements)
    k, r = len(basis), lattice.rank
    out = []
    for tup in product(range(group.order), repeat=n):
        c = _value(cochain, tuple(proj[g] for g in tup), quot.group.order, k)
        out.extend(sum(c[i] * basis[i][j] for i in range(k)) for j in range(r))
    return out


def multiply_class(cls: Sequence[int], k: int, orders: Sequence[int]) -> tuple[int, ...]:
    return tuple((k * c) % o if o else k * c for c, o in zip(cls, orders))
