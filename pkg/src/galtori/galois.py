"""Finite groups given by multiplication tables and lattices they act on."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from .linalg import BasisSolver, FinGenAbGroup, IntegerMatrix, as_matrix, cokernel
from .lattice import RationalLattice, kernel_lattice


class InvalidGroup(ValueError):
    pass


class InvalidLattice(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.failures))
        self.report = report


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


class InvalidArithmeticData(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Group on {0, ..., order-1}; ``mult_table[g][h]`` is the index of g*h."""

    mult_table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = field(default="", compare=False)
    inverse: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.mult_table)
        object.__setattr__(self, "mult_table", t)
        n = len(t)
        if n == 0 or any(len(r) != n for r in t):
            raise InvalidGroup("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in t for x in r):
            raise InvalidGroup("table entry out of range")
        e = self.identity
        if not 0 <= e < n or any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise InvalidGroup("declared identity is not an identity")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if t[g][h] == e]
            if len(hs) != 1 or t[hs[0]][g] != e:
                raise InvalidGroup(f"element {g} has no two-sided inverse")
            inv.append(hs[0])
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroup(f"not associative at ({a}, {b}, {c})")
        object.__setattr__(self, "inverse", tuple(inv))

    # construction ---------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(((0,),), 0, "1")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        """Z/n with element i standing for sigma^i."""
        if n < 1:
            raise InvalidGroup("cyclic group of order < 1")
        return cls(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0,
                   f"Z/{n}")

    @classmethod
    def generated_by(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                     name: str = "") -> tuple["FiniteGroup", list]:
        """Close ``gens`` under ``mul``; returns the group and its element list.

        Elements are numbered in breadth-first order from the identity, so the
        numbering is deterministic given the generator order.
        """
        elems = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = mul(x, s)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    queue.append(y)
                    if len(elems) > 10_000:
                        raise InvalidGroup("generated group is too large")
        table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
        return cls(table, 0, name), elems

    # arithmetic -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mult_table)

    def mul(self, g: int, h: int) -> int:
        return self.mult_table[g][h]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        for _ in range(k):
            out = self.mult_table[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mult_table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.mult_table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def cyclic_generator(self) -> int | None:
        for g in range(self.order):
            if self.element_order(g) == self.order:
                return g
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for s in gens:
                    y = self.mult_table[x][s]
                    if y not in out:
                        out.add(y)
                        new.append(y)
            frontier = new
        return frozenset(out)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.mult_table[a][self.inverse[b]] in s for a in s for b in s)

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if not self.is_subgroup(s):
            return False
        t, inv = self.mult_table, self.inverse
        return all(t[t[g][n]][inv[g]] in s for g in range(self.order) for n in s)

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups generated by at most two elements (all of them for
        the groups in the catalog)."""
        seen = set()
        for a in range(self.order):
            for b in range(a, self.order):
                seen.add(self.closure([a, b]))
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def left_coset_reps(self, sub: Iterable[int]) -> list[int]:
        sub = sorted(set(sub))
        reps, covered = [], set()
        order = [self.identity] + [g for g in range(self.order) if g != self.identity]
        for g in order:
            if g not in covered:
                reps.append(g)
                covered.update(self.mult_table[g][h] for h in sub)
        return reps

    def subgroup(self, elems: Sequence[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """Subgroup on ``elems`` (identity moved first); returns (group, embedding)."""
        if not self.is_subgroup(elems):
            raise NotASubgroup(f"{sorted(elems)} is not a subgroup")
        emb = [self.identity] + sorted(x for x in set(elems) if x != self.identity)
        pos = {g: i for i, g in enumerate(emb)}
        table = tuple(tuple(pos[self.mult_table[a][b]] for b in emb) for a in emb)
        return FiniteGroup(table, 0, f"sub{len(emb)}"), tuple(emb)

    def quotient(self, normal: Iterable[int]):
        """Returns (Q, projection, section) for the quotient by a normal subgroup."""
        normal = set(normal)
        if not self.is_normal(normal):
            raise NotNormal(f"{sorted(normal)} is not a normal subgroup")
        reps = self.left_coset_reps(normal)
        proj = [0] * self.order
        for i, r in enumerate(reps):
            for n in normal:
                proj[self.mult_table[r][n]] = i
        table = tuple(tuple(proj[self.mult_table[a][b]] for b in reps) for a in reps)
        return FiniteGroup(table, 0, f"{self.name}/N"), tuple(proj), tuple(reps)

    def __str__(self):
        return self.name or f"group of order {self.order}"


# ---------------------------------------------------------------------------
# lattices with a group action


@dataclass
class ValidationReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def validate_action(group: FiniteGroup, action: Sequence) -> ValidationReport:
    """Check that ``action`` is a homomorphism group -> GL_n(Z)."""
    rep = ValidationReport()
    if len(action) != group.order:
        rep.failures.append(f"expected {group.order} action matrices, got {len(action)}")
        return rep
    mats = []
    for i, a in enumerate(action):
        try:
            mats.append(as_matrix(a))
        except (ValueError, TypeError) as exc:
            rep.failures.append(f"action[{i}]: {exc}")
    if rep.failures:
        return rep
    n = mats[0].nrows
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            rep.failures.append(f"action[{i}] has shape {m.shape}, expected {(n, n)}")
    if rep.failures:
        return rep
    if mats[group.identity] != IntegerMatrix.identity(n):
        rep.failures.append("identity element does not act trivially")
    for i, m in enumerate(mats):
        if abs(m.det()) != 1:
            rep.failures.append(f"action[{i}] is not invertible over Z")
    for g, h in product(range(group.order), repeat=2):
        if mats[g] @ mats[h] != mats[group.mul(g, h)]:
            rep.failures.append(f"action[{g}] @ action[{h}] != action[{group.mul(g, h)}]")
            break
    return rep


@dataclass(frozen=True)
class GaloisLattice:
    """Z^rank with a left action of ``group`` by integer matrices on columns."""

    group: FiniteGroup
    action: tuple[IntegerMatrix, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        acts = tuple(as_matrix(a) for a in self.action)
        object.__setattr__(self, "action", acts)
        report = validate_action(self.group, acts)
        if not report.ok:
            raise InvalidLattice(report)

    @property
    def rank(self) -> int:
        return self.action[0].nrows

    @classmethod
    def trivial(cls, group: FiniteGroup, rank: int, name: str = "") -> "GaloisLattice":
        return cls(group, tuple(IntegerMatrix.identity(rank) for _ in range(group.order)), name)

    @classmethod
    def from_generator(cls, group: FiniteGroup, generator: int, matrix,
                       name: str = "") -> "GaloisLattice":
        """Cyclic group: action determined by the image of one generator."""
        m = as_matrix(matrix)
        acts = [None] * group.order
        cur, x = IntegerMatrix.identity(m.nrows), group.identity
        for _ in range(group.order):
            acts[x] = cur
            cur, x = cur @ m, group.mul(x, generator)
        if any(a is None for a in acts):
            raise InvalidGroup("element does not generate the group")
        return cls(group, tuple(acts), name)

    def act(self, g: int, vec: Sequence) -> list:
        return self.action[g].apply(vec)


def validate(lat: GaloisLattice) -> ValidationReport:
    return validate_action(lat.group, lat.action)


def _minus_identity(m: IntegerMatrix) -> IntegerMatrix:
    return m - IntegerMatrix.identity(m.nrows)


def invariants(lat: GaloisLattice, elements: Iterable[int] | None = None) -> RationalLattice:
    """Saturated lattice fixed by the given elements (default: the whole group)."""
    els = range(lat.group.order) if elements is None else elements
    blocks = [_minus_identity(lat.action[g]) for g in els]
    stacked = IntegerMatrix.vstack(blocks, lat.rank)
    return kernel_lattice(stacked)


def coinvariants(lat: GaloisLattice, elements: Iterable[int] | None = None) -> FinGenAbGroup:
    els = range(lat.group.order) if elements is None else elements
    blocks = [_minus_identity(lat.action[g]) for g in els]
    return cokernel(IntegerMatrix.hstack(blocks, lat.rank), lat.rank)


def norm_matrix(lat: GaloisLattice, elements: Iterable[int] | None = None) -> IntegerMatrix:
    els = list(range(lat.group.order) if elements is None else elements)
    out = IntegerMatrix.zeros(lat.rank, lat.rank)
    for g in els:
        out = out + lat.action[g]
    return out


def projection_lattice(lat: GaloisLattice) -> RationalLattice:
    """Image of the lattice under averaging over the group."""
    n = norm_matrix(lat)
    k = lat.group.order
    cols = [[Fraction(n.rows[i][j], k) for i in range(lat.rank)] for j in range(lat.rank)]
    return RationalLattice.from_generators(cols, lat.rank)


def dual_module(lat: GaloisLattice) -> GaloisLattice:
    """Hom(X, Z) in the dual basis: g acts by the transpose of action(g^-1)."""
    acts = tuple(lat.action[lat.group.inverse[g]].T for g in range(lat.group.order))
    return GaloisLattice(lat.group, acts, f"dual({lat.name})" if lat.name else "")


def restrict(lat: GaloisLattice, sub_elements: Sequence[int]) -> GaloisLattice:
    sub, emb = lat.group.subgroup(sub_elements)
    return GaloisLattice(sub, tuple(lat.action[g] for g in emb),
                         f"res({lat.name})" if lat.name else "")


def induce(group: FiniteGroup, sub_elements: Sequence[int], module: GaloisLattice,
           name: str = "") -> GaloisLattice:
    """Induced module Z[group] (x)_{sub} module.

    ``sub_elements[k]`` is the element of ``group`` corresponding to element
    k of ``module.group``.
    """
    emb = list(sub_elements)
    h = module.group
    if len(emb) != h.order or len(set(emb)) != h.order or not group.is_subgroup(emb):
        raise NotASubgroup("sub_elements do not form a subgroup")
    for a, b in product(range(h.order), repeat=2):
        if group.mul(emb[a], emb[b]) != emb[h.mul(a, b)]:
            raise NotASubgroup("embedding is not a homomorphism")
    back = {g: k for k, g in enumerate(emb)}
    reps = group.left_coset_reps(emb)
    r = module.rank
    size = len(reps) * r
    acts = []
    for g in range(group.order):
        m = [[0] * size for _ in range(size)]
        for i, t in enumerate(reps):
            gt = group.mul(g, t)
            for j, s in enumerate(reps):
                hh = group.mul(group.inverse[s], gt)
                if hh in back:
                    blk = module.action[back[hh]].rows
                    for a in range(r):
                        for b in range(r):
                            m[j * r + a][i * r + b] = blk[a][b]
                    break
        acts.append(IntegerMatrix(m, size))
    return GaloisLattice(group, tuple(acts), name)


def regular_representation(group: FiniteGroup) -> GaloisLattice:
    return induce(group, [group.identity], GaloisLattice.trivial(FiniteGroup.trivial(), 1),
                  f"Z[{group.name}]")


def fixed_submodule(lat: GaloisLattice, normal_elements: Sequence[int]):
    """X^N as a module over the quotient group.

    Returns (module over Q, basis rows of X^N in Z^rank, projection G -> Q).
    """
    group = lat.group
    q, proj, section = group.quotient(normal_elements)
    fixed = invariants(lat, normal_elements)
    basis = [list(r) for r in fixed.hnf]
    k = len(basis)
    acts = []
    solver = BasisSolver(basis, lat.rank) if k else None
    for qi in range(q.order):
        a = lat.action[section[qi]]
        cols = []
        for b in basis:
            c = solver.solve_integral(a.apply(b))
            if c is None:
                raise AssertionError("fixed submodule is not stable")
            cols.append(c)
        acts.append(IntegerMatrix([[cols[j][i] for j in range(k)] for i in range(k)], k))
    return GaloisLattice(q, tuple(acts), f"{lat.name}^N" if lat.name else ""), basis, proj


# ---------------------------------------------------------------------------
# local arithmetic data


@dataclass(frozen=True)
class LocalArithmeticData:
    """Inertia subgroup and a Frobenius element of the Galois group."""

    inertia: frozenset[int]
    frobenius: int

    def __post_init__(self):
        object.__setattr__(self, "inertia", frozenset(int(x) for x in self.inertia))

    def check(self, group: FiniteGroup) -> None:
        if not 0 <= self.frobenius < group.order:
            raise InvalidArithmeticData("frobenius index out of range")
        if not group.is_normal(self.inertia):
            raise InvalidArithmeticData(f"inertia {sorted(self.inertia)} is not a normal subgroup")
        q, proj, _ = group.quotient(self.inertia)
        f = proj[self.frobenius]
        if q.element_order(f) != q.order:
            raise InvalidArithmeticData(
                "frobenius does not generate group/inertia (the quotient must be cyclic)")

    @property
    def is_unramified(self) -> bool:
        return len(self.inertia) == 1


def unramified_data(group: FiniteGroup) -> LocalArithmeticData:
    gen = group.cyclic_generator()
    if gen is None:
        raise InvalidArithmeticData(
            f"{group} is not cyclic, so trivial inertia is not admissible")
    return LocalArithmeticData(frozenset({group.identity}), gen)


def totally_ramified_data(group: FiniteGroup) -> LocalArithmeticData:
    return LocalArithmeticData(frozenset(range(group.order)), group.identity)


def admissible_arithmetic(group: FiniteGroup) -> list[LocalArithmeticData]:
    """Every (normal inertia with cyclic quotient, generating Frobenius coset),
    one Frobenius representative per generating coset."""
    out = []
    for sub in group.subgroups():
        if not group.is_normal(sub):
            continue
        q, proj, section = group.quotient(sub)
        for qi in range(q.order):
            if q.element_order(qi) == q.order:
                out.append(LocalArithmeticData(sub, section[qi]))
    return out
