"""Enumeration checks of cor o res and of the inflation-restriction sequence.

Everything here works on explicit cocycle tables from :mod:`bruteforce`, so
the checks do not depend on the Smith-form machinery.  Cochain-level
restriction and corestriction are the library maps under test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .bruteforce import ClassTable, TableModule
from .cohomology import CoefficientModule, corestriction, restriction
from .catalog import a2_weyl, weil_restriction
from .galois import FiniteGroup, NotNormal
from .linalg import IntegerMatrix


@dataclass
class CheckReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _table(group: FiniteGroup, module: CoefficientModule) -> TableModule:
    return TableModule.from_matrices(group, module.action, module.modulus)


def _to_vector(ct: ClassTable, row) -> list[int]:
    vals = ct.full_values(row)
    out = []
    for tup in product(range(ct.mod.group.order), repeat=ct.n):
        out.extend(ct.mod.decode(vals[tup]))
    return out


def _from_vector(ct: ClassTable, vec, order: int) -> dict:
    r = len(ct.mod.decode(0))
    vals = {}
    for i, tup in enumerate(product(range(order), repeat=ct.n)):
        vals[tup] = ct.mod.encode(vec[i * r:(i + 1) * r])
    return vals


def check_cor_res(group: FiniteGroup, sub_elements, module: CoefficientModule, n: int,
                  budget: int | None = None) -> CheckReport:
    """cor(res(z)) - [G:H] z is a coboundary for a representative z of every class."""
    index = group.order // len(set(sub_elements))
    report = CheckReport(f"cor o res on H^{n}({group}, {module.name or 'M'})")
    ct = ClassTable(_table(group, module), n, budget)
    for i, z in enumerate(ct.representatives):
        vec = _to_vector(ct, z)
        down = restriction(group, sub_elements, module, n, vec)
        up = corestriction(group, sub_elements, module, n, down)
        w = ct.normalize(_from_vector(ct, up, group.order))
        report.checks[f"class {i}: cocycle"] = ct.is_cocycle(w)
        report.checks[f"class {i}: equals [G:H] z"] = ct.is_coboundary(ct.sub(w, ct.scale(z, index)))
    report.notes.append(f"|H^{n}| = {ct.order}, [G:H] = {index}")
    return report


class _InfRes:
    """The groups and maps of 0 -> H1(G/N, M^N) -> H1(G, M) -> H1(N, M)^G -> H2(G/N, M^N) -> H2(G, M)."""

    def __init__(self, group: FiniteGroup, normal, module: CoefficientModule, budget=None):
        normal = sorted(set(normal))
        if not group.is_normal(normal):
            raise NotNormal(f"{normal} is not normal")
        self.group = group
        self.mod = _table(group, module)
        self.fixed = self.mod.fixed_codes(normal)
        self.quot, self.proj, self.section = group.quotient(normal)
        self.fixed_mod = self.mod.submodule(self.fixed, self.quot, self.section)
        self.sub, self.emb = group.subgroup(normal)
        # same (Z/m)^r coding as self.mod
        self.sub_mod = TableModule.from_matrices(
            self.sub, [module.action[g] for g in self.emb], module.modulus)
        self.h1q = ClassTable(self.fixed_mod, 1, budget)
        self.h1g = ClassTable(self.mod, 1, budget)
        self.h1n = ClassTable(self.sub_mod, 1, budget)
        self.h2q = ClassTable(self.fixed_mod, 2, budget)
        self.h2g = ClassTable(self.mod, 2, budget)

    def inflate(self, src: ClassTable, dst: ClassTable, row) -> np.ndarray:
        vals = src.full_values(row)
        out = {tup: self.fixed[vals[tuple(self.proj[g] for g in tup)]]
               for tup in product(range(self.group.order), repeat=src.n)}
        return dst.normalize(out)

    def restrict(self, row) -> np.ndarray:
        vals = self.h1g.full_values(row)
        return self.h1n.normalize({(x,): vals[(self.emb[x],)] for x in range(self.sub.order)})

    def conjugate(self, g: int, row) -> np.ndarray:
        """(g.f)(x) = g f(g^-1 x g) on N."""
        t, inv = self.group.mult_table, self.group.inverse
        pos = {h: i for i, h in enumerate(self.emb)}
        vals = self.h1n.full_values(row)
        return self.h1n.normalize({
            (x,): int(self.mod.act[g][vals[(pos[t[t[inv[g]][self.emb[x]]][g]],)]])
            for x in range(self.sub.order)})

    def transgressions(self, row) -> set[int]:
        """Classes in H2(G/N, M^N) of dg over all 1-cochains g on G extending f.

        Only extensions whose coboundary is inflated from G/N with values in
        M^N are used; the set has one element when the map is well defined.
        """
        group, mod = self.group, self.mod
        order, k = group.order, mod.size
        t = group.mult_table
        fvals = self.h1n.full_values(row)
        known = {self.emb[x]: fvals[(x,)] for x in range(self.sub.order)}
        free = [g for g in range(order) if g not in known]
        grid = np.indices((k,) * len(free)).reshape(len(free), -1).T if free else np.zeros((1, 0), int)
        vals = np.zeros((len(grid), order), dtype=np.int64)
        for g, c in known.items():
            vals[:, g] = c
        for j, g in enumerate(free):
            vals[:, g] = grid[:, j]
        in_fixed = np.zeros(k, dtype=bool)
        in_fixed[self.fixed] = True
        d = {}
        for x, y in product(range(order), repeat=2):
            d[x, y] = mod.add[mod.add[mod.act[x][vals[:, y]], mod.neg[vals[:, t[x][y]]]], vals[:, x]]
        ok = np.ones(len(vals), dtype=bool)
        for (x, y), col in d.items():
            sx, sy = self.section[self.proj[x]], self.section[self.proj[y]]
            ok &= (col == d[sx, sy]) & in_fixed[col]
        position = {c: i for i, c in enumerate(self.fixed)}
        classes = set()
        qn = self.quot.order
        for r in np.nonzero(ok)[0]:
            qvals = {(a, b): position[int(d[self.section[a], self.section[b]][r])]
                     for a, b in product(range(qn), repeat=2)}
            classes.add(self.h2q.class_index(self.h2q.normalize(qvals)))
        return classes


def check_inflation_restriction(group: FiniteGroup, normal, module: CoefficientModule,
                                budget: int | None = None) -> CheckReport:
    """Exactness of the five-term sequence, every map evaluated on class representatives."""
    s = _InfRes(group, normal, module, budget)
    report = CheckReport(f"inflation-restriction for {group}, |N| = {len(set(normal))}, "
                         f"{module.name or 'M'}")
    zero1n = s.h1n.class_index(np.zeros(len(s.h1n.variables), dtype=s.mod.neg.dtype))
    zero2q = s.h2q.class_index(np.zeros(len(s.h2q.variables), dtype=s.mod.neg.dtype))

    inf1 = [s.h1g.class_index(s.inflate(s.h1q, s.h1g, z)) for z in s.h1q.representatives]
    res1 = [s.h1n.class_index(s.restrict(z)) for z in s.h1g.representatives]
    invariant = [j for j, f in enumerate(s.h1n.representatives)
                 if all(s.h1n.class_index(s.conjugate(g, f)) == j for g in range(group.order))]
    tg = {}
    for j in invariant:
        classes = s.transgressions(s.h1n.representatives[j])
        report.checks[f"transgression of class {j} is well defined"] = len(classes) == 1
        tg[j] = next(iter(classes)) if classes else None
    inf2_kernel = {i for i, z in enumerate(s.h2q.representatives)
                   if s.h2g.is_coboundary(s.inflate(s.h2q, s.h2g, z))}

    report.checks["inflation lands in cocycles"] = None not in inf1
    report.checks["inflation is injective on H1"] = len(set(inf1)) == len(inf1)
    report.checks["image of inflation = kernel of restriction"] = (
        set(inf1) == {i for i, c in enumerate(res1) if c == zero1n})
    report.checks["restriction lands in G-invariant classes"] = set(res1) <= set(invariant)
    report.checks["image of restriction = kernel of transgression"] = (
        set(res1) == {j for j in invariant if tg[j] == zero2q})
    report.checks["image of transgression = kernel of inflation on H2"] = (
        set(tg.values()) == inf2_kernel)
    report.notes.append(
        f"|H1(G/N, M^N)| = {s.h1q.order}, |H1(G, M)| = {s.h1g.order}, "
        f"|H1(N, M)^G| = {len(invariant)}, |H2(G/N, M^N)| = {s.h2q.order}, "
        f"|H2(G, M)| = {s.h2g.order}")
    return report


def _powers(group: FiniteGroup, matrix, modulus: int, name: str) -> CoefficientModule:
    """Cyclic group: the module where the generator 1 acts by ``matrix``."""
    m = IntegerMatrix(matrix)
    acts, cur = [], IntegerMatrix.identity(m.nrows)
    for _ in range(group.order):
        acts.append(cur)
        cur = cur @ m
    return CoefficientModule(group, tuple(acts), modulus, name)


def sequence_cases() -> list[tuple[FiniteGroup, list[int], list[CoefficientModule]]]:
    """(group, normal subgroup, finite modules) for Z/4 over Z/2 and S3 over A3."""
    c4 = FiniteGroup.cyclic(4)
    rot = [[0, -1], [1, 0]]
    c4_mods = [_powers(c4, [[1]], 2, "Z/2"), _powers(c4, [[1]], 4, "Z/4"),
               _powers(c4, [[-1]], 4, "Z/4 by inversion"), _powers(c4, rot, 3, "rotation mod 3"),
               _powers(c4, rot, 4, "rotation mod 4"),
               CoefficientModule.from_lattice(weil_restriction(4), 2)]
    x = a2_weyl()
    s3 = x.group
    # the catalog's S3 has no named A3; it is the set of elements of order 1 or 3
    a3 = [g for g in range(s3.order) if s3.element_order(g) != 2]
    ident = (IntegerMatrix.identity(1),) * s3.order
    sgn = tuple(IntegerMatrix([[1 if g in a3 else -1]]) for g in range(s3.order))
    s3_mods = [CoefficientModule(s3, ident, 3, "Z/3"), CoefficientModule(s3, ident, 2, "Z/2"),
               CoefficientModule(s3, sgn, 3, "sign mod 3"), CoefficientModule(s3, sgn, 4, "sign mod 4")]
    s3_mods += [CoefficientModule.from_lattice(x, m) for m in (2, 3, 4)]
    return [(c4, [0, 2], c4_mods), (s3, a3, s3_mods)]
