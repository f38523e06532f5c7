"""Cross-check sweeps: bar resolution against enumeration and the cyclic formulas."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .bruteforce import BudgetExceeded, brute_force_cohomology
from .catalog import catalog_groups, catalog_lattices, norm_one_cyclic, sign, split, weil_restriction
from .cohomology import CoefficientModule, cohomology_group, cyclic_oracle
from .galois import FiniteGroup, GaloisLattice, dual_module
from .linalg import IntegerMatrix


@dataclass
class CaseResult:
    label: str
    degree: int
    resolution: str
    oracle: str | None
    status: str  # "pass", "mismatch" or "skipped"
    note: str = ""


@dataclass
class SweepSummary:
    kind: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CaseResult]:
        return [c for c in self.cases if c.status == "mismatch"]

    @property
    def skipped(self) -> list[CaseResult]:
        return [c for c in self.cases if c.status == "skipped"]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def counts(self) -> dict:
        out = {"pass": 0, "mismatch": 0, "skipped": 0}
        for c in self.cases:
            out[c.status] += 1
        return out


def _generators(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = group.closure([])
    for g in sorted(range(group.order), key=lambda g: -group.element_order(g)):
        if g not in span:
            gens.append(g)
            span = group.closure(gens)
        if len(span) == group.order:
            break
    return gens


def _gl(r: int, m: int) -> list[tuple[tuple[int, ...], ...]]:
    out = []
    for entries in product(range(m), repeat=r * r):
        mat = tuple(tuple(entries[i * r:(i + 1) * r]) for i in range(r))
        if gcd(_det(mat), m) == 1:
            out.append(mat)
    return out


def _det(a):
    return a[0][0] if len(a) == 1 else a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _mul(a, b, m):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % m for col in zip(*b)) for row in a)


def module_homomorphisms(group: FiniteGroup, r: int, m: int) -> list[tuple]:
    """Every action of ``group`` on (Z/m)^r (r <= 2), as tuples of matrices."""
    if r not in (1, 2):
        raise ValueError("rank must be 1 or 2")
    gens = _generators(group)
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    gl = _gl(r, m)

    def order_divides(a, k):
        x = ident
        for _ in range(k):
            x = _mul(x, a, m)
        return x == ident

    choices = [[a for a in gl if order_divides(a, group.element_order(g))] for g in gens]
    homs = []
    for assignment in product(*choices):
        img = {group.identity: ident}
        queue = deque([group.identity])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, a in zip(gens, assignment):
                y, val = group.mul(x, g), _mul(img[x], a, m)
                if y in img:
                    if img[y] != val:
                        ok = False
                        break
                else:
                    img[y] = val
                    queue.append(y)
        if ok:
            homs.append(tuple(img[g] for g in range(group.order)))
    return homs


def _catalog_for(group: FiniteGroup, r: int) -> list[GaloisLattice]:
    out = []
    for lat in catalog_lattices(max_cyclic=group.order):
        if lat.group == group and lat.rank == r:
            out.append(lat)
            dual = dual_module(lat)
            if dual.action != lat.action:
                out.append(GaloisLattice(dual.group, dual.action, f"dual {lat.name}"))
    return out


def sweep_modules(group: FiniteGroup, m: int, r: int, rng: random.Random,
                  samples: int = 3) -> list[tuple[str, CoefficientModule]]:
    """Trivial module, catalog reductions and a seeded sample of other actions."""
    ident = IntegerMatrix.identity(r)
    mods = [("trivial", CoefficientModule(group, (ident,) * group.order, m))]
    seen = {mods[0][1].action}
    for lat in _catalog_for(group, r):
        mod = CoefficientModule.from_lattice(lat, m)
        if mod.action not in seen:
            seen.add(mod.action)
            mods.append((lat.name, mod))
    others = []
    for hom in module_homomorphisms(group, r, m):
        mod = CoefficientModule(group, tuple(IntegerMatrix(a, r) for a in hom), m)
        if mod.action not in seen:
            others.append(mod)
    for i, mod in enumerate(rng.sample(others, min(samples, len(others)))):
        seen.add(mod.action)
        mods.append((f"random#{i}", mod))
    return mods


def enumeration_sweep(max_group: int = 6, max_mod: int = 4, max_rank: int = 2, seed: int = 0,
                      degrees=(1, 2), samples: int = 3, fault: str | None = None,
                      budget: int | None = None) -> SweepSummary:
    """Bar resolution vs. exhaustive enumeration over the catalog's group tables."""
    summary = SweepSummary("enumeration")
    rng = random.Random(seed)
    for group in catalog_groups(max_group):
        for m in range(2, max_mod + 1):
            for r in range(1, max_rank + 1):
                for name, mod in sweep_modules(group, m, r, rng, samples):
                    for n in degrees:
                        label = f"{group} on (Z/{m})^{r} [{name}]"
                        try:
                            res = cohomology_group(group, mod, n, fault=fault).group
                        except ValueError as exc:
                            summary.cases.append(CaseResult(label, n, "error", None,
                                                            "mismatch", str(exc)))
                            continue
                        try:
                            brute = brute_force_cohomology(group, mod, n, budget)
                        except BudgetExceeded as exc:
                            summary.cases.append(CaseResult(label, n, str(res), None,
                                                            "skipped", str(exc)))
                            continue
                        status = "pass" if res == brute else "mismatch"
                        summary.cases.append(CaseResult(label, n, str(res), str(brute), status))
    return summary


def cyclic_lattices(max_order: int = 12) -> list[GaloisLattice]:
    out = [split(1), sign()]
    for n in range(2, max_order + 1):
        out.append(GaloisLattice.trivial(FiniteGroup.cyclic(n), 1, f"trivial Z/{n}"))
        out.append(norm_one_cyclic(n))
        out.append(weil_restriction(n))
    return out


def cyclic_sweep(max_order: int = 12, degrees=(1, 2), fault: str | None = None) -> SweepSummary:
    """Bar resolution vs. the ker N / im(s-1) and M^G / N M formulas."""
    summary = SweepSummary("cyclic")
    for lat in cyclic_lattices(max_order):
        for target in (lat, dual_module(lat)):
            for n in degrees:
                label = lat.name if target is lat else f"dual {lat.name}"
                closed = cyclic_oracle(lat.group, target, n)
                try:
                    res = cohomology_group(lat.group, target, n, fault=fault).group
                except ValueError as exc:
                    summary.cases.append(CaseResult(label, n, "error", str(closed),
                                                    "mismatch", str(exc)))
                    continue
                status = "pass" if res == closed else "mismatch"
                summary.cases.append(CaseResult(label, n, str(res), str(closed), status))
    return summary
