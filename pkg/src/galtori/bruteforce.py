"""Exhaustive cocycle enumeration, independent of any Smith-form machinery.

A finite module is flattened to element codes 0..K-1 with lookup tables for
addition, negation and the group action.  Normalized n-cocycles (n <= 2) are
found by a vectorized search: cochain values are assigned one at a time,
values forced by a cocycle identity with a single unknown are solved for
directly, the rest are branched over, and every identity is checked as soon as
all of its values are known.  The quotient by coboundaries is then identified
by counting, for each prime power q, the cocycles z with q*z a coboundary.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .galois import FiniteGroup
from .linalg import FinGenAbGroup

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "GALTORI_ENUM_BUDGET"
_CHUNK = 1 << 18


class BudgetExceeded(RuntimeError):
    pass


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class TableModule:
    """A finite module over ``group`` as lookup tables on codes 0..size-1."""

    group: FiniteGroup
    add: np.ndarray
    neg: np.ndarray
    act: np.ndarray
    vectors: list[tuple[int, ...]] | None = None

    @property
    def size(self) -> int:
        return len(self.neg)

    @classmethod
    def from_matrices(cls, group: FiniteGroup, matrices, modulus: int) -> "TableModule":
        """(Z/m)^r with each group element acting by a matrix mod m."""
        mats = [[list(r) for r in getattr(a, "rows", a)] for a in matrices]
        r = len(mats[0])
        m = modulus
        vecs = list(product(range(m), repeat=r))
        code = {v: i for i, v in enumerate(vecs)}
        k = len(vecs)
        dt = np.uint8 if k <= 256 else np.uint32
        add = np.empty((k, k), dtype=dt)
        for i, a in enumerate(vecs):
            for j, b in enumerate(vecs):
                add[i, j] = code[tuple((x + y) % m for x, y in zip(a, b))]
        neg = np.array([code[tuple((-x) % m for x in a)] for a in vecs], dtype=dt)
        act = np.empty((group.order, k), dtype=dt)
        for g in range(group.order):
            mat = mats[g]
            for i, a in enumerate(vecs):
                act[g, i] = code[tuple(sum(c * x for c, x in zip(row, a)) % m for row in mat)]
        return cls(group, add, neg, act, vecs)

    def submodule(self, codes: Sequence[int], group: FiniteGroup | None = None,
                  lift: Sequence[int] | None = None) -> "TableModule":
        """Restrict to a subset closed under the operations.

        With ``group``/``lift`` given, the submodule is regarded as a module
        over ``group`` where element q acts as ``lift[q]`` does here (used for
        X^N as a module over G/N).
        """
        codes = sorted(int(c) for c in codes)
        pos = np.full(self.size, -1, dtype=np.int64)
        pos[codes] = np.arange(len(codes))
        sel = np.array(codes, dtype=np.int64)
        group = group or self.group
        lift = list(lift) if lift is not None else list(range(group.order))
        add = pos[self.add[np.ix_(sel, sel)]]
        neg = pos[self.neg[sel]]
        act = pos[self.act[np.array(lift)][:, sel]]
        if (add < 0).any() or (neg < 0).any() or (act < 0).any():
            raise ValueError("subset is not a submodule")
        dt = np.uint8 if len(codes) <= 256 else np.uint32
        vecs = [self.vectors[c] for c in codes] if self.vectors else None
        return TableModule(group, add.astype(dt), neg.astype(dt), act.astype(dt), vecs)

    def fixed_codes(self, elements: Sequence[int]) -> list[int]:
        idx = np.arange(self.size)
        mask = np.ones(self.size, dtype=bool)
        for g in elements:
            mask &= self.act[g] == idx
        return [int(c) for c in np.nonzero(mask)[0]]

    def multiple(self, k: int, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for _ in range(k):
            out = self.add[out, x]
        return out

    def encode(self, vec) -> int:
        if not hasattr(self, "_codes"):
            self._codes = {v: i for i, v in enumerate(self.vectors)}
        return self._codes[tuple(vec)]

    def decode(self, code: int) -> tuple[int, ...]:
        return self.vectors[int(code)]

    def exponent(self) -> int:
        x = np.arange(self.size, dtype=self.neg.dtype)
        k, cur = 1, x.copy()
        while (cur != 0).any():
            cur = self.add[cur, x]
            k += 1
        return k


# ---------------------------------------------------------------------------
# cocycle identities as linear constraints over the module tables


def _variables(group: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    nonid = [g for g in range(group.order) if g != group.identity]
    return list(product(nonid, repeat=n))


def _raw_constraints(group: FiniteGroup, n: int, var_index: dict):
    """Normalized cocycle identities as lists of (sign, actor, var)."""
    e, t = group.identity, group.mult_table
    nonid = [g for g in range(group.order) if g != e]
    out = []
    for tup in product(nonid, repeat=n + 1):
        terms = [(1, tup[0], tup[1:])]
        for i in range(1, n + 1):
            merged = tup[:i - 1] + (t[tup[i - 1]][tup[i]],) + tup[i + 1:]
            terms.append(((-1) ** i, e, merged))
        terms.append(((-1) ** (n + 1), e, tup[:n]))
        out.append([(s, a, var_index[v]) for s, a, v in terms if e not in v])
    return out


def _constraints(mod: TableModule, n: int, var_index: dict) -> list[dict[int, np.ndarray]]:
    """Each identity as {var: table of x -> sum of its signed, acted occurrences}.

    Occurrences that cancel in this particular module are dropped, so a
    constraint only mentions variables it actually restricts.
    """
    out = []
    zero = np.zeros(mod.size, dtype=mod.neg.dtype)
    for terms in _raw_constraints(mod.group, n, var_index):
        tables: dict[int, np.ndarray] = {}
        for sign, actor, var in terms:
            val = mod.act[actor]
            if sign < 0:
                val = mod.neg[val]
            tables[var] = mod.add[tables.get(var, zero), val]
        tables = {v: tab for v, tab in tables.items() if tab.any()}
        if tables:
            out.append(tables)
    return out


def _preimages(phi: np.ndarray) -> np.ndarray:
    """Rows indexed by y listing all x with phi[x] = y (-1 padded off the image)."""
    k = len(phi)
    ker = int((phi == 0).sum())
    pre = np.full((k, ker), -1, dtype=np.int64)
    order = np.argsort(phi, kind="stable")
    ys = phi[order]
    starts = np.searchsorted(ys, np.arange(k))
    for y in np.unique(ys):
        pre[y] = order[starts[y]:starts[y] + ker]
    return pre


def _cascade(constraints, assigned: set[int], bijective) -> set[int]:
    """Variables fixed once ``assigned`` is known, by repeated unique solves."""
    known = set(assigned)
    changed = True
    while changed:
        changed = False
        for c, bij in zip(constraints, bijective):
            unknown = [v for v in c if v not in known]
            if len(unknown) == 1 and unknown[0] in bij:
                known.add(unknown[0])
                changed = True
    return known


def _plan(mod: TableModule, nvars: int, constraints):
    """Static order of steps (kind, var, solving constraint, checks).

    A "solve" step fills ``var`` from a constraint in which it is the only
    unknown, fanning out over the kernel of that constraint's map; "branch"
    tries every value.  Checks are constraints that become fully known.
    """
    k = mod.size
    assigned: set[int] = set()
    done: set[int] = set()
    occurs = [[] for _ in range(nvars)]
    for ci, c in enumerate(constraints):
        for v in c:
            occurs[v].append(ci)
    kernel = {}
    bijective = [{v for v, tab in c.items() if len(np.unique(tab)) == k} for c in constraints]
    steps = []
    while len(assigned) < nvars:
        best = None
        for ci, c in enumerate(constraints):
            if ci in done:
                continue
            unknown = [v for v in c if v not in assigned]
            if len(unknown) == 1:
                key = (ci, unknown[0])
                if key not in kernel:
                    kernel[key] = int((c[unknown[0]] == 0).sum())
                if best is None or kernel[key] < kernel[best]:
                    best = key
        if best is not None and kernel[best] < k:
            ci, var = best
            kind = "solve"
        else:
            def score(v):
                reach = _cascade(constraints, assigned | {v}, bijective)
                return len(reach), sum(1.0 / len(set(constraints[cj]) - assigned)
                                       for cj in occurs[v] if cj not in done)
            var = max((v for v in range(nvars) if v not in assigned), key=score)
            ci, kind = None, "branch"
        assigned.add(var)
        checks = []
        for cj in occurs[var]:
            if cj not in done and all(v in assigned for v in constraints[cj]):
                done.add(cj)
                if cj != ci:
                    checks.append(cj)
        steps.append((kind, var, ci, checks))
    return steps


def _evaluate(mod: TableModule, frame: np.ndarray, tables: dict, skip=None) -> np.ndarray:
    flat, k = mod.add.ravel(), mod.size
    acc = np.zeros(len(frame), dtype=np.intp)
    for v, tab in tables.items():
        if v != skip:
            # flat is narrow (uint8 for small modules); widen before scaling by k
            acc = np.take(flat, acc.astype(np.intp) * k + np.take(tab, frame[:, v]))
    return acc


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.used = 0

    def spend(self, k):
        self.used += k
        if self.used > self.budget:
            raise BudgetExceeded(
                f"enumeration needs more than {self.budget} candidate cochains")


def iter_cocycles(mod: TableModule, n: int, budget: int | None = None,
                  counter: _Counter | None = None) -> Iterator[np.ndarray]:
    """Yield arrays of normalized n-cocycles (columns ordered like ``_variables``).

    Every partial cochain produced by a step with more than one choice counts
    against the budget; uniquely solved values do not.

    Branching is pruned by lookahead.  All identities are additive, so along a
    run of unique solves following a branch, each identity checked in that run
    equals c(prefix) + psi(x) for the branched value x.  psi is probed once on
    the zero prefix, and each row only fans out over the x that pass.
    """
    counter = counter or _Counter(enumeration_budget() if budget is None else budget)
    variables = _variables(mod.group, n)
    index = {v: i for i, v in enumerate(variables)}
    constraints = _constraints(mod, n, index)
    steps = _plan(mod, len(variables), constraints)
    pre = {ci: _preimages(constraints[ci][var]) for kind, var, ci, _ in steps if kind == "solve"}
    k = mod.size
    dtype = mod.neg.dtype

    def assign(si, frame):
        kind, var, ci, _ = steps[si]
        target = mod.neg[_evaluate(mod, frame, constraints[ci], skip=var)]
        frame[:, var] = pre[ci][target, 0]

    def residuals(si, end, frame):
        """Values of the identities checked in steps si..end-1 (no filtering)."""
        frame = np.array(frame, order="F")
        # the zero column keeps the result nonempty when nothing is checked
        cols = [np.zeros(len(frame), dtype=np.intp)]
        cols += [_evaluate(mod, frame, constraints[cj]) for cj in steps[si][3]]
        for sj in range(si + 1, end):
            assign(sj, frame)
            cols += [_evaluate(mod, frame, constraints[cj]) for cj in steps[sj][3]]
        return np.stack(cols, axis=1).astype(dtype)

    lookahead = {}
    for si, (kind, var, _, _) in enumerate(steps):
        if kind != "branch":
            continue
        end = si + 1
        while end < len(steps) and steps[end][0] == "solve" and pre[steps[end][2]].shape[1] == 1:
            end += 1
        probe = np.zeros((k, len(variables)), dtype=dtype)
        probe[:, var] = np.arange(k)
        psi = _void(residuals(si, end, probe))
        keys, inverse = np.unique(psi, return_inverse=True)
        fibers = np.argsort(inverse, kind="stable").reshape(len(keys), -1).astype(dtype)
        lookahead[si] = (end, keys, fibers)

    def run(si, frame):
        while si < len(steps):
            kind, var, ci, checks = steps[si]
            if kind == "branch":
                end, keys, fibers = lookahead[si]
                fan = fibers.shape[1]
            else:
                fan = pre[ci].shape[1]
            if len(frame) * fan > _CHUNK and len(frame) > 1:
                size = max(1, _CHUNK // fan)
                for s in range(0, len(frame), size):
                    yield from run(si, frame[s:s + size])
                return
            if kind == "branch":
                base = frame.copy()
                base[:, var] = 0
                want = _void(mod.neg[residuals(si, end, base)])
                pos = np.minimum(np.searchsorted(keys, want), len(keys) - 1)
                ok = keys[pos] == want
                frame = frame[ok]
                values = fibers[pos[ok]].ravel()
            else:
                target = mod.neg[_evaluate(mod, frame, constraints[ci], skip=var)]
                ok = pre[ci][target, 0] >= 0
                frame = frame[ok]
                values = pre[ci][target[ok]].ravel()
            if fan > 1:
                counter.spend(len(frame) * fan)
            frame = np.asfortranarray(np.repeat(frame, fan, axis=0))
            frame[:, var] = values
            for cj in checks:
                frame = frame[_evaluate(mod, frame, constraints[cj]) == 0]
            if not len(frame):
                return
            si += 1
        yield frame

    start = np.zeros((1, len(variables)), dtype=dtype)
    if not variables:
        yield start
        return
    yield from run(0, start)


def coboundaries(mod: TableModule, n: int, counter: _Counter | None = None) -> np.ndarray:
    """All normalized n-coboundaries, deduplicated (n = 1 or 2)."""
    group = mod.group
    e, t = group.identity, group.mult_table
    nonid = [g for g in range(group.order) if g != e]
    k = mod.size
    counter = counter or _Counter(enumeration_budget())
    if not nonid:
        return np.zeros((1, 0), dtype=mod.neg.dtype)
    if n == 1:
        a = np.arange(k, dtype=mod.neg.dtype)
        cols = [mod.add[mod.act[g][a], mod.neg[a]] for g in nonid]
        arr = np.stack(cols, axis=1) if cols else np.zeros((k, 0), dtype=mod.neg.dtype)
    elif n == 2:
        m1 = len(nonid)
        counter.spend(k ** m1)
        grid = np.indices((k,) * m1).reshape(m1, -1).T.astype(mod.neg.dtype)
        col = {g: i for i, g in enumerate(nonid)}
        zero = np.zeros(len(grid), dtype=mod.neg.dtype)

        def c(g):
            return zero if g == e else grid[:, col[g]]

        cols = []
        for g, h in product(nonid, repeat=2):
            v = mod.add[mod.act[g][c(h)], mod.neg[c(t[g][h])]]
            cols.append(mod.add[v, c(g)])
        arr = np.stack(cols, axis=1)
    else:
        raise ValueError("coboundaries only for n = 1, 2")
    return _unique_rows(arr)


def _void(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    return arr.view(np.dtype((np.void, arr.dtype.itemsize * arr.shape[1]))).ravel()


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[1] == 0:
        return arr[:1]
    _, idx = np.unique(_void(arr), return_index=True)
    return arr[np.sort(idx)]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _structure_from_counts(counts: dict[int, dict[int, int]], base: int) -> FinGenAbGroup:
    """Invariant factors from |H[p^j]| = counts[p][j] / base."""
    orders = []
    for p, by_j in counts.items():
        logs = [0]
        for j in sorted(by_j):
            size, rem = divmod(by_j[j], base)
            if rem:
                raise AssertionError("coset count is not a multiple of |B|")
            a = 0
            while size > 1:
                size, r = divmod(size, p)
                if r:
                    raise AssertionError("torsion subgroup order is not a power of p")
                a += 1
            logs.append(a)
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(len(at_least) - 1):
            orders += [p ** (j + 1)] * (at_least[j] - at_least[j + 1])
    return FinGenAbGroup.from_cyclic_orders(orders)


@dataclass
class EnumerationResult:
    group: FinGenAbGroup
    cocycles: int
    coboundaries: int
    candidates: int


def enumerate_cohomology(mod: TableModule, n: int, budget: int | None = None) -> EnumerationResult:
    counter = _Counter(enumeration_budget() if budget is None else budget)
    exp = mod.exponent()
    primes = _prime_factors(exp)
    powers = {p: [p ** j for j in range(1, 64) if exp % p ** j == 0] for p in primes}
    if n == 0:
        fixed = np.array(mod.fixed_codes(range(mod.group.order)), dtype=mod.neg.dtype)
        counter.spend(mod.size)
        counts = {p: {j + 1: int((mod.multiple(q, fixed) == 0).sum())
                      for j, q in enumerate(qs)} for p, qs in powers.items()}
        return EnumerationResult(_structure_from_counts(counts, 1), len(fixed), 1, counter.used)
    bnd = coboundaries(mod, n, counter)
    codes = np.arange(mod.size, dtype=mod.neg.dtype)
    times = {q: mod.multiple(q, codes) for qs in powers.values() for q in qs}
    keys = np.sort(_void(bnd))
    counts = {p: Counter() for p in primes}
    total = 0
    for frame in iter_cocycles(mod, n, counter=counter):
        total += len(frame)
        for p, qs in powers.items():
            for j, q in enumerate(qs):
                mult = _void(np.take(times[q], frame))
                pos = np.searchsorted(keys, mult)
                pos[pos == len(keys)] = 0
                counts[p][j + 1] += int((keys[pos] == mult).sum())
    group = _structure_from_counts({p: dict(c) for p, c in counts.items()}, len(bnd))
    if total % len(bnd) or group.order != total // len(bnd):
        raise AssertionError("cocycle/coboundary counts are inconsistent")
    return EnumerationResult(group, total, len(bnd), counter.used)


def brute_force_cohomology(group: FiniteGroup, module, n: int, budget: int | None = None) -> FinGenAbGroup:
    """H^n(group, M) for a finite coefficient module, by enumeration."""
    if not 0 <= n <= 2:
        raise ValueError("degree must be 0, 1 or 2")
    if getattr(module, "modulus", 0) < 2:
        raise ValueError("brute force needs a finite coefficient module")
    if module.group != group:
        raise ValueError("module is over a different group")
    mod = TableModule.from_matrices(group, module.action, module.modulus)
    return enumerate_cohomology(mod, n, budget).group


# ---------------------------------------------------------------------------
# explicit class bookkeeping on small examples


class ClassTable:
    """All normalized n-cocycles of a table module, split into classes."""

    def __init__(self, mod: TableModule, n: int, budget: int | None = None):
        if n not in (1, 2):
            raise ValueError("class tables are built for n = 1, 2")
        self.mod, self.n = mod, n
        self.variables = _variables(mod.group, n)
        self.index_of = {v: i for i, v in enumerate(self.variables)}
        counter = _Counter(enumeration_budget() if budget is None else budget)
        self.coboundaries = coboundaries(mod, n, counter)
        frames = list(iter_cocycles(mod, n, counter=counter))
        self.cocycles = np.concatenate(frames)
        self._bkeys = np.sort(_void(self.coboundaries))
        self._zkeys = np.sort(_void(self.cocycles))
        self.representatives = self._split()

    def _member(self, keys: np.ndarray, rows: np.ndarray) -> np.ndarray:
        if rows.shape[1] == 0:
            return np.ones(len(rows), dtype=bool)
        want = _void(rows.astype(self.mod.neg.dtype))
        pos = np.minimum(np.searchsorted(keys, want), len(keys) - 1)
        return keys[pos] == want

    def _split(self) -> list[np.ndarray]:
        order = np.argsort(_void(self.cocycles), kind="stable")
        ordered = self.cocycles[order]
        covered = np.zeros(len(ordered), dtype=bool)
        reps = []
        while not covered.all():
            z = ordered[np.argmin(covered)]
            reps.append(z)
            coset = self.mod.add[np.broadcast_to(z, self.coboundaries.shape), self.coboundaries]
            covered[np.searchsorted(self._zkeys, _void(coset))] = True
        return reps

    @property
    def order(self) -> int:
        return len(self.representatives)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mod.add[a, self.mod.neg[b]]

    def scale(self, a: np.ndarray, k: int) -> np.ndarray:
        return self.mod.multiple(k, np.asarray(a))

    def is_cocycle(self, row: np.ndarray) -> bool:
        return bool(self._member(self._zkeys, np.asarray(row)[None, :])[0])

    def is_coboundary(self, row: np.ndarray) -> bool:
        return bool(self._member(self._bkeys, np.asarray(row)[None, :])[0])

    def class_index(self, row: np.ndarray, reps=None) -> int | None:
        """Index of the class of a normalized cocycle among the representatives."""
        reps = self.representatives if reps is None else reps
        diffs = np.stack([self.sub(row, r) for r in reps])
        hits = np.nonzero(self._member(self._bkeys, diffs))[0]
        return int(hits[0]) if len(hits) else None

    def normalize(self, values) -> np.ndarray:
        """Normalized codes for a cocycle given on all tuples (``values[tup]``).

        For n = 2 this subtracts the coboundary of the constant 1-cochain
        f(e, e), which changes f(g, h) by g.f(e, e).
        """
        mod, e = self.mod, self.mod.group.identity
        if self.n == 2:
            a = values[(e, e)]
            row = [mod.add[values[v], mod.neg[mod.act[v[0]][a]]] for v in self.variables]
        else:
            row = [values[v] for v in self.variables]
        return np.array(row, dtype=mod.neg.dtype)

    def full_values(self, row: np.ndarray) -> dict:
        """Values on every tuple, zero on tuples containing the identity."""
        out = {tup: 0 for tup in product(range(self.mod.group.order), repeat=self.n)}
        for v, x in zip(self.variables, row):
            out[v] = int(x)
        return out
