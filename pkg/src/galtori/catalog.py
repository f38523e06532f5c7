"""The preset torus catalog and random lattices for property tests."""

from __future__ import annotations

import random
from typing import Callable

from .galois import (
    FiniteGroup,
    GaloisLattice,
    InvalidArithmeticData,
    LocalArithmeticData,
    regular_representation,
    totally_ramified_data,
    unramified_data,
)
from .linalg import IntegerMatrix


class UnknownPreset(KeyError):
    pass


class BadParams(ValueError):
    pass


def _matmul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in zip(*b)) for r in a)


def matrix_group(gens, name: str = "") -> GaloisLattice:
    """Lattice for the group generated by integer matrices, acting tautologically."""
    gens = [tuple(tuple(r) for r in g) for g in gens]
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    group, elems = FiniteGroup.generated_by(gens, _matmul, ident, name)
    return GaloisLattice(group, tuple(IntegerMatrix(e, n) for e in elems), name)


def split(rank: int = 1) -> GaloisLattice:
    if rank < 0:
        raise BadParams("rank must be >= 0")
    return GaloisLattice.trivial(FiniteGroup.trivial(), rank, f"split({rank})")


def sign() -> GaloisLattice:
    g = FiniteGroup.cyclic(2)
    return GaloisLattice.from_generator(g, 1, [[-1]], "sign")


def norm_one_cyclic(n: int = 2) -> GaloisLattice:
    """Z[Z/n]/(norm) in the basis e_0..e_{n-2}; sigma shifts, e_{n-1} = -sum."""
    if n < 2:
        raise BadParams("norm_one_cyclic needs n >= 2")
    r = n - 1
    m = [[0] * r for _ in range(r)]
    for i in range(r - 1):
        m[i + 1][i] = 1
    for i in range(r):
        m[i][r - 1] = -1
    return GaloisLattice.from_generator(FiniteGroup.cyclic(n), 1, m, f"norm_one_cyclic({n})")


def weil_restriction(n: int = 2) -> GaloisLattice:
    if n < 2:
        raise BadParams("weil_restriction needs n >= 2")
    lat = regular_representation(FiniteGroup.cyclic(n))
    return GaloisLattice(lat.group, lat.action, f"weil_restriction({n})")


def a2_weyl() -> GaloisLattice:
    rot = [[0, -1], [1, -1]]
    refl = [[0, 1], [1, 0]]
    return matrix_group([rot, refl], "a2_weyl")


def dihedral_plane() -> GaloisLattice:
    rot = [[0, -1], [1, 0]]
    refl = [[1, 0], [0, -1]]
    return matrix_group([rot, refl], "dihedral_plane")


CATALOG: dict[str, tuple[Callable, dict]] = {
    "split": (split, {"rank": 1}),
    "sign": (sign, {}),
    "norm_one_cyclic": (norm_one_cyclic, {"n": 2}),
    "weil_restriction": (weil_restriction, {"n": 2}),
    "a2_weyl": (a2_weyl, {}),
    "dihedral_plane": (dihedral_plane, {}),
}

ARITHMETIC_VARIANTS = ("unramified", "totally_ramified")


def catalog_keys() -> list[str]:
    return list(CATALOG)


def arithmetic_variant(lat: GaloisLattice, variant: str) -> LocalArithmeticData:
    if variant == "unramified":
        return unramified_data(lat.group)
    if variant == "totally_ramified":
        return totally_ramified_data(lat.group)
    raise InvalidArithmeticData(f"unknown arithmetic variant {variant!r}")


def preset(name: str, arith: str | None = None, **params):
    """Build a catalog entry; returns (lattice, arithmetic data or None)."""
    if name not in CATALOG:
        raise UnknownPreset(name)
    builder, defaults = CATALOG[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise BadParams(f"{name} does not take {sorted(unknown)}")
    kwargs = {**defaults, **params}
    try:
        kwargs = {k: int(v) for k, v in kwargs.items()}
    except (TypeError, ValueError) as exc:
        raise BadParams(str(exc)) from None
    lat = builder(**kwargs)
    data = None
    if arith is not None:
        data = arithmetic_variant(lat, arith)
        data.check(lat.group)
    return lat, data


def parse_preset_spec(token: str):
    """``"weil_restriction:3"`` or ``"split:rank=2"`` -> (name, params)."""
    name, _, rest = token.partition(":")
    params = {}
    if rest:
        _, defaults = CATALOG.get(name, (None, {}))
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                if len(defaults) != 1:
                    raise BadParams(f"{name} takes no positional parameter")
                key, val = next(iter(defaults)), key
            params[key.strip()] = val.strip()
    return name, params


def catalog_lattices(max_cyclic: int = 6) -> list[GaloisLattice]:
    """One instance of every catalog family, cyclic families up to ``max_cyclic``."""
    out = [split(1), split(2), sign(), a2_weyl(), dihedral_plane()]
    for n in range(2, max_cyclic + 1):
        out.append(norm_one_cyclic(n))
        out.append(weil_restriction(n))
    return out


def catalog_groups(max_order: int) -> list[FiniteGroup]:
    """Distinct group tables occurring in the catalog, up to ``max_order``."""
    groups = [FiniteGroup.trivial()]
    groups += [FiniteGroup.cyclic(n) for n in range(2, max_order + 1)]
    groups += [lat.group for lat in (a2_weyl(), dihedral_plane()) if lat.group.order <= max_order]
    return sorted(groups, key=lambda g: g.order)


# ---------------------------------------------------------------------------
# random lattices


def _random_unimodular(n: int, rng: random.Random, steps: int = 6):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    minv = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        # m <- E m, minv <- minv E^-1 with E = I + q e_ij
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        for r in minv:
            r[j] -= q * r[i]
    return IntegerMatrix(m, n), IntegerMatrix(minv, n)


def _sign_characters(group: FiniteGroup) -> list[list[int]]:
    """Homomorphisms to {+-1}, found by brute force over index-2 subgroups."""
    chars = []
    for sub in group.subgroups():
        if 2 * len(sub) == group.order:
            chars.append([1 if g in sub else -1 for g in range(group.order)])
    return chars


def random_lattice(rng: random.Random, group: FiniteGroup, max_rank: int) -> GaloisLattice:
    """Random direct sum of small permutation and sign modules, in a random basis."""
    pieces = []
    rank = 0
    chars = _sign_characters(group)
    while True:
        kinds = ["trivial"]
        if chars:
            kinds.append("sign")
        if group.order > 1:
            kinds.append("coset")
        kind = rng.choice(kinds)
        if kind == "trivial":
            piece = GaloisLattice.trivial(group, 1)
        elif kind == "sign":
            ch = rng.choice(chars)
            piece = GaloisLattice(group, tuple(IntegerMatrix([[c]], 1) for c in ch))
        else:
            sub = rng.choice([s for s in group.subgroups() if len(s) > 1 or group.order <= max_rank]
                             or group.subgroups())
            piece = permutation_module(group, sub)
        if rank + piece.rank > max_rank:
            if pieces:
                break
            continue
        pieces.append(piece)
        rank += piece.rank
        if rng.random() < 0.4:
            break
    acts = []
    for g in range(group.order):
        m = [[0] * rank for _ in range(rank)]
        off = 0
        for p in pieces:
            for i, row in enumerate(p.action[g].rows):
                for j, x in enumerate(row):
                    m[off + i][off + j] = x
            off += p.rank
        acts.append(IntegerMatrix(m, rank))
    p, pinv = _random_unimodular(rank, rng)
    acts = [p @ a @ pinv for a in acts]
    return GaloisLattice(group, tuple(acts), "random")


def permutation_module(group: FiniteGroup, sub) -> GaloisLattice:
    """Z[group/sub]: permutation action on left cosets."""
    reps = group.left_coset_reps(sub)
    sub = set(sub)
    n = len(reps)
    acts = []
    for g in range(group.order):
        m = [[0] * n for _ in range(n)]
        for i, t in enumerate(reps):
            gt = group.mul(g, t)
            for j, s in enumerate(reps):
                if group.mul(group.inverse[s], gt) in sub:
                    m[j][i] = 1
                    break
        acts.append(IntegerMatrix(m, n))
    return GaloisLattice(group, tuple(acts))
