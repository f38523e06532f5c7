"""A finitely presented model of the unramified relative Weil group.

For unramified E/F the units of E act trivially and both cocycles of
interest factor through the absolute value, so the model group is Z: the
integer m stands for Fr^m times a unit, with log_q |omega| = -m.  Frobenius
acts on T^ = X (x) C* through the Galois action on X.  Lie vectors are exact
rational vectors in Q (x) X; torsion points of T^ are rational vectors mod 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .bruteforce import _prime_factors, _structure_from_counts
from .cohomology import NotCyclic, Subquotient
from .galois import GaloisLattice, LocalArithmeticData, unramified_data
from .linalg import FinGenAbGroup, rational_rank

SIGN_CONVENTION = "log_q|omega| = -m for the model element m (geometric Frobenius step)"
DEFAULT_RANGE = 10


class NotInvariant(ValueError):
    pass


@dataclass(frozen=True)
class UnramifiedWeilModel:
    torus: GaloisLattice
    frobenius: int | None = None

    def __post_init__(self):
        g = self.torus.group
        if self.frobenius is None:
            gen = g.cyclic_generator()
            if gen is None:
                raise NotCyclic(f"{g} is not cyclic; no unramified Weil model")
            object.__setattr__(self, "frobenius", gen)
        elif g.element_order(self.frobenius) != g.order:
            raise NotCyclic(f"element {self.frobenius} does not generate {g}")

    @property
    def degree(self) -> int:
        return self.torus.group.order

    @property
    def rank(self) -> int:
        return self.torus.rank

    def image(self, m: int) -> int:
        """Image of the model element m in the Galois group."""
        return self.torus.group.power(self.frobenius, m % self.degree)

    def act(self, m: int, vec: Sequence) -> list:
        return self.torus.action[self.image(m)].apply(list(vec))

    @staticmethod
    def log_abs(m: int) -> int:
        return -m


def _frac_vec(vec) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in vec)


def _mod1(vec) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) % 1 for x in vec)


def is_invariant(model: UnramifiedWeilModel, nu) -> bool:
    nu = _frac_vec(nu)
    return tuple(model.act(1, nu)) == nu


def is_invariant_torsion(model: UnramifiedWeilModel, s) -> bool:
    s = _mod1(s)
    return _mod1(model.act(1, s)) == s


def _check_len(model, vec):
    if len(vec) != model.rank:
        raise ValueError(f"vector of length {len(vec)} for a rank {model.rank} torus")


# ---------------------------------------------------------------------------
# zeta_nu(omega) = (log_q |omega|) nu


def _zeta(nu, m: int) -> tuple[Fraction, ...]:
    return tuple(UnramifiedWeilModel.log_abs(m) * x for x in nu)


def zeta(nu, m: int, model: UnramifiedWeilModel) -> tuple[Fraction, ...]:
    nu = _frac_vec(nu)
    _check_len(model, nu)
    if not is_invariant(model, nu):
        raise NotInvariant(f"{nu} is not Frobenius invariant")
    return _zeta(nu, m)


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    checked: int
    first_failure: tuple[int, int] | None = None


def _pairs(pairs, bound):
    if pairs is not None:
        return list(pairs)
    return list(product(range(-bound, bound + 1), repeat=2))


def verify_zeta_cocycle(nu, model: UnramifiedWeilModel, pairs=None,
                        bound: int = DEFAULT_RANGE) -> CocycleCheck:
    """zeta(m1 + m2) == zeta(m1) + Fr^m1 zeta(m2); nu is deliberately not checked."""
    nu = _frac_vec(nu)
    _check_len(model, nu)
    pairs = _pairs(pairs, bound)
    for i, (m1, m2) in enumerate(pairs):
        lhs = _zeta(nu, m1 + m2)
        rhs = tuple(a + b for a, b in zip(_zeta(nu, m1), model.act(m1, _zeta(nu, m2))))
        if lhs != rhs:
            return CocycleCheck(False, i + 1, (m1, m2))
    return CocycleCheck(True, len(pairs))


def is_coboundary_zeta(nu, model: UnramifiedWeilModel) -> bool:
    """Whether zeta_nu = Fr^m mu - mu for some rational mu.

    A cocycle on Z is fixed by its value at 1, so this asks whether
    zeta_nu(1) = -nu lies in the image of Fr - 1 over Q.
    """
    nu = _frac_vec(nu)
    _check_len(model, nu)
    if not is_invariant(model, nu):
        raise NotInvariant(f"{nu} is not Frobenius invariant")
    a = model.torus.action[model.image(1)]
    cols = [[a.rows[i][j] - (i == j) for i in range(model.rank)] for j in range(model.rank)]
    target = _zeta(nu, 1)
    # b in the column span of (Fr - 1) iff appending it keeps the rank
    den = lcm(*(x.denominator for x in target)) if target else 1
    tint = [int(x * den) for x in target]
    return rational_rank(cols + [tint], model.rank) == rational_rank(cols, model.rank)


# ---------------------------------------------------------------------------
# z_s(omega) = s^(log_q |omega|) on torsion points


def _z(s, m: int) -> tuple[Fraction, ...]:
    return _mod1(UnramifiedWeilModel.log_abs(m) * x for x in s)


def z_cocycle(s, m: int, model: UnramifiedWeilModel) -> tuple[Fraction, ...]:
    s = _mod1(s)
    _check_len(model, s)
    if not is_invariant_torsion(model, s):
        raise NotInvariant(f"{s} is not a Frobenius-fixed torsion point")
    return _z(s, m)


def verify_z_cocycle(s, model: UnramifiedWeilModel, pairs=None,
                     bound: int = DEFAULT_RANGE) -> CocycleCheck:
    s = _mod1(s)
    _check_len(model, s)
    pairs = _pairs(pairs, bound)
    for i, (m1, m2) in enumerate(pairs):
        lhs = _z(s, m1 + m2)
        rhs = _mod1(a + b for a, b in zip(_z(s, m1), model.act(m1, _z(s, m2))))
        if lhs != rhs:
            return CocycleCheck(False, i + 1, (m1, m2))
    return CocycleCheck(True, len(pairs))


def exponential(nu) -> tuple[Fraction, ...]:
    """The normalized exponential Q (x) X -> (Q/Z) (x) X."""
    return _mod1(nu)


def exp_compatibility(nu, model: UnramifiedWeilModel, bound: int = DEFAULT_RANGE) -> CocycleCheck:
    """e(zeta_nu(m)) == z_{e(nu)}(m) for |m| <= bound."""
    nu = _frac_vec(nu)
    _check_len(model, nu)
    if not is_invariant(model, nu):
        raise NotInvariant(f"{nu} is not Frobenius invariant")
    s = exponential(nu)
    ms = range(-bound, bound + 1)
    for i, m in enumerate(ms):
        if exponential(_zeta(nu, m)) != _z(s, m):
            return CocycleCheck(False, i + 1, (m, 0))
    return CocycleCheck(True, len(ms))


def invariant_torsion_points(model: UnramifiedWeilModel, order: int) -> list[tuple[Fraction, ...]]:
    """All Frobenius-fixed points of T^ killed by ``order``."""
    r = model.rank
    c = np.indices((order,) * r).reshape(r, -1).T.astype(np.int64)
    f = np.array(model.torus.action[model.image(1)].rows, dtype=np.int64).reshape(r, r)
    fixed = c[((c @ f.T - c) % order == 0).all(axis=1)]
    return [tuple(Fraction(int(x), order) for x in row) for row in fixed]


def invariant_basis(model: UnramifiedWeilModel) -> list[list[int]]:
    """A basis of X^<Fr>, whose rational span is Lie(T^)^Gamma."""
    from .galois import invariants
    return [list(b) for b in invariants(model.torus).hnf]


def _combination(basis, coeffs, rank):
    return tuple(sum((Fraction(c) * b[i] for c, b in zip(coeffs, basis)), Fraction(0))
                 for i in range(rank))


@dataclass
class SuiteResult:
    checks: dict[str, bool]
    counts: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def cocycle_suite(model: UnramifiedWeilModel, max_den: int = 12, samples: int = 100,
                  seed: int = 0, bound: int = DEFAULT_RANGE,
                  modulus: int | None = None) -> SuiteResult:
    """The explicit-cocycle identities on one model.

    zeta and its coboundary test run over the invariant basis, zero and
    ``samples`` seeded random invariant rational vectors; z_s over every
    invariant torsion point of order <= ``max_den``; the exponential square
    over every invariant nu with denominator <= ``max_den`` (modulo X^Gamma,
    which is enough since both sides vanish there).
    """
    import random
    rng = random.Random(seed)
    basis = invariant_basis(model)
    r = model.rank
    nus = [tuple(Fraction(0) for _ in range(r))]
    nus += [_combination(basis, [int(i == j) for j in range(len(basis))], r)
            for i in range(len(basis))]
    for _ in range(samples if basis else 0):
        coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, max_den)) for _ in basis]
        nus.append(_combination(basis, coeffs, r))
    checks = {"zeta cocycle identity": True, "coboundary exactly at zero": True,
              "z cocycle identity": True, "exponential square": True}
    counts = {"nu": len(nus), "torsion points": 0, "exp vectors": 0}
    for nu in nus:
        checks["zeta cocycle identity"] &= verify_zeta_cocycle(nu, model, bound=bound).ok
        checks["coboundary exactly at zero"] &= is_coboundary_zeta(nu, model) == (not any(nu))
    seen = set()
    for d in range(1, max_den + 1):
        for pt in invariant_torsion_points(model, d):
            if pt not in seen:
                seen.add(pt)
                checks["z cocycle identity"] &= verify_z_cocycle(pt, model, bound=bound).ok
        for coeffs in product(range(d), repeat=len(basis)):
            nu = _combination(basis, [Fraction(c, d) for c in coeffs], r)
            counts["exp vectors"] += 1
            checks["exponential square"] &= exp_compatibility(nu, model, bound=bound).ok
    counts["torsion points"] = len(seen)
    if modulus is not None:
        checks["H1 coinvariants = enumeration"] = (
            model_h1_count(model, modulus) == model_h1_enumerated(model, modulus))
    return SuiteResult(checks, counts)


# ---------------------------------------------------------------------------
# H^1(<Fr>, A) = A_Fr for A = T^[m]^I


def _stack_minus_identity(lat: GaloisLattice, elements: Iterable[int]) -> list[list[int]]:
    rows = []
    r = lat.rank
    for g in elements:
        a = lat.action[g]
        rows += [[a.rows[i][j] - (i == j) for j in range(r)] for i in range(r)]
    return rows


def frobenius_h1(lat: GaloisLattice, arith: LocalArithmeticData, modulus: int) -> FinGenAbGroup:
    """Coinvariants of Frobenius on A = (X / mX)^I, by Smith forms."""
    arith.check(lat.group)
    r, m = lat.rank, modulus
    if m < 2:
        raise ValueError("modulus must be >= 2")
    kern = _stack_minus_identity(lat, sorted(arith.inertia)) or None
    gens = Subquotient(kern, r, [], m).generators()
    f = lat.action[arith.frobenius]
    image = [[sum(f.rows[i][j] * g[j] for j in range(r)) - g[i] for i in range(r)] for g in gens]
    return Subquotient(kern, r, image, m).group


def frobenius_h1_enumerated(lat: GaloisLattice, arith: LocalArithmeticData,
                            modulus: int) -> FinGenAbGroup:
    """The same group by listing A, the values at 1 of all cocycles on Z,
    and reducing modulo (Fr - 1)A."""
    arith.check(lat.group)
    r, m = lat.rank, modulus
    vecs = np.indices((m,) * r).reshape(r, -1).T.astype(np.int64)
    keep = np.ones(len(vecs), dtype=bool)
    for g in arith.inertia:
        a = np.array(lat.action[g].rows, dtype=np.int64).reshape(r, r)
        keep &= (((vecs @ a.T) - vecs) % m == 0).all(axis=1)
    values = vecs[keep]
    f = np.array(lat.action[arith.frobenius].rows, dtype=np.int64).reshape(r, r)
    weights = m ** np.arange(r - 1, -1, -1, dtype=np.int64)
    image = np.unique((((values @ f.T) - values) % m) @ weights)
    counts = {}
    for p in _prime_factors(m):
        counts[p] = {}
        j, q = 1, p
        while m % q == 0:
            counts[p][j] = int(np.isin(((q * values) % m) @ weights, image).sum())
            j, q = j + 1, q * p
    return _structure_from_counts(counts, len(image))


def model_h1_count(model: UnramifiedWeilModel, modulus: int) -> FinGenAbGroup:
    """H^1 of the model group Z with values in T^[m], as Frobenius coinvariants."""
    return frobenius_h1(model.torus, _model_arith(model), modulus)


def model_h1_enumerated(model: UnramifiedWeilModel, modulus: int) -> FinGenAbGroup:
    return frobenius_h1_enumerated(model.torus, _model_arith(model), modulus)


def _model_arith(model: UnramifiedWeilModel) -> LocalArithmeticData:
    base = unramified_data(model.torus.group)
    return LocalArithmeticData(base.inertia, model.frobenius)
