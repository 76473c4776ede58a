"""Modular data of the quantum-group categories so(2r+1) at level 2r+1.

Weights and roots of B_r are written in the orthonormal basis e_1..e_r with
(e_i|e_j) = delta_ij.  Weights can have half-integer entries, so they are
stored doubled (``coords2 = 2*lambda``) and inner products are taken in
quarters.  The quantum parameter is q = zeta_{16r}, so twists live in
mu_{32r} and quantum dimensions in Q(zeta_{16r}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence, Union

from .errors import InvariantViolation, NotCoprime, OutOfRange, RankMismatch
from .exactnum import (
    CycloElem,
    RootOfUnity,
    certified_sign,
    phase_of,
    sin_cyclo,
    sqrt_int,
)

DEFAULT_RANK_CAP = 5


@dataclass(frozen=True)
class RootData:
    rank: int
    n: int
    dual_coxeter: int
    positive_roots: tuple[tuple[int, ...], ...]
    rho2: tuple[int, ...]
    highest_root: tuple[int, ...]


@lru_cache(maxsize=None)
def root_data(r: int) -> RootData:
    if r < 1:
        raise OutOfRange("rank must be positive")

    def e(*idx_sign):
        v = [0] * r
        for i, s in idx_sign:
            v[i] += s
        return tuple(v)

    roots = [e((j, 1)) for j in range(r)]
    for j in range(r):
        for k in range(j + 1, r):
            roots.append(e((j, 1), (k, -1)))
            roots.append(e((j, 1), (k, 1)))
    theta = e((0, 1)) if r == 1 else e((0, 1), (1, 1))
    return RootData(
        rank=r,
        n=2 * r + 1,
        dual_coxeter=2 * r - 1,
        positive_roots=tuple(roots),
        rho2=tuple(2 * (r - j) - 1 for j in range(r)),
        highest_root=theta,
    )


@dataclass(frozen=True, order=True)
class AlcoveWeight:
    coords2: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.coords2)

    @property
    def is_spin(self) -> bool:
        return self.coords2[0] % 2 == 1

    def is_valid(self) -> bool:
        c = self.coords2
        r = len(c)
        if any(x < 0 for x in c) or len({x % 2 for x in c}) > 1:
            return False
        if any(c[i] < c[i + 1] for i in range(r - 1)):
            return False
        bound = c[0] if r == 1 else c[0] + c[1]
        return bound <= 2 * (2 * r + 1)

    def __str__(self):
        if all(x % 2 == 0 for x in self.coords2):
            return "(" + ",".join(str(x // 2) for x in self.coords2) + ")"
        return "(" + ",".join(f"{x}/2" for x in self.coords2) + ")"


def enumerate_alcove(r: int) -> list[AlcoveWeight]:
    """All level-(2r+1) dominant weights of B_r, lexicographic in coords2."""
    if r < 1:
        raise OutOfRange("rank must be positive")
    cap = 2 * (2 * r + 1)
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int]):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        if not prefix:
            choices = range(0, cap + 1)
        else:
            hi = prefix[-1]
            if len(prefix) == 1 and r > 1:
                hi = min(hi, cap - prefix[0])
            choices = range(prefix[0] % 2, hi + 1, 2)
        for c in choices:
            extend(prefix + [c])

    extend([])
    return [AlcoveWeight(c) for c in sorted(out)]


Vec2 = Union[AlcoveWeight, Sequence[int]]


def _c2(v: Vec2) -> tuple[int, ...]:
    return v.coords2 if isinstance(v, AlcoveWeight) else tuple(v)


def inner_product(a: Vec2, b: Vec2) -> Fraction:
    """(a|b) with (e_i|e_j) = delta_ij; arguments given in doubled coordinates."""
    a2, b2 = _c2(a), _c2(b)
    if len(a2) != len(b2):
        raise RankMismatch(f"ranks {len(a2)} and {len(b2)} differ")
    return Fraction(sum(x * y for x, y in zip(a2, b2)), 4)


def twist_exponent(r: int, w: AlcoveWeight) -> int:
    """t = 4(lambda|lambda + 2 rho), so that theta = zeta_{32r}^t."""
    rho2 = root_data(r).rho2
    return sum(c * (c + 2 * p) for c, p in zip(w.coords2, rho2))


def twist(r: int, w: AlcoveWeight) -> RootOfUnity:
    return RootOfUnity(32 * r, twist_exponent(r, w))


def _qint_numerator(r: int, m: int) -> CycloElem:
    """q^m - q^-m with q = zeta_{16r}."""
    return CycloElem.from_exponents(16 * r, {m: 1, -m: -1}) if m % (16 * r) else CycloElem.rational(0)


def _pairings2(r: int, c2: Sequence[int]) -> list[int]:
    """2(v|alpha) for every positive root alpha, v given doubled."""
    return [sum(x * a for x, a in zip(c2, alpha)) for alpha in root_data(r).positive_roots]


@lru_cache(maxsize=None)
def _qdim_denominator_inverse(r: int) -> CycloElem:
    den = CycloElem.rational(1)
    for m in _pairings2(r, root_data(r).rho2):
        den = den * _qint_numerator(r, m)
    return den.invert()


def qdim(r: int, w: AlcoveWeight) -> CycloElem:
    """prod over positive roots of [2(lambda+rho|alpha)] / [2(rho|alpha)]."""
    rho2 = root_data(r).rho2
    shifted = [c + p for c, p in zip(w.coords2, rho2)]
    num = CycloElem.rational(1)
    for m in _pairings2(r, shifted):
        num = num * _qint_numerator(r, m)
    return num * _qdim_denominator_inverse(r)


def m_count(r: int, j: int) -> int:
    """Number of positive roots alpha with (alpha|rho) = j."""
    if r == 1:
        return 0
    if r < 1 or not 1 <= j <= 2 * r - 2:
        raise OutOfRange(f"need 1 <= j <= 2r-2, got r={r}, j={j}")
    return r - (j + 1) // 2


def m_count_brute(r: int, j: int) -> int:
    rd = root_data(r)
    return sum(1 for a in rd.positive_roots if inner_product(tuple(2 * x for x in a), rd.rho2) == j)


def sqrt_power(r: int) -> CycloElem:
    """sqrt(r^r) as r^((r-1)/2) sqrt(r) for odd r, rational for even r."""
    if r % 2 == 0:
        return CycloElem.rational(r ** (r // 2))
    return sqrt_int(r) * r ** ((r - 1) // 2)


@lru_cache(maxsize=None)
def sine_product(r: int) -> CycloElem:
    """prod_l sin((2l-1)pi/8r) * prod_j sin(j pi/4r)^m_r(j)."""
    prod = CycloElem.rational(1)
    for ell in range(1, r + 1):
        prod = prod * sin_cyclo(2 * ell - 1, 8 * r)
    for j in range(1, 2 * r - 1):
        s = sin_cyclo(j, 4 * r)
        for _ in range(m_count(r, j)):
            prod = prod * s
    return prod


@lru_cache(maxsize=None)
def sqrt_of_dim(r: int) -> CycloElem:
    """Closed form for the positive square root of the global dimension."""
    if r < 1:
        raise OutOfRange("rank must be positive")
    d = sqrt_power(r) * Fraction(1, 2) ** (r * r - r - 1) * sine_product(r).invert()
    if certified_sign(d) != 1:
        raise InvariantViolation(f"D_{r} is not positive")
    return d


def xi1_closed(r: int) -> RootOfUnity:
    return RootOfUnity(32, (2 * r + 1) ** 2)


def fs_exponent_bounds(r: int) -> tuple[int, int]:
    return lcm(32, 4 * r), 32 * r


def fs_exponent(r: int, rank_cap: int = 10) -> tuple[int, bool]:
    """(N_r, exact).

    Exact when the divisibility bounds force the value (always for odd r);
    otherwise computed from the twists when r <= rank_cap, else the upper
    bound 32r is returned with exact=False.
    """
    lo, hi = fs_exponent_bounds(r)
    if lo == hi:
        return hi, True
    if r <= rank_cap:
        n = 1
        for w in enumerate_alcove(r):
            n = lcm(n, twist(r, w).order)
        return n, True
    return hi, False


@dataclass(frozen=True)
class SimpleData:
    weight: AlcoveWeight
    twist: RootOfUnity
    qdim: CycloElem

    def to_json(self) -> dict:
        return {
            "weight2": list(self.weight.coords2),
            "twist": self.twist.to_json(),
            "qdim": self.qdim.to_json(),
        }


@dataclass(frozen=True)
class CategoryInvariants:
    rank: int
    simples: tuple[SimpleData, ...]
    dim: CycloElem
    sqrt_dim: CycloElem
    fs_exponent: int
    xi1: RootOfUnity
    twist_classes: dict = field(default_factory=dict, repr=False, compare=False)

    def to_json(self, full: bool = False) -> dict:
        out = {
            "r": self.rank,
            "num_simples": len(self.simples),
            "fs_exponent": self.fs_exponent,
            "xi1": self.xi1.to_json(),
            "dim": self.dim.to_json(),
            "sqrt_dim": self.sqrt_dim.to_json(),
        }
        if full:
            out["simples"] = [s.to_json() for s in self.simples]
        return out


def _gauss_from_classes(classes: dict, conductor: int, n: int) -> CycloElem:
    total = CycloElem.rational(0)
    for t, mass in classes.items():
        total = total + mass.times_zeta(t * n, conductor)
    return total


def build_category(r: int) -> CategoryInvariants:
    """Enumerate the simples and assemble the verified invariants of C_r."""
    weights = enumerate_alcove(r)
    simples = []
    classes: dict[int, CycloElem] = {}
    for w in weights:
        th = twist(r, w)
        d = qdim(r, w)
        if d.is_zero() or d.conj() != d:
            raise InvariantViolation(f"bad quantum dimension at {w}")
        simples.append(SimpleData(w, th, d))
        t = twist_exponent(r, w) % (32 * r)
        classes[t] = classes.get(t, CycloElem.rational(0)) + d * d
    dim = CycloElem.rational(0)
    for mass in classes.values():
        dim = dim + mass
    n_r = 1
    for s in simples:
        n_r = lcm(n_r, s.twist.order)
    lo, hi = fs_exponent_bounds(r)
    if n_r % lo or hi % n_r:
        raise InvariantViolation(f"N_{r} = {n_r} violates lcm(32,4r) | N | 32r")
    D = sqrt_of_dim(r)
    if D * D != dim:
        raise InvariantViolation(f"D_{r}^2 differs from the dimension sum")
    xi1 = phase_of(_gauss_from_classes(classes, 32 * r, 1))
    if xi1 != xi1_closed(r):
        raise InvariantViolation(f"xi_1 of C_{r} is {xi1}")
    return CategoryInvariants(r, tuple(simples), dim, D, n_r, xi1, classes)


def gauss_sum(inv: CategoryInvariants, n: int) -> CycloElem:
    """tau_n = sum over simples of d^2 theta^n."""
    if inv.twist_classes:
        return _gauss_from_classes(inv.twist_classes, 32 * inv.rank, n)
    total = CycloElem.rational(0)
    for s in inv.simples:
        total = total + (s.qdim * s.qdim).times_zeta(s.twist.exponent * n, s.twist.order)
    return total


def central_charge(inv: CategoryInvariants, n: int) -> RootOfUnity:
    """xi_n = tau_n / |tau_n| for n coprime to the FS exponent."""
    if gcd(n, inv.fs_exponent) != 1:
        raise NotCoprime(f"n = {n} is not coprime to N = {inv.fs_exponent}")
    return phase_of(gauss_sum(inv, n))


def omega_r(r: int) -> AlcoveWeight:
    return AlcoveWeight((1,) * r)


def two_e1(r: int) -> AlcoveWeight:
    return AlcoveWeight((4,) + (0,) * (r - 1))


def zero_weight(r: int) -> AlcoveWeight:
    return AlcoveWeight((0,) * r)


__all__ = [
    "AlcoveWeight",
    "CategoryInvariants",
    "RootData",
    "SimpleData",
    "build_category",
    "central_charge",
    "enumerate_alcove",
    "fs_exponent",
    "fs_exponent_bounds",
    "gauss_sum",
    "inner_product",
    "m_count",
    "m_count_brute",
    "omega_r",
    "qdim",
    "root_data",
    "sine_product",
    "sqrt_of_dim",
    "sqrt_power",
    "twist",
    "twist_exponent",
    "two_e1",
    "xi1_closed",
    "zero_weight",
]
