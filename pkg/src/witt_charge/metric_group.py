"""Metric groups (H, q) and the pointed modular categories they define."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import lcm, prod
from typing import Mapping, Sequence

from .errors import (
    Degenerate,
    InconsistentForm,
    NotOddPrime,
    ZeroGaussSum,
)
from .exactnum import CycloElem, RootOfUnity, phase_of, sqrt_int

DEFAULT_SIZE_CAP = 10_000

Element = tuple[int, ...]


@dataclass(frozen=True)
class MetricGroup:
    """H = Z/m_1 + ... + Z/m_s with a quadratic form tabulated on every element."""

    orders: tuple[int, ...]
    qvals: Mapping[Element, RootOfUnity]

    @property
    def size(self) -> int:
        return prod(self.orders)

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(m) for m in self.orders)))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % m for a, m in zip(x, self.orders))

    def q(self, x: Element) -> RootOfUnity:
        return self.qvals[tuple(a % m for a, m in zip(x, self.orders))]

    def b(self, x: Element, y: Element) -> RootOfUnity:
        return self.q(self.add(x, y)) / (self.q(x) * self.q(y))

    def value_order(self) -> int:
        return lcm(*(v.order for v in self.qvals.values()))

    def direct_sum(self, other: "MetricGroup") -> "MetricGroup":
        qvals = {}
        for x, qx in self.qvals.items():
            for y, qy in other.qvals.items():
                qvals[x + y] = qx * qy
        return MetricGroup(self.orders + other.orders, qvals)

    def to_json(self) -> dict:
        return {
            "orders": list(self.orders),
            "q": {",".join(map(str, x)): self.qvals[x].to_json() for x in sorted(self.qvals)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MetricGroup":
        orders = tuple(int(m) for m in data["orders"])
        qvals = {
            tuple(int(a) for a in key.split(",")): RootOfUnity.from_json(v)
            for key, v in data["q"].items()
        }
        g = cls(orders, qvals)
        check_form(g)
        return g


def _tables(g: MetricGroup) -> tuple[int, list[int], list[list[int]]]:
    """(N, q exponents mod N, addition table) over flat mixed-radix indices."""
    elems = g.elements()
    index = {x: i for i, x in enumerate(elems)}
    N = g.value_order()
    qe = [g.qvals[x].exponent * (N // g.qvals[x].order) % N for x in elems]
    add = [[index[g.add(x, y)] for y in elems] for x in elems]
    return N, qe, add


def _bilinear_table(g: MetricGroup) -> tuple[int, list[list[int]]]:
    N, qe, add = _tables(g)
    n = len(qe)
    return N, [[(qe[add[i][j]] - qe[i] - qe[j]) % N for j in range(n)] for i in range(n)]


def check_form(g: MetricGroup) -> None:
    """Raise InconsistentForm unless q(0)=1, q(-x)=q(x) and b is bi-additive."""
    elems = g.elements()
    if len(g.qvals) != len(elems) or any(x not in g.qvals for x in elems):
        raise InconsistentForm("q must be tabulated on every element")
    zero = tuple(0 for _ in g.orders)
    if not g.q(zero).is_one():
        raise InconsistentForm("q(0) != 1")
    for x in elems:
        if g.q(g.neg(x)) != g.q(x):
            raise InconsistentForm(f"q(-x) != q(x) at {x}")
    N, qe, add = _tables(g)
    n = len(elems)
    b = [[(qe[add[i][j]] - qe[i] - qe[j]) % N for j in range(n)] for i in range(n)]
    # additivity in the first slot against each generator implies it everywhere;
    # symmetry is automatic from the definition of b
    gens = [elems.index(tuple(int(i == j) % m for j, m in enumerate(g.orders))) for i in range(len(g.orders))]
    for x in gens:
        bx = b[x]
        for y in range(n):
            row = b[add[x][y]]
            by = b[y]
            for z in range(n):
                if row[z] != (bx[z] + by[z]) % N:
                    raise InconsistentForm(f"b not additive at {elems[x]}, {elems[y]}, {elems[z]}")


def make_metric_group(
    orders: Sequence[int],
    q_gens: Sequence,
    pairings: Mapping[tuple[int, int], object] | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> MetricGroup:
    """Tabulate q(sum c_i g_i) = prod q(g_i)^(c_i^2) * prod_{i<j} b(g_i, g_j)^(c_i c_j).

    ``q_gens`` and the pairing values are roots of unity given either as
    RootOfUnity or as a rational fraction of a full turn.
    """
    orders = tuple(int(m) for m in orders)
    if any(m < 1 for m in orders):
        raise InconsistentForm("orders must be positive")
    if prod(orders) > size_cap:
        raise InconsistentForm(f"|H| = {prod(orders)} exceeds the cap {size_cap}")

    def frac(v) -> Fraction:
        return v.fraction if isinstance(v, RootOfUnity) else Fraction(v)

    qf = [frac(v) for v in q_gens]
    if len(qf) != len(orders):
        raise InconsistentForm("need one q value per generator")
    bf = {(i, j): frac(v) for (i, j), v in (pairings or {}).items()}

    def value(c: Sequence[int]) -> Fraction:
        total = sum(qf[i] * c[i] * c[i] for i in range(len(c)))
        for (i, j), v in bf.items():
            total += v * c[i] * c[j]
        return total % 1

    qvals = {}
    for c in itertools.product(*(range(m) for m in orders)):
        val = value(c)
        # changing c_i by its order must not change q
        for i, m in enumerate(orders):
            shifted = list(c)
            shifted[i] += m
            if value(shifted) != val:
                raise InconsistentForm(f"q is not well defined modulo the order of generator {i}")
        qvals[c] = RootOfUnity.from_fraction(val)
    g = MetricGroup(orders, qvals)
    check_form(g)
    return g


def is_nondegenerate(g: MetricGroup) -> bool:
    _, b = _bilinear_table(g)
    # row 0 is the zero element; any other all-zero row lies in the radical
    return not any(all(v == 0 for v in row) for row in b[1:])


def is_anisotropic(g: MetricGroup) -> bool:
    if not is_nondegenerate(g):
        raise Degenerate("anisotropy is only defined for non-degenerate forms")
    zero = tuple(0 for _ in g.orders)
    return all(not g.q(x).is_one() for x in g.elements() if x != zero)


def gauss_sum_n(g: MetricGroup, n: int) -> CycloElem:
    """sum over x of q(x)^n."""
    N = g.value_order()
    terms: dict[int, int] = {}
    for v in g.qvals.values():
        e = (v.exponent * (N // v.order) * n) % N
        terms[e] = terms.get(e, 0) + 1
    return CycloElem.from_exponents(N, terms)


def central_charge_n(g: MetricGroup, n: int) -> RootOfUnity:
    tau = gauss_sum_n(g, n)
    if tau.is_zero():
        raise ZeroGaussSum(f"tau_{n} vanishes")
    return phase_of(tau)


@dataclass(frozen=True)
class PointedInvariants:
    group: MetricGroup
    dim: int
    sqrt_dim: CycloElem
    xi1: RootOfUnity

    @property
    def fs_exponent(self) -> int:
        return self.group.value_order()

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "dim": self.dim,
            "sqrt_dim": self.sqrt_dim.to_json(),
            "xi1": self.xi1.to_json(),
        }


def pointed_invariants(g: MetricGroup) -> PointedInvariants:
    if not is_nondegenerate(g):
        raise Degenerate("pointed modular categories need a non-degenerate form")
    return PointedInvariants(g, g.size, sqrt_int(g.size), central_charge_n(g, 1))


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))


def least_nonresidue(p: int) -> int:
    squares = {a * a % p for a in range(1, p)}
    return next(u for u in range(2, p) if u not in squares)


@lru_cache(maxsize=None)
def a_p_representative(p: int) -> PointedInvariants:
    """The order-two, trivial-signature pointed Witt class at an odd prime p.

    Represented on Z/p + Z/p by x^2 + y^2 when p = 3 mod 4 and by
    x^2 - u y^2 (u the least non-residue) when p = 1 mod 4; both forms are
    anisotropic with Gauss sum -p.
    """
    if p == 2 or not _is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if p % 4 == 3:
        q_gens = [Fraction(1, p), Fraction(1, p)]
    else:
        q_gens = [Fraction(1, p), Fraction(-least_nonresidue(p), p)]
    g = make_metric_group([p, p], q_gens)
    inv = pointed_invariants(g)
    if not is_anisotropic(g):
        raise Degenerate(f"A_{p} form is isotropic")
    if inv.xi1 != RootOfUnity(2, 1):
        raise ZeroGaussSum(f"A_{p} has xi_1 = {inv.xi1}")
    if inv.sqrt_dim != p:
        raise InconsistentForm("sqrt(|H|) should be rational")
    return inv


def cyclic_form(m: int, a: int, denom: int | None = None) -> MetricGroup:
    """Z/m with q(x) = exp(2 pi i a x^2 / denom), denom defaulting to m."""
    denom = denom if denom is not None else m
    return make_metric_group([m], [Fraction(a, denom)])


def hyperbolic_2() -> MetricGroup:
    """Z/2 + Z/2 with q(x, y) = (-1)^(xy)."""
    return make_metric_group([2, 2], [0, 0], {(0, 1): Fraction(1, 2)})


__all__ = [
    "MetricGroup",
    "PointedInvariants",
    "a_p_representative",
    "central_charge_n",
    "check_form",
    "cyclic_form",
    "gauss_sum_n",
    "hyperbolic_2",
    "is_anisotropic",
    "is_nondegenerate",
    "least_nonresidue",
    "make_metric_group",
    "pointed_invariants",
]
