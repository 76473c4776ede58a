"""Roots of unity and cyclotomic Galois automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Union

from ..errors import IncompatibleModulus, NotARootOfUnity, NotCoprime
from .cyclotomic import CycloElem, _reduction_table, totient


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_order^exponent, kept reduced so that order is the true order."""

    order: int
    exponent: int

    def __post_init__(self):
        d, a = self.order, self.exponent
        if d < 1:
            raise ValueError("order must be positive")
        a %= d
        g = gcd(a, d)
        if a == 0:
            d, a = 1, 0
        elif g != 1:
            d, a = d // g, a // g
        object.__setattr__(self, "order", d)
        object.__setattr__(self, "exponent", a)

    @classmethod
    def from_fraction(cls, f) -> "RootOfUnity":
        """exp(2 pi i f) for rational f."""
        f = Fraction(f)
        return cls(f.denominator, f.numerator)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    @property
    def fraction(self) -> Fraction:
        """The angle as a fraction of a full turn, in [0, 1)."""
        return Fraction(self.exponent, self.order)

    def is_one(self) -> bool:
        return self.order == 1

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction + other.fraction)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction - other.fraction)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction * e)

    def __neg__(self) -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction + Fraction(1, 2))

    def inverse(self) -> "RootOfUnity":
        return self ** -1

    def conj(self) -> "RootOfUnity":
        return self.inverse()

    def galois(self, k: int) -> "RootOfUnity":
        if gcd(k, self.order) != 1:
            raise NotCoprime(f"{k} is not coprime to {self.order}")
        return self ** k

    def to_cyclo(self) -> CycloElem:
        return CycloElem.from_exponents(self.order, {self.exponent: 1})

    def __str__(self):
        return f"zeta({self.order})^{self.exponent}"

    def to_json(self) -> dict:
        return {"order": self.order, "exp": self.exponent}

    @classmethod
    def from_json(cls, data: Mapping) -> "RootOfUnity":
        return cls(int(data["order"]), int(data["exp"]))


@dataclass(frozen=True)
class GaloisElem:
    """sigma_k in Gal(Q(zeta_modulus)/Q), sigma_k(zeta) = zeta^k."""

    modulus: int
    k: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        k = self.k % self.modulus
        if gcd(k, self.modulus) != 1:
            raise NotCoprime(f"{self.k} is not a unit modulo {self.modulus}")
        object.__setattr__(self, "k", k)

    def __mul__(self, other: "GaloisElem") -> "GaloisElem":
        if other.modulus != self.modulus:
            raise IncompatibleModulus("composition needs a common modulus")
        return GaloisElem(self.modulus, self.k * other.k)

    def inverse(self) -> "GaloisElem":
        return GaloisElem(self.modulus, pow(self.k, -1, self.modulus) if self.modulus > 1 else 0)

    def is_identity(self) -> bool:
        return self.k == 1 % self.modulus

    def __call__(self, x: Union[CycloElem, RootOfUnity]):
        if isinstance(x, RootOfUnity):
            return apply_to_root(self, x)
        return galois_apply(self, x)


def galois_apply(sigma: GaloisElem, x: CycloElem) -> CycloElem:
    """Image of x under sigma.

    Only the restriction of sigma to Q(zeta_n) matters, so sigma_k mod M acts
    on an element of conductor n | M as sigma_{k mod n}.
    """
    if sigma.modulus % x.conductor:
        raise IncompatibleModulus(
            f"conductor {x.conductor} does not divide modulus {sigma.modulus}"
        )
    return x.galois(sigma.k)


def apply_to_root(sigma: GaloisElem, z: RootOfUnity) -> RootOfUnity:
    # +-1 are fixed by everything, independent of the modulus
    if z.order <= 2:
        return z
    if sigma.modulus % z.order:
        raise IncompatibleModulus(f"order {z.order} does not divide modulus {sigma.modulus}")
    return z ** sigma.k


@lru_cache(maxsize=None)
def _dense_powers(n: int) -> dict[tuple[int, ...], int]:
    """Map from canonical coefficient vector of zeta_n^j to j."""
    phi = totient(n)
    out = {}
    for j, row in enumerate(_reduction_table(n)):
        vec = [0] * phi
        for i, c in row:
            vec[i] = c
        out[tuple(vec)] = j
    return out


def as_root_of_unity(x: CycloElem) -> RootOfUnity:
    """Identify x as +-zeta_n^j, n its conductor, by exact comparison.

    The roots of unity in Q(zeta_n) are exactly mu_lcm(2, n), so every
    candidate is +-zeta_n^j.
    """
    if x.denominator != 1 or x.is_zero():
        raise NotARootOfUnity(repr(x))
    n = x.conductor
    table = _dense_powers(n)
    j = table.get(x.numerators)
    if j is not None:
        return RootOfUnity(n, j)
    j = table.get(tuple(-c for c in x.numerators))
    if j is not None:
        return -RootOfUnity(n, j)
    raise NotARootOfUnity(repr(x))
