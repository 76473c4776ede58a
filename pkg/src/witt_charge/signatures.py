"""Galois signatures of totally real cyclotomic numbers.

Two independent routes to a sign are provided.  The generic one applies the
automorphism exactly and certifies the sign numerically.  The combinatorial
one handles sigma_k with k = 1 mod 4, where sigma_k fixes i and therefore
sends sin(j pi/m) to sin(kj pi/m); its sign is read off from kj mod 2m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping

from .errors import BadResidue, EvenModulus, NotCoprime, ZeroElement
from .exactnum import CycloElem, GaloisElem, certified_sign, galois_apply
from .so_odd import m_count


def jacobi(k: int, n: int) -> int:
    """Jacobi symbol (k/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    k %= n
    result = 1
    while k:
        while k % 2 == 0:
            k //= 2
            if n % 8 in (3, 5):
                result = -result
        k, n = n, k
        if k % 4 == 3 and n % 4 == 3:
            result = -result
        k %= n
    return result if n == 1 else 0


def odd_part(m: int) -> int:
    while m and m % 2 == 0:
        m //= 2
    return m


def signature_of(x: CycloElem, sigma: GaloisElem, **precision) -> int:
    """sgn(sigma(x)) for a real nonzero cyclotomic x."""
    if x.is_zero():
        raise ZeroElement("signature of zero")
    return certified_sign(galois_apply(sigma, x), **precision)


def sine_image_sign(j: int, m: int, k: int) -> int:
    """Sign of sigma_k(sin(j pi/m)) without any numerics.

    Valid for k = 1 mod 4 (so sigma_k fixes i) and k coprime to m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if k % 4 != 1:
        raise BadResidue(f"k = {k} is not 1 mod 4")
    if gcd(k, odd_part(m)) != 1:
        raise NotCoprime(f"k = {k} shares a factor with {m}")
    u = (k * j) % (2 * m)
    if u == 0 or u == m:
        return 0
    return 1 if u < m else -1


def sqrt_power_sign(r: int, k: int) -> int:
    """Sign of sigma_k(sqrt(r^r)) for k = 1 mod 4, gcd(k, r) = 1."""
    if k % 4 != 1:
        raise BadResidue(f"k = {k} is not 1 mod 4")
    if gcd(k, r) != 1:
        raise NotCoprime(f"gcd({k}, {r}) != 1")
    if r % 2 == 0:
        return 1
    # sqrt(r^r) = r^((r-1)/2) sqrt(r), and sigma_k(sqrt r) = (k/r) sqrt r
    return jacobi(k, r)


@dataclass
class SignatureSample:
    modulus: int
    values: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.values.items():
            if gcd(k, self.modulus) != 1:
                raise NotCoprime(f"{k} is not a unit mod {self.modulus}")
            if v not in (-1, 1):
                raise ValueError("signature values must be +-1")

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    def count(self, value: int) -> int:
        return sum(1 for v in self.values.values() if v == value)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "values": {str(k): self.values[k] for k in sorted(self.values)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SignatureSample":
        return cls(int(data["modulus"]), {int(k): int(v) for k, v in data["values"].items()})


def units(M: int) -> list[int]:
    if M == 1:
        return [1]
    return [k for k in range(1, M) if gcd(k, M) == 1]


def signature_table(x: CycloElem, M: int) -> SignatureSample:
    """signature_of(x, sigma_k) for every unit k mod M."""
    if M % x.conductor:
        x = x.minimize_conductor()
    values = {k: signature_of(x, GaloisElem(M, k)) for k in units(M)}
    return SignatureSample(M, values)


def dim_root_signature(r: int, k: int) -> int:
    """Sign of sigma_k(D_r) for k = 1 mod 4 and gcd(k, r) = 1, float-free.

    D_r is sqrt(r^r) times a positive power of two divided by a product of
    sines; the inverse does not change signs, so only the numerator and the
    sine factors are inspected.
    """
    s = sqrt_power_sign(r, k)
    for ell in range(1, r + 1):
        s *= sine_image_sign(2 * ell - 1, 8 * r, k)
    for j in range(1, 2 * r - 1):
        if m_count(r, j) % 2:
            s *= sine_image_sign(j, 4 * r, k)
    if s == 0:
        raise ZeroElement(f"sigma_{k}(D_{r}) vanished")
    return s
