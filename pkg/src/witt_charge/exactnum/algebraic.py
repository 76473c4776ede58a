"""Square roots, sines and phases as exact cyclotomic numbers."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..errors import NotARootOfUnity, ZeroElement
from .cyclotomic import CycloElem, factorize, zeta
from .interval import certified_sign
from .roots import RootOfUnity, as_root_of_unity

_I = None


def imag_unit() -> CycloElem:
    global _I
    if _I is None:
        _I = zeta(4)
    return _I


def quadratic_gauss_sum(p: int) -> CycloElem:
    """sum_{a=1}^{p-1} (a/p) zeta_p^a for an odd prime p (residues by brute force)."""
    squares = {a * a % p for a in range(1, p)}
    return CycloElem.from_exponents(p, {a: (1 if a in squares else -1) for a in range(1, p)})


def sqrt_int(m: int) -> CycloElem:
    """The square root of a nonzero integer m.

    For m > 0 the root is the positive one; for m < 0 it is i times the
    positive root of |m|.
    """
    if m == 0:
        raise ZeroElement("sqrt_int needs m != 0")
    fac = factorize(abs(m))
    t = 1
    for p, e in fac.items():
        t *= p ** (e // 2)
    # product of sqrt(p*) with p* = (-1)^((p-1)/2) p, and sqrt(2) = zeta_8 + zeta_8^-1
    x = CycloElem.rational(t)
    square = 1
    for p, e in sorted(fac.items()):
        if e % 2 == 0:
            continue
        if p == 2:
            x = x * (zeta(8, 1) + zeta(8, 7))
            square *= 2
        else:
            x = x * quadratic_gauss_sum(p)
            square *= p if p % 4 == 1 else -p
    if (square > 0) != (m > 0):
        x = x * imag_unit()
    real = x if m > 0 else x * (-imag_unit())
    if certified_sign(real) < 0:
        x = -x
    return x


def sin_cyclo(j: int, m: int) -> CycloElem:
    """sin(j pi / m) = (zeta_2m^j - zeta_2m^-j) / (2i), at conductor lcm(2m, 4)."""
    if m < 1:
        raise ValueError("m must be positive")
    L = lcm(2 * m, 4)
    s = L // (2 * m)
    q = L // 4
    terms: dict[int, Fraction] = {}
    for e, c in (((j * s - q) % L, 1), ((-j * s - q) % L, -1)):
        terms[e] = terms.get(e, 0) + Fraction(c, 2)
    return CycloElem.from_exponents(L, terms)


def phase_of(tau: CycloElem, start_bits: int = 128) -> RootOfUnity:
    """tau / |tau| as a root of unity, assuming it is one.

    u = tau / conj(tau) is the square of the phase and is identified
    exactly; the square-root ambiguity is settled by the certified sign of
    the real number tau * conj(candidate).
    """
    if tau.is_zero():
        raise ZeroElement("phase of zero")
    u = tau * tau.conj().invert()
    sq = as_root_of_unity(u)
    cand = RootOfUnity.from_fraction(sq.fraction / 2)
    w = tau * cand.conj().to_cyclo()
    s = certified_sign(w, start_bits=start_bits)
    if s == 0:
        raise NotARootOfUnity("degenerate phase")
    return cand if s > 0 else -cand
