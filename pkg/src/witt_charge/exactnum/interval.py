"""Certified numeric enclosures of cyclotomic elements.

All intervals are fixed-point: an integer pair (lo, hi) at scale 2^w stands
for [lo / 2^w, hi / 2^w].  Every operation rounds outward, so the result
always encloses the true value.  pi comes from Machin's formula and
cos/sin from their Taylor series with a Lagrange remainder term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import NotReal, PrecisionExhausted
from .cyclotomic import CycloElem

DEFAULT_START_BITS = 64
DEFAULT_CAP_BITS = 16384

_config = {"start": DEFAULT_START_BITS, "cap": DEFAULT_CAP_BITS}


def set_precision(start_bits: int | None = None, cap_bits: int | None = None) -> None:
    start = start_bits if start_bits is not None else _config["start"]
    cap = cap_bits if cap_bits is not None else _config["cap"]
    if not 8 <= start <= cap:
        raise ValueError("need 8 <= start_bits <= cap_bits")
    _config["start"], _config["cap"] = start, cap


def get_precision() -> tuple[int, int]:
    return _config["start"], _config["cap"]


def _cdiv(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class ComplexInterval:
    re_lo: int
    re_hi: int
    im_lo: int
    im_hi: int
    scale_bits: int

    def _f(self, v: int) -> Fraction:
        return Fraction(v, 1 << self.scale_bits)

    @property
    def real(self) -> tuple[Fraction, Fraction]:
        return self._f(self.re_lo), self._f(self.re_hi)

    @property
    def imag(self) -> tuple[Fraction, Fraction]:
        return self._f(self.im_lo), self._f(self.im_hi)

    @property
    def width(self) -> Fraction:
        return max(self._f(self.re_hi - self.re_lo), self._f(self.im_hi - self.im_lo))

    def contains(self, re, im=0) -> bool:
        re, im = Fraction(re), Fraction(im)
        lo, hi = self.real
        ilo, ihi = self.imag
        return lo <= re <= hi and ilo <= im <= ihi

    def midpoint(self) -> complex:
        s = 1 << self.scale_bits
        return complex((self.re_lo + self.re_hi) / 2 / s, (self.im_lo + self.im_hi) / 2 / s)


def _imul(a: tuple[int, int], b: tuple[int, int], w: int) -> tuple[int, int]:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p) >> w, -((-max(p)) >> w)


def _atan_inv(m: int, w: int) -> tuple[int, int]:
    """Enclosure of atan(1/m) * 2^w, alternating series with explicit tail."""
    s = 1 << w
    lo = hi = 0
    k = 0
    while True:
        d = (2 * k + 1) * m ** (2 * k + 1)
        if d > s:
            break
        if k % 2 == 0:
            lo += s // d
            hi += _cdiv(s, d)
        else:
            lo -= _cdiv(s, d)
            hi -= s // d
        k += 1
    # first omitted term is below one ulp
    return lo - 1, hi + 1


@lru_cache(maxsize=64)
def pi_interval(w: int) -> tuple[int, int]:
    a_lo, a_hi = _atan_inv(5, w)
    b_lo, b_hi = _atan_inv(239, w)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


@lru_cache(maxsize=65536)
def cos_sin_interval(f: Fraction, w: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Enclosures of cos(2 pi f) and sin(2 pi f) at scale 2^w."""
    s = 1 << w
    f = f - (f.numerator // f.denominator)
    if f > Fraction(1, 2):
        f -= 1
    if f == 0:
        return (s, s), (0, 0)
    a, b = f.numerator, f.denominator
    p_lo, p_hi = pi_interval(w)
    if a > 0:
        x = ((2 * a * p_lo) // b, _cdiv(2 * a * p_hi, b))
    else:
        x = ((2 * a * p_hi) // b, _cdiv(2 * a * p_lo, b))
    xmax = max(abs(x[0]), abs(x[1]))
    c_lo = c_hi = s
    s_lo = s_hi = 0
    t = (s, s)
    m = 0
    while True:
        m += 1
        t = _imul(t, x, w)
        t = (t[0] // m, _cdiv(t[1], m))
        r = m % 4
        if r == 1:
            s_lo, s_hi = s_lo + t[0], s_hi + t[1]
        elif r == 2:
            c_lo, c_hi = c_lo - t[1], c_hi - t[0]
        elif r == 3:
            s_lo, s_hi = s_lo - t[1], s_hi - t[0]
        else:
            c_lo, c_hi = c_lo + t[0], c_hi + t[1]
        mag = max(abs(t[0]), abs(t[1]))
        if mag <= 1 and m * s > 2 * xmax:
            break
    # Lagrange remainder: |x|^(m+1)/(m+1)! <= mag * |x| / (m+1) < mag
    err = mag + 1
    return (c_lo - err, c_hi + err), (s_lo - err, s_hi + err)


def eval_interval(x: CycloElem, precision_bits: int) -> ComplexInterval:
    """Rigorous complex enclosure of x."""
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    n = x.conductor
    w = precision_bits + 16 + n.bit_length()
    re_lo = re_hi = im_lo = im_hi = 0
    for i, c in enumerate(x.numerators):
        if not c:
            continue
        (cl, ch), (sl, sh) = cos_sin_interval(Fraction(i, n), w)
        if c > 0:
            re_lo += c * cl
            re_hi += c * ch
            im_lo += c * sl
            im_hi += c * sh
        else:
            re_lo += c * ch
            re_hi += c * cl
            im_lo += c * sh
            im_hi += c * sl
    d = x.denominator
    return ComplexInterval(re_lo // d, _cdiv(re_hi, d), im_lo // d, _cdiv(im_hi, d), w)


def certified_sign(x: CycloElem, start_bits: int | None = None, cap_bits: int | None = None) -> int:
    """Sign of a real cyclotomic number.

    Zero is decided exactly from the canonical form; otherwise the enclosure
    is refined by doubling the precision until it excludes zero.
    """
    if x.conj() != x:
        raise NotReal(repr(x))
    if x.is_zero():
        return 0
    bits = start_bits if start_bits is not None else _config["start"]
    cap = cap_bits if cap_bits is not None else _config["cap"]
    while bits <= cap:
        iv = eval_interval(x, bits)
        if iv.re_lo > 0:
            return 1
        if iv.re_hi < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted(f"sign undecided at {cap} bits")
