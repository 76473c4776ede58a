"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q(z) = Q[x]/(Phi_n).  Coefficients are kept as a tuple of integers over a
single positive common denominator, which keeps multiplication in integer
arithmetic.  The representation at a fixed conductor is unique, so equality
is a coefficient comparison after embedding both sides into the lcm of their
conductors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from ..errors import DivisionByZero, NotADivisor


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here are desk-scale."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; ascending coefficient order
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n in ascending order.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d.
    The cache is the only shared state; concurrent fills are idempotent.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse images of x^e mod Phi_n for 0 <= e < n."""
    phi = totient(n)
    cyc = cyclotomic_poly(n)
    rows = []
    vec = [0] * phi
    vec[0] = 1
    for e in range(n):
        if e > 0:
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * cyc[i]
        rows.append(tuple((i, c) for i, c in enumerate(vec) if c))
    return tuple(rows)


def _reduce(n: int, vec: Sequence[int]) -> list[int]:
    """Reduce a length-n vector (exponents taken mod n) modulo Phi_n."""
    phi = totient(n)
    out = list(vec[:phi])
    if phi < n:
        table = _reduction_table(n)
        for e in range(phi, n):
            c = vec[e]
            if c:
                for i, r in table[e]:
                    out[i] += c * r
    return out


class CycloElem:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("conductor", "_num", "_den")

    def __init__(self, conductor: int, num: Iterable[int], den: int = 1):
        num = tuple(num)
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if len(num) != totient(conductor):
            raise ValueError("coefficient vector must have phi(n) entries")
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = reduce(gcd, num, den)
        if not any(num):
            num, den = (0,) * len(num), 1
        elif g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self.conductor = conductor
        self._num = num
        self._den = den

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q) -> "CycloElem":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator)

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence) -> "CycloElem":
        """Build from power-basis coefficients (any rationals, len phi(n))."""
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lcm, (c.denominator for c in fr), 1)
        return cls(n, (int(c * den) for c in fr), den)

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[int, object]) -> "CycloElem":
        """Sum of c * zeta_n^e over terms {e: c}; exponents are taken mod n."""
        fr = {e % n: Fraction(0) for e in terms}
        for e, c in terms.items():
            fr[e % n] += Fraction(c)
        den = reduce(lcm, (c.denominator for c in fr.values()), 1)
        vec = [0] * n
        for e, c in fr.items():
            vec[e] = int(c * den)
        return cls(n, _reduce(n, vec), den)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    # -- conductor management ---------------------------------------------

    def embed(self, m: int) -> "CycloElem":
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise NotADivisor(f"{n} does not divide {m}")
        step = m // n
        vec = [0] * m
        for i, c in enumerate(self._num):
            vec[i * step] = c
        return CycloElem(m, _reduce(m, vec), self._den)

    def in_subfield(self, d: int) -> bool:
        """True iff this element lies in Q(zeta_d) for d dividing the conductor."""
        n = self.conductor
        if n % d:
            raise NotADivisor(f"{d} does not divide {n}")
        for k in range(1 + d, n, d):
            if gcd(k, n) == 1 and self.galois(k) != self:
                return False
        return True

    def minimize_conductor(self) -> "CycloElem":
        """Equal element at the smallest conductor containing it."""
        n = self.conductor
        if self.is_rational():
            return CycloElem(1, (self._num[0],), self._den)
        for d in divisors(n)[:-1]:
            if totient(d) < totient(n) and self.in_subfield(d):
                return _express_in_subfield(self, d)
        return self

    def _align(self, other: "CycloElem") -> tuple["CycloElem", "CycloElem"]:
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.embed(m), other.embed(m)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "CycloElem":
        if isinstance(x, CycloElem):
            return x
        if isinstance(x, (int, Rational)):
            return CycloElem.rational(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        if a._den == b._den:
            return CycloElem(a.conductor, (x + y for x, y in zip(a._num, b._num)), a._den)
        return CycloElem(
            a.conductor,
            (x * b._den + y * a._den for x, y in zip(a._num, b._num)),
            a._den * b._den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.conductor, (-c for c in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q) -> "CycloElem":
        q = Fraction(q)
        return CycloElem(self.conductor, (c * q.numerator for c in self._num), self._den * q.denominator)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.conductor == 1:
            return CycloElem(self.conductor, (c * other._num[0] for c in self._num), self._den * other._den)
        if self.conductor == 1:
            return other * self
        a, b = self._align(other)
        n = a.conductor
        vec = [0] * n
        bnz = [(j, y) for j, y in enumerate(b._num) if y]
        for i, x in enumerate(a._num):
            if x:
                for j, y in bnz:
                    e = i + j
                    if e >= n:
                        e -= n
                    vec[e] += x * y
        return CycloElem(n, _reduce(n, vec), a._den * b._den)

    __rmul__ = __mul__

    def times_zeta(self, e: int, d: int) -> "CycloElem":
        """Multiply by zeta_d^e; a monomial shift, cheaper than a full product."""
        m = lcm(self.conductor, d)
        a = self.embed(m)
        shift = (e * (m // d)) % m
        vec = [0] * m
        for i, c in enumerate(a._num):
            if c:
                vec[(i + shift) % m] += c
        return CycloElem(m, _reduce(m, vec), a._den)

    def invert(self) -> "CycloElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.conductor
        if self.is_rational():
            return CycloElem(n, (self._den,) + (0,) * (len(self._num) - 1), self._num[0])
        inv = _poly_inverse_mod(list(self._num), cyclotomic_poly(n))
        return CycloElem.from_coeffs(n, inv).scale(self._den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        result = CycloElem.rational(1).embed(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, k: int) -> "CycloElem":
        """Image under zeta_n -> zeta_n^k; k must be coprime to the conductor."""
        n = self.conductor
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if k == 1 % n:
            return self
        vec = [0] * n
        for i, c in enumerate(self._num):
            if c:
                vec[(i * k) % n] += c
        return CycloElem(n, _reduce(n, vec), self._den)

    def conj(self) -> "CycloElem":
        return self.galois(-1)

    # -- comparison / misc --------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._align(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        m = self.minimize_conductor()
        return hash((m.conductor, m._num, m._den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloElem[n={self.conductor}]({body})"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloElem":
        return cls.from_coeffs(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


def zeta(n: int, power: int = 1) -> CycloElem:
    """zeta_n^power = exp(2 pi i power / n) at conductor n."""
    if n < 1:
        raise ValueError("n must be positive")
    return CycloElem.from_exponents(n, {power: 1})


def embed(x: CycloElem, m: int) -> CycloElem:
    return x.embed(m)


# -- polynomial helpers for inversion ------------------------------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c / lead
            q[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] if db > 0 else [])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_inverse_mod(a: Sequence[int], modulus: Sequence[int]) -> list[Fraction]:
    """s with s*a == 1 mod modulus, by the extended Euclidean algorithm."""
    r0 = _trim([Fraction(c) for c in modulus])
    r1 = _trim([Fraction(c) for c in a])
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    _, s = _poly_divmod(s1, [Fraction(x) for x in modulus])
    s = [x / c for x in s]
    deg = len(modulus) - 1
    return s + [Fraction(0)] * (deg - len(s))


def _express_in_subfield(x: CycloElem, d: int) -> CycloElem:
    """Rewrite x (known to lie in Q(zeta_d)) at conductor d by linear solve."""
    n = x.conductor
    pd = totient(d)
    cols = [zeta(d, i).embed(n).coeffs for i in range(pd)]
    rows = [[cols[j][i] for j in range(pd)] + [c] for i, c in enumerate(x.coeffs)]
    # Gaussian elimination on the (phi(n) x phi(d)) consistent system
    pivots = []
    r = 0
    for col in range(pd):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    sol = [Fraction(0)] * pd
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    out = CycloElem.from_coeffs(d, sol)
    if out != x:
        raise ArithmeticError("element does not lie in the requested subfield")
    return out
