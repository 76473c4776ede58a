"""Formal Witt words and the central charge homomorphism.

A word is a finite product of generators: ``C<r>`` for so(2r+1)_{2r+1},
``I`` for the Ising category su(2)_2 and ``Ap<p>`` for the order-two pointed
class at an odd prime p.  Nothing here decides Witt equality; the functions
evaluate invariants (first central charge, dimension signatures, the
central-charge function) and report their consequences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping

from .errors import (
    BadResidue,
    ConductorTooLarge,
    IncompatibleModulus,
    InvariantViolation,
    NoCanonicalCubeRoot,
    NoOddExponent,
    NotCoprime,
    UnknownLabel,
    UnsupportedGaloisElement,
)
from .exactnum import (
    CycloElem,
    GaloisElem,
    RootOfUnity,
    apply_to_root,
    phase_of,
    totient,
    zeta,
)
from .metric_group import a_p_representative, central_charge_n
from .signatures import dim_root_signature, signature_of, units
from .so_odd import build_category, central_charge, fs_exponent, sqrt_of_dim, xi1_closed

DEFAULT_PHI_CAP = 2**20
# largest rank whose D_r is built exactly for the certified-numeric sign path
NUMERIC_RANK_CAP = 24

ISING_XI1 = RootOfUnity(16, 3)


@dataclass(frozen=True)
class WittGenerator:
    label: str
    kind: str
    xi1: RootOfUnity
    fs_exponent: int
    fs_exact: bool = True
    param: int = 0
    sqrt_dim: CycloElem | None = field(default=None, compare=False, repr=False)

    @property
    def conductor(self) -> int:
        """Conductor of sqrt(dim); D_r lives in Q(zeta_{16r})."""
        if self.kind == "so_odd":
            return 16 * self.param
        return self.sqrt_dim.conductor

    @property
    def modulus(self) -> int:
        return lcm(self.fs_exponent, self.conductor, self.xi1.order)

    def exact_sqrt_dim(self) -> CycloElem:
        if self.kind == "so_odd":
            return sqrt_of_dim(self.param)
        return self.sqrt_dim

    def signature(self, k: int) -> tuple[int, str]:
        """(sgn sigma_k(sqrt dim), path used)."""
        if self.kind != "so_odd":
            d = self.sqrt_dim
            if d.is_rational():
                return (1 if d.to_fraction() > 0 else -1), "rational"
            n = d.conductor
            return signature_of(d, GaloisElem(n, k)), "certified-numeric"
        r = self.param
        if gcd(k, 2 * r) != 1:
            raise NotCoprime(f"k = {k} is not coprime to {16 * r}")
        if k % 4 == 1:
            return dim_root_signature(r, k), "exact"
        if r > NUMERIC_RANK_CAP:
            raise UnsupportedGaloisElement(
                f"k = {k} is not 1 mod 4 and C_{r} is beyond the numeric rank cap"
            )
        return signature_of(sqrt_of_dim(r), GaloisElem(16 * r, k)), "certified-numeric"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "xi1": self.xi1.to_json(),
            "fs_exponent": self.fs_exponent,
            "fs_exact": self.fs_exact,
        }


_LABEL = re.compile(r"^(C)(\d+)$|^(I)$|^(Ap)(\d+)$")


@lru_cache(maxsize=None)
def generator(label: str) -> WittGenerator:
    m = _LABEL.match(label)
    if not m:
        raise UnknownLabel(label)
    if m.group(1):
        r = int(m.group(2))
        if r < 1:
            raise UnknownLabel(label)
        N, exact = fs_exponent(r)
        return WittGenerator(label, "so_odd", xi1_closed(r), N, exact, r)
    if m.group(3):
        return WittGenerator("I", "ising", ISING_XI1, 16, True, 0, CycloElem.rational(2))
    p = int(m.group(5))
    inv = a_p_representative(p)
    return WittGenerator(label, "pointed", inv.xi1, inv.fs_exponent, True, p, inv.sqrt_dim)


def _label_key(label: str):
    g = _LABEL.match(label)
    if g and g.group(1):
        return (0, int(g.group(2)))
    if g and g.group(3):
        return (1, 0)
    if g and g.group(4):
        return (2, int(g.group(5)))
    return (3, label)


@dataclass(frozen=True)
class WittWord:
    """Formal product of generators with integer exponents; empty = [Vec]."""

    terms: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, exponents: Mapping[str, int] | Iterable[tuple[str, int]]) -> "WittWord":
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[str, int] = {}
        for label, e in items:
            generator(label)
            acc[label] = acc.get(label, 0) + int(e)
        return cls(tuple(sorted(((k, v) for k, v in acc.items() if v), key=lambda kv: _label_key(kv[0]))))

    @classmethod
    def parse(cls, text: str) -> "WittWord":
        """Parse e.g. ``"C5^3 * C23 * I^-2 * Ap3"``; ``""`` or ``"1"`` is empty."""
        text = text.strip()
        if text in ("", "1", "Vec"):
            return cls()
        items = []
        for part in text.split("*"):
            part = part.strip()
            m = re.fullmatch(r"([A-Za-z]+\d*)\s*(?:\^\s*(-?\d+))?", part)
            if not m:
                raise UnknownLabel(part)
            items.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        return cls.of(items)

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self.terms)

    def generators(self) -> list[tuple[WittGenerator, int]]:
        return [(generator(label), e) for label, e in self.terms]

    def __mul__(self, other: "WittWord") -> "WittWord":
        return WittWord.of(list(self.terms) + list(other.terms))

    def __pow__(self, e: int) -> "WittWord":
        return WittWord.of([(label, b * e) for label, b in self.terms])

    def inverse(self) -> "WittWord":
        return self ** -1

    def is_empty(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "1"
        return " * ".join(label if e == 1 else f"{label}^{e}" for label, e in self.terms)


def word_modulus(word: WittWord) -> int:
    """A common multiple of all FS exponents and sqrt(dim) conductors."""
    m = 1
    for g, _ in word.generators():
        m = lcm(m, g.modulus)
    return m


def xi1_of(word: WittWord) -> RootOfUnity:
    out = RootOfUnity.one()
    for g, e in word.generators():
        out = out * g.xi1 ** e
    return out


def word_signature_detail(word: WittWord, k: int, M: int | None = None) -> tuple[int, dict[str, str]]:
    if M is not None and gcd(k, M) != 1:
        raise NotCoprime(f"gcd({k}, {M}) != 1")
    sign = 1
    paths = {}
    for g, e in word.generators():
        if e % 2 == 0:
            paths[g.label] = "even-exponent"
            continue
        s, path = g.signature(k)
        paths[g.label] = path
        sign *= s
    return sign, paths


def word_signature(word: WittWord, k: int, M: int | None = None) -> int:
    """prod over generators of ss_g(sigma_k)^exponent."""
    return word_signature_detail(word, k, M)[0]


def canonical_cube_root(z: RootOfUnity) -> RootOfUnity:
    if z.order % 3 == 0:
        raise NoCanonicalCubeRoot(f"3 divides the order of {z}")
    if z.order == 1:
        return z
    return z ** pow(3, -1, z.order)


def _check_modulus(g: WittGenerator, M: int) -> None:
    if M % g.fs_exponent or M % g.conductor or (g.xi1.order > 2 and M % g.xi1.order):
        raise IncompatibleModulus(f"modulus {M} is not a multiple of the data of {g.label}")


def generator_xi(g: WittGenerator, sigma: GaloisElem, gamma: RootOfUnity | None = None) -> RootOfUnity:
    """ss(sigma^-1) * sigma^-1(xi_1) * sigma(gamma) / sigma^-1(gamma)."""
    _check_modulus(g, sigma.modulus)
    inv = sigma.inverse()
    gamma = gamma if gamma is not None else canonical_cube_root(g.xi1)
    s, _ = g.signature(inv.k)
    val = apply_to_root(inv, g.xi1) * apply_to_root(sigma, gamma) / apply_to_root(inv, gamma)
    return val if s == 1 else -val


def Xi_eval(word: WittWord, sigma: GaloisElem, gammas: Mapping[str, RootOfUnity] | None = None) -> RootOfUnity:
    """Central charge function of the word evaluated at sigma.

    For a single generator, Xi(sigma_k) is its k-th higher central charge.
    """
    out = RootOfUnity.one()
    for g, e in word.generators():
        out = out * generator_xi(g, sigma, (gammas or {}).get(g.label)) ** e
    return out


# -- direct central charges (for cross-validation) ------------------------


def ising_gauss_sum(n: int) -> CycloElem:
    """su(2)_2: dimensions 1, sqrt 2, 1 and twists 1, zeta_16^3, -1."""
    return CycloElem.rational(2) * zeta(16, 3 * n) + 1 + (-1) ** (n % 2)


@lru_cache(maxsize=None)
def _category(r: int):
    return build_category(r)


def direct_central_charge(g: WittGenerator, k: int) -> RootOfUnity:
    """xi_k of the generator computed from its Gauss sum."""
    if gcd(k, g.fs_exponent) != 1:
        raise NotCoprime(f"k = {k} is not coprime to {g.fs_exponent}")
    if g.kind == "so_odd":
        return central_charge(_category(g.param), k)
    if g.kind == "ising":
        return phase_of(ising_gauss_sum(k))
    return central_charge_n(a_p_representative(g.param).group, k)


def higher_central_charge_formula(g: WittGenerator, n: int, N: int | None = None) -> RootOfUnity:
    """ss(sigma) * sigma(xi_1) * gamma^n / sigma^2(gamma^n) with sigma^-1 = sigma_n.

    gamma is xi_1^11, the cube root used for first central charges of
    order dividing 32.
    """
    N = N or g.fs_exponent
    if gcd(n, N) != 1:
        raise NotCoprime(f"n = {n} is not coprime to {N}")
    sigma = GaloisElem(N, n).inverse()
    gamma = g.xi1 ** 11
    s, _ = g.signature(sigma.k)
    gn = gamma ** n
    val = apply_to_root(sigma, g.xi1) * gn / apply_to_root(sigma * sigma, gn)
    return val if s == 1 else -val


# -- kernel criterion and distinguishing Galois elements --------------------


@dataclass(frozen=True)
class KernelResult:
    word: str
    in_kernel: bool
    witness_k: int | None
    reason: str
    xi1: RootOfUnity
    checks: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "xi1": self.xi1.to_json(),
            "in_kernel": self.in_kernel,
            "witness_k": self.witness_k,
            "reason": self.reason,
            "checks": list(self.checks),
        }


def _odd_so_component(word: WittWord, z: int) -> str | None:
    l = 4 * z + 2
    for g, e in word.generators():
        if g.kind == "so_odd" and e % 2 and g.param % (8 * l + 2) == 2 * l + 1:
            return g.label
    return None


def distinguishing_k(word: WittWord, m: str, z: int = 0) -> int:
    """Galois index k separating the word from the kernel of Xi.

    With l = 4z+2, f = rank of component m (f = 2l+1 mod 8l+2) and N the lcm of
    32 with the data of all other components, solve x f + y N = 1 and set
    k = -8(2z+1) x f + 4l + 1 = 8(2z+1) y N + 1.  Then k = 1 mod N, so every
    other component has trivial signature at sigma_k, while component m
    contributes (-1)^x = -1.
    """
    exps = word.exponents
    if m not in exps:
        raise UnknownLabel(f"{m} does not occur in the word")
    g = generator(m)
    if g.kind != "so_odd":
        raise NoOddExponent(f"{m} is not an so(2r+1) component")
    if exps[m] % 2 == 0:
        raise NoOddExponent(f"{m} has even exponent")
    l = 4 * z + 2
    f = g.param
    if f % (8 * l + 2) != 2 * l + 1:
        raise BadResidue(f"{f} is not {2 * l + 1} mod {8 * l + 2}")
    N = 32
    for h, _ in word.generators():
        if h.label != m:
            N = lcm(N, h.modulus)
    if gcd(f, N) != 1:
        raise NotCoprime(f"gcd({f}, {N}) != 1")
    x = pow(f, -1, N)
    y = (1 - x * f) // N
    if x * f + y * N != 1 or x % 2 == 0:
        raise InvariantViolation("Bezout coefficients")
    k = -8 * (2 * z + 1) * x * f + 4 * l + 1
    if k != 8 * (2 * z + 1) * y * N + 1:
        raise InvariantViolation("the two expressions for k disagree")
    M = lcm(N, g.modulus)
    k %= M
    if k % N != 1 % N or gcd(k, M) != 1:
        raise InvariantViolation(f"k = {k} is not a unit congruent to 1 mod {N}")
    for h, e in word.generators():
        s, _ = h.signature(k)
        expected = -1 if h.label == m else 1
        if s != expected:
            raise InvariantViolation(f"signature of {h.label} at sigma_{k} is {s}")
    if word_signature(word, k) != -1:
        raise InvariantViolation("word signature is not -1")
    return k


def kernel_test(word: WittWord, mode: str = "exhaustive", phi_cap: int = DEFAULT_PHI_CAP, z: int = 0) -> KernelResult:
    """Decide [word] in ker(Xi) via xi_1 = 1 and trivial signature."""
    xi1 = xi1_of(word)
    text = str(word)
    if word.is_empty():
        return KernelResult(text, True, None, "empty word", xi1)
    if mode == "certify":
        m = _odd_so_component(word, z)
        if m is not None:
            k = distinguishing_k(word, m, z)
            return KernelResult(text, False, k, f"signature -1 at sigma_{k} (component {m})", xi1)
        if not xi1.is_one():
            return KernelResult(text, False, 1, "xi1 != 1", xi1)
        raise NoOddExponent("no so(2r+1) component with odd exponent in the sequence class")
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    M = word_modulus(word)
    if totient(M) > phi_cap:
        raise ConductorTooLarge(f"phi({M}) = {totient(M)} exceeds {phi_cap}")
    if not xi1.is_one():
        return KernelResult(text, False, 1, "xi1 != 1", xi1)
    for k in units(M):
        if word_signature(word, k, M) == -1:
            return KernelResult(text, False, k, f"signature -1 at sigma_{k} mod {M}", xi1)
    return KernelResult(text, True, None, f"xi1 = 1 and signature trivial mod {M}", xi1,
                        (f"checked {totient(M)} Galois elements",))


# -- sequences and structure -------------------------------------------------


def a_sequence(z: int, count: int, primes_only: bool = False) -> list[int]:
    """Greedy sequence of integers = 2l+1 mod 8l+2 (l = 4z+2), pairwise coprime."""
    if z < 0 or count < 0:
        raise ValueError("z and count must be nonnegative")
    l = 4 * z + 2
    step = 8 * l + 2
    terms: list[int] = []
    out: list[int] = []
    cand = 2 * l + 1
    while len(out) < count:
        if all(gcd(cand, t) == 1 for t in terms):
            terms.append(cand)
            if not primes_only or _is_prime(cand):
                out.append(cand)
        cand += step
    return out


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def square_relation_exponent(r: int) -> int:
    return 11 if r % 4 in (0, 3) else 3


def verify_square_relation(r: int) -> bool:
    """xi_1(C_r)^2 == xi_1(I)^e with e = 11 or 3 according to r mod 4."""
    return xi1_closed(r) ** 2 == ISING_XI1 ** square_relation_exponent(r)


@dataclass
class StructureReport:
    f: list[int]
    n: int
    z: int
    classes: int = 0
    nontrivial: int = 0
    distinguished: int = 0
    by_xi1: int = 0
    by_witness: int = 0
    failures: list[str] = field(default_factory=list)
    witnesses: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.distinguished == self.nontrivial == self.classes - 1

    def to_json(self) -> dict:
        return {
            "f": self.f,
            "n": self.n,
            "z": self.z,
            "classes": self.classes,
            "nontrivial": self.nontrivial,
            "distinguished": self.distinguished,
            "by_xi1": self.by_xi1,
            "by_witness": self.by_witness,
            "image": f"Z/32 + (Z/2)^{self.n}" if self.ok else None,
            "witnesses": self.witnesses,
            "failures": self.failures,
        }


def validate_sequence_prefix(f: list[int], z: int) -> None:
    l = 4 * z + 2
    for a in f:
        if a % (8 * l + 2) != 2 * l + 1:
            raise BadResidue(f"{a} is not {2 * l + 1} mod {8 * l + 2}")
    seq = set(a_sequence_upto(z, max(f)))
    for a in f:
        if a not in seq:
            raise BadResidue(f"{a} is not a term of the sequence for z = {z}")
    if list(f) != sorted(set(f)):
        raise BadResidue("f must be strictly increasing")


def a_sequence_upto(z: int, bound: int) -> list[int]:
    l = 4 * z + 2
    step = 8 * l + 2
    terms: list[int] = []
    cand = 2 * l + 1
    while cand <= bound:
        if all(gcd(cand, t) == 1 for t in terms):
            terms.append(cand)
        cand += step
    return terms


def verify_structure(f: list[int], n: int, z: int = 0, cap: int = 1 << 16) -> StructureReport:
    """Check that every nontrivial class C_{f0}^b0 * prod C_{fi}^bi is Xi-distinguished.

    b0 runs over Z/32 and b1..bn over {0, 1}: squares of later generators fold
    into powers of [I], which already lie in the cyclic group of C_{f0}.
    """
    if n + 1 > len(f):
        raise ValueError("need n + 1 <= len(f)")
    if 32 * 2**n > cap:
        raise ConductorTooLarge(f"{32 * 2 ** n} classes exceed the cap {cap}")
    f = list(f[: n + 1])
    validate_sequence_prefix(f, z)
    rep = StructureReport(f, n, z)
    for mask in range(2**n):
        for b0 in range(32):
            exps = [(f"C{f[0]}", b0)] + [(f"C{f[i + 1]}", (mask >> i) & 1) for i in range(n)]
            word = WittWord.of(exps)
            rep.classes += 1
            if word.is_empty():
                continue
            rep.nontrivial += 1
            if not xi1_of(word).is_one():
                rep.by_xi1 += 1
                rep.distinguished += 1
                continue
            m = _odd_so_component(word, z)
            if m is None:
                rep.failures.append(f"{word}: xi1 = 1 and no odd component")
                continue
            k = distinguishing_k(word, m, z)
            M = word_modulus(word)
            value = Xi_eval(word, GaloisElem(M, k))
            if value.is_one():
                rep.failures.append(f"{word}: Xi trivial at sigma_{k}")
                continue
            rep.by_witness += 1
            rep.distinguished += 1
            rep.witnesses[str(word)] = k
    return rep


__all__ = [
    "ISING_XI1",
    "KernelResult",
    "StructureReport",
    "WittGenerator",
    "WittWord",
    "Xi_eval",
    "a_sequence",
    "canonical_cube_root",
    "direct_central_charge",
    "distinguishing_k",
    "generator",
    "generator_xi",
    "higher_central_charge_formula",
    "ising_gauss_sum",
    "kernel_test",
    "square_relation_exponent",
    "verify_square_relation",
    "verify_structure",
    "word_modulus",
    "word_signature",
    "word_signature_detail",
    "xi1_of",
]
