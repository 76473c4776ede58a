"""Acceptance criteria, each checked by exact equality of canonical forms."""

import random
import time
from fractions import Fraction
from math import gcd, lcm

from witt_charge.exactnum import (
    CycloElem,
    GaloisElem,
    RootOfUnity,
    certified_sign,
    galois_apply,
    sin_cyclo,
    sqrt_int,
)
from witt_charge.metric_group import (
    a_p_representative,
    cyclic_form,
    gauss_sum_n,
    is_nondegenerate,
)
from witt_charge.signatures import dim_root_signature, jacobi, signature_of, sine_image_sign
from witt_charge.so_odd import (
    build_category,
    central_charge,
    m_count,
    m_count_brute,
    omega_r,
    sqrt_of_dim,
    twist,
    two_e1,
)
from witt_charge.verify import signature_grid_points
from witt_charge.witt import (
    WittWord,
    Xi_eval,
    a_sequence,
    direct_central_charge,
    generator,
    kernel_test,
    verify_structure,
    word_signature,
)


def test_01_dimension_closed_form(record):
    t = time.perf_counter()
    bad = []
    for r in range(1, 5):
        if sqrt_of_dim(r) ** 2 != build_category(r).dim:
            bad.append(f"D_{r}^2")
    for r in range(2, 9):
        for j in range(1, 2 * r - 1):
            if m_count(r, j) != m_count_brute(r, j):
                bad.append(f"m_{r}({j})")
    record(1, not bad, f"D_r^2 = sum d^2 for r<=4, m_r(j) brute for r<=8 ({time.perf_counter() - t:.1f}s) {bad}")
    assert not bad


def test_02_first_central_charge(record):
    got = {r: central_charge(build_category(r), 1) for r in range(1, 5)}
    ok = all(got[r] == RootOfUnity(32, (2 * r + 1) ** 2 % 32) for r in got)
    record(2, ok, "xi_1(C_r) = zeta_32^((2r+1)^2) for r<=4: " + ", ".join(str(v) for v in got.values()))
    assert ok


def test_03_fs_exponent_bounds(record):
    bad = []
    for r in range(1, 6):
        N = build_category(r).fs_exponent
        if N % lcm(32, 4 * r) or (32 * r) % N:
            bad.append(f"N_{r}={N}")
        if r >= 3:
            if twist(r, omega_r(r)).order != 32:
                bad.append(f"theta(omega_{r})")
            if twist(r, two_e1(r)).order != 4 * r:
                bad.append(f"theta(2e1) at r={r}")
    record(3, not bad, f"lcm(32,4r) | N_r | 32r and special twist orders for r<=5 {bad}")
    assert not bad


def test_04_higher_central_charges(record):
    bad = []
    count = 0
    for r in (1, 2):
        g = generator(f"C{r}")
        N = build_category(r).fs_exponent
        xi1 = g.xi1
        gamma = xi1 ** 11
        for n in range(1, N):
            if gcd(n, N) != 1:
                continue
            sigma = GaloisElem(N, n).inverse()  # sigma^-1(zeta_N) = zeta_N^n
            s = signature_of(sqrt_of_dim(r), GaloisElem(16 * r, sigma.k))
            gn = gamma ** n
            formula = sigma(xi1) * gn / (sigma * sigma)(gn)
            if s < 0:
                formula = -formula
            count += 1
            if direct_central_charge(g, n) != formula:
                bad.append((r, n))
    record(4, not bad, f"xi_n formula with gamma = xi_1^11, {count} pairs {bad}")
    assert not bad


def test_05_sqrt_galois_action(record):
    bad = []
    count = 0
    for r in range(1, 22, 2):
        s = sqrt_int(r)
        for k in range(1, 4 * r, 4):
            if gcd(k, 4 * r) != 1:
                continue
            count += 1
            if galois_apply(GaloisElem(4 * r, k), s) != s * jacobi(k, r):
                bad.append((r, k))
    record(5, not bad, f"sigma_k(sqrt r) = (k/r) sqrt r, {count} pairs {bad}")
    assert not bad


def test_06_signature_grid(record):
    bad = []
    numeric = 0
    for l, w, x, a, k in signature_grid_points():
        if dim_root_signature(a, k) != (-1) ** x:
            bad.append(("exact", a, k))
        if a <= 13:
            numeric += 1
            if signature_of(sqrt_of_dim(a), GaloisElem(16 * a, k)) != (-1) ** x:
                bad.append(("numeric", a, k))
    record(6, not bad, f"ss(sigma_k) = (-1)^x on 32 grid points, {numeric} numeric cross-checks {bad}")
    assert not bad


def test_07_sine_rule(record):
    bad = []
    count = 0
    for m in range(1, 25):
        L = lcm(2 * m, 4)
        for j in range(1, m):
            s = sin_cyclo(j, m)
            for k in range(1, 4 * m, 4):
                if gcd(k, 2 * m) != 1:
                    continue
                count += 1
                if sine_image_sign(j, m, k) != certified_sign(galois_apply(GaloisElem(L, k), s)):
                    bad.append((j, m, k))
    record(7, not bad, f"sine sign rule vs certified sign, {count} cases {bad[:5]}")
    assert not bad


def test_08_structure_depth_three(record):
    t = time.perf_counter()
    rep = verify_structure([5, 23, 41, 59], 3, z=0)
    ok = rep.ok and rep.classes == 256 and rep.distinguished == 255
    record(8, ok, f"{rep.distinguished}/255 nontrivial classes distinguished "
                  f"({rep.by_xi1} by xi_1, {rep.by_witness} by witness, {time.perf_counter() - t:.1f}s)")
    assert ok


def test_09_pointed_kernel(record):
    bad = []
    primes = (3, 5, 7)
    for p in primes:
        inv = a_p_representative(p)
        if inv.xi1 != RootOfUnity(2, 1):
            bad.append(f"xi1(A_{p})")
        M = generator(f"Ap{p}").modulus
        if any(generator(f"Ap{p}").signature(k)[0] != 1 for k in range(1, M) if gcd(k, M) == 1):
            bad.append(f"signature(A_{p})")
        if kernel_test(WittWord.of({f"Ap{p}": 1})).in_kernel:
            bad.append(f"A_{p} in kernel")
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if not kernel_test(WittWord.of({f"Ap{p}": 1, f"Ap{q}": 1})).in_kernel:
                bad.append(f"A_{p}A_{q}")
    record(9, not bad, f"A_p: xi_1 = -1, trivial signature, pairs in kernel {bad}")
    assert not bad


def test_10_sequence(record):
    seq = a_sequence(0, 11)
    ok = seq == [5, 23, 41, 59, 77, 113, 131, 149, 167, 221, 239]
    record(10, ok, f"a_0 = {seq}")
    assert ok


# -- criterion 11: randomized properties -----------------------------------

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24]
FIELD_MODULUS = lcm(*CONDUCTORS)
FIELD_UNITS = [k for k in range(1, FIELD_MODULUS) if gcd(k, FIELD_MODULUS) == 1]
LABELS = ["C1", "C2", "C3", "C4", "I", "Ap3", "Ap5", "Ap7"]


def _rand_elem(rng: random.Random) -> CycloElem:
    n = rng.choice(CONDUCTORS)
    terms = {rng.randrange(n): Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(rng.randint(0, 4))}
    return CycloElem.from_exponents(n, terms)


def _rand_word(rng: random.Random) -> WittWord:
    return WittWord.of([(rng.choice(LABELS), rng.randint(-5, 5)) for _ in range(rng.randint(0, 4))])


def _rand_metric_group(rng: random.Random):
    parts = []
    for _ in range(rng.randint(1, 2)):
        m = rng.choice([2, 3, 4, 5, 7, 8, 9, 11])
        if m % 2:
            a = rng.choice([a for a in range(1, m) if gcd(a, m) == 1])
            parts.append(cyclic_form(m, a))
        else:
            a = rng.choice([a for a in range(1, 2 * m, 2)])
            parts.append(cyclic_form(m, a, 2 * m))
    g = parts[0]
    for h in parts[1:]:
        g = g.direct_sum(h)
    return g


def test_11_property_suite(record):
    rng = random.Random(20261016)
    M = lcm(*(generator(label).modulus for label in LABELS))
    units = [k for k in range(1, M) if gcd(k, M) == 1]
    failures = []
    counts = dict.fromkeys(("field", "galois", "gauss", "xi", "ss"), 0)
    for case in range(1000):
        kind = ("field", "galois", "gauss", "xi", "ss")[case % 5]
        counts[kind] += 1
        if kind == "field":
            a, b, c = (_rand_elem(rng) for _ in range(3))
            ok = (a + b) + c == a + (b + c) and a * (b + c) == a * b + a * c and a * b == b * a
            if ok and not b.is_zero():
                ok = (a / b) * b == a and b * b.invert() == 1
        elif kind == "galois":
            a, b = _rand_elem(rng), _rand_elem(rng)
            s = GaloisElem(FIELD_MODULUS, rng.choice(FIELD_UNITS))
            t = GaloisElem(FIELD_MODULUS, rng.choice(FIELD_UNITS))
            ok = (galois_apply(s, a * b) == galois_apply(s, a) * galois_apply(s, b)
                  and galois_apply(s, a + b) == galois_apply(s, a) + galois_apply(s, b)
                  and galois_apply(s * t, a) == galois_apply(s, galois_apply(t, a)))
        elif kind == "gauss":
            g = _rand_metric_group(rng)
            tau = gauss_sum_n(g, 1)
            ok = is_nondegenerate(g) and tau * tau.conj() == g.size
        elif kind == "xi":
            w1, w2 = _rand_word(rng), _rand_word(rng)
            sigma = GaloisElem(M, rng.choice(units))
            ok = Xi_eval(w1 * w2, sigma) == Xi_eval(w1, sigma) * Xi_eval(w2, sigma)
        else:
            w1, w2 = _rand_word(rng), _rand_word(rng)
            k = rng.choice(units)
            ok = word_signature(w1 * w2, k) == word_signature(w1, k) * word_signature(w2, k)
        if not ok:
            failures.append((case, kind))
    record(11, not failures, f"1000 randomized cases {counts}, {len(failures)} failures")
    assert not failures
