import cmath
import itertools
import math
from fractions import Fraction

import pytest

from witt_charge.errors import OutOfRange, RankMismatch
from witt_charge.exactnum import RootOfUnity, certified_sign
from witt_charge.so_odd import (
    AlcoveWeight,
    build_category,
    central_charge,
    enumerate_alcove,
    fs_exponent,
    fs_exponent_bounds,
    gauss_sum,
    inner_product,
    m_count,
    m_count_brute,
    omega_r,
    qdim,
    root_data,
    sqrt_of_dim,
    twist,
    two_e1,
    xi1_closed,
    zero_weight,
)


def to_complex(x):
    n = x.conductor
    return sum(float(c) * cmath.exp(2j * cmath.pi * e / n) for e, c in enumerate(x.coeffs))


def naive_alcove(r):
    """Dominant weights with (lambda + rho | theta) < n + h, straight from the definition."""
    n, h = 2 * r + 1, 2 * r - 1
    rho = [Fraction(2 * (r - j) - 1, 2) for j in range(r)]
    theta = [1] + [0] * (r - 1) if r == 1 else [1, 1] + [0] * (r - 2)
    out = []
    for c in itertools.product(range(0, 2 * n + 1), repeat=r):
        if len({x % 2 for x in c}) > 1 or any(c[i] < c[i + 1] for i in range(r - 1)):
            continue
        lam = [Fraction(x, 2) for x in c]
        if sum((lam[i] + rho[i]) * theta[i] for i in range(r)) < n + h:
            out.append(c)
    return sorted(out)


@pytest.mark.parametrize("r", range(1, 5))
def test_alcove_matches_naive(r):
    assert [w.coords2 for w in enumerate_alcove(r)] == naive_alcove(r)


def test_alcove_sizes():
    assert [len(enumerate_alcove(r)) for r in range(1, 6)] == [7, 21, 70, 245, 882]
    assert all(w.is_valid() for w in enumerate_alcove(3))


def test_root_data():
    for r in range(1, 7):
        rd = root_data(r)
        assert len(rd.positive_roots) == r * r
        assert rd.rho2 == tuple(range(2 * r - 1, 0, -2))
    assert root_data(1).highest_root == (1,)
    assert root_data(3).highest_root == (1, 1, 0)


def test_inner_products():
    r = 4
    rd = root_data(r)
    assert inner_product(omega_r(r), [2 * x for x in rd.highest_root]) == 1
    assert inner_product(rd.rho2, (2, 0, 0, 0)) == Fraction(2 * r - 1, 2)
    with pytest.raises(RankMismatch):
        inner_product((1, 1), (1, 1, 1))


def _float_twist(r, w):
    lam = [x / 2 for x in w.coords2]
    rho = [x / 2 for x in root_data(r).rho2]
    val = sum(l * (l + 2 * p) for l, p in zip(lam, rho))
    return cmath.exp(1j * math.pi / (8 * r) * 2 * val)


def _float_qdim(r, w):
    q = cmath.exp(1j * math.pi / (8 * r))

    def qint(m):
        return (q**m - q ** (-m)) / (q - 1 / q)

    lam = [x / 2 for x in w.coords2]
    rho = [x / 2 for x in root_data(r).rho2]
    out = 1
    for a in root_data(r).positive_roots:
        num = 2 * sum((l + p) * ai for l, p, ai in zip(lam, rho, a))
        den = 2 * sum(p * ai for p, ai in zip(rho, a))
        out *= qint(num) / qint(den)
    return out


@pytest.mark.parametrize("r", [1, 2, 3])
def test_twists_and_dims_against_floats(r):
    for w in enumerate_alcove(r):
        assert abs(to_complex(twist(r, w).to_cyclo()) - _float_twist(r, w)) < 1e-9
        d = qdim(r, w)
        assert abs(to_complex(d) - _float_qdim(r, w)) < 1e-7
        assert d.conj() == d
        assert certified_sign(d) == 1


def test_rank_one_dims_are_su2_level_six():
    for w in enumerate_alcove(1):
        c = w.coords2[0]
        expected = math.sin((c + 1) * math.pi / 8) / math.sin(math.pi / 8)
        assert abs(to_complex(qdim(1, w)) - expected) < 1e-12


def test_special_twists():
    for r in (3, 4, 5):
        assert twist(r, omega_r(r)) == RootOfUnity(32, 2 * r + 1)
        assert twist(r, two_e1(r)) == -RootOfUnity(4 * r, 1)
        assert twist(r, two_e1(r)).order == 4 * r
    assert twist(2, zero_weight(2)).is_one()


def test_m_count():
    assert m_count(3, 1) == 2 and m_count(3, 4) == 1 and m_count(2, 2) == 1
    for r in range(2, 9):
        for j in range(1, 2 * r - 1):
            assert m_count(r, j) == m_count_brute(r, j)
    with pytest.raises(OutOfRange):
        m_count(3, 5)


@pytest.mark.parametrize("r", range(1, 5))
def test_build_category(r):
    inv = build_category(r)
    assert sqrt_of_dim(r) ** 2 == inv.dim
    lo, hi = fs_exponent_bounds(r)
    assert inv.fs_exponent % lo == 0 and hi % inv.fs_exponent == 0
    assert inv.xi1 == xi1_closed(r)
    assert abs(to_complex(inv.dim) - sum(abs(_float_qdim(r, w)) ** 2 for w in enumerate_alcove(r))) < 1e-6 * abs(to_complex(inv.dim))


def test_rank_one_dimension():
    # D_1 = 2 / sin(pi/8)
    assert abs(to_complex(sqrt_of_dim(1)) - 2 / math.sin(math.pi / 8)) < 1e-9


def test_fs_exponents():
    assert [build_category(r).fs_exponent for r in range(1, 5)] == [32, 32, 96, 32]
    assert fs_exponent(5) == (160, True)
    assert fs_exponent(12, rank_cap=5) == (384, False)


@pytest.mark.parametrize("r", [1, 2])
def test_gauss_sums(r):
    inv = build_category(r)
    assert gauss_sum(inv, 0) == inv.dim
    N = inv.fs_exponent
    assert gauss_sum(inv, 3) == gauss_sum(inv, 3 + N)
    assert central_charge(inv, N + 1) == inv.xi1
    tau = gauss_sum(inv, 1)
    assert tau * tau.conj() == inv.dim


def test_weight_rendering():
    assert str(AlcoveWeight((2, 0))) == "(1,0)"
    assert str(AlcoveWeight((1, 1))) == "(1/2,1/2)"
