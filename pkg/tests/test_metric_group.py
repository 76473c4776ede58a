import json
from fractions import Fraction

import pytest

from witt_charge.errors import Degenerate, InconsistentForm, NotOddPrime
from witt_charge.exactnum import RootOfUnity, sqrt_int, zeta
from witt_charge.metric_group import (
    MetricGroup,
    a_p_representative,
    central_charge_n,
    check_form,
    cyclic_form,
    gauss_sum_n,
    hyperbolic_2,
    is_anisotropic,
    is_nondegenerate,
    least_nonresidue,
    make_metric_group,
    pointed_invariants,
)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


def test_cyclic_three():
    g = cyclic_form(3, 1)
    assert is_nondegenerate(g) and is_anisotropic(g)
    assert gauss_sum_n(g, 1) == 1 + 2 * zeta(3)
    assert gauss_sum_n(g, 1) == sqrt_int(-3)
    assert central_charge_n(g, 1) == RootOfUnity(4, 1)
    assert gauss_sum_n(g, 0) == 3


def test_cyclic_five():
    g = cyclic_form(5, 1)
    assert gauss_sum_n(g, 1) == sqrt_int(5)
    assert is_anisotropic(g)


def test_degenerate():
    g = make_metric_group([3], [0])
    assert not is_nondegenerate(g)
    with pytest.raises(Degenerate):
        is_anisotropic(g)


def test_hyperbolic():
    g = hyperbolic_2()
    assert is_nondegenerate(g)
    assert not is_anisotropic(g)
    assert central_charge_n(g, 1).is_one()


def test_semion():
    g = make_metric_group([2], [Fraction(1, 4)])
    assert pointed_invariants(g).xi1 == RootOfUnity(8, 1)


def test_inconsistent_form():
    with pytest.raises(InconsistentForm):
        make_metric_group([3], [Fraction(1, 2)])


@pytest.mark.parametrize("p", PRIMES)
def test_a_p(p):
    inv = a_p_representative(p)
    assert inv.xi1 == RootOfUnity(2, 1)
    assert inv.sqrt_dim == p
    assert is_anisotropic(inv.group)
    assert gauss_sum_n(inv.group, 1) == -p


def test_a5_form():
    assert least_nonresidue(5) == 2
    g = a_p_representative(5).group
    assert g.q((0, 1)) == RootOfUnity(5, -2)


def test_not_odd_prime():
    for p in (2, 9, 1):
        with pytest.raises(NotOddPrime):
            a_p_representative(p)


EXAMPLES = [
    cyclic_form(3, 1),
    cyclic_form(5, 2),
    cyclic_form(7, 1),
    cyclic_form(4, 1, 8),
    cyclic_form(8, 3, 16),
    hyperbolic_2(),
    make_metric_group([2], [Fraction(1, 4)]),
    a_p_representative(3).group,
    a_p_representative(5).group,
    make_metric_group([3, 3], [Fraction(1, 3), Fraction(2, 3)]),
]


@pytest.mark.parametrize("g", EXAMPLES)
def test_modulus_law_and_eighth_root(g):
    assert is_nondegenerate(g)
    tau = gauss_sum_n(g, 1)
    assert tau * tau.conj() == g.size
    assert central_charge_n(g, 1) ** 8 == RootOfUnity.one()


def test_direct_sum_multiplicative():
    g, h = cyclic_form(3, 1), cyclic_form(5, 2)
    gh = g.direct_sum(h)
    for n in range(0, 8):
        assert gauss_sum_n(gh, n) == gauss_sum_n(g, n) * gauss_sum_n(h, n)


def test_json_roundtrip():
    g = a_p_representative(3).group
    data = json.loads(json.dumps(g.to_json()))
    assert MetricGroup.from_json(data) == g
    assert "0,1" in data["q"]


def test_check_form_rejects_non_quadratic():
    z = [RootOfUnity(5, e) for e in (0, 1, 3, 3, 1)]
    bad = MetricGroup((5,), {(x,): z[x] for x in range(5)})
    with pytest.raises(InconsistentForm):
        check_form(bad)
