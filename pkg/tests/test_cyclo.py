from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cycloverify.arith import euler_phi
from cycloverify.chars import all_characters, kronecker_character, primitive_characters
from cycloverify.cyclo import (
    CycElement,
    CyclotomicError,
    character_value,
    check_norm_relation,
    cyclotomic_unit,
    gauss_sum,
    norm_relation_grid,
    projector,
    zeta,
)

LEVELS = [3, 4, 5, 7, 8, 9, 12, 15]


@st.composite
def elements(draw, level=None):
    N = level or draw(st.sampled_from(LEVELS))
    coords = draw(st.lists(st.integers(-9, 9), min_size=euler_phi(N), max_size=euler_phi(N)))
    den = draw(st.integers(1, 6))
    return CycElement(N, 1, coords, den)


@given(st.data())
def test_ring_axioms(data):
    N = data.draw(st.sampled_from(LEVELS))
    a, b, c = (data.draw(elements(N)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == CycElement.zero(N)


@given(st.data())
def test_inverse(data):
    a = data.draw(elements())
    if a.is_zero():
        return
    assert a * a.inverse() == CycElement.one(a.level)


@given(st.data())
def test_galois_is_ring_map(data):
    N = data.draw(st.sampled_from(LEVELS))
    a, b = data.draw(elements(N)), data.draw(elements(N))
    k = data.draw(st.sampled_from([k for k in range(1, N) if gcd(k, N) == 1]))
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@given(st.data())
def test_norm_multiplicative(data):
    N = data.draw(st.sampled_from(LEVELS))
    a, b = data.draw(elements(N)), data.draw(elements(N))
    assert (a * b).absolute_norm() == a.absolute_norm() * b.absolute_norm()


@given(st.data())
def test_complex_embedding_is_homomorphism(data):
    N = data.draw(st.sampled_from(LEVELS))
    a, b = data.draw(elements(N)), data.draw(elements(N))
    assert abs(complex((a * b).to_complex()) - complex(a.to_complex()) * complex(b.to_complex())) < 1e-8


def test_raise_and_descend_roundtrip():
    x = zeta(6) + Fraction(1, 3)
    up = x.raise_level(30)
    assert up.descend(6) == x


def test_json_roundtrip():
    x = zeta(12, 5) * Fraction(7, 4) - 2
    assert CycElement.from_json(x.to_json()) == x


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_norm_of_one_minus_zeta_p(p):
    assert (CycElement.one(p) - zeta(p)).absolute_norm() == p


@pytest.mark.parametrize("m, unit", [(6, True), (9, False), (10, True), (12, True), (16, False)])
def test_cyclotomic_unit_certificate(m, unit):
    _, cert = cyclotomic_unit(m)
    assert cert["is_unit"] is unit


@pytest.mark.parametrize("chi", primitive_characters(13), ids=lambda c: f"{c.modulus}_{c.order}")
def test_gauss_sum_product(chi):
    # tau(chi) tau(chi^-1) = chi(-1) N
    if chi.modulus == 1:
        return
    prod = gauss_sum(chi) * gauss_sum(chi.inverse())
    assert prod.is_rational()
    assert prod.to_fraction() == chi.parity * chi.modulus


def test_gauss_sum_quadratic_is_sqrt():
    t = gauss_sum(kronecker_character(-3))
    assert (t * t).to_fraction() == -3


def test_gauss_sum_needs_primitive():
    with pytest.raises(CyclotomicError):
        gauss_sum(kronecker_character(-4).induce(12))


@pytest.mark.parametrize("N", [5, 7, 12])
def test_projector_idempotent_and_orthogonal(N):
    x = zeta(N) + 2 * zeta(N, 2)
    chars = all_characters(N)
    for psi in chars:
        e = projector(psi, x)
        assert projector(psi, e) == e
        for phi in chars:
            if phi != psi:
                assert projector(phi, e).is_zero()


@pytest.mark.parametrize("N", [5, 8, 13])
def test_projector_eigenvalue(N):
    # sigma_a p_psi(x) = psi(a)^{-1} p_psi(x)
    a = 3
    for psi in all_characters(N):
        e = projector(psi, zeta(N))
        scale = character_value(psi.inverse(), a, 1, e.coeff_order).promote(e.level, e.coeff_order)
        assert e.galois(a) == e * scale


def test_projector_gives_gauss_sum():
    chi = kronecker_character(-7)
    e = projector(chi.inverse(), zeta(7))
    assert e * euler_phi(7) == gauss_sum(chi.inverse()).promote(7, e.coeff_order)


@pytest.mark.parametrize("m, l, case", [(1, 3, "m=1"), (9, 3, "l|m"), (4, 5, "l∤m"), (10, 3, "l∤m")])
def test_norm_relation_cases(m, l, case):
    r = check_norm_relation(m, l)
    assert r["case"] == case
    assert r["pass"]


def test_norm_relation_grid_small():
    grid = norm_relation_grid(60)
    assert grid and all(g["pass"] for g in grid)


def test_norm_relation_rejects_composite():
    with pytest.raises(CyclotomicError):
        check_norm_relation(3, 4)
