from math import gcd

import pytest
from hypothesis import given, strategies as st

from cycloverify.arith import crt, cyclotomic_poly, euler_phi, factorize, mobius, multiplicative_order, primitive_root
from cycloverify.chars import (
    CharacterError,
    all_characters,
    decompose_first_second_kind,
    kronecker_character,
    kronecker_symbol,
    make_character,
    parse_character,
    primitive_characters,
    teichmuller_character,
    trivial_character,
)


def test_factorize_and_phi():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert euler_phi(360) == 96
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert len(cyclotomic_poly(15)) == euler_phi(15) + 1


def test_crt_and_primitive_root():
    x = crt([2, 3], [5, 7])
    assert x % 5 == 2 and x % 7 == 3
    g = primitive_root(23)
    assert multiplicative_order(g, 23) == 22


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 8, 9, 12, 15, 16, 21])
def test_character_group_has_phi_elements(N):
    chars = all_characters(N)
    assert len(chars) == euler_phi(N)
    assert len({c.generator_images for c in chars}) == euler_phi(N)


@pytest.mark.parametrize("N", [5, 8, 12, 13])
def test_orthogonality(N):
    # sum over characters of chi(a) is phi(N) at a = 1 and 0 elsewhere; checked through exponents
    import cmath

    chars = all_characters(N)
    for a in range(1, N):
        if gcd(a, N) != 1:
            continue
        s = sum(c.complex_value(a) for c in chars)
        want = euler_phi(N) if a % N == 1 else 0
        assert abs(complex(s) - want) < 1e-9


def test_known_conductors():
    assert kronecker_character(-3).conductor == 3
    assert kronecker_character(-4).conductor == 4
    assert kronecker_character(8).conductor == 8
    assert kronecker_character(-15).parity == -1
    assert kronecker_character(5).parity == 1


def test_kronecker_matches_symbol():
    chi = kronecker_character(-23)
    for a in range(1, 60):
        if gcd(a, 23) == 1:
            e = chi.exponent(a)
            assert (1 if e == 0 else -1) == kronecker_symbol(-23, a)


def test_primitive_count_up_to_12():
    # number of primitive characters of conductor f is the Dirichlet convolution mu * phi
    want = 0
    for f in range(1, 13):
        want += sum(mobius(f // d) * euler_phi(d) for d in range(1, f + 1) if f % d == 0)
    assert len(primitive_characters(12)) == want


def test_primitive_of_induced():
    chi = kronecker_character(-4)
    big = chi.induce(20)
    assert big.modulus == 20
    assert not big.is_primitive
    assert big.primitive() == chi


def test_parse_roundtrip():
    chi = kronecker_character(-7)
    assert parse_character(chi.to_json()) == chi
    assert parse_character("kronecker:-7") == chi
    assert parse_character("trivial").is_trivial


def test_bad_generator_image_rejected():
    with pytest.raises((CharacterError, ValueError)):
        make_character(5, [1, 2])


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_teichmuller_character_is_odd_of_order_p_minus_1(p):
    w = teichmuller_character(p)
    assert w.order == p - 1
    assert w.parity == -1
    assert w.conductor == p


@pytest.mark.parametrize("N", [25, 75, 27, 63])
def test_first_second_kind_product(N):
    p = 5 if N % 5 == 0 else 3
    for psi in all_characters(N):
        theta, tau = decompose_first_second_kind(psi, p)
        Np = N
        while Np % p == 0:
            Np //= p
        assert (Np * p) % theta.conductor == 0
        assert tau.order in {p**k for k in range(4)}
        assert tau.conductor % p == 0 or tau.conductor == 1
        assert (theta * tau).primitive() == psi.primitive()


@given(st.integers(2, 60), st.data())
def test_inverse_inverts(N, data):
    chars = all_characters(N)
    chi = data.draw(st.sampled_from(chars))
    inv = chi.inverse()
    for a in range(1, N):
        if gcd(a, N) == 1:
            assert (chi.exponent_in(a, chi.order) + inv.exponent_in(a, chi.order)) % chi.order == 0


@given(st.integers(2, 60), st.data())
def test_multiplicative(N, data):
    chi = data.draw(st.sampled_from(all_characters(N)))
    us = [a for a in range(1, N) if gcd(a, N) == 1]
    a, b = data.draw(st.sampled_from(us)), data.draw(st.sampled_from(us))
    assert (chi.exponent(a) + chi.exponent(b) - chi.exponent(a * b % N)) % chi.order == 0


def test_trivial_mod_one():
    t = trivial_character()
    assert t.conductor == 1 and t.order == 1 and t.parity == 1
