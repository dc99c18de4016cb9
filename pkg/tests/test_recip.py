import pytest
from hypothesis import given, strategies as st

from cycloverify.chars import all_characters, kronecker_character
from cycloverify.padics import RamCyc, UnramExt
from cycloverify.recip import (
    ColemanSeries,
    ReciprocityError,
    apply_one_minus,
    check_y_padic,
    d_operator,
    epsilon_generator_check,
    geometric_inverse,
    phi_operator,
    verify_indexcomp,
)

BASE = UnramExt(3, 4, 12)  # f = 2 over Q_3


@st.composite
def coleman(draw):
    n = draw(st.integers(1, 4))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(0, 12))
        c = draw(st.lists(st.integers(0, 3 ** 12 - 1), min_size=2, max_size=2))
        terms[e] = BASE.element(c)
    return ColemanSeries(BASE, terms)


@given(coleman(), st.integers(2, 4))
def test_geometric_inverse_inverts(f, r):
    assert apply_one_minus(geometric_inverse(f, r), r) == f


@given(coleman())
def test_d_phi_commutation(f):
    # D phi = p phi D
    assert d_operator(phi_operator(f)) == phi_operator(d_operator(f)).scale(3)


@given(coleman())
def test_evaluation_matches_t_expansion(f):
    ring = RamCyc(BASE, 1)
    t = ring.z() - ring.one()
    coeffs = f.coefficients(max(f.terms, default=0))
    acc = ring.element([0])
    for c in reversed(coeffs):
        acc = acc * t + ring.element([c])
    assert acc == f.evaluate(ring)


def test_frobenius_order():
    x = BASE.element([1, 2])
    f = ColemanSeries.monomial(x)
    twice = phi_operator(phi_operator(f))
    assert twice.terms[9] == x


def test_geometric_inverse_needs_r_at_least_two():
    with pytest.raises(ReciprocityError):
        geometric_inverse(ColemanSeries.monomial(BASE.one()), 1)


QUARTIC = next(c for c in all_characters(5) if c.order == 4)


@pytest.mark.parametrize("chi, p", [
    (kronecker_character(5), 3), (kronecker_character(-4), 3), (QUARTIC, 3),
    (kronecker_character(-3), 3), (kronecker_character(12), 5), (kronecker_character(-20), 5),
])
@pytest.mark.parametrize("r", [2, 3])
def test_index_formula(chi, p, r):
    rep = verify_indexcomp(chi, r, p)
    assert rep.passed, rep.details["values"]


def test_direct_variant_off_by_parity():
    odd = verify_indexcomp(kronecker_character(-4), 2, 3).details["variants"]
    even = verify_indexcomp(kronecker_character(5), 2, 3).details["variants"]
    assert odd["arithmetic/direct"] is False
    assert even["arithmetic/direct"] is True


def test_geometric_frobenius_fails_for_complex_unramified():
    v = verify_indexcomp(QUARTIC, 2, 3).details["variants"]
    assert v["arithmetic/inverse"] and not v["geometric/inverse"]


@pytest.mark.parametrize("chi, p, r", [(kronecker_character(5), 3, 2), (kronecker_character(-4), 5, 3)])
def test_epsilon_generator(chi, p, r):
    assert epsilon_generator_check(chi, r, p, 1).passed


@pytest.mark.parametrize("chi, p, r", [(kronecker_character(-3), 3, 2), (kronecker_character(-20), 5, 3)])
def test_y_series_route(chi, p, r):
    assert check_y_padic(chi, r, p).passed


def test_y_series_needs_ramification():
    with pytest.raises(ReciprocityError):
        check_y_padic(kronecker_character(5), 2, 3)
