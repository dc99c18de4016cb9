"""Complex-analytic layer against independent oracles (mpmath, recurrences, tables)."""

from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, strategies as st

from cycloverify.chars import kronecker_character, primitive_characters, trivial_character
from cycloverify.lcomplex import (
    PoleError,
    bernoulli,
    bernoulli_poly,
    check_class_number_formula,
    check_fe_ratio,
    check_hurwitz_fe,
    check_li_identity,
    dirichlet_L,
    dirichlet_L_series,
    gen_bernoulli,
    hurwitz_zeta,
    polylog,
    published_relative_class_number,
    relative_class_number,
)


@pytest.fixture(autouse=True)
def _mp_prec():
    with mpmath.workprec(160):
        yield


def _bernoulli_oracle(n):
    # sum_{j<=n} C(n+1, j) B_j = 0, B_0 = 1
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B


def test_bernoulli_recurrence():
    B = _bernoulli_oracle(40)
    assert [bernoulli(k) for k in range(41)] == B


def test_b12_value():
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("k", [2, 4, 6, 10])
def test_bernoulli_vs_mpmath(k):
    assert float(bernoulli(k)) == pytest.approx(float(mpmath.bernoulli(k)), rel=1e-15)


@given(st.integers(1, 12), st.fractions(min_value=-3, max_value=3, max_denominator=20))
def test_bernoulli_poly_difference(k, x):
    # B_k(x + 1) - B_k(x) = k x^{k-1}
    assert bernoulli_poly(k, x + 1) - bernoulli_poly(k, x) == k * x ** (k - 1)


def test_gen_bernoulli_trivial_k1_is_plus_half():
    assert gen_bernoulli(1, trivial_character()).value.to_fraction() == Fraction(1, 2)


@pytest.mark.parametrize("D, h, w", [(-3, 1, 6), (-4, 1, 4), (-7, 1, 2), (-23, 3, 2), (-47, 5, 2), (-71, 7, 2)])
def test_b1_class_number(D, h, w):
    # h(D) = -(w/2) B_{1, chi_D}
    B1 = gen_bernoulli(1, kronecker_character(D)).value.to_fraction()
    assert -Fraction(w, 2) * B1 == h


def test_gen_bernoulli_parity_vanishes():
    chi = kronecker_character(-4)
    assert gen_bernoulli(2, chi).is_zero()
    assert not gen_bernoulli(3, chi).is_zero()


@pytest.mark.parametrize("s", [2, 3, mpmath.mpf("2.5"), -1, -2, mpmath.mpc(0.5, 3)])
@pytest.mark.parametrize("c, N", [(1, 1), (1, 3), (2, 5), (5, 6)])
def test_hurwitz_vs_mpmath(s, c, N):
    got = hurwitz_zeta(s, c, N, 128)
    want = mpmath.mpf(N) ** (-s) * mpmath.zeta(s, mpmath.mpf(c) / N)
    assert abs(got - want) < mpmath.mpf(2) ** -100 * (1 + abs(want))


def test_hurwitz_pole():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 1, 3)


@pytest.mark.parametrize("s", [2, 3, -1, 0])
@pytest.mark.parametrize("c, N", [(1, 3), (1, 4), (2, 5), (1, 2)])
def test_polylog_vs_mpmath(s, c, N):
    z = mpmath.expjpi(mpmath.mpf(2 * c) / N)
    assert abs(polylog(s, (c, N), 128) - mpmath.polylog(s, z)) < 1e-25


def test_classical_L_values():
    assert abs(dirichlet_L(kronecker_character(-4), 1).value - mpmath.pi / 4) < 1e-30
    assert abs(dirichlet_L(kronecker_character(-3), 1).value - mpmath.pi / (3 * mpmath.sqrt(3))) < 1e-30
    assert abs(dirichlet_L(kronecker_character(5), 1).value
               - 2 * mpmath.log((1 + mpmath.sqrt(5)) / 2) / mpmath.sqrt(5)) < 1e-30
    assert abs(dirichlet_L(trivial_character(), 2).value - mpmath.pi ** 2 / 6) < 1e-30


def test_zeta_at_zero_and_derivative():
    t = trivial_character()
    assert dirichlet_L(t, 0).order == 0
    assert dirichlet_L(t, 0).value == pytest.approx(-0.5)
    lead = dirichlet_L(t, -2, 128)
    assert lead.order == 1
    assert abs(lead.value - mpmath.zeta(-2, derivative=1)) < 1e-30


def test_L_pole_and_non_primitive():
    with pytest.raises(PoleError):
        dirichlet_L(trivial_character(), 1)
    with pytest.raises(ValueError):
        dirichlet_L(kronecker_character(-4).induce(12), 2)


def test_L_series_matches_leading_term():
    chi = kronecker_character(-7)
    assert abs(dirichlet_L_series(chi, 3) - dirichlet_L(chi, 3).value) < 1e-30


def test_hurwitz_fe_reports_pass():
    assert check_hurwitz_fe(2, 7, 3).passed
    assert check_hurwitz_fe(1, 5, -2).passed


def test_li_identity_reports_pass():
    assert check_li_identity(kronecker_character(-4), 1).passed
    assert check_li_identity(kronecker_character(5), 2).passed


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
def test_relative_class_numbers_match_table(p):
    assert relative_class_number(p) == published_relative_class_number(p)


def test_class_number_formula_q_i():
    assert check_class_number_formula(4).passed


def test_fe_ratio_even_case():
    assert check_fe_ratio(kronecker_character(5), 2).passed


@pytest.mark.parametrize("chi, r", [(kronecker_character(5), 0), (kronecker_character(-4), -1), (trivial_character(), -4)])
def test_parity_zero_derivative_vs_central_difference(chi, r):
    lead = dirichlet_L(chi, r, 128)
    assert lead.order == 1
    h = mpmath.mpf(2) ** -40
    cd = (dirichlet_L_series(chi, r + h, 160) - dirichlet_L_series(chi, r - h, 160)) / (2 * h)
    assert abs(lead.value - cd) < mpmath.mpf(2) ** -70
