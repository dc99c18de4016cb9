from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cycloverify import kubota
from cycloverify.chars import kronecker_character, trivial_character
from cycloverify.iwasawa import GammaCharacter
from cycloverify.kubota import (
    KubotaError,
    Lp_at_negative,
    Lp_at_one,
    Lp_interpolation_check,
    Lp_log_formula,
    check_mc2_scalar,
    kummer_grid,
    stickelberger_elements,
    trivial_zero_detect,
    zp_value,
)
from cycloverify.lcomplex import bernoulli
from cycloverify.padics import PadicElement


@pytest.mark.parametrize("k, want", [(2, Fraction(1, 3)), (6, Fraction(781, 63))])
def test_worked_values_p5(k, want):
    v = Lp_at_negative(trivial_character(), 5, k)
    assert v.exact.to_fraction() == want
    assert v.value == PadicElement.from_rational(want, 5, 20)


@pytest.mark.parametrize("p, k", [(3, 2), (5, 4), (7, 6), (11, 12)])
def test_trivial_character_matches_zeta_oracle(p, k):
    # -(1 - p^{k-1}) B_k / k from the Bernoulli numbers directly
    want = -(1 - Fraction(p) ** (k - 1)) * bernoulli(k) / k
    assert Lp_at_negative(trivial_character(), p, k).exact.to_fraction() == want


@given(st.sampled_from([3, 5, 7]), st.integers(1, 30), st.integers(1, 3), st.integers(0, 1))
def test_kummer_congruence_trivial(p, k, t, a):
    # k = k' mod (p-1) p^a gives agreement mod p^{a+1}, away from k = 0 mod p-1
    if k % (p - 1) == 0:
        return
    k2 = k + t * (p - 1) * p ** a
    x = Lp_at_negative(trivial_character(), p, k, 12).value
    y = Lp_at_negative(trivial_character(), p, k2, 12).value
    assert x.agrees_with(y, a + 1)


def test_kummer_grid_quadratic():
    res = kummer_grid(3, [kronecker_character(-4), kronecker_character(5)], kmax=40)
    assert res["pairs"] > 0
    assert res["verdict"] == "pass", res["failures"][:3]


def test_zp_value_needs_embedding():
    assert zp_value(Lp_at_negative(trivial_character(), 7, 2).exact, 7, 10).v == 0


def test_trivial_zero():
    chi = kronecker_character(5)
    assert chi.exponent(11) == 0
    assert trivial_zero_detect(chi, 11, 0)
    assert not trivial_zero_detect(chi, 11, 1)
    assert not trivial_zero_detect(chi, 7, 0)
    assert not trivial_zero_detect(kronecker_character(-4), 5, 0)


@pytest.mark.parametrize("chi, p, tau, k", [
    (trivial_character(), 5, GammaCharacter.trivial(5), 2),
    (trivial_character(), 5, GammaCharacter.trivial(5), 4),
    (kronecker_character(-4), 3, GammaCharacter.trivial(3), 3),
    (trivial_character(), 3, GammaCharacter.finite(3, 1, 1), 2),
    (kronecker_character(5), 3, GammaCharacter.finite(3, 1, 2), 2),
])
def test_interpolation(chi, p, tau, k):
    rep = Lp_interpolation_check(chi, p, tau, k, n=3)
    assert rep.passed, rep.to_dict()


def test_full_digits_away_from_the_pole():
    # theta = omega^2 is nontrivial at p = 5, so h is a unit and nothing is waived
    rep = Lp_interpolation_check(trivial_character(), 5, GammaCharacter.finite(5, 1, 1), 2, n=3)
    assert rep.requested == 4 and rep.passed


@pytest.mark.parametrize("tau, k, digits", [
    (GammaCharacter.finite(3, 1, 1), 2, 3),  # n + 1 - 1/2, floored
    (GammaCharacter.finite(3, 1, 1), 4, 4),  # v_3(k - 1) = 1 restores the digit
    (GammaCharacter.trivial(3), 4, 4),
])
def test_pole_case_bound(tau, k, digits):
    rep = Lp_interpolation_check(trivial_character(), 3, tau, k, n=3)
    assert rep.requested == digits and rep.passed


def test_interpolation_detects_wrong_twist(monkeypatch):
    # negative control: drop tau from the classical side only
    monkeypatch.setattr(kubota, "tau_as_dirichlet", lambda tau: trivial_character())
    rep = Lp_interpolation_check(trivial_character(), 3, GammaCharacter.finite(3, 1, 1), 2, n=3)
    assert not rep.passed


def test_interpolation_parity_guard():
    with pytest.raises(KubotaError):
        Lp_interpolation_check(trivial_character(), 5, GammaCharacter.trivial(5), 3)


def test_stickelberger_regulariser_moves_theta():
    data = stickelberger_elements(kronecker_character(-4) * kubota.omega_power(5, 1), 5, 2)
    assert data.c > 1


def test_value_at_one_is_stable():
    res = Lp_at_one(kronecker_character(5), 3, M=3)
    assert res.stable and res.digits == 4


def test_value_at_one_rejects_odd():
    with pytest.raises(KubotaError):
        Lp_at_one(kronecker_character(-4), 5)


@pytest.mark.parametrize("D, p", [(5, 3), (12, 5), (8, 7)])
def test_log_formula_matches_limit(D, p):
    chi = kronecker_character(D)
    lim = Lp_at_one(chi, p, M=3).value
    direct = Lp_log_formula(chi, p)
    assert lim.agrees_with(direct, 3)
    assert check_mc2_scalar(chi, p, 2).passed
