import pytest
from hypothesis import given, strategies as st

from cycloverify.iwasawa import (
    GammaCharacter,
    GroupRingElement,
    IwasawaError,
    IwasawaFraction,
    IwasawaSeries,
    PoleError,
    _gamma_logs,
    augment,
    evaluate_character,
    gamma_log,
    in_power_of_maximal_ideal,
    kernel_generator,
    project_to_group_ring,
    tw,
    weierstrass_data,
)
from cycloverify.padics import PrecisionError

P = 5
PREC = 8
D = 24


@st.composite
def series(draw, p=P, prec=PREC, degree=D):
    c = draw(st.lists(st.integers(0, p ** prec - 1), min_size=degree + 1, max_size=degree + 1))
    return IwasawaSeries(p, c, prec)


@given(series(), series(), series())
def test_series_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(series())
def test_series_inverse(f):
    if not f.is_unit():
        with pytest.raises(PoleError):
            f.inverse()
        return
    one = IwasawaSeries.from_poly(P, [1], PREC, D)
    assert f * f.inverse() == one


@given(series(), series(), st.integers(1, 50))
def test_evaluation_is_ring_map(f, g, k):
    x = P * k
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x)
    assert (f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x)


def test_evaluate_rejects_unit_point():
    with pytest.raises(IwasawaError):
        IwasawaSeries(P, [1, 1], PREC).evaluate(2)


@given(series(), st.integers(-4, 4), st.integers(-4, 4))
def test_twist_composes(f, i, j):
    a = GammaCharacter.cyclotomic(P, i, PREC)
    b = GammaCharacter.cyclotomic(P, j, PREC)
    assert tw(a, tw(b, f)) == tw(a * b, f)


@given(series(), st.integers(-3, 3), st.integers(-3, 3))
def test_twist_shifts_evaluation(f, i, j):
    tau = GammaCharacter.cyclotomic(P, i, PREC)
    chi = GammaCharacter.cyclotomic(P, j, PREC)
    lhs = evaluate_character(chi, tw(tau, f))
    rhs = evaluate_character(tau * chi, f)
    assert lhs.agrees_with(rhs, min(lhs.prec, rhs.prec))


def test_finite_twist_needs_coefficients():
    with pytest.raises(IwasawaError):
        tw(GammaCharacter.finite(P, 1), IwasawaSeries(P, [1, 1], PREC))


def test_augmentation():
    f = IwasawaSeries(P, [7, 3, 2], PREC)
    assert augment(f).residue() == 7


@pytest.mark.parametrize("p, n", [(3, 3), (5, 2), (7, 2)])
def test_gamma_log_digitwise_matches_table(p, n):
    table = _gamma_logs(p, n)
    assert all(gamma_log(x, p, n) == ell for x, ell in table.items())


def test_gamma_character_level():
    assert GammaCharacter.finite(5, 2, 5).level == 1
    assert GammaCharacter.finite(5, 2, 1).level == 2
    assert GammaCharacter.trivial(5).level == 0


@pytest.mark.parametrize("n", [1, 2])
def test_kernel_generator_vanishes_on_finite_characters(n):
    w = kernel_generator(3, n, PREC, 3 ** n + 4)
    for k in range(n + 1):
        for a in range(3 ** k):
            tau = GammaCharacter.finite(3, k, a)
            assert evaluate_character(tau, w).is_zero()


def test_fraction_pole():
    T = IwasawaSeries(P, [0, 1], PREC)
    frac = IwasawaFraction(IwasawaSeries(P, [1], PREC), T)
    with pytest.raises(PoleError):
        evaluate_character(GammaCharacter.trivial(P), frac)


@given(st.lists(st.integers(0, 3 ** 6), min_size=9, max_size=9),
       st.lists(st.integers(0, 3 ** 6), min_size=9, max_size=9),
       st.integers(0, 8))
def test_group_ring_evaluation_is_multiplicative(u, v, a):
    x = GroupRingElement(3, 2, tuple(u), 6)
    y = GroupRingElement(3, 2, tuple(v), 6)
    tau = GammaCharacter.finite(3, 2, a)
    assert (x * y).evaluate(tau) == x.evaluate(tau) * y.evaluate(tau)


@given(st.lists(st.integers(0, 3 ** 6), min_size=9, max_size=9))
def test_group_ring_projection_commutes_with_evaluation(u):
    x = GroupRingElement(3, 2, tuple(u), 6)
    tau = GammaCharacter.finite(3, 1, 1)
    assert x.project(1).evaluate(tau) == x.evaluate(tau)


def test_group_ring_series_roundtrip():
    x = GroupRingElement(3, 2, tuple(range(1, 10)), 6)
    f = x.to_series(D=3 ** 2 * 4 - 1)
    back = project_to_group_ring(f, 2)
    assert back == x


def test_projection_needs_enough_terms():
    with pytest.raises(PrecisionError):
        project_to_group_ring(IwasawaSeries(3, [1, 2], 6), 2)


def test_maximal_ideal_membership():
    assert in_power_of_maximal_ideal([0, 0, 1], 3, 2)
    assert in_power_of_maximal_ideal([9, 3, 1], 3, 2)
    assert not in_power_of_maximal_ideal([3, 1], 3, 2)


def test_weierstrass_recovers_mu_lambda():
    p, prec = 3, 10
    dist = IwasawaSeries.from_poly(p, [3, 6, 1], prec, 20)  # T^2 + 6T + 3
    unit = IwasawaSeries.from_poly(p, [2, 1, 4], prec, 20)
    f = (dist * unit) * 9
    wd = weierstrass_data(f)
    assert (wd.mu, wd.lam) == (2, 2)
    assert wd.status == "pass"
    assert wd.distinguished[:3] == tuple(c % 3 ** (prec - 2) for c in (3, 6, 1))


def test_series_json_shape():
    js = IwasawaSeries(5, [1, 2], 4).to_json()
    assert js["gamma0_image"] == "6" and js["coefficients"] == ["1", "2"]
