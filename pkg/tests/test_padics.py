from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from cycloverify.padics import (
    PadicElement,
    PadicError,
    RamCyc,
    UnramExt,
    check_unramified_exact_sequence,
    iwasawa_log,
    iwasawa_log_scaled,
    smith_valuations,
    teichmuller,
)

PRIMES = st.sampled_from([3, 5, 7, 11])
PREC = 12


def _unit(q, p):
    return PadicElement.from_rational(q, p, PREC)


rationals = st.fractions(min_value=-500, max_value=500, max_denominator=500)


@given(rationals, rationals, PRIMES)
def test_ring_homomorphism(a, b, p):
    x, y = _unit(a, p), _unit(b, p)
    assume(a.denominator % p and b.denominator % p)
    assert (x + y).agreement(_unit(a + b, p)) >= PREC
    assert (x * y).agreement(_unit(a * b, p)) >= PREC
    assert (x - y).agreement(_unit(a - b, p)) >= PREC


@given(rationals, PRIMES)
def test_inverse(a, p):
    assume(a != 0)
    x = _unit(a, p)
    assert (x * x.inverse()).agreement(_unit(1, p)) >= PREC - 2 * abs(x.v)


def test_valuation_and_lift():
    x = PadicElement.from_rational(Fraction(50, 3), 5, 10)
    assert x.v == 2
    assert x.lift() % 1 == 0 or x.lift().denominator % 5 != 0


def test_zero_is_absorbing():
    z = PadicElement.zero(5, 10)
    assert (z * _unit(3, 5)).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_teichmuller_roots(p):
    for a in range(1, p):
        t = teichmuller(a, p, PREC)
        assert t.residue() % p == a
        assert (t ** (p - 1)).agreement(_unit(1, p)) >= PREC


def test_teichmuller_rejects_multiple_of_p():
    with pytest.raises(PadicError):
        teichmuller(10, 5)


@given(st.integers(1, 10**6), st.integers(1, 10**6), PRIMES)
def test_log_homomorphism(a, b, p):
    assume(a % p and b % p)
    x, y = _unit(a, p), _unit(b, p)
    assert (iwasawa_log(x * y) - iwasawa_log(x) - iwasawa_log(y)).agreement(PadicElement.zero(p, PREC)) >= PREC - 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_log_one_plus_p_matches_series(p):
    # log(1 + p) = sum (-1)^{k+1} p^k / k, truncated past the working precision
    want = sum(Fraction((-1) ** (k + 1) * p ** k, k) for k in range(1, 4 * PREC))
    got = iwasawa_log(_unit(1 + p, p))
    assert got.agreement(PadicElement.from_rational(want, p, PREC)) >= PREC - 1


def test_log_kills_teichmuller():
    for a in range(1, 7):
        assert iwasawa_log(teichmuller(a, 7, PREC)).is_zero()


def test_log_needs_unit():
    with pytest.raises(PadicError):
        iwasawa_log(_unit(5, 5))


# -- unramified extensions --------------------------------------------------------------

@pytest.mark.parametrize("p, f", [(3, 2), (5, 2), (3, 3), (7, 2)])
def test_unramified_basics(p, f):
    K = UnramExt.of_degree(p, f, PREC)
    assert K.f == f
    z = K.zeta()
    assert z ** K.n == K.one()
    x = K.element([2, 1] + [0] * (f - 2))
    assert x.frobenius(f) == x
    # Frobenius lifts x -> x^p mod p
    diff = x.frobenius(1, geometric=False) - x ** p
    assert all(c % p == 0 for c in diff.coords)
    assert K.one().trace() == _unit(f, p)


@pytest.mark.parametrize("p, f", [(3, 2), (5, 2)])
def test_norm_multiplicative_unramified(p, f):
    K = UnramExt.of_degree(p, f, PREC)
    x, y = K.element([2, 3]), K.element([1, 4])
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * x.inverse()) == K.one()


def test_norm_of_two_plus_three_zeta3():
    K = UnramExt(5, 3, PREC)
    assert K.element([2, 3]).norm() == _unit(7, 5)


def test_extension_equality_by_value():
    assert UnramExt(5, 3, 10) == UnramExt(5, 3, 10)
    assert UnramExt(5, 3, 10) != UnramExt(5, 3, 12)


# -- ramified tower ----------------------------------------------------------------------

@pytest.mark.parametrize("p, m", [(3, 1), (3, 2), (5, 1)])
def test_ramified_roots_and_norm(p, m):
    K = UnramExt(p, 1, PREC)
    R = RamCyc(K, m)
    z = R.z()
    assert z ** (p ** m) == R.one()
    pi = R.one() - z
    assert pi.valuation() == Fraction(1, (p - 1) * p ** (m - 1))
    # N(1 - zeta_{p^m}) = p
    assert pi.norm_to_base() == K.element([p])


def test_ramified_galois_action():
    R = RamCyc(UnramExt(5, 1, PREC), 1)
    x = R.one() + R.z() * 2
    assert x.galois(2) == R.one() + R.z(2) * 2
    assert (x * x).galois(3) == x.galois(3) * x.galois(3)


def test_ramified_log_scaled_is_additive():
    R = RamCyc(UnramExt(3, 1, PREC), 1)
    u = R.one() + R.uniformizer() ** 2
    v = R.one() - R.uniformizer() ** 3
    L1, s1 = iwasawa_log_scaled(u)
    L2, s2 = iwasawa_log_scaled(v)
    L12, s12 = iwasawa_log_scaled(u * v)
    s = max(s1, s2, s12)
    lhs = L12 * 3 ** (s - s12)
    rhs = L1 * 3 ** (s - s1) + L2 * 3 ** (s - s2)
    assert (lhs - rhs).is_zero()


# -- linear algebra ----------------------------------------------------------------------

def test_smith_valuations_diagonal_and_mixed():
    assert smith_valuations([[5, 0], [0, 25]], 5, 10) == [1, 2]
    assert sorted(smith_valuations([[25, 5], [0, 5]], 5, 10)) == [1, 2]


@pytest.mark.parametrize("p, f", [(3, 2), (5, 2), (3, 4)])
def test_unramified_exact_sequence(p, f):
    assert check_unramified_exact_sequence(p, f, 20).passed
