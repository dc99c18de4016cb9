import pytest

from cycloverify.chars import all_characters, kronecker_character, primitive_characters
from cycloverify.cyclo import CycElement
from cycloverify.eulersys import (
    EulerSystemError,
    FormalEulerSystem,
    check_root_layers,
    demanded_factor,
    tilde_transform,
    verify_es_axioms_formal,
    verify_es_axioms_r1,
)

QUARTIC = next(c for c in all_characters(5) if c.order == 4)


@pytest.mark.parametrize("chi", [kronecker_character(-3), kronecker_character(-4), kronecker_character(5), QUARTIC],
                         ids=["-3", "-4", "5", "quartic"])
def test_r1_axioms(chi):
    rep = verify_es_axioms_r1(chi, 60)
    assert rep.passed, rep.details


@pytest.mark.parametrize("r", [-1, 0, 2, 3])
@pytest.mark.parametrize("chi", primitive_characters(8, parity=-1)[:4], ids=lambda c: f"{c.modulus}_{c.order}")
def test_formal_axioms(chi, r):
    assert verify_es_axioms_formal(chi, r, 80).passed


def test_demanded_factor_cases():
    chi = kronecker_character(-4)
    one = CycElement.one(1, 2)
    assert demanded_factor(chi, 2, 6, 3) == one  # l | m
    assert demanded_factor(chi, 2, 1, 2) == one  # l | N
    # chi(3) = -1: 1 - (-1) 3 = 4
    assert demanded_factor(chi, 2, 1, 3).to_fraction() == 4


def test_formal_model_steps_inside_conductor_are_trivial():
    es = FormalEulerSystem(kronecker_character(-3), 2, 30)
    assert es.corestriction_factor(1, 3) == CycElement.one(1, 2)


@pytest.mark.parametrize("r", [2, 3, -1, 0])
def test_tilde_relation(r):
    rec = tilde_transform(kronecker_character(-4), r, 5, prec=30)
    assert rec.relation_valuation >= 30


def test_tilde_is_identity_at_bad_prime():
    rec = tilde_transform(kronecker_character(-3), 2, 3)
    assert rec.terms == 0 and rec.limit == rec.truncated


def test_tilde_refuses_r1():
    with pytest.raises(EulerSystemError):
        tilde_transform(kronecker_character(-4), 1, 5)


@pytest.mark.parametrize("N, n, p", [(5, 2, 3), (4, 1, 3), (7, 2, 5), (12, 1, 5), (5, 3, 3)])
def test_root_layers(N, n, p):
    assert check_root_layers(N, n, p).passed


def test_root_layers_rejects_p_dividing_n():
    with pytest.raises(EulerSystemError):
        check_root_layers(6, 1, 3)
