"""Complex side: Bernoulli numbers, Hurwitz zeta, polylogarithms, Dirichlet L.

Numerics run on mpmath at ``prec + GUARD_BITS`` and are validated by
precision doubling rather than interval bounds.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, gcd

import mpmath

from .arith import is_prime, units
from .chars import (CharacterError, DirichletCharacter, all_characters,
                    teichmuller_character)
from .cyclo import CycElement, gauss_sum
from .report import FAIL, PASS, VerificationReport

GUARD_BITS = 16
MIN_PREC = 64


class PoleError(ArithmeticError):
    pass


# -- Bernoulli numbers ----------------------------------------------------------

_bern_lock = threading.Lock()
_bern_even: list[Fraction] = [Fraction(1)]  # _bern_even[n] = B_{2n}


def _extend_even_bernoulli(n: int) -> None:
    """Fill B_0, B_2, ..., B_{2n} from tangent numbers (integer recurrence)."""
    T = [0] * (n + 1)
    if n >= 1:
        T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    table = [Fraction(1)]
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        four = 4 ** k
        table.append(Fraction(sign * 2 * k * T[k], four * (four - 1)))
    _bern_even[:] = table


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    n = k // 2
    if n >= len(_bern_even):
        with _bern_lock:
            if n >= len(_bern_even):
                _extend_even_bernoulli(max(n, 2 * len(_bern_even)))
    return _bern_even[n]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    total = Fraction(0)
    xp = Fraction(1)
    for j in range(k, -1, -1):  # x^{k-j} grows as j falls
        b = bernoulli(j)
        if b:
            total += comb(k, j) * b * xp
        xp *= x
    return total


@dataclass(frozen=True)
class GenBernoulli:
    """B_{k,chi} stored in Q(zeta_d), d the order of chi."""

    k: int
    chi: DirichletCharacter
    value: CycElement

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def to_complex(self, embedding: int = 1):
        return self.value.to_complex(embedding)


@lru_cache(maxsize=4096)
def gen_bernoulli(k: int, chi: DirichletCharacter) -> GenBernoulli:
    """B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f) for the primitive chi mod f.

    At k = 1 and trivial chi this gives B_1(1) = +1/2, the value matching
    L(1, 0) = -1/2.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    chi = chi.primitive()
    f, d = chi.modulus, chi.order
    if k > 0 and not chi.is_trivial and (1 if k % 2 == 0 else -1) != chi.parity:
        return GenBernoulli(k, chi, CycElement.zero(d))
    buckets = [Fraction(0)] * d
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is not None:
            buckets[e] += bernoulli_poly(k, Fraction(a, f))
    value = CycElement.zero(d)
    for e, c in enumerate(buckets):
        if c:
            value = value + CycElement.root_of_unity(d, e) * c
    return GenBernoulli(k, chi, value * Fraction(f) ** (k - 1))


# -- Hurwitz zeta -----------------------------------------------------------------

def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _em_params(s, bits: int) -> tuple[int, int]:
    size = int(abs(mpmath.mpc(s))) + 1
    J = bits // 5 + size + 5
    return J + size, J


def _hurwitz_raw(s, a, derivative: bool = False):
    """zeta(s, a) (or d/ds) by Euler-Maclaurin at the current mpmath precision."""
    s = mpmath.mpmathify(s)
    a = mpmath.mpf(a)
    M, J = _em_params(s, mpmath.mp.prec)
    X = M + a
    logX = mpmath.log(X)
    if derivative:
        total = -mpmath.fsum(mpmath.log(n + a) * (n + a) ** (-s) for n in range(M))
        total += -logX * X ** (1 - s) / (s - 1) - X ** (1 - s) / (s - 1) ** 2
        total += -logX * X ** (-s) / 2
    else:
        total = mpmath.fsum((n + a) ** (-s) for n in range(M))
        total += X ** (1 - s) / (s - 1) + X ** (-s) / 2
    P, dP = s, mpmath.mpf(1)  # (s)_{2j-1} and its derivative, j = 1
    fact = mpmath.mpf(2)  # (2j)!
    for j in range(1, J + 1):
        if j > 1:
            for q in (s + 2 * j - 3, s + 2 * j - 2):
                P, dP = P * q, dP * q + P
            fact *= (2 * j - 1) * (2 * j)
        coeff = _mpq(bernoulli(2 * j)) / fact
        power = X ** (-s - 2 * j + 1)
        if derivative:
            total += coeff * (dP - P * logX) * power
        else:
            total += coeff * P * power
    return total


def _hurwitz_finite_part(a):
    """lim_{s->1} (zeta(s, a) - 1/(s-1)), i.e. -digamma(a)."""
    a = mpmath.mpf(a)
    M, J = _em_params(1, mpmath.mp.prec)
    X = M + a
    total = mpmath.fsum(1 / (n + a) for n in range(M)) - mpmath.log(X) + 1 / (2 * X)
    for j in range(1, J + 1):
        total += _mpq(bernoulli(2 * j)) / (2 * j) * X ** (-2 * j)
    return total


def _residue_class(c: int, N: int) -> Fraction:
    """a in (0, 1] with n = N(a + m) running over n = c mod N, n >= 1."""
    return Fraction((c - 1) % N + 1, N)


def _check_prec(prec: int) -> None:
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits")


def _is_one(s) -> bool:
    return mpmath.mpmathify(s) == 1


def hurwitz_zeta(s, c: int, N: int, prec: int = 128, derivative: bool = False):
    """zeta_N(s, c) = sum_{n = c mod N, n >= 1} n^{-s}, continued to s != 1."""
    _check_prec(prec)
    if N < 1:
        raise ValueError("modulus must be positive")
    if _is_one(s):
        raise PoleError("zeta_N(s, c) has a pole at s = 1")
    a = _residue_class(c, N)
    with mpmath.workprec(prec + GUARD_BITS):
        s = mpmath.mpmathify(s)
        af = mpmath.mpf(a.numerator) / a.denominator
        scale = mpmath.mpf(N) ** (-s)
        z = _hurwitz_raw(s, af)
        if derivative:
            z = scale * (_hurwitz_raw(s, af, True) - mpmath.log(N) * z)
        else:
            z = scale * z
    return +z


# -- polylogarithm ---------------------------------------------------------------

def _root(c: int, N: int):
    return mpmath.expjpi(mpmath.mpf(2 * (c % N)) / N)


def polylog(s, alpha: tuple[int, int], prec: int = 128):
    """Li_s(e^{2 pi i c/N}) via the Hurwitz decomposition."""
    _check_prec(prec)
    c, N = alpha
    trivial = c % N == 0
    with mpmath.workprec(prec + GUARD_BITS):
        s = mpmath.mpmathify(s)
        if trivial:
            if mpmath.re(s) <= 1:
                raise PoleError("Li_s(1) diverges for Re s <= 1")
            return +hurwitz_zeta(s, 1, 1, prec)
        if s == 1:
            return -mpmath.log(1 - _root(c, N))
        scale = mpmath.mpf(N) ** (-s)
        total = mpmath.mpc(0)
        for b in range(1, N + 1):
            total += _root(c * b, N) * _hurwitz_raw(s, mpmath.mpf(b) / N)
        return +(scale * total)


# -- Dirichlet L-values ----------------------------------------------------------

@dataclass
class LeadingTerm:
    """Leading Taylor coefficient of L(chi, s) at an integer point."""

    order: int
    value: object  # mpmath number
    exact: CycElement | None = None


def _require_primitive(chi: DirichletCharacter) -> None:
    if not chi.is_primitive:
        raise CharacterError("a primitive character is required")


def _char_embedded(chi: DirichletCharacter, a: int, embedding: int):
    e = chi.exponent(a)
    if e is None:
        return mpmath.mpf(0)
    return mpmath.expjpi(mpmath.mpf(2 * e * embedding % (2 * chi.order)) / chi.order)


def _L_raw(chi: DirichletCharacter, s, embedding: int, derivative: bool = False):
    """L(chi, s) or L'(chi, s) at the current precision from Hurwitz zeta."""
    N = chi.modulus
    s = mpmath.mpmathify(s)
    if s == 1:
        # the poles of the individual classes cancel since sum chi(a) = 0
        if derivative:
            raise NotImplementedError("L'(chi, 1) is not needed")
        return mpmath.fsum(_char_embedded(chi, a, embedding) * _hurwitz_finite_part(mpmath.mpf(a) / N)
                           for a in range(1, N + 1)) / N
    vals = []
    dvals = []
    for a in range(1, N + 1):
        w = _char_embedded(chi, a, embedding)
        if w == 0:
            continue
        af = mpmath.mpf(a) / N
        vals.append(w * _hurwitz_raw(s, af))
        if derivative:
            dvals.append(w * _hurwitz_raw(s, af, True))
    scale = mpmath.mpf(N) ** (-s)
    L = scale * mpmath.fsum(vals)
    if not derivative:
        return L
    return scale * mpmath.fsum(dvals) - mpmath.log(N) * L


def dirichlet_L(chi: DirichletCharacter, r: int, prec: int = 128, embedding: int = 1) -> LeadingTerm:
    """Leading term of L(chi, s) at s = r under zeta_d -> e^{2 pi i embedding/d}."""
    _require_primitive(chi)
    _check_prec(prec)
    if gcd(embedding, chi.order) != 1:
        raise ValueError("embedding index must be a unit mod the character order")
    with mpmath.workprec(prec + GUARD_BITS):
        if r <= 0:
            k = 1 - r
            exact = gen_bernoulli(k, chi).value * Fraction(-1, k)
            if not exact.is_zero():
                return LeadingTerm(0, +exact.to_complex(embedding), exact)
            # parity zero: simple for every primitive chi
            return LeadingTerm(1, +_L_raw(chi, r, embedding, derivative=True), exact)
        if r == 1 and chi.is_trivial:
            raise PoleError("zeta(s) has a pole at s = 1")
        return LeadingTerm(0, +_L_raw(chi, r, embedding))


def dirichlet_L_series(chi: DirichletCharacter, s, prec: int = 128, embedding: int = 1):
    """L(chi, s) at arbitrary complex s != 1 for primitive chi."""
    _require_primitive(chi)
    _check_prec(prec)
    if chi.is_trivial and _is_one(s):
        raise PoleError("zeta(s) has a pole at s = 1")
    with mpmath.workprec(prec + GUARD_BITS):
        return +_L_raw(chi, s, embedding)


def _agreement_bits(lhs, rhs, cap: int) -> float:
    diff = abs(lhs - rhs)
    if diff == 0:
        return float(cap)
    return min(float(cap), float(-mpmath.log(diff, 2)))


def _fmt(z, digits: int = 30) -> str:
    return mpmath.nstr(z, digits)


def _report(check_id: str, inputs: dict, lhs, rhs, prec: int, required: float,
            details: dict | None = None) -> VerificationReport:
    bits = _agreement_bits(lhs, rhs, prec)
    return VerificationReport(
        check_id=check_id, inputs=inputs, lhs=_fmt(lhs), rhs=_fmt(rhs),
        agreement=round(bits, 2), requested=required,
        verdict=PASS if bits >= required else FAIL, details=details or {})


def check_hurwitz_fe(c: int, N: int, r: int, prec: int = 192) -> VerificationReport:
    """Compare the polylog side with the Gamma-weighted Hurwitz side at s = r.

    LHS = (Li_{1-r}(a) + (-1)^r Li_{1-r}(1/a)) / 2 with a = e^{2 pi i c/N};
    RHS = (-2 pi i/N)^{-r} lim_{s->r} Gamma(s)(zeta_N(s, c) + (-1)^r zeta_N(s, -c)).
    """
    _check_prec(prec)
    if gcd(c, N) != 1:
        raise ValueError(f"e^(2 pi i {c}/{N}) is not a primitive root of unity")
    if N == 1 and r >= 0:
        raise PoleError("Li_{1-r}(1) diverges for r >= 0")
    sign = -1 if r % 2 else 1
    with mpmath.workprec(prec + GUARD_BITS):
        lhs = (polylog(1 - r, (c, N), prec) + sign * polylog(1 - r, (-c, N), prec)) / 2
        a1 = _mpq(_residue_class(c, N))
        a2 = _mpq(_residue_class(-c, N))
        if r >= 2:
            F = hurwitz_zeta(r, c, N, prec) + sign * hurwitz_zeta(r, -c, N, prec)
            limit = mpmath.factorial(r - 1) * F
            how = "direct"
        elif r == 1:
            # simple poles of the two classes cancel; log N terms cancel too
            limit = (_hurwitz_finite_part(a1) - _hurwitz_finite_part(a2)) / N
            how = "finite part at s=1"
        else:
            k = 1 - r
            exact = (bernoulli_poly(k, _residue_class(c, N))
                     + sign * bernoulli_poly(k, _residue_class(-c, N)))
            if exact != 0:
                raise PoleError("Gamma-limit diverges: zeta_N combination does not vanish")
            dF = (hurwitz_zeta(r, c, N, prec, derivative=True)
                  + sign * hurwitz_zeta(r, -c, N, prec, derivative=True))
            residue = mpmath.mpf((-1) ** (k - 1)) / mpmath.factorial(k - 1)
            limit = residue * dF
            how = "Gamma residue times derivative"
        rhs = (-2j * mpmath.pi / N) ** (-r) * limit
        return _report("hurwitz-fe", {"c": c, "N": N, "r": r, "prec": prec},
                       lhs, rhs, prec, prec / 2, {"limit": how})


def fe_cases(max_N: int = 12, r_range: range = range(-3, 5)) -> list[tuple[int, int, int]]:
    """All (c, N, r) with c a unit mod N, skipping divergent points."""
    out = []
    for N in range(1, max_N + 1):
        for c in units(N):
            for r in r_range:
                if N == 1 and r >= 0:
                    continue
                out.append((c, N, r))
    return out


def _parity_matches(chi: DirichletCharacter, r: int) -> bool:
    return chi.parity == (1 if r % 2 == 0 else -1)


def check_li_identity(chi: DirichletCharacter, r: int, prec: int = 192) -> VerificationReport:
    """sum_a chi^{-1}(sigma_a) Li_{1-r}(zeta_N^a) = 2(-2 pi i/N)^{-r}(r-1)! L(chi, r), per embedding.

    chi^{-1}(sigma_a) = chi(a) under the convention that geometric Frobenius
    at l corresponds to l.
    """
    _require_primitive(chi)
    if r < 1 or not _parity_matches(chi, r):
        raise ValueError("need r >= 1 with chi(-1) = (-1)^r")
    if chi.is_trivial:
        raise PoleError("Li_{1-r}(1) diverges for the trivial character")
    N, d = chi.modulus, chi.order
    worst = float(prec)
    comps = {}
    lhs0 = rhs0 = None
    with mpmath.workprec(prec + GUARD_BITS):
        lis = {a: polylog(1 - r, (a, N), prec) for a in units(N)}
        factor = 2 * (-2j * mpmath.pi / N) ** (-r) * mpmath.factorial(r - 1)
        for b in units(d):
            lhs = mpmath.fsum(_char_embedded(chi, a, b) * lis[a] for a in lis)
            rhs = factor * dirichlet_L(chi, r, prec, embedding=b).value
            bits = _agreement_bits(lhs, rhs, prec)
            comps[b] = round(bits, 2)
            worst = min(worst, bits)
            if lhs0 is None:
                lhs0, rhs0 = lhs, rhs
    return VerificationReport(
        check_id="li-identity", inputs={"chi": chi.to_json(), "r": r, "prec": prec},
        lhs=_fmt(lhs0), rhs=_fmt(rhs0), agreement=round(worst, 2), requested=prec / 2,
        verdict=PASS if worst >= prec / 2 else FAIL, details={"per_embedding_bits": comps})


def check_fe_ratio(chi: DirichletCharacter, r: int, prec: int = 192) -> VerificationReport:
    """L*(chi^{-1}, 1-r)/L*(chi, r) against 2(r-1)! N^r / (tau(chi)(2 pi i)^{r-delta}).

    The ratio LHS/RHS is reported per embedding together with the nearest
    unit in {1, -1, i, -i}; the verdict is pass only when the ratio is that unit.
    """
    _require_primitive(chi)
    if r < 1:
        raise ValueError("r must be positive")
    if r == 1 and chi.is_trivial:
        raise PoleError("zeta(s) has a pole at s = 1")
    N, d = chi.modulus, chi.order
    delta = 0 if _parity_matches(chi, r) else 1
    phases = {}
    worst = float(prec)
    first = None
    with mpmath.workprec(prec + GUARD_BITS):
        tau = gauss_sum(chi)
        for b in units(d):
            num = dirichlet_L(chi.inverse(), 1 - r, prec, embedding=b).value
            den = dirichlet_L(chi, r, prec, embedding=b).value
            lhs = num / den
            rhs = (2 * mpmath.factorial(r - 1) * mpmath.mpf(N) ** r
                   / (tau.to_complex(1, b) * (2j * mpmath.pi) ** (r - delta)))
            q = lhs / rhs
            found = min((1, -1, 1j, -1j), key=lambda u: abs(q - u))
            bits = _agreement_bits(q, found, prec)
            worst = min(worst, bits)
            phases[b] = {"unit": _fmt(found, 3), "ratio": _fmt(q, 20)}
            if first is None:
                first = (lhs, rhs)
    signs = {v["unit"] for v in phases.values()}
    return VerificationReport(
        check_id="fe-ratio", inputs={"chi": chi.to_json(), "r": r, "prec": prec},
        lhs=_fmt(first[0]), rhs=_fmt(first[1]), agreement=round(worst, 2), requested=prec / 2,
        verdict=PASS if worst >= prec / 2 else FAIL,
        details={"delta": delta, "per_embedding": phases, "unit_uniform": len(signs) == 1})


# -- class numbers ----------------------------------------------------------------

class FieldDataError(LookupError):
    pass


@lru_cache(maxsize=1)
def _field_table() -> dict:
    text = resources.files("cycloverify").joinpath("data/cyclotomic_fields.json").read_text()
    return json.loads(text)


def field_data(N: int) -> dict:
    for rec in _field_table()["fields"]:
        if rec["N"] == N:
            return rec
    raise FieldDataError(f"no ingested data for Q(zeta_{N})")


def published_relative_class_number(p: int) -> int:
    try:
        return _field_table()["relative_class_numbers_prime"][str(p)]
    except KeyError:
        raise FieldDataError(f"no published h- for p = {p}") from None


def relative_class_number(p: int) -> int:
    """h^-(Q(zeta_p)) = 2p prod_{chi odd} (-B_{1,chi}/2), exactly."""
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    omega = teichmuller_character(p)
    n = p - 1
    prod = CycElement.one(n)
    for j in range(1, n, 2):
        b1 = gen_bernoulli(1, omega ** j).value.raise_level(n)
        prod = prod * b1 * Fraction(-1, 2)
    if not prod.is_rational():
        raise ArithmeticError("product of B_{1,chi} is not rational")
    h = prod.to_fraction() * 2 * p
    if h.denominator != 1 or h <= 0:
        raise ArithmeticError(f"relative class number {h} is not a positive integer")
    return int(h)


def dedekind_zeta_leading(N: int, prec: int = 192) -> LeadingTerm:
    """zeta_{Q(zeta_N)}(s) at s = 0 as the product of L(chi, s) over chi mod N."""
    order = 0
    value = mpmath.mpf(1)
    with mpmath.workprec(prec + GUARD_BITS):
        for chi in all_characters(N):
            t = dirichlet_L(chi.primitive(), 0, prec)
            order += t.order
            value *= t.value
    return LeadingTerm(order, +value)


def check_class_number_formula(data: dict | int, prec: int = 192) -> VerificationReport:
    """zeta_F(0)* = -h R / #mu for F = Q(zeta_N) with ingested h, R, #mu."""
    rec = field_data(data) if isinstance(data, int) else data
    for key in ("N", "h", "regulator_decimal", "mu_order", "signature"):
        if key not in rec:
            raise FieldDataError(f"field record lacks {key!r}")
    N = rec["N"]
    r1, r2 = rec["signature"]
    with mpmath.workprec(prec + GUARD_BITS):
        lead = dedekind_zeta_leading(N, prec)
        rhs = -rec["h"] * mpmath.mpf(rec["regulator_decimal"]) / rec["mu_order"]
        lhs = lead.value
        rel = abs(lhs - rhs) / abs(rhs)
        given_digits = len(rec["regulator_decimal"].replace(".", "").lstrip("0"))
        bits = min(float(prec), float(-mpmath.log(rel, 2)) if rel else float(prec))
    return VerificationReport(
        check_id="class-number-formula", inputs={"N": N, "prec": prec},
        lhs=_fmt(lhs), rhs=_fmt(rhs), agreement=round(bits, 2), requested=66.4,
        verdict=PASS if rel < mpmath.mpf("1e-20") and lead.order == r1 + r2 - 1 else FAIL,
        details={"relative_error": mpmath.nstr(rel, 5), "order": lead.order,
                 "expected_order": r1 + r2 - 1, "regulator_digits": given_digits})
