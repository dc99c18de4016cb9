"""p-adic L-values: interpolation, Stickelberger-Bernoulli series, value at s = 1.

Normalisation: ``Lp_at_negative(chi, k)`` is (1 - chi(p) p^{k-1}) L(chi, 1-k), the
untwisted value, which equals the Kubota-Leopoldt L_p(theta, 1-k) for the even
first-kind character theta = chi * omega^k. Values of characters whose order
divides p - 1 go to Z_p through zeta_{p-1} -> teichmuller(g), g the least
primitive root, matching ``chars.teichmuller_character``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

from .arith import primitive_root, units, valuation
from .chars import DirichletCharacter, _require_odd_prime, teichmuller_character, trivial_character
from .cyclo import CycElement
from .iwasawa import (GammaCharacter, GroupRingElement, IwasawaFraction, IwasawaSeries,
                      gamma_log)
from .lcomplex import gen_bernoulli
from .padics import PadicElement, RamCyc, UnramExt, iwasawa_log, teichmuller
from .report import FAIL, PASS, VerificationReport


class KubotaError(ValueError):
    pass


# -- embeddings into Z_p and Z_p[zeta_{p^n}] -----------------------------------------------

@lru_cache(maxsize=None)
def _root_of_unity(p: int, d: int, prec: int) -> int:
    """Image of zeta_d in Z_p for d | p - 1."""
    if (p - 1) % d:
        raise KubotaError(f"zeta_{d} is not in Z_{p}")
    t = teichmuller(primitive_root(p), p, prec).unit
    return pow(t, (p - 1) // d, p ** prec)


def zp_value(x: CycElement, p: int, prec: int) -> PadicElement:
    """Image of x in Q(zeta_d), d | p - 1, under the fixed embedding."""
    if x.coeff_order != 1:
        raise KubotaError("coefficient-extended values are not supported")
    mod = p ** prec
    t = _root_of_unity(p, x.level, prec) if x.level > 1 else 1
    acc, tp = 0, 1
    for c in x.num:
        acc = (acc + c * tp) % mod
        tp = tp * t % mod
    return PadicElement.from_int(acc, p, prec) * PadicElement.from_rational(Fraction(1, x.den), p, prec)


def char_zp(chi: DirichletCharacter, a: int, p: int, prec: int) -> int:
    """chi(a) in Z_p / p^prec (0 off the support)."""
    e = chi.exponent(a)
    if e is None:
        return 0
    return pow(_root_of_unity(p, chi.order, prec), e, p ** prec) if chi.order > 1 else 1


def ram_value(x: CycElement, ring: RamCyc) -> tuple:
    """(image of den * x, den) in K_0(zeta_{p^m}) with K_0 = Q_p, for levels dividing (p-1) p^m."""
    p, q = ring.p, ring.q
    L = x.level
    d1 = L
    while d1 % p == 0:
        d1 //= p
    pm = L // d1
    if (p - 1) % d1 or q % pm:
        raise KubotaError(f"level {L} does not embed in Q_{p}(zeta_{q})")
    a = pow(pm, -1, d1) if d1 > 1 else 0
    b = pow(d1, -1, pm) if pm > 1 else 0
    t = _root_of_unity(p, d1, ring.prec) if d1 > 1 else 1
    mod = p ** ring.prec
    acc = ring.element([0])
    for i, c in enumerate(x.num):
        if c:
            unit = pow(t, a * i % d1, mod) if d1 > 1 else 1
            zk = (b * i % pm) * (q // pm) if pm > 1 else 0
            acc = acc + ring.z(zk) * (c * unit % mod)
    return acc, x.den


# -- values at negative integers ------------------------------------------------------------

@dataclass
class PadicLValue:
    chi: DirichletCharacter
    p: int
    k: int
    exact: CycElement
    value: PadicElement | None
    theta: DirichletCharacter

    def to_json(self) -> dict:
        return {"chi": self.chi.to_json(), "p": self.p, "point": 1 - self.k,
                "exact": self.exact.to_json(), "value": None if self.value is None else self.value.to_json(),
                "theta": self.theta.to_json()}


def omega_power(p: int, k: int) -> DirichletCharacter:
    return teichmuller_character(p) ** (k % (p - 1))


def _times_char_root(x: CycElement, order: int, e: int) -> CycElement:
    L = x.level * order // gcd(x.level, order)
    return x.raise_level(L) * CycElement.root_of_unity(L, e * (L // order))


def euler_bernoulli_value(psi: DirichletCharacter, k: int, p: int) -> CycElement:
    """-(1 - psi(p) p^{k-1}) B_{k,psi} / k for the primitive psi, exactly."""
    psi = psi.primitive()
    B = gen_bernoulli(k, psi).value
    e = psi.exponent(p)
    factor = B if e is None else B - _times_char_root(B, psi.order, e) * Fraction(p) ** (k - 1)
    return factor * Fraction(-1, k)


def Lp_at_negative(chi: DirichletCharacter, p: int, k: int, prec: int = 20) -> PadicLValue:
    """(1 - chi(p) p^{k-1}) L(chi, 1-k) = -(1 - chi(p) p^{k-1}) B_{k,chi}/k."""
    _require_odd_prime(p)
    if k < 1:
        raise KubotaError("k must be at least 1")
    exact = euler_bernoulli_value(chi, k, p)
    theta = (chi.primitive() * omega_power(p, k)).primitive()
    try:
        val = zp_value(exact, p, prec)
    except KubotaError:
        val = None
    return PadicLValue(chi, p, k, exact, val, theta)


def kummer_grid(p: int, chars, kmax: int | None = None, prec: int = 12) -> dict:
    """Check values at 1-k and 1-k' agree mod p^{a+1} when k = k' mod (p-1)p^a.

    Pairs whose first-kind character theta is trivial are skipped (pole).
    """
    kmax = kmax or (p - 1) * p * p
    checked, failures = 0, []
    for chi in chars:
        vals = {}
        for k in range(1, kmax + 1):
            theta = (chi.primitive() * omega_power(p, k)).primitive()
            if theta.is_trivial:
                continue
            vals[k] = Lp_at_negative(chi, p, k, prec).value
        ks = sorted(vals)
        for i, k in enumerate(ks):
            for k2 in ks[i + 1:]:
                if (k2 - k) % (p - 1):
                    continue
                a = valuation((k2 - k) // (p - 1), p)
                need = min(a + 1, prec)
                diff = vals[k] - vals[k2]
                got = diff.v if not diff.is_zero() else prec
                checked += 1
                if got < need:
                    failures.append({"chi": repr(chi), "k": k, "k2": k2, "need": need, "got": got})
    return {"p": p, "kmax": kmax, "pairs": checked, "failures": failures,
            "verdict": PASS if checked and not failures else FAIL}


def trivial_zero_detect(chi: DirichletCharacter, p: int, r: int) -> bool:
    """Exceptional zero of the Euler factor 1 - chi(p) p^{-r}: r = 0, chi even, chi(p) = 1."""
    chi = chi.primitive()
    return r == 0 and chi.is_even and chi.exponent(p) == 0


# -- Stickelberger-Bernoulli elements ---------------------------------------------------------

def _first_kind(theta: DirichletCharacter, p: int) -> DirichletCharacter:
    theta = theta.primitive()
    f = theta.modulus
    if f % (p * p) == 0 or (p - 1) % theta.order:
        raise KubotaError("theta must be of the first kind with values in Z_p")
    return theta


def _regulariser(theta: DirichletCharacter, p: int, F: int) -> int:
    """Least c > 1 prime to F with theta(c) != 1 (c = 2-ish for trivial theta)."""
    for c in range(2, 10 * F):
        if gcd(c, F) == 1 and (theta.is_trivial or theta.exponent(c) != 0):
            return c
    raise KubotaError("no regulariser found")


@dataclass
class StickelbergerData:
    theta: DirichletCharacter
    p: int
    level: int
    c: int
    numerator: GroupRingElement
    denominator: GroupRingElement

    def series(self, D: int | None = None) -> IwasawaFraction:
        """-g/h as power series; coefficient precision is n - floor(log_p D)."""
        g = self.numerator.to_series(D)
        h = self.denominator.to_series(D)
        return IwasawaFraction(-g, h)

    def evaluate(self, tau: GammaCharacter):
        """(tau(-g), tau(h)): the L-value is their quotient."""
        ring = None
        if tau.a:
            ring = RamCyc(UnramExt(self.p, 1, self.numerator.prec), tau.n)
        return (self.numerator.evaluate(tau, ring) * -1, self.denominator.evaluate(tau, ring))


def stickelberger_elements(theta: DirichletCharacter, p: int, n: int, prec: int | None = None
                           ) -> StickelbergerData:
    """c-regularised Bernoulli elements g_c, h_c in Z_p[G_n] for even first-kind theta.

    (tau eps^{k-1})(g_c) / (tau eps^{k-1})(h_c) = (1 - psi(p) p^{k-1}) B_{k,psi}/k with
    psi = theta tau omega^{-k}, up to p^{n+1}.
    """
    _require_odd_prime(p)
    theta = _first_kind(theta, p)
    prec = prec or n + 2
    mod = p ** prec
    d = theta.modulus
    while d % p == 0:
        d //= p
    F = d * p ** (n + 1)
    c = _regulariser(theta, p, F)
    ci = pow(c, -1, F)
    omega = teichmuller_character(p)
    tw = (theta * omega.inverse()).primitive()
    size = p ** n
    q = p * size
    # units mod q as teich(r) (1+p)^i, so l = i without a discrete-log table
    teich_q = {r: pow(r, size, q) for r in range(1, p)}
    chi_tab = {b: char_zp(tw, b, p, prec) for b in range(d * p) if gcd(b, d * p) == 1}
    crt_d = d * pow(d, -1, q) if d > 1 else 1  # = 1 mod q, 0 mod d
    crt_q = q * pow(q, -1, d) if d > 1 else 0  # = 0 mod q, 1 mod d
    d_units = [s_ for s_ in range(d) if gcd(s_, d) == 1] if d > 1 else [0]
    w = [0] * size
    half = pow(2, -1, mod)
    shift = (c - 1) * half
    for r, t in teich_q.items():
        x = t
        for i in range(size):
            acc = 0
            for s_ in d_units:
                a = (x * crt_d + s_ * crt_q) % F
                val = chi_tab[a % (d * p)]
                if val:
                    # E_{1,c}(a) = (a - c (c^{-1} a mod F)) / F + (c - 1)/2
                    acc += val * ((a - c * (ci * a % F)) // F + shift)
            w[i] = (w[i] + acc) % mod
            x = x * (1 + p) % q
    num = GroupRingElement(p, n, tuple(w), prec)
    # h_c = 1 - theta(c) <c> gamma^{l(c)}
    hc = [0] * size
    hc[0] = 1
    bracket = c * pow(teichmuller(c, p, prec).unit, -1, mod) % mod
    j = gamma_log(c, p, n) if n else 0
    hc[j] = (hc[j] - char_zp(theta, c, p, prec) * bracket) % mod
    den = GroupRingElement(p, n, tuple(hc), prec)
    return StickelbergerData(theta, p, n, c, num, den)


def stickelberger_series(chi: DirichletCharacter, p: int, k: int, n: int, prec: int | None = None
                         ) -> IwasawaFraction:
    """The fraction -g_c/h_c for theta = chi omega^k, truncated at degree p^n - 1."""
    theta = (chi.primitive() * omega_power(p, k)).primitive()
    return stickelberger_elements(theta, p, n, prec).series()


def tau_as_dirichlet(tau: GammaCharacter) -> DirichletCharacter:
    if tau.a == 0:
        return trivial_character(1)
    return DirichletCharacter(tau.p ** (tau.n + 1), tau.p ** tau.n, tau.dirichlet_exponent_table())


def Lp_interpolation_check(chi: DirichletCharacter, p: int, tau: GammaCharacter, k: int,
                           n: int | None = None) -> VerificationReport:
    """(tau eps^{k-1}) of the series for theta = chi omega^k against (1 - chi tau(p) p^{k-1}) L(chi tau, 1-k).

    Compared as -g = h * value in Z_p[zeta_{p^m}], which avoids dividing by a non-unit h.
    """
    if k < 1 or chi.parity != (1 if k % 2 == 0 else -1):
        raise KubotaError("need chi(-1) = (-1)^k and k >= 1")
    m = tau.n if tau.a else 0
    n = max(n or 6, m)
    theta = (chi.primitive() * omega_power(p, k)).primitive()
    data = stickelberger_elements(theta, p, n, prec=n + 2)
    digits = n + 1
    target = tau * GammaCharacter(p, (1 + p) ** (k - 1) % p ** (n + 2))
    lhs_num, lhs_den = data.evaluate(target)
    psi = (chi.primitive() * tau_as_dirichlet(tau)).primitive()
    exact = euler_bernoulli_value(psi, k, p)
    if m:
        ring = lhs_num.ext
        rhs, den = ram_value(exact, ring)
        diff = lhs_num * den - lhs_den * rhs
        coords = [cf.coords[0] for cf in diff.coeffs]
    else:
        val = zp_value(exact, p, n + 2)
        den = 1
        diff = lhs_num - lhs_den * val
        coords = [0 if diff.is_zero() else diff.unit * p ** diff.v]
    mod = p ** (n + 2)
    nz = [x % mod for x in coords if x % mod]
    agree = min((valuation(x, p) for x in nz), default=n + 2) - valuation(den, p)
    # Trivial theta: L = G/H has a pole near tau eps^{k-1}, so the level-n error
    # omega_n (Q_G - Q_H L) is only O(p^{n+1+v(k-1)-v(h)}).
    hv = lhs_den.valuation() if m else lhs_den.v
    if theta.is_trivial and hv and k > 1:
        digits = min(digits, floor(n + 1 + valuation(k - 1, p) - hv))
    return VerificationReport(
        "padic-l-interpolation",
        {"chi": chi.to_json(), "p": p, "k": k, "tau": {"n": tau.n, "a": tau.a}, "level": n},
        lhs=str(exact), rhs=f"regulariser c = {data.c}", agreement=agree, requested=digits,
        verdict=PASS if agree >= digits else FAIL,
        details={"theta": theta.to_json(), "psi": psi.to_json(), "h_valuation": str(hv)})


# -- value at s = 1 -------------------------------------------------------------------------

@dataclass
class AtOne:
    value: PadicElement
    digits: int
    M: int
    stable: bool


def Lp_at_one(chi: DirichletCharacter, p: int, M: int = 3, prec: int = 30) -> AtOne:
    """L_p(chi, 1) from 1 - k_M with k_M = (p-1) p^M, good mod p^{M+1}.

    The value at M - 1 is compared mod p^M as a stability check.
    """
    _require_odd_prime(p)
    if not chi.is_even or chi.primitive().is_trivial:
        raise KubotaError("need an even nontrivial character")
    if M < 1:
        raise KubotaError("M must be positive")
    vals = [Lp_at_negative(chi, p, (p - 1) * p ** j, prec).value for j in (M - 1, M)]
    if vals[1] is None:
        raise KubotaError("character values are not in Z_p")
    stable = vals[0].agrees_with(vals[1], M)
    return AtOne(vals[1], M + 1, M, stable)


def Lp_log_formula(chi: DirichletCharacter, p: int, prec: int = 30) -> PadicElement:
    """-(1 - chi(p)/p) (tau(chi)/N) sum_a chi(sigma_a) log_p(1 - zeta_N^a), chi(sigma_a) = chi(a)^{-1}."""
    chi = chi.primitive()
    if not chi.is_even or chi.is_trivial:
        raise KubotaError("need an even nontrivial character")
    N = chi.modulus
    if N % p == 0:
        raise KubotaError("p divides the conductor")
    K = UnramExt(p, N, prec)
    S = K.element([0])
    inv = chi.inverse()
    for a in units(N):
        S = S + iwasawa_log(K.one() - K.zeta(a)) * char_zp(inv, a, p, prec)
    tau = K.element([0])
    for a in units(N):
        tau = tau + K.zeta(a) * char_zp(chi, a, p, prec)
    P = tau * S
    if any(c for c in P.coords[1:]):
        raise KubotaError("tau(chi) * sum is not in Q_p; embedding mismatch")
    chip = char_zp(chi, p, p, prec)
    out = PadicElement.from_int(P.coords[0], p, prec) * PadicElement.from_int(p - chip, p, prec)
    return out * PadicElement.from_rational(Fraction(-1, p * N), p, prec)


def check_mc2_scalar(chi: DirichletCharacter, p: int, M: int = 3, prec: int = 30) -> VerificationReport:
    """L_p(chi, 1) two ways: limit of values at 1 - k_M, and the log formula."""
    at_one = Lp_at_one(chi, p, M, prec)
    log_side = Lp_log_formula(chi, p, prec)
    agree = at_one.value.agreement(log_side)
    ok = agree >= at_one.digits and at_one.stable
    return VerificationReport(
        "mc-scalar", {"chi": chi.to_json(), "p": p, "M": M},
        lhs=at_one.value.to_json(), rhs=log_side.to_json(), agreement=agree,
        requested=at_one.digits, verdict=PASS if ok else FAIL,
        details={"stable": at_one.stable, "k": (p - 1) * p ** M})
