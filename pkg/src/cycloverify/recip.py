"""Explicit reciprocity bookkeeping: Coleman-type series, trace pairings, index formula.

Series are finite sums sum_e c_e (1+T)^e with c_e in O_{K0}. This subring is
stable under phi (arithmetic Frobenius on coefficients, T -> (1+T)^p - 1) and
D = (1+T) d/dT, and evaluation at zeta_{p^m} - 1 is exact. The T-adic
coefficients are available through ``coefficients``.

Pairings are computed exactly in Q(zeta_N) (x) Q(zeta_d): the Frobenius at p
has finite order f on Q(zeta_{N'}), so (1 - c F)^{-1} = sum_{j<f} c^j F^j / (1 - c^f).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .arith import euler_phi, multiplicative_order
from .chars import DirichletCharacter, all_characters
from .cyclo import CycElement, character_value, projector
from .padics import PadicError, RamCyc, RamElement, UnramElement, UnramExt
from .report import FAIL, PASS, VerificationReport


class ReciprocityError(ValueError):
    pass


# -- series ---------------------------------------------------------------------------------

class ColemanSeries:
    __slots__ = ("base", "terms")

    def __init__(self, base: UnramExt, terms: dict[int, UnramElement]):
        self.base = base
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def monomial(cls, c: UnramElement, e: int = 1) -> ColemanSeries:
        """c (1+T)^e."""
        return cls(c.ext, {e: c})

    def __add__(self, other: ColemanSeries) -> ColemanSeries:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return ColemanSeries(self.base, out)

    def scale(self, k: int) -> ColemanSeries:
        return ColemanSeries(self.base, {e: c * k for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColemanSeries):
            return NotImplemented
        diff = self + other.scale(-1)
        return not diff.terms

    def coefficients(self, D: int) -> list[UnramElement]:
        """a_0..a_D of the T-expansion."""
        zero = self.base.element([0])
        out = [zero] * (D + 1)
        for e, c in self.terms.items():
            for j in range(min(e, D) + 1):
                out[j] = out[j] + c * comb(e, j)
        return out

    def evaluate(self, ring: RamCyc, k: int = 1) -> RamElement:
        """Value at zeta_{p^m}^k - 1, with zeta_{p^m} = z of ``ring``."""
        if ring.base != self.base:
            raise PadicError("series and ring have different bases")
        acc = ring.element([0])
        for e, c in self.terms.items():
            acc = acc + ring.z(e * k) * c
        return acc


def d_operator(f: ColemanSeries) -> ColemanSeries:
    """(1+T) d/dT, so (1+T)^e -> e (1+T)^e."""
    return ColemanSeries(f.base, {e: c * e for e, c in f.terms.items()})


def phi_operator(f: ColemanSeries, arithmetic: bool = True) -> ColemanSeries:
    """Frobenius on coefficients and T -> (1+T)^p - 1."""
    p = f.base.p
    out: dict[int, UnramElement] = {}
    for e, c in f.terms.items():
        fc = c.frobenius(1, geometric=not arithmetic)
        out[p * e] = out[p * e] + fc if p * e in out else fc
    return ColemanSeries(f.base, out)


def geometric_inverse(f: ColemanSeries, r: int, terms: int | None = None) -> ColemanSeries:
    """sum_{i < terms} p^{(r-1)i} phi^i(f), inverting 1 - p^{r-1} phi mod p^prec."""
    if r < 2:
        raise ReciprocityError("r >= 2 is needed for the geometric series to converge")
    prec = f.base.prec
    terms = terms or -(-prec // (r - 1))
    p = f.base.p
    acc = ColemanSeries(f.base, {})
    cur = f
    for i in range(terms):
        acc = acc + cur.scale(p ** ((r - 1) * i))
        cur = phi_operator(cur)
    return acc


def apply_one_minus(f: ColemanSeries, r: int) -> ColemanSeries:
    """(1 - p^{r-1} phi) f."""
    return f + phi_operator(f).scale(-(f.base.p ** (r - 1)))


# -- exact Frobenius and pairings -------------------------------------------------------------

@dataclass(frozen=True)
class Setup:
    """Level data for a conductor N = N' p^m."""

    p: int
    N: int
    Np: int
    m: int

    @classmethod
    def of(cls, N: int, p: int) -> Setup:
        Np, m = N, 0
        while Np % p == 0:
            Np //= p
            m += 1
        return cls(p, N, Np, m)

    def frob_index(self, arithmetic: bool) -> int:
        """a with sigma_a = Frobenius on Q(zeta_{N'}) and identity on zeta_{p^m}."""
        p, Np, q = self.p, self.Np, self.p ** self.m
        target = p % Np if arithmetic else pow(p, -1, Np) if Np > 1 else 0
        for a in range(1, self.N + 1):
            if a % Np == target % Np and a % q == 1 % q:
                return a
        raise ReciprocityError("no Frobenius lift")

    @property
    def frob_order(self) -> int:
        return multiplicative_order(self.p, self.Np) if self.Np > 1 else 1

    def components(self, sign: int) -> tuple[int, int]:
        """Exponents (s, t) of zeta_N with zeta_N^sign = zeta_N^s * zeta_N^t,
        zeta_N^s of order dividing N' and zeta_N^t of order p^m."""
        N, Np, q = self.N, self.Np, self.p ** self.m
        s = (sign * q * pow(q, -1, Np)) % N if Np > 1 else 0
        t = (sign * Np * pow(Np, -1, q)) % N if q > 1 else 0
        return s, t


def _frob_power(x: CycElement, a: int, i: int, N: int) -> CycElement:
    return x.galois(pow(a, i, N)) if N > 1 else x


def _resolvent(x: CycElement, c: Fraction, a: int, f: int, N: int) -> CycElement:
    """(1 - c F)^{-1} x for F = sigma_a of order f."""
    acc = CycElement.zero(x.level, x.coeff_order)
    for j in range(f):
        acc = acc + _frob_power(x, a, j, N) * (c ** j)
    return acc * (1 / (1 - c ** f))


def y_element(setup: Setup, r: int, arithmetic: bool = True, sign: int = -1) -> CycElement:
    """y_m = sum_i p^{(r-1)i} F^i(beta) zeta_{p^m}^{p^i} with beta zeta_{p^m} = zeta_N^sign."""
    p, N, m = setup.p, setup.N, setup.m
    s, t = setup.components(sign)
    beta = CycElement.root_of_unity(N, s)
    a = setup.frob_index(arithmetic)
    c = Fraction(p) ** (r - 1)
    acc = CycElement.zero(N)
    for i in range(m):
        acc = acc + _frob_power(beta, a, i, N) * CycElement.root_of_unity(N, t * p ** i) * c ** i
    tail = _resolvent(_frob_power(beta, a, m, N), c, a, setup.frob_order, N)
    return acc + tail * c ** m


def alpha_element(chi: DirichletCharacter) -> CycElement:
    """p_{chi^{-1}}(zeta_N) in Q(zeta_N) (x) Q(zeta_d)."""
    N = chi.modulus
    return projector(chi.inverse(), CycElement.root_of_unity(N, 1))


def _trace(x: CycElement) -> CycElement:
    return x.trace_to(1) if x.level > 1 else x


def ramified_pairing(chi: DirichletCharacter, r: int, p: int, arithmetic: bool = True,
                     sign: int = -1) -> CycElement:
    """(1/(r-1)!) p^{-rm} Tr(alpha * y_m) with alpha = p_{chi^{-1}}(zeta_N)."""
    chi = chi.primitive()
    setup = Setup.of(chi.modulus, p)
    if setup.m < 1:
        raise ReciprocityError("p must divide the conductor")
    if r < 2:
        raise ReciprocityError("r >= 2 required")
    y = y_element(setup, r, arithmetic, sign)
    val = _trace(alpha_element(chi) * y)
    return val * Fraction(1, factorial(r - 1) * p ** (r * setup.m))


def unramified_pairing(chi: DirichletCharacter, r: int, p: int, arithmetic: bool = True,
                       sign: int = -1) -> CycElement:
    """(1/(r-1)!) Tr((1 - p^{r-1} F)^{-1}(beta) * (1 - F p^{-r})(alpha)), F = Fr_p^{-1}."""
    chi = chi.primitive()
    setup = Setup.of(chi.modulus, p)
    if setup.m:
        raise ReciprocityError("p divides the conductor")
    if r < 2:
        raise ReciprocityError("r >= 2 required")
    N = setup.N
    a = setup.frob_index(arithmetic)
    alpha = alpha_element(chi)
    alpha2 = alpha - _frob_power(alpha, a, 1, N) * Fraction(1, p ** r)
    beta = CycElement.root_of_unity(N, sign % N if N > 1 else 0)
    y = _resolvent(beta, Fraction(p) ** (r - 1), a, setup.frob_order, N)
    return _trace(alpha2 * y) * Fraction(1, factorial(r - 1))


def pairing(chi: DirichletCharacter, r: int, p: int, arithmetic: bool = True, sign: int = -1) -> CycElement:
    chi = chi.primitive()
    if chi.modulus % p == 0:
        return ramified_pairing(chi, r, p, arithmetic, sign)
    return unramified_pairing(chi, r, p, arithmetic, sign)


def closed_form(chi: DirichletCharacter, r: int, p: int) -> CycElement:
    """N'^r (1 - chi(p) p^{-r}) / (N^{r-1} (r-1)! (1 - p^{r-1} chi^{-1}(p)))."""
    chi = chi.primitive()
    setup = Setup.of(chi.modulus, p)
    d = chi.order
    cp = character_value(chi, p, 1, d)
    cpi = character_value(chi.inverse(), p, 1, d)
    num = (1 - cp * Fraction(1, p ** r)) * Fraction(setup.Np ** r, setup.N ** (r - 1) * factorial(r - 1))
    den = 1 - cpi * Fraction(p) ** (r - 1)
    return num / den


def _coeff(x: CycElement, d: int) -> CycElement:
    """Bring a level-1 value to coefficient order d for comparison."""
    return x.raise_coeff(d) if x.coeff_order != d else x


VARIANTS = {"arithmetic/inverse": (True, -1), "arithmetic/direct": (True, 1),
            "geometric/inverse": (False, -1), "geometric/direct": (False, 1)}
PRIMARY = "arithmetic/inverse"


def verify_indexcomp(chi: DirichletCharacter, r: int, p: int, prec: int = 30) -> VerificationReport:
    """Phi(N) * pairing against the closed form, exactly, for every convention variant.

    The verdict uses the primary convention (phi arithmetic on coefficients,
    beta zeta_{p^m} = zeta_N^{-1}); the others are reported in ``details``.
    """
    chi = chi.primitive()
    N = chi.modulus
    target = closed_form(chi, r, p)
    results = {}
    for name, (arith, sign) in VARIANTS.items():
        val = pairing(chi, r, p, arith, sign) * euler_phi(N)
        D = max(val.coeff_order, target.coeff_order)
        results[name] = (val, _coeff(val, D) == _coeff(target, D))
    val, ok = results[PRIMARY]
    branch = "ramified" if N % p == 0 else "unramified"
    return VerificationReport(
        "recip-indexcomp", {"chi": chi.to_json(), "r": r, "p": p, "branch": branch},
        lhs=str(val), rhs=str(target), agreement=prec if ok else 0, requested=prec,
        verdict=PASS if ok else FAIL,
        details={"variants": {k: v[1] for k, v in results.items()},
                 "values": {k: str(v[0]) for k, v in results.items()}})


def epsilon_prefactor(psi: DirichletCharacter, r: int, p: int) -> CycElement:
    """2 (r-1)! N_psi^{r-1} (1 - psi^{-1}(p) p^{r-1}) / (1 - psi(p) p^{-r})."""
    psi = psi.primitive()
    d = psi.order
    cp = character_value(psi, p, 1, d)
    cpi = character_value(psi.inverse(), p, 1, d)
    num = (1 - cpi * Fraction(p) ** (r - 1)) * (2 * factorial(r - 1) * psi.modulus ** (r - 1))
    return num / (1 - cp * Fraction(1, p ** r))


def epsilon_generator_check(chi: DirichletCharacter, r: int, p: int, n: int = 1) -> VerificationReport:
    """Every component chi*omega, omega mod p^{n+1}: prefactor * Phi * pairing = 2 N'^r."""
    chi = chi.primitive()
    Np = Setup.of(chi.modulus, p).Np
    comps = []
    for omega in all_characters(p ** (n + 1)):
        psi = (chi * omega).primitive()
        val = pairing(psi, r, p) * euler_phi(psi.modulus) * epsilon_prefactor(psi, r, p)
        ok = val == CycElement.from_rational(2 * Np ** r, 1, val.coeff_order)
        comps.append({"omega": omega.to_json(), "conductor": psi.modulus, "value": str(val), "ok": ok})
    good = all(c["ok"] for c in comps)
    return VerificationReport(
        "recip-epsilon", {"chi": chi.to_json(), "r": r, "p": p, "n": n},
        lhs=f"{sum(c['ok'] for c in comps)}/{len(comps)} components", rhs=str(2 * Np ** r),
        verdict=PASS if good else FAIL, details={"components": comps})


def check_y_padic(chi: DirichletCharacter, r: int, p: int, prec: int = 20) -> VerificationReport:
    """Exact y_m against the series route geometric_inverse(beta (1+T)) at zeta_{p^m} - 1."""
    setup = Setup.of(chi.primitive().modulus, p)
    if setup.m < 1:
        raise ReciprocityError("needs a ramified conductor")
    base = UnramExt(p, setup.Np, prec + 2)
    ring = RamCyc(base, setup.m)
    s, t = setup.components(-1)
    # exponents of zeta_N map to zeta_{N'}^{a k} z^{b k} under ring.embed
    q = p ** setup.m
    b = pow(setup.Np, -1, q)
    beta = ring.embed(CycElement.root_of_unity(setup.N, s)).coeffs[0]
    series = geometric_inverse(ColemanSeries.monomial(beta), r)
    lhs = series.evaluate(ring, (t * b) % q)
    rhs = ring.embed(y_element(setup, r))
    mod = p ** prec
    diff = lhs - rhs
    agree = min((_val(c, p, prec) for cf in diff.coeffs for c in cf.coords), default=prec)
    return VerificationReport(
        "recip-y-series", {"chi": chi.to_json(), "r": r, "p": p, "prec": prec},
        agreement=agree, requested=prec, verdict=PASS if agree >= prec else FAIL,
        details={"terms": len(series.terms), "mod": str(mod)})


def _val(c: int, p: int, cap: int) -> int:
    c %= p ** cap
    if c == 0:
        return cap
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def indexcomp_grid(primes=(3, 5), rs=(2, 3), chars=None) -> list[VerificationReport]:
    out = []
    for p in primes:
        for chi in (chars or {}).get(p, []):
            for r in rs:
                out.append(verify_indexcomp(chi, r, p))
    return out
