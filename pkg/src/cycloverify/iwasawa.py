"""Truncated Iwasawa algebra Z_p[[T]] with T = gamma_0 - 1 and eps(gamma_0) = 1 + p.

Series carry coefficients mod p^prec up to degree D. Finite-level group rings
Z_p[G_n], G_n = Gamma/Gamma^{p^n}, are coefficient lists in the basis gamma_0^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import kernels
from .arith import valuation
from .padics import (PadicElement, PadicError, PrecisionError, RamCyc, RamElement,
                     UnramExt, _ilog, _require_odd_prime)
from .report import AMBIGUOUS, PASS


class IwasawaError(ValueError):
    pass


class PoleError(ArithmeticError):
    pass


# -- characters of Gamma -------------------------------------------------------------

@dataclass(frozen=True)
class GammaCharacter:
    """tau(gamma_0) = u * zeta_{p^n}^a with u in 1 + pZ_p (u = (1+p)^j for eps^j)."""

    p: int
    u: int = 1
    n: int = 0
    a: int = 0

    @classmethod
    def trivial(cls, p: int) -> GammaCharacter:
        return cls(p)

    @classmethod
    def cyclotomic(cls, p: int, j: int, prec: int) -> GammaCharacter:
        """eps_infinity^j, i.e. gamma_0 -> (1+p)^j."""
        mod = p ** prec
        u = pow(1 + p, j, mod) if j >= 0 else pow(pow(1 + p, -j, mod), -1, mod)
        return cls(p, u)

    @classmethod
    def finite(cls, p: int, n: int, a: int = 1) -> GammaCharacter:
        """gamma_0 -> zeta_{p^n}^a."""
        return cls(p, 1, n, a % p ** n if n else 0)

    @property
    def is_finite(self) -> bool:
        return self.u == 1

    @property
    def level(self) -> int:
        """Least n with the finite part trivial on Gamma^{p^n}."""
        if self.a == 0:
            return 0
        return self.n - valuation(self.a, self.p)

    def __mul__(self, other: GammaCharacter) -> GammaCharacter:
        if self.p != other.p:
            raise IwasawaError("different primes")
        n = max(self.n, other.n)
        a = (self.a * self.p ** (n - self.n) + other.a * other.p ** (n - other.n)) % self.p ** n if n else 0
        return GammaCharacter(self.p, self.u * other.u, n, a)

    def inverse(self, prec: int) -> GammaCharacter:
        mod = self.p ** prec
        return GammaCharacter(self.p, pow(self.u, -1, mod), self.n, (-self.a) % self.p ** self.n if self.n else 0)

    def image(self, ring: RamCyc | None, prec: int):
        """tau(gamma_0) as an int mod p^prec (finite part trivial) or a RamElement."""
        if self.a == 0:
            return self.u % self.p ** prec
        if ring is None or ring.m < self.n:
            raise IwasawaError(f"need zeta_{self.p}^{self.n} in the coefficient ring")
        return ring.z(self.a * self.p ** (ring.m - self.n)) * self.u

    def dirichlet_exponent_table(self) -> dict:
        """tau as a Dirichlet character mod p^{n+1} via x -> <x> = (1+p)^{l(x)}."""
        p, n = self.p, self.n
        q = p ** (n + 1)
        logs = _gamma_logs(p, n)
        out = {}
        for x in range(q):
            if x % p:
                out[x] = self.a * logs[x] % p ** n if n else 0
        return out


def _gamma_logs(p: int, n: int) -> dict[int, int]:
    """l(x) mod p^n with <x> = x / omega(x) = (1+p)^{l(x)} mod p^{n+1}."""
    q = p ** (n + 1)
    table = {}
    g = 1
    for i in range(p ** n):
        table[g] = i
        g = g * (1 + p) % q
    out = {}
    for x in range(q):
        if x % p:
            omega = pow(x, p ** n, q)
            out[x] = table[x * pow(omega, -1, q) % q]
    return out


def gamma_log(x: int, p: int, n: int) -> int:
    """l(x) mod p^n for x prime to p, found one p-adic digit at a time."""
    q = p ** (n + 1)
    u = x * pow(pow(x, p ** n, q), -1, q) % q
    g = 1 + p
    ell = 0
    for k in range(1, n + 1):
        step = pow(g, p ** (k - 1), q)
        r = u * pow(pow(g, ell, q), -1, q) % q
        for _ in range(p):
            if r % p ** (k + 1) == 1:
                break
            r = r * pow(step, -1, q) % q
            ell += p ** (k - 1)
    return ell % p ** n if n else 0


_LOG_CACHE: dict[tuple[int, int], dict[int, int]] = {}


def _gamma_logs_cached(p: int, n: int) -> dict[int, int]:
    key = (p, n)
    if key not in _LOG_CACHE:
        _LOG_CACHE[key] = _gamma_logs(p, n)
    return _LOG_CACHE[key]


# -- power series -----------------------------------------------------------------------

class IwasawaSeries:
    __slots__ = ("p", "prec", "coeffs")

    def __init__(self, p: int, coeffs, prec: int):
        _require_odd_prime(p)
        self.p, self.prec = p, prec
        mod = p ** prec
        self.coeffs = tuple(int(c) % mod for c in coeffs) or (0,)

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: int, coeffs, prec: int, D: int | None = None) -> IwasawaSeries:
        coeffs = list(coeffs)
        if D is not None:
            coeffs = (coeffs + [0] * (D + 1))[: D + 1]
        return cls(p, coeffs, prec)

    @classmethod
    def one_plus_T_power(cls, p: int, e: int, prec: int, D: int) -> IwasawaSeries:
        return cls(p, [comb(e, j) for j in range(D + 1)], prec)

    def _match(self, other: IwasawaSeries) -> tuple[int, int]:
        if self.p != other.p:
            raise IwasawaError("different primes")
        return min(self.prec, other.prec), min(self.degree_bound, other.degree_bound)

    def __add__(self, other: IwasawaSeries) -> IwasawaSeries:
        prec, D = self._match(other)
        return IwasawaSeries(self.p, [a + b for a, b in zip(self.coeffs[: D + 1], other.coeffs[: D + 1])], prec)

    def __neg__(self) -> IwasawaSeries:
        return IwasawaSeries(self.p, [-a for a in self.coeffs], self.prec)

    def __sub__(self, other: IwasawaSeries) -> IwasawaSeries:
        return self + (-other)

    def __mul__(self, other) -> IwasawaSeries:
        if isinstance(other, int):
            return IwasawaSeries(self.p, [a * other for a in self.coeffs], self.prec)
        prec, D = self._match(other)
        c = kernels.series_mul(list(self.coeffs), list(other.coeffs), D + 1, self.p ** prec)
        return IwasawaSeries(self.p, c, prec)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        prec, D = self._match(other)
        mod = self.p ** prec
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs[: D + 1], other.coeffs[: D + 1]))

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        return f"IwasawaSeries(p={self.p}, prec={self.prec}, D={self.degree_bound}, [{shown}{', ...' if self.degree_bound > 5 else ''}])"

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.p != 0

    def inverse(self) -> IwasawaSeries:
        if not self.is_unit():
            raise PoleError("series is not a unit")
        mod = self.p ** self.prec
        D = self.degree_bound
        inv0 = pow(self.coeffs[0], -1, mod)
        out = [inv0] + [0] * D
        for j in range(1, D + 1):
            s = sum(self.coeffs[i] * out[j - i] for i in range(1, j + 1) if i <= D)
            out[j] = -s * inv0 % mod
        return IwasawaSeries(self.p, out, self.prec)

    def compose_affine(self, alpha: int, beta: int) -> IwasawaSeries:
        """f(alpha + beta T) for alpha = 0 mod p (so the substitution converges)."""
        if alpha % self.p:
            raise IwasawaError("substitution T -> alpha + beta T needs p | alpha")
        mod, D = self.p ** self.prec, self.degree_bound
        out = [0] * (D + 1)
        power = [1] + [0] * D  # (alpha + beta T)^i
        for c in self.coeffs:
            if c:
                for j in range(D + 1):
                    out[j] = (out[j] + c * power[j]) % mod
            nxt = [0] * (D + 1)
            for j in range(D + 1):
                if power[j]:
                    nxt[j] = (nxt[j] + alpha * power[j]) % mod
                    if j + 1 <= D:
                        nxt[j + 1] = (nxt[j + 1] + beta * power[j]) % mod
            power = nxt
        # truncating at D drops terms alpha^i for i > D, of valuation > D
        prec = min(self.prec, D + 1)
        return IwasawaSeries(self.p, out, prec)

    def evaluate(self, x):
        """f(x) for x with positive valuation (int mod p^prec, or a RamElement)."""
        mod = self.p ** self.prec
        if isinstance(x, int):
            if x % self.p:
                raise IwasawaError("evaluation point must have positive valuation")
            acc = 0
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % mod
            return PadicElement.from_int(acc, self.p, min(self.prec, self.degree_bound + 1))
        acc = x.ext.element([0])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {"p": self.p, "prec": self.prec, "gamma0_image": str(1 + self.p),
                "coefficients": [str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class IwasawaFraction:
    """g/h in the fraction field, compared by cross-multiplication."""

    num: IwasawaSeries
    den: IwasawaSeries

    def __eq__(self, other) -> bool:
        if not isinstance(other, IwasawaFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den


# -- operations ---------------------------------------------------------------------------

def tw(tau: GammaCharacter, f: IwasawaSeries) -> IwasawaSeries:
    """Twist gamma -> tau(gamma) gamma, i.e. T -> tau(gamma_0)(1+T) - 1."""
    if tau.a:
        raise IwasawaError("finite-order twists need zeta_{p^n} in the coefficients")
    u = tau.u % f.p ** f.prec
    return f.compose_affine(u - 1, u)


def augment(f: IwasawaSeries) -> PadicElement:
    return PadicElement.from_int(f.coeffs[0], f.p, f.prec)


def evaluate_character(tau: GammaCharacter, f, prec: int | None = None):
    """tau(f) = f(tau(gamma_0) - 1); IwasawaFraction values raise PoleError at zeros of h."""
    if isinstance(f, IwasawaFraction):
        num = evaluate_character(tau, f.num, prec)
        den = evaluate_character(tau, f.den, prec)
        if isinstance(den, PadicElement):
            if den.is_zero():
                raise PoleError("denominator vanishes at tau")
            return num / den
        raise IwasawaError("fractions are evaluated at Z_p-valued characters only")
    prec = prec or f.prec
    if tau.a == 0:
        return f.evaluate((tau.u - 1) % f.p ** f.prec)
    ring = RamCyc(UnramExt(f.p, 1, prec), tau.n)
    x = tau.image(ring, prec) - 1
    return f.evaluate(x)


def kernel_generator(p: int, n: int, prec: int, D: int) -> IwasawaSeries:
    """omega_n = (1+T)^{p^n} - 1."""
    c = [comb(p ** n, j) for j in range(D + 1)]
    c[0] -= 1
    return IwasawaSeries(p, c, prec)


def in_power_of_maximal_ideal(coeffs, p: int, k: int) -> bool:
    """Polynomial membership in (p, T)^k: every monomial has v_p(c_j) + j >= k."""
    for j, c in enumerate(coeffs):
        if c and j < k and valuation(c, p) + j < k:
            return False
    return True


@dataclass
class GroupRingElement:
    """sum_i w_i gamma_0^i in Z_p[G_n] modulo p^prec."""

    p: int
    n: int
    weights: tuple
    prec: int

    def evaluate(self, tau: GammaCharacter, ring: RamCyc | None = None):
        """tau of the element; exact for finite tau of level <= n, else mod p^{n+1}."""
        p, mod = self.p, self.p ** self.prec
        prec = self.prec if (tau.u == 1 and tau.level <= self.n) else min(self.prec, self.n + 1)
        if tau.a == 0:
            acc, x = 0, 1
            for w in self.weights:
                acc = (acc + w * x) % mod
                x = x * tau.u % mod
            return PadicElement.from_int(acc, p, prec)
        if ring is None:
            ring = RamCyc(UnramExt(p, 1, self.prec), tau.n)
        # group by i mod p^n(tau): only p^n ring operations
        size = p ** tau.n
        buckets = [0] * size
        x = 1
        for i, w in enumerate(self.weights):
            if w:
                buckets[i % size] = (buckets[i % size] + w * x) % mod
            x = x * tau.u % mod
        step = self.p ** (ring.m - tau.n)
        acc = ring.element([0])
        for j, b in enumerate(buckets):
            if b:
                acc = acc + ring.z(tau.a * j * step) * b
        return acc

    def project(self, m: int) -> GroupRingElement:
        if m > self.n:
            raise IwasawaError("cannot lift to a higher level")
        size = self.p ** m
        out = [0] * size
        for i, w in enumerate(self.weights):
            out[i % size] += w
        return GroupRingElement(self.p, m, tuple(x % self.p ** self.prec for x in out), self.prec)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        if (self.p, self.n) != (other.p, other.n):
            raise IwasawaError("different group rings")
        size, mod = self.p ** self.n, self.p ** min(self.prec, other.prec)
        out = [0] * size
        for i, a in enumerate(self.weights):
            if a:
                for j, b in enumerate(other.weights):
                    if b:
                        out[(i + j) % size] = (out[(i + j) % size] + a * b) % mod
        return GroupRingElement(self.p, self.n, tuple(out), min(self.prec, other.prec))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        mod = self.p ** min(self.prec, other.prec)
        return (self.p, self.n) == (other.p, other.n) and all(
            (a - b) % mod == 0 for a, b in zip(self.weights, other.weights))

    def to_series(self, D: int | None = None) -> IwasawaSeries:
        """The polynomial sum w_i (1+T)^i; coefficient j is exact mod p^{n - floor(log_p j)}."""
        p, size = self.p, self.p ** self.n
        D = size - 1 if D is None else D
        out = [0] * (D + 1)
        for i, w in enumerate(self.weights):
            if w:
                for j in range(min(i, D) + 1):
                    out[j] += w * comb(i, j)
        prec = min(self.prec, self.n - _ilog(max(D, 1), p)) if self.n else self.prec
        return IwasawaSeries(p, out, max(prec, 1))


def project_to_group_ring(f: IwasawaSeries, n: int) -> GroupRingElement:
    """Image of f in Z_p[G_n]: substitute T = gamma - 1 and reduce gamma^{p^n} = 1.

    The unseen tail T^{D+1}... lies in p^{floor((D+1)/p^n)} Z_p[G_n], which caps
    the precision.
    """
    p, size = f.p, f.p ** n
    D = f.degree_bound
    if D < size - 1 and n > 0:
        raise PrecisionError(f"truncation degree {D} < p^n - 1 = {size - 1}")
    prec = min(f.prec, (D + 1) // size) if n else f.prec
    if prec < 1:
        raise PrecisionError("no precision left after projection")
    mod = p ** prec
    out = [0] * size
    for j, c in enumerate(f.coeffs):
        if c:
            for i in range(j + 1):
                t = comb(j, i) * (-1) ** (j - i)
                out[i % size] = (out[i % size] + c * t) % mod
    return GroupRingElement(p, n, tuple(out), prec)


@dataclass
class WeierstrassData:
    mu: int
    lam: int
    distinguished: tuple
    unit: IwasawaSeries | None
    status: str


def weierstrass_data(f: IwasawaSeries) -> WeierstrassData:
    """f = p^mu P(T) U(T) with P distinguished of degree lambda."""
    p, mod = f.p, f.p ** f.prec
    nz = [c for c in f.coeffs if c]
    if not nz:
        raise IwasawaError("series vanishes at this precision")
    mu = min(valuation(c, p) for c in nz)
    g = [c // p ** mu for c in f.coeffs]
    prec = f.prec - mu
    lam = next((j for j, c in enumerate(g) if c % p), None)
    if lam is None:
        return WeierstrassData(mu, -1, (), None, AMBIGUOUS)
    mod = p ** prec
    D = len(g) - 1
    A = g[:lam]
    B = IwasawaSeries(p, g[lam:], prec)
    Binv = B.inverse()
    # Weierstrass division T^lam = q g + r, deg r < lam
    r = [0] * lam + [1] + [0] * (D - lam)
    q = [0] * (D + 1 - lam)
    gser = IwasawaSeries(p, g, prec)
    for _ in range(prec + 1):
        hi = r[lam:]
        if not any(c % mod for c in hi):
            break
        qi = IwasawaSeries(p, hi, prec) * Binv
        q = [(a + b) % mod for a, b in zip(q, qi.coeffs)]
        prod_ = IwasawaSeries(p, list(qi.coeffs) + [0] * lam, prec) * gser
        r = [(a - b) % mod for a, b in zip(r, prod_.coeffs)]
    P = tuple([(-c) % mod for c in r[:lam]] + [1])
    status = PASS if all(c % p == 0 for c in P[:-1]) else AMBIGUOUS
    qser = IwasawaSeries(p, q + [0] * lam, prec)
    unit = qser.inverse() if qser.is_unit() else None
    return WeierstrassData(mu, lam, P, unit, status)
