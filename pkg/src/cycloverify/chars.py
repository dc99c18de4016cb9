"""Dirichlet characters with exact values in a fixed cyclotomic coefficient ring.

A character mod N of order d is stored as a table of exponents: chi(a) = zeta_d^e
for units a, and ``None`` (value 0) for non-units.  zeta_d means exp(2 pi i/d)
under the standard complex embedding.

The Galois identification follows the geometric-Frobenius normalization:
the automorphism sigma_a : zeta_N -> zeta_N^a corresponds to a^{-1}, so a
character viewed on the Galois group satisfies chi(sigma_a) = chi(a)^{-1} and
chi(Fr_l) = chi(l) for the geometric Frobenius Fr_l = sigma_l^{-1}.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import (
    crt,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    lcm,
    primitive_root,
)


class CharacterError(ValueError):
    pass


class UnsupportedPrimeError(ValueError):
    """Raised for p = 2 anywhere a p-dependent object is built."""


@lru_cache(maxsize=None)
def unit_group(N: int) -> tuple[tuple[int, ...], tuple[int, ...], dict[int, tuple[int, ...]]]:
    """Generators, their orders, and a discrete-log table for (Z/N)^*.

    Generators are CRT lifts of the smallest generator of each prime-power
    factor (for 2^k, k >= 3, the pair -1, 5).
    """
    if N < 1:
        raise CharacterError(f"modulus must be positive, got {N}")
    fac = sorted(factorize(N).items()) if N > 1 else []
    moduli = [q**k for q, k in fac]
    gens: list[int] = []
    orders: list[int] = []

    def lift(local: int, idx: int) -> int:
        res = [1] * len(moduli)
        res[idx] = local % moduli[idx]
        return crt(res, moduli) if moduli else 1

    for idx, (q, k) in enumerate(fac):
        qk = q**k
        if q == 2:
            if k == 1:
                continue
            if k == 2:
                gens.append(lift(3, idx))
                orders.append(2)
                continue
            gens.append(lift(-1, idx))
            orders.append(2)
            gens.append(lift(5, idx))
            orders.append(2 ** (k - 2))
            continue
        gens.append(lift(primitive_root(qk), idx))
        orders.append(euler_phi(qk))

    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        a = 1
        for g, e in zip(gens, exps):
            a = a * pow(g, e, N) % N if N > 1 else 0
        dlog[a % N if N > 1 else 0] = exps
    if len(dlog) != euler_phi(N):
        raise AssertionError(f"bad generator set for {N}")
    return tuple(gens), tuple(orders), dlog


class DirichletCharacter:
    """A Dirichlet character mod ``modulus`` with values zeta_order^exponent."""

    __slots__ = ("modulus", "order", "_exps", "conductor", "_hash")

    def __init__(self, modulus: int, order: int, exps: dict[int, int] | tuple):
        if isinstance(exps, dict):
            table = tuple(exps.get(a % modulus) if gcd(a, modulus) == 1 else None
                          for a in range(modulus))
        else:
            table = tuple(exps)
        # normalise to the exact order
        vals = [e % order for e in table if e is not None]
        g = order
        for e in vals:
            g = gcd(g, e)
        exact = order // g if vals else 1
        if exact != order:
            table = tuple(None if e is None else (e % order) // (order // exact) for e in table)
        else:
            table = tuple(None if e is None else e % order for e in table)
        self.modulus = modulus
        self.order = exact
        self._exps = table
        self._check_multiplicative()
        self.conductor = self._compute_conductor()
        self._hash = hash((self.modulus, self._exps))

    def _check_multiplicative(self) -> None:
        N, d, t = self.modulus, self.order, self._exps
        if N == 1:
            if t != (0,):
                raise CharacterError("character mod 1 must be trivial")
            return
        gens, _, _ = unit_group(N)
        for a in range(N):
            if t[a] is None:
                continue
            for g in gens:
                if (t[a] + t[g]) % d != t[a * g % N]:
                    raise CharacterError("table is not multiplicative")
        if t[1] != 0:
            raise CharacterError("chi(1) must be 1")

    def _compute_conductor(self) -> int:
        N, t = self.modulus, self._exps
        for f in divisors(N):
            if all(t[a] == 0 for a in range(N) if t[a] is not None and a % f == 1 % f):
                return f
        return N

    # -- evaluation -------------------------------------------------------
    def exponent(self, a: int) -> int | None:
        """e with chi(a) = zeta_order^e, or None when gcd(a, N) > 1."""
        if self.modulus == 1:
            return 0
        return self._exps[a % self.modulus]

    def exponent_in(self, a: int, D: int) -> int | None:
        """Exponent of chi(a) relative to zeta_D; requires order | D."""
        if D % self.order:
            raise CharacterError(f"order {self.order} does not divide {D}")
        e = self.exponent(a)
        return None if e is None else e * (D // self.order) % D

    def angle(self, a: int) -> Fraction | None:
        e = self.exponent(a)
        return None if e is None else Fraction(e, self.order)

    def complex_value(self, a: int):
        import mpmath

        e = self.exponent(a)
        if e is None:
            return mpmath.mpc(0)
        return mpmath.expjpi(mpmath.mpf(2 * e) / self.order)

    def galois_exponent(self, a: int) -> int | None:
        """Exponent of chi(sigma_a) where sigma_a(zeta) = zeta^a."""
        e = self.exponent(a)
        return None if e is None else (-e) % self.order

    # -- invariants -------------------------------------------------------
    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def parity(self) -> int:
        """+1 for even, -1 for odd."""
        if self.modulus <= 2:
            return 1
        e = self.exponent(-1)
        return 1 if e == 0 else -1

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def generator_images(self) -> tuple[int, ...]:
        gens, orders, _ = unit_group(self.modulus)
        out = []
        for g, o in zip(gens, orders):
            e = self.exponent(g)
            out.append(e * o // self.order)
        return tuple(out)

    # -- algebra ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, DirichletCharacter) and self.modulus == other.modulus
                and self._exps == other._exps)

    def __hash__(self) -> int:
        return self._hash

    def same_primitive(self, other: DirichletCharacter) -> bool:
        return self.primitive() == other.primitive()

    def induce(self, M: int) -> DirichletCharacter:
        if M % self.modulus:
            raise CharacterError(f"{self.modulus} does not divide {M}")
        table = {a: self.exponent(a) for a in range(M) if gcd(a, M) == 1}
        return DirichletCharacter(M, self.order, table)

    def primitive(self) -> DirichletCharacter:
        f, N = self.conductor, self.modulus
        if f == N:
            return self
        table = {}
        for b in range(f):
            if gcd(b, f) != 1:
                continue
            a = b if f > 1 else 1
            while gcd(a, N) != 1:
                a += f
            table[b] = self.exponent(a)
        if f == 1:
            table = {0: 0}
        return DirichletCharacter(f, self.order, table)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        M = lcm(self.modulus, other.modulus)
        D = lcm(self.order, other.order)
        table = {}
        for a in range(M):
            if gcd(a, M) != 1:
                continue
            table[a] = (self.exponent_in(a, D) + other.exponent_in(a, D)) % D
        if M == 1:
            table = {0: 0}
        return DirichletCharacter(M, D, table)

    def __pow__(self, k: int) -> DirichletCharacter:
        table = {a: (e * k) % self.order for a, e in enumerate(self._exps) if e is not None}
        return DirichletCharacter(self.modulus, self.order, table)

    def inverse(self) -> DirichletCharacter:
        return self ** (-1)

    def __repr__(self) -> str:
        return (f"DirichletCharacter(modulus={self.modulus}, order={self.order}, "
                f"images={list(self.generator_images)})")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"modulus": self.modulus, "order": self.order,
                "generator_images": list(self.generator_images)}

    @classmethod
    def from_json(cls, obj: dict) -> DirichletCharacter:
        chi = make_character(obj["modulus"], obj["generator_images"])
        if "order" in obj and obj["order"] != chi.order:
            raise CharacterError(f"declared order {obj['order']} != computed {chi.order}")
        return chi


def make_character(N: int, generator_images: list[int] | tuple[int, ...]) -> DirichletCharacter:
    """Build chi mod N from exponents e_i meaning chi(g_i) = exp(2 pi i e_i / ord(g_i))."""
    gens, orders, dlog = unit_group(N)
    if len(generator_images) != len(gens):
        raise CharacterError(
            f"(Z/{N})^* has {len(gens)} generators with orders {orders}; "
            f"got {len(generator_images)} images")
    D = 1
    for o in orders:
        D = lcm(D, o)
    table = {}
    for a, logs in dlog.items():
        table[a] = sum(e * l * (D // o) for e, l, o in zip(generator_images, logs, orders)) % D
    return DirichletCharacter(N, D, table)


def trivial_character(N: int = 1) -> DirichletCharacter:
    return make_character(N, [0] * len(unit_group(N)[0]))


def all_characters(N: int) -> list[DirichletCharacter]:
    _, orders, _ = unit_group(N)
    return [make_character(N, list(img)) for img in itertools.product(*(range(o) for o in orders))]


def primitive_characters(max_conductor: int, parity: int | None = None) -> list[DirichletCharacter]:
    """All primitive characters of conductor <= max_conductor in a fixed order."""
    out = []
    for N in range(1, max_conductor + 1):
        for chi in all_characters(N):
            if chi.is_primitive and (parity is None or chi.parity == parity):
                out.append(chi)
    return out


def kronecker_symbol(D: int, n: int) -> int:
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D / n) for odd n
    a = D % n if n > 1 else 0
    if n == 1:
        return result
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_character(D: int) -> DirichletCharacter:
    """The character a -> (D/a) mod |D| for a fundamental discriminant D."""
    N = abs(D)
    if D == 1:
        return trivial_character(1)
    table = {}
    for a in range(N):
        if gcd(a, N) != 1:
            continue
        k = kronecker_symbol(D, a)
        table[a] = 0 if k == 1 else 1
    chi = DirichletCharacter(N, 2, table)
    if not chi.is_primitive:
        raise CharacterError(f"{D} is not a fundamental discriminant")
    return chi


def parse_character(text: str | dict) -> DirichletCharacter:
    """Accept the JSON object form or the shorthand ``kronecker:D``."""
    if isinstance(text, dict):
        return DirichletCharacter.from_json(text)
    text = text.strip()
    if text.startswith("kronecker:"):
        return kronecker_character(int(text.split(":", 1)[1]))
    if text in ("trivial", "1"):
        return trivial_character(1)
    return DirichletCharacter.from_json(json.loads(text))


def _require_odd_prime(p: int) -> None:
    if p == 2:
        raise UnsupportedPrimeError("p = 2 is not supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def teichmuller_character(p: int) -> DirichletCharacter:
    """omega mod p: the smallest primitive root g maps to zeta_{p-1}.

    Under the fixed embedding zeta_{p-1} -> teichmuller(g) in Z_p this gives
    omega(a) = the Teichmuller lift of a.
    """
    _require_odd_prime(p)
    g = primitive_root(p)
    table = {}
    x = 1
    for e in range(p - 1):
        table[x] = e
        x = x * g % p
    return DirichletCharacter(p, p - 1, table)


def decompose_first_second_kind(psi: DirichletCharacter, p: int
                                ) -> tuple[DirichletCharacter, DirichletCharacter]:
    """Split psi = theta * tau, theta of the first kind, tau of the second kind.

    tau factors through 1 + pZ_p (p-power order and conductor); theta has
    conductor dividing N'p.
    """
    _require_odd_prime(p)
    psi = psi.primitive()
    N = psi.modulus
    m = 0
    Np = N
    while Np % p == 0:
        Np //= p
        m += 1
    if m == 0:
        return psi, trivial_character(1)
    pm = p**m
    D = psi.order
    theta_tab = {}
    M1 = Np * p
    for a in range(M1):
        if gcd(a, M1) != 1:
            continue
        # representative of a mod N' whose p-part is the Teichmuller lift mod p^m
        w = pow(a % p, p ** (m - 1), pm)
        rep = crt([a % Np, w], [Np, pm]) if Np > 1 else w
        theta_tab[a] = psi.exponent(rep)
    theta = DirichletCharacter(M1, D, theta_tab).primitive()
    tau_tab = {}
    for a in range(pm):
        if a % p == 0:
            continue
        w = pow(a, p ** (m - 1), pm)
        u = a * pow(w, -1, pm) % pm
        rep = crt([1, u], [Np, pm]) if Np > 1 else u
        tau_tab[a] = psi.exponent(rep)
    tau = DirichletCharacter(pm, D, tau_tab).primitive()
    return theta, tau


def euler_factor(chi: DirichletCharacter, v: int, r: int, dual: bool = False):
    """1 - chi(v) v^{-r}, or with ``dual`` 1 - chi^{-1}(v) v^{r-1}, exactly.

    Returns an element of Q(zeta_order) as a ``cyclo.CycElement``.
    """
    from .cyclo import CycElement

    d = chi.order
    e = chi.primitive().exponent(v)
    if e is None:
        return CycElement.one(d)
    if dual:
        e = (-e) % d
        scale = Fraction(v) ** (r - 1)
    else:
        scale = Fraction(v) ** (-r)
    return CycElement.one(d) - CycElement.root_of_unity(d, e) * scale
