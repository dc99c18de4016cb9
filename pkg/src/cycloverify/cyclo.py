"""Exact arithmetic in Q(zeta_N) (x) Q(zeta_d).

Elements are stored in the power basis zeta_N^i zeta_d^j (i < phi(N),
j < phi(d)) as integer numerators over one positive common denominator.
Multiplication lifts to Z[x, y]/(x^N - 1, y^d - 1), multiplies there, and
reduces modulo Phi_N(x), Phi_d(y).  Galois automorphisms permute monomials of
the lifted representation, so conjugates of sparse elements stay sparse.

``sigma_a`` always means zeta_N -> zeta_N^a.  See ``chars`` for how this relates
to the geometric Frobenius.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from . import kernels
from .arith import cyclotomic_poly, euler_phi, factorize, is_prime, lcm, units
from .chars import DirichletCharacter


class CyclotomicError(ValueError):
    pass


@lru_cache(maxsize=None)
def _phi_list(n: int) -> list[int]:
    return list(cyclotomic_poly(n))


def _normalise(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        if g == 1:
            break
        if x:
            g = gcd(g, x)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


class CycElement:
    """An element of Q(zeta_level) (x) Q(zeta_coeff_order)."""

    __slots__ = ("level", "coeff_order", "num", "den")

    def __init__(self, level: int, coeff_order: int, num: Iterable[int], den: int = 1):
        num = list(num)
        size = euler_phi(level) * euler_phi(coeff_order)
        if len(num) != size:
            raise CyclotomicError(f"expected {size} coordinates, got {len(num)}")
        self.level = level
        self.coeff_order = coeff_order
        self.num, self.den = _normalise(num, den)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, level: int = 1, coeff_order: int = 1) -> CycElement:
        return cls(level, coeff_order, [0] * (euler_phi(level) * euler_phi(coeff_order)))

    @classmethod
    def from_rational(cls, q, level: int = 1, coeff_order: int = 1) -> CycElement:
        q = Fraction(q)
        num = [0] * (euler_phi(level) * euler_phi(coeff_order))
        num[0] = q.numerator
        return cls(level, coeff_order, num, q.denominator)

    @classmethod
    def one(cls, level: int = 1, coeff_order: int = 1) -> CycElement:
        return cls.from_rational(1, level, coeff_order)

    @classmethod
    def root_of_unity(cls, level: int, exponent: int = 1, coeff_order: int = 1) -> CycElement:
        """zeta_level^exponent (x) 1."""
        full = [0] * (level * coeff_order)
        full[(exponent % level) * coeff_order] = 1
        return cls._from_full(level, coeff_order, full, 1)

    @classmethod
    def coeff_root(cls, level: int, coeff_order: int, exponent: int = 1) -> CycElement:
        """1 (x) zeta_coeff_order^exponent."""
        full = [0] * (level * coeff_order)
        full[exponent % coeff_order] = 1
        return cls._from_full(level, coeff_order, full, 1)

    @classmethod
    def _from_full(cls, level: int, coeff_order: int, full: list[int], den: int) -> CycElement:
        red = kernels.reduce2(full, level, coeff_order, _phi_list(level), _phi_list(coeff_order))
        return cls(level, coeff_order, red, den)

    def _full(self) -> list[int]:
        """Lift to the N x d monomial array of Z[x, y]/(x^N - 1, y^d - 1)."""
        N, d = self.level, self.coeff_order
        dn, dd = euler_phi(N), euler_phi(d)
        full = [0] * (N * d)
        num = self.num
        for i in range(dn):
            row = i * dd
            base = i * d
            for j in range(dd):
                full[base + j] = num[row + j]
        return full

    # -- structure --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.level, self.coeff_order)

    def coordinates(self) -> list[Fraction]:
        return [Fraction(x, self.den) for x in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError("element is not rational")
        return Fraction(self.num[0], self.den)

    def raise_level(self, M: int) -> CycElement:
        N, d = self.level, self.coeff_order
        if M % N:
            raise CyclotomicError(f"level {N} does not divide {M}")
        if M == N:
            return self
        k = M // N
        full = [0] * (M * d)
        src = self._full()
        for i in range(euler_phi(N)):
            for j in range(euler_phi(d)):
                v = src[i * d + j]
                if v:
                    full[i * k * d + j] = v
        return CycElement._from_full(M, d, full, self.den)

    def raise_coeff(self, D: int) -> CycElement:
        N, d = self.level, self.coeff_order
        if D % d:
            raise CyclotomicError(f"coefficient order {d} does not divide {D}")
        if D == d:
            return self
        k = D // d
        full = [0] * (N * D)
        src = self._full()
        for i in range(euler_phi(N)):
            for j in range(euler_phi(d)):
                v = src[i * d + j]
                if v:
                    full[i * D + j * k] = v
        return CycElement._from_full(N, D, full, self.den)

    def promote(self, level: int, coeff_order: int) -> CycElement:
        return self.raise_level(level).raise_coeff(coeff_order)

    def swap_factors(self) -> CycElement:
        """Q(zeta_N) (x) Q(zeta_d) -> Q(zeta_d) (x) Q(zeta_N)."""
        N, d = self.level, self.coeff_order
        dn, dd = euler_phi(N), euler_phi(d)
        num = [self.num[i * dd + j] for j in range(dd) for i in range(dn)]
        return CycElement(d, N, num, self.den)

    def as_coefficient(self, level: int) -> CycElement:
        """View x in Q(zeta_d) (coefficient order 1) as 1 (x) x at ``level``."""
        if self.coeff_order != 1:
            raise CyclotomicError("expected a plain Q(zeta_d) element")
        return self.swap_factors().raise_level(level)

    def descend(self, m: int) -> CycElement:
        """Rewrite an element of level M as an element of level m | M.

        Raises CyclotomicError if the element does not lie in Q(zeta_m) (x) E.
        """
        M, d = self.level, self.coeff_order
        if M % m:
            raise CyclotomicError(f"{m} does not divide level {M}")
        if m == M:
            return self
        dd = euler_phi(d)
        if all(not any(self.num[i * dd:(i + 1) * dd]) for i in range(1, euler_phi(M))):
            dm = euler_phi(m)
            return CycElement(m, d, list(self.num[:dd]) + [0] * ((dm - 1) * dd), self.den)
        k = M // m
        # split k = k1 * k2 with the primes of k1 dividing m and gcd(k2, m k1) = 1
        k2 = 1
        for q, e in factorize(k).items():
            if m % q:
                k2 *= q**e
        k1 = k // k2
        x = self
        if k2 > 1:
            x = x._descend_coprime(m * k1, k2)
        if k1 > 1:
            x = x._descend_sharing(m)
        return x

    def _descend_sharing(self, m: int) -> CycElement:
        # every prime of k = M/m divides m, so Phi_M(x) = Phi_m(x^k)
        M, d = self.level, self.coeff_order
        k = M // m
        dd, dm = euler_phi(d), euler_phi(m)
        num = [0] * (dm * dd)
        for i in range(euler_phi(M)):
            for j in range(dd):
                v = self.num[i * dd + j]
                if not v:
                    continue
                if i % k:
                    raise CyclotomicError(f"element does not lie in level {m}")
                num[(i // k) * dd + j] = v
        return CycElement(m, d, num, self.den)

    def _descend_coprime(self, A: int, B: int) -> CycElement:
        # Q(zeta_AB) = Q(zeta_A) (x) Q(zeta_B) for coprime A, B; zeta_AB = zeta_A^s zeta_B^t
        M, d = self.level, self.coeff_order
        s = pow(B, -1, A) if A > 1 else 0
        t = pow(A, -1, B)
        dd, dA, dB = euler_phi(d), euler_phi(A), euler_phi(B)
        phiA, phiB = _phi_list(A), _phi_list(B)
        num = [0] * (dA * dd)
        for j in range(dd):
            full = [0] * (A * B)
            for n in range(euler_phi(M)):
                v = self.num[n * dd + j]
                if v:
                    full[(s * n % A) * B + (t * n % B)] += v
            red = kernels.reduce2(full, A, B, phiA, phiB)
            for i in range(dA):
                if any(red[i * dB + 1:(i + 1) * dB]):
                    raise CyclotomicError(f"element does not lie in level {A}")
                num[i * dd + j] = red[i * dB]
        return CycElement(A, d, num, self.den)

    # -- ring operations --------------------------------------------------
    def _coerce(self, other) -> CycElement:
        if isinstance(other, CycElement):
            return other
        if isinstance(other, (int, Fraction)):
            return CycElement.from_rational(other, self.level, self.coeff_order)
        return NotImplemented

    @staticmethod
    def _common(a: CycElement, b: CycElement) -> tuple[CycElement, CycElement]:
        if a.shape == b.shape:
            return a, b
        L = lcm(a.level, b.level)
        D = lcm(a.coeff_order, b.coeff_order)
        return a.promote(L, D), b.promote(L, D)

    def __add__(self, other) -> CycElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycElement(a.level, a.coeff_order,
                          [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self) -> CycElement:
        return CycElement(self.level, self.coeff_order, [-x for x in self.num], self.den)

    def __sub__(self, other) -> CycElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycElement:
        return (-self) + other

    def __mul__(self, other) -> CycElement:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycElement(self.level, self.coeff_order,
                              [x * q.numerator for x in self.num], self.den * q.denominator)
        if not isinstance(other, CycElement):
            return NotImplemented
        a, b = self._common(self, other)
        fa, fb = a._full(), b._full()
        if sum(1 for v in fa if v) < sum(1 for v in fb if v):
            fa, fb = fb, fa
        prod = kernels.cyclic_mul2(fa, fb, a.level, a.coeff_order)
        return CycElement._from_full(a.level, a.coeff_order, prod, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycElement:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycElement:
        return self.inverse() * other

    def __pow__(self, k: int) -> CycElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycElement.one(self.level, self.coeff_order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other) if not isinstance(other, CycElement) else other
        if other is NotImplemented:
            return False
        a, b = self._common(self, other)
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        return hash((self.level, self.coeff_order, self.num, self.den))

    def __repr__(self) -> str:
        return f"CycElement(level={self.level}, coeff_order={self.coeff_order}, coords={[str(c) for c in self.coordinates()]})"

    # -- Galois action ----------------------------------------------------
    def _permuted_full(self, a: int = 1, b: int = 1) -> list[int]:
        N, d = self.level, self.coeff_order
        src = self._full()
        full = [0] * (N * d)
        for i in range(euler_phi(N)):
            ii = (a * i) % N
            for j in range(euler_phi(d)):
                v = src[i * d + j]
                if v:
                    full[ii * d + (b * j) % d] += v
        return full

    def galois(self, a: int) -> CycElement:
        """sigma_a: zeta_N -> zeta_N^a, identity on the coefficient factor."""
        if gcd(a, self.level) != 1:
            raise CyclotomicError(f"{a} is not a unit mod {self.level}")
        return CycElement._from_full(self.level, self.coeff_order, self._permuted_full(a, 1), self.den)

    def coeff_galois(self, b: int) -> CycElement:
        """zeta_d -> zeta_d^b on the coefficient factor."""
        if gcd(b, self.coeff_order) != 1:
            raise CyclotomicError(f"{b} is not a unit mod {self.coeff_order}")
        return CycElement._from_full(self.level, self.coeff_order, self._permuted_full(1, b), self.den)

    def complex_conjugate(self) -> CycElement:
        return CycElement._from_full(self.level, self.coeff_order,
                                     self._permuted_full(-1, -1), self.den)

    def _relative_group(self, m: int) -> list[int]:
        M = self.level
        if M % m:
            raise CyclotomicError(f"{m} does not divide level {M}")
        return [a for a in units(M) if a % m == 1 % m] if M > 1 else [1]

    def norm_to(self, m: int, descend: bool = True) -> CycElement:
        """Norm from Q(zeta_M) (x) E down to Q(zeta_m) (x) E."""
        M, d = self.level, self.coeff_order
        acc = [0] * (M * d)
        acc[0] = 1
        den = 1
        for a in self._relative_group(m):
            acc = kernels.cyclic_mul2(acc, self._permuted_full(a, 1), M, d)
            den *= self.den
        out = CycElement._from_full(M, d, acc, den)
        return out.descend(m) if descend else out

    def trace_to(self, m: int, descend: bool = True) -> CycElement:
        M, d = self.level, self.coeff_order
        acc = [0] * (M * d)
        for a in self._relative_group(m):
            for k, v in enumerate(self._permuted_full(a, 1)):
                if v:
                    acc[k] += v
        out = CycElement._from_full(M, d, acc, self.den)
        return out.descend(m) if descend else out

    def trace_to_Q(self) -> CycElement:
        return self.trace_to(1)

    def absolute_norm(self) -> Fraction:
        """Product of all conjugates over both factors (a rational number)."""
        N, d = self.level, self.coeff_order
        acc = [0] * (N * d)
        acc[0] = 1
        den = 1
        for a in units(N) if N > 1 else [1]:
            for b in units(d) if d > 1 else [1]:
                acc = kernels.cyclic_mul2(acc, self._permuted_full(a, b), N, d)
                den *= self.den
        out = CycElement._from_full(N, d, acc, den)
        return out.to_fraction()

    def inverse(self) -> CycElement:
        N, d = self.level, self.coeff_order
        acc = [0] * (N * d)
        acc[0] = 1
        count = 0
        for a in units(N) if N > 1 else [1]:
            for b in units(d) if d > 1 else [1]:
                if a % N == 1 % N and b % d == 1 % d:
                    continue
                acc = kernels.cyclic_mul2(acc, self._permuted_full(a, b), N, d)
                count += 1
        others = CycElement._from_full(N, d, acc, self.den ** count)
        total = (others * self)
        if total.is_zero() or not total.is_rational():
            raise ZeroDivisionError("element is not invertible")
        return others * (1 / total.to_fraction())

    # -- numerics ---------------------------------------------------------
    def to_complex(self, a: int = 1, b: int = 1):
        """Image under zeta_N -> e^{2 pi i a/N}, zeta_d -> e^{2 pi i b/d} (mpmath)."""
        import mpmath

        N, d = self.level, self.coeff_order
        dd = euler_phi(d)
        total = mpmath.mpc(0)
        for i in range(euler_phi(N)):
            zi = mpmath.expjpi(mpmath.mpf(2 * a * i) / N)
            for j in range(dd):
                v = self.num[i * dd + j]
                if v:
                    total += v * zi * mpmath.expjpi(mpmath.mpf(2 * b * j) / d)
        return total / self.den

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"level": self.level, "coeff_order": self.coeff_order,
                "coordinates": [str(c) for c in self.coordinates()]}

    @classmethod
    def from_json(cls, obj: dict) -> CycElement:
        coords = [Fraction(c) for c in obj["coordinates"]]
        den = 1
        for c in coords:
            den = lcm(den, c.denominator)
        return cls(obj["level"], obj["coeff_order"],
                   [c.numerator * (den // c.denominator) for c in coords], den)


# -- named elements ------------------------------------------------------------

def zeta(N: int, exponent: int = 1) -> CycElement:
    return CycElement.root_of_unity(N, exponent)


def galois_apply(a: int, x: CycElement) -> CycElement:
    return x.galois(a)


def norm_to_sublevel(x: CycElement, m: int) -> CycElement:
    return x.norm_to(m)


def trace_to_sublevel(x: CycElement, m: int) -> CycElement:
    return x.trace_to(m)


def trace_to_Q(x: CycElement) -> CycElement:
    return x.trace_to(1)


def character_value(chi: DirichletCharacter, a: int, level: int = 1, coeff_order: int | None = None
                    ) -> CycElement:
    """1 (x) chi(a) as an element of Q(zeta_level) (x) Q(zeta_D)."""
    D = coeff_order or chi.order
    e = chi.exponent_in(a, D)
    if e is None:
        return CycElement.zero(level, D)
    return CycElement.coeff_root(level, D, e)


def gauss_sum(chi: DirichletCharacter) -> CycElement:
    """tau(chi) = sum_a chi(a) zeta_N^a for primitive chi, in Q(zeta_N) (x) Q(zeta_d)."""
    if not chi.is_primitive:
        raise CyclotomicError("Gauss sums are only defined here for primitive characters")
    N, d = chi.modulus, chi.order
    full = [0] * (N * d)
    for a in range(N):
        e = chi.exponent(a)
        if e is not None:
            full[(a % N) * d + e] += 1
    return CycElement._from_full(N, d, full, 1)


def projector(psi: DirichletCharacter, x: CycElement) -> CycElement:
    """p_psi(x) = (1/#G) sum_{sigma} psi^{-1}(sigma) sigma(x).

    With the geometric-Frobenius identification psi(sigma_a) = psi(a)^{-1}, so
    the sum is (1/phi(M)) sum_a psi(a) sigma_a(x).  Thus p_{chi^{-1}}(zeta_N) is
    tau(chi^{-1})/phi(N) and sigma_a p_psi = psi(a)^{-1} p_psi.
    """
    M = x.level
    if M % psi.conductor:
        raise CyclotomicError("conductor must divide the level")
    D = lcm(x.coeff_order, psi.order)
    x = x.raise_coeff(D)
    src = x._full()
    dn, dd = euler_phi(M), euler_phi(D)
    acc = [0] * (M * D)
    prim = psi.primitive()
    group = units(M) if M > 1 else [1]
    for a in group:
        e = prim.exponent_in(a, D)
        if e is None:
            continue
        for i in range(dn):
            ii = (a * i) % M
            for j in range(dd):
                v = src[i * D + j]
                if v:
                    acc[ii * D + (j + e) % D] += v
    return CycElement._from_full(M, D, acc, x.den * len(group))


def cyclotomic_unit(m: int) -> tuple[CycElement, dict]:
    """1 - zeta_m with a certificate from its absolute norm."""
    if m < 2:
        raise CyclotomicError("m must be at least 2")
    u = CycElement.one(m) - zeta(m)
    n = u.norm_to(1).to_fraction()
    fac = factorize(m)
    cert = {"m": m, "norm": str(n), "is_unit": abs(n) == 1,
            "prime_power": len(fac) == 1}
    if cert["is_unit"] == cert["prime_power"]:
        raise AssertionError(f"unexpected unit status for 1 - zeta_{m}")
    return u, cert


def check_norm_relation(m: int, l: int) -> dict:
    """Norm_{Q(zeta_ml)/Q(zeta_m)}(1 - zeta_ml) against the three-case table.

    The twisted case is read as (1 - zeta_m) / sigma_l^{-1}(1 - zeta_m), i.e. the
    geometric Frobenius Fr_l acts as zeta_m -> zeta_m^{l^{-1}}.
    """
    if not is_prime(l):
        raise CyclotomicError(f"{l} is not prime")
    M = m * l
    u = CycElement.one(M) - zeta(M)
    lhs = u.norm_to(m, descend=False)
    if m == 1:
        case = "m=1"
        rhs = CycElement.from_rational(l, 1)
    elif m % l == 0:
        case = "l|m"
        rhs = CycElement.one(m) - zeta(m)
    else:
        case = "l∤m"
        base = CycElement.one(m) - zeta(m)
        rhs = base / base.galois(pow(l, -1, m))
    ok = lhs == rhs.raise_level(M)
    if ok:
        # certify that the norm really has level-m coordinates
        ok = lhs.descend(m) == rhs
    return {"m": m, "l": l, "case": case, "pass": ok,
            "rhs": rhs.to_json()}


def norm_relation_grid(bound: int) -> list[dict]:
    from .arith import primes_upto

    out = []
    for l in primes_upto(bound):
        for m in range(1, bound // l + 1):
            out.append(check_norm_relation(m, l))
    return out
