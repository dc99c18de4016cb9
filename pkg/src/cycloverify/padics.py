"""Fixed-modulus p-adic arithmetic with explicit valuation and precision.

A :class:`PadicElement` is ``p**v * u`` with ``u`` a unit known modulo
``p**(prec - v)``; ``prec`` is the absolute precision. Extension elements are
integral coordinate vectors modulo ``p**prec`` over a power basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .arith import cyclotomic_poly, euler_phi, is_prime, multiplicative_order, units, valuation
from .report import FAIL, PASS, VerificationReport

DEFAULT_PREC = 40
INF = float("inf")


class PrecisionError(ArithmeticError):
    pass


class PadicError(ValueError):
    pass


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise PadicError(f"p = {p} is not an odd prime")


# -- scalars ---------------------------------------------------------------------

class PadicElement:
    __slots__ = ("p", "v", "unit", "prec")

    def __init__(self, p: int, v: int | float, unit: int, prec: int):
        self.p, self.prec = p, prec
        if v == INF or v >= prec:
            self.v, self.unit = INF, 0
            return
        if unit % p == 0:
            raise PadicError("unit part must be prime to p")
        self.v = v
        self.unit = unit % p ** (prec - v)

    # construction
    @classmethod
    def from_int(cls, n: int, p: int, prec: int = DEFAULT_PREC) -> PadicElement:
        if n % p ** prec == 0:
            return cls(p, INF, 0, prec)
        v = valuation(n, p)
        return cls(p, v, n // p ** v, prec)

    @classmethod
    def from_rational(cls, q, p: int, prec: int = DEFAULT_PREC) -> PadicElement:
        """q as an element with absolute precision ``prec`` (or relative, if v < 0)."""
        q = Fraction(q)
        if q == 0:
            return cls(p, INF, 0, prec)
        v = valuation(q.numerator, p) - valuation(q.denominator, p)
        num = q.numerator // p ** max(0, v)
        den = q.denominator // p ** max(0, -v)
        prec = max(prec, v + 1)
        rel = prec - v
        return cls(p, v, num * pow(den, -1, p ** rel), prec)

    @classmethod
    def zero(cls, p: int, prec: int = DEFAULT_PREC) -> PadicElement:
        return cls(p, INF, 0, prec)

    # inspection
    def is_zero(self) -> bool:
        return self.v == INF

    @property
    def relative_precision(self) -> int:
        return 0 if self.is_zero() else self.prec - self.v

    def residue(self) -> int:
        """Image in Z/p^prec; requires non-negative valuation."""
        if self.is_zero():
            return 0
        if self.v < 0:
            raise PadicError("element is not integral")
        return self.unit * self.p ** self.v % self.p ** self.prec

    def lift(self) -> Fraction:
        """A rational representative p^v * u."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.v

    def _check(self, other: PadicElement) -> None:
        if self.p != other.p:
            raise PadicError("mixing different primes")

    def _coerce(self, other) -> PadicElement:
        if isinstance(other, PadicElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return PadicElement.from_rational(other, self.p, max(self.prec, 1))
        return NotImplemented

    # arithmetic
    def __add__(self, other) -> PadicElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return PadicElement._reprec(other, prec)
        if other.is_zero():
            return PadicElement._reprec(self, prec)
        base = min(self.v, other.v)
        p = self.p
        n = self.unit * p ** (self.v - base) + other.unit * p ** (other.v - base)
        n %= p ** (prec - base)
        if n == 0:
            return PadicElement(p, INF, 0, prec)
        w = valuation(n, p)
        return PadicElement(p, base + w, n // p ** w, prec)

    @staticmethod
    def _reprec(x: PadicElement, prec: int) -> PadicElement:
        return PadicElement(x.p, x.v, x.unit, prec)

    __radd__ = __add__

    def __neg__(self) -> PadicElement:
        return PadicElement(self.p, self.v, -self.unit, self.prec)

    def __sub__(self, other) -> PadicElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> PadicElement:
        return (-self) + other

    def __mul__(self, other) -> PadicElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.is_zero() or other.is_zero():
            # 0 known mod p^a times y with v(y) = w is 0 known mod p^(a + w)
            cand = []
            if self.is_zero():
                cand.append(self.prec + (0 if other.is_zero() else other.v))
            if other.is_zero():
                cand.append(other.prec + (0 if self.is_zero() else self.v))
            return PadicElement(p, INF, 0, min(cand))
        v = self.v + other.v
        rel = min(self.relative_precision, other.relative_precision)
        return PadicElement(p, v, self.unit * other.unit, v + rel)

    __rmul__ = __mul__

    def inverse(self) -> PadicElement:
        if self.is_zero():
            raise ZeroDivisionError("p-adic zero is not invertible")
        rel = self.relative_precision
        return PadicElement(self.p, -self.v, pow(self.unit, -1, self.p ** rel), rel - self.v)

    def __truediv__(self, other) -> PadicElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> PadicElement:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> PadicElement:
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicElement.from_int(1, self.p, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison
    def agrees_with(self, other, digits: int) -> bool:
        """True when the difference vanishes modulo p^digits (absolute)."""
        d = self - self._coerce(other)
        if d.prec < digits:
            raise PrecisionError(f"only {d.prec} digits available, {digits} requested")
        return d.is_zero() or d.v >= digits

    def agreement(self, other) -> int | float:
        d = self - self._coerce(other)
        return d.prec if d.is_zero() else d.v

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PadicElement, int, Fraction)):
            return NotImplemented
        d = self - self._coerce(other)
        return d.is_zero()

    def __hash__(self) -> int:
        return hash((self.p, self.v, self.unit, self.prec))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return f"PadicElement({self.p}^{self.v} * {self.unit} + O({self.p}^{self.prec}))"

    def to_json(self) -> dict:
        return {"p": self.p, "valuation": None if self.is_zero() else self.v,
                "unit": str(self.unit), "prec": self.prec}


# -- linear algebra over Z/p^k ------------------------------------------------------

def _vp(n: int, p: int, cap: int) -> int:
    return cap if n == 0 else min(valuation(n, p), cap)


def smith_valuations(M: list[list[int]], p: int, k: int) -> list[int]:
    """Valuations (capped at k) of the Smith invariants of M over Z_p, mod p^k.

    Full pivoting on the entry of least valuation keeps every step exact
    modulo p^k.
    """
    mod = p ** k
    A = [[x % mod for x in row] for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    out = []
    r0 = 0
    for c0 in range(min(rows, cols)):
        best = None
        for i in range(r0, rows):
            for j in range(c0, cols):
                v = _vp(A[i][j], p, k)
                if best is None or v < best[0]:
                    best = (v, i, j)
        v, bi, bj = best
        if v >= k:
            out.extend([k] * (min(rows, cols) - c0))
            break
        A[r0], A[bi] = A[bi], A[r0]
        for row in A:
            row[c0], row[bj] = row[bj], row[c0]
        piv = A[r0][c0]
        u_inv = pow(piv // p ** v, -1, mod)
        for i in range(r0 + 1, rows):
            if A[i][c0]:
                f = (A[i][c0] // p ** v) * u_inv % mod
                A[i] = [(a - f * b) % mod for a, b in zip(A[i], A[r0])]
        for j in range(c0 + 1, cols):
            if A[r0][j]:
                f = (A[r0][j] // p ** v) * u_inv % mod
                for row in A:
                    row[j] = (row[j] - f * row[c0]) % mod
        out.append(v)
        r0 += 1
    return out


def det_mod(M: list[list[int]], p: int, k: int) -> int:
    """Determinant of a square integer matrix modulo p^k (exact integer Bareiss)."""
    n = len(M)
    A = [list(row) for row in M]
    sign, prev = 1, 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
        prev = A[c][c]
    return sign * A[n - 1][n - 1] % p ** k


def mat_inverse_mod(M: list[list[int]], mod: int) -> list[list[int]]:
    """Inverse of M over Z/mod by Gauss-Jordan; M must be invertible mod every prime of mod."""
    n = len(M)
    A = [[x % mod for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if gcd(A[i][c], mod) == 1), None)
        if piv is None:
            raise PadicError("matrix is not invertible")
        A[c], A[piv] = A[piv], A[c]
        inv = pow(A[c][c], -1, mod)
        A[c] = [x * inv % mod for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % mod for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def _mat_vec(M: list[list[int]], x: list[int], mod: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) % mod for row in M]


# -- polynomial helpers mod p^k ------------------------------------------------------

def _poly_rem(a: list[int], g: list[int], mod: int) -> list[int]:
    """a mod monic g (low degree first)."""
    a = [x % mod for x in a]
    d = len(g) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * g[j]) % mod
    out = a[:d] + [0] * max(0, d - len(a))
    return out


def _poly_mul(a: list[int], b: list[int], mod: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [x % mod for x in out]


def _divides_mod_p(g: list[int], h: list[int], p: int) -> bool:
    return not any(_poly_rem(h, g, p))


@lru_cache(maxsize=None)
def residue_factor(n: int, p: int) -> tuple[int, ...]:
    """Lexicographically least monic degree-f divisor of Phi_n mod p (f = ord_n p).

    Every irreducible factor of Phi_n mod p has degree f, so any monic
    degree-f divisor is irreducible.
    """
    if n % p == 0:
        raise PadicError(f"p = {p} divides the level {n}")
    f = multiplicative_order(p, n) if n > 1 else 1
    phi = list(cyclotomic_poly(n))
    for tail in product(range(p), repeat=f):
        g = list(reversed(tail)) + [1]
        if _divides_mod_p(g, phi, p):
            return tuple(g)
    raise PadicError("no factor found")  # unreachable for p not dividing n


# -- unramified extensions -------------------------------------------------------------

def _pow_mod_poly(x: list[int], e: int, g: list[int], mod: int) -> list[int]:
    out = [1] + [0] * (len(g) - 2)
    base = list(x)
    while e:
        if e & 1:
            out = _poly_rem(_poly_mul(out, base, mod), g, mod)
        base = _poly_rem(_poly_mul(base, base, mod), g, mod)
        e >>= 1
    return out


def smallest_level_of_degree(p: int, f: int) -> int:
    """Least n > 1 prime to p with ord_n(p) = f (f = 1 gives n = p - 1, or 1 for p = 3)."""
    if f == 1:
        return p - 1
    n = 2
    while True:
        if n % p and multiplicative_order(p, n) == f:
            return n
        n += 1


class UnramExt:
    """K_0 = Q_p(zeta_n) for p not dividing n, as Z_p[X]/(g) with X = zeta_n.

    g is the Hensel lift of the least monic degree-f factor of Phi_n mod p.
    ``frob_arith`` is the matrix of zeta -> zeta^p; the stored Frobenius
    ``frob`` is geometric, its inverse.
    """

    def __init__(self, p: int, n: int, prec: int = DEFAULT_PREC):
        _require_odd_prime(p)
        if n < 1 or n % p == 0:
            raise PadicError(f"p = {p} divides the level {n}")
        self.p, self.n, self.prec = p, n, prec
        self.mod = p ** prec
        gbar = list(residue_factor(n, p))
        self.f = f = len(gbar) - 1
        self.g = tuple(self._lift_factor(gbar))
        self.frob_arith = self._power_map(p)
        self.frob = self._power_map(p ** (f - 1)) if f > 1 else self.frob_arith
        self._trace_basis = self._compute_trace_basis()

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnramExt):
            return NotImplemented
        return (self.p, self.n, self.prec) == (other.p, other.n, other.prec)

    def __hash__(self) -> int:
        return hash((UnramExt, self.p, self.n, self.prec))

    @classmethod
    def of_degree(cls, p: int, f: int, prec: int = DEFAULT_PREC) -> UnramExt:
        return cls(p, smallest_level_of_degree(p, f), prec)

    # construction helpers
    def _lift_factor(self, gbar: list[int]) -> list[int]:
        """Minimal polynomial over Z/p^prec of the Teichmuller lift of a root of gbar."""
        p, f, mod = self.p, len(gbar) - 1, self.mod
        if f == 1:
            z = teichmuller(-gbar[0], p, self.prec).residue()
            return [-z % mod, 1]
        y = [0, 1] + [0] * (f - 2)
        for _ in range(self.prec):
            y = _pow_mod_poly(y, p ** f, gbar, mod)
        conj = [y]
        for _ in range(f - 1):
            conj.append(_pow_mod_poly(conj[-1], p, gbar, mod))
        # prod (X - c) with coefficients in Z/p^k[x]/(gbar)
        poly = [[1] + [0] * (f - 1)]
        for c in conj:
            nxt = [[0] * f for _ in range(len(poly) + 1)]
            for i, coef in enumerate(poly):
                nxt[i + 1] = [(a + b) % mod for a, b in zip(nxt[i + 1], coef)]
                prod_ = _poly_rem(_poly_mul(coef, c, mod), gbar, mod)
                nxt[i] = [(a - b) % mod for a, b in zip(nxt[i], prod_)]
            poly = nxt
        if any(any(coef[1:]) for coef in poly):
            raise PadicError("minimal polynomial has non-scalar coefficients")
        return [coef[0] for coef in poly]

    def _power_map(self, e: int) -> list[list[int]]:
        """Matrix (columns = images of X^i) of the automorphism X -> X^e."""
        cols = [self._reduce([0] * (i * e) + [1]) for i in range(self.f)]
        return [[cols[j][i] for j in range(self.f)] for i in range(self.f)]

    def _reduce(self, a: list[int]) -> list[int]:
        return _poly_rem(a, list(self.g), self.mod)

    def _compute_trace_basis(self) -> list[int]:
        out = []
        for i in range(self.f):
            x = [int(j == i) for j in range(self.f)]
            total = [0] * self.f
            for _ in range(self.f):
                total = [(a + b) % self.mod for a, b in zip(total, x)]
                x = _mat_vec(self.frob_arith, x, self.mod)
            if any(total[1:]):
                raise PadicError("trace is not a scalar")
            out.append(total[0])
        return out

    # elements
    def element(self, coords) -> UnramElement:
        coords = list(coords) + [0] * (self.f - len(coords))
        return UnramElement(self, coords[: self.f] if len(coords) == self.f else self._reduce(coords))

    def one(self) -> UnramElement:
        return self.element([1])

    def zeta(self, k: int = 1) -> UnramElement:
        """zeta_n^k."""
        return self.element(self._reduce([0] * (k % self.n) + [1]))

    def embed(self, x) -> UnramElement:
        """Image of a CycElement of level dividing n with p-integral coordinates."""
        el, scale = self.embed_scaled(x)
        if scale.v < 0:
            raise PadicError("element is not p-integral")
        return el * scale.residue()

    def embed_scaled(self, x) -> tuple[UnramElement, PadicElement]:
        """(integral image of den * x, 1/den) for a CycElement x of level dividing n."""
        if x.coeff_order != 1:
            raise PadicError("coefficient-extended elements are embedded componentwise")
        if self.n % x.level:
            raise PadicError(f"level {x.level} does not divide {self.n}")
        step = self.n // x.level
        acc = [0] * self.f
        for i, c in enumerate(x.num):
            if c:
                z = self.zeta(i * step).coords
                acc = [(a + c * b) % self.mod for a, b in zip(acc, z)]
        return self.element(acc), PadicElement.from_rational(Fraction(1, x.den), self.p, self.prec)

    def __repr__(self) -> str:
        return f"UnramExt(p={self.p}, n={self.n}, f={self.f}, prec={self.prec})"


class UnramElement:
    __slots__ = ("ext", "coords")

    def __init__(self, ext: UnramExt, coords):
        self.ext = ext
        self.coords = tuple(c % ext.mod for c in coords)

    def _other(self, other) -> UnramElement:
        if isinstance(other, UnramElement):
            if other.ext != self.ext:
                raise PadicError("elements of different extensions")
            return other
        if isinstance(other, int):
            return self.ext.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return UnramElement(self.ext, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return UnramElement(self.ext, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UnramElement(self.ext, [a * other for a in self.coords])
        other = self._other(other)
        if other is NotImplemented:
            return other
        ext = self.ext
        return UnramElement(ext, ext._reduce(_poly_mul(list(self.coords), list(other.coords), ext.mod)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.ext.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"UnramElement({list(self.coords)} mod {self.ext.p}^{self.ext.prec})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_unit(self) -> bool:
        return self.norm().v == 0

    def frobenius(self, k: int = 1, geometric: bool = True) -> UnramElement:
        """Fr^k with Fr geometric (zeta -> zeta^{1/p}); geometric=False applies zeta -> zeta^p."""
        M = self.ext.frob if geometric else self.ext.frob_arith
        x = list(self.coords)
        for _ in range(k % self.ext.f):
            x = _mat_vec(M, x, self.ext.mod)
        return UnramElement(self.ext, x)

    def conjugates(self) -> list[UnramElement]:
        out = [self]
        for _ in range(self.ext.f - 1):
            out.append(out[-1].frobenius(geometric=False))
        return out

    def trace(self) -> PadicElement:
        t = sum(a * b for a, b in zip(self.coords, self.ext._trace_basis))
        return PadicElement.from_int(t, self.ext.p, self.ext.prec)

    def norm(self) -> PadicElement:
        prod_ = self.ext.one()
        for c in self.conjugates():
            prod_ = prod_ * c
        if any(prod_.coords[1:]):
            raise PadicError("norm is not a scalar")
        return PadicElement.from_int(prod_.coords[0], self.ext.p, self.ext.prec)

    def inverse(self) -> UnramElement:
        N = self.norm()
        if N.v != 0:
            raise PadicError("only units are inverted in O_K0")
        rest = self.ext.one()
        for c in self.conjugates()[1:]:
            rest = rest * c
        return rest * pow(N.residue(), -1, self.ext.mod)

    def matrix(self) -> list[list[int]]:
        """Multiplication-by-self in the power basis (columns = images of X^i)."""
        cols = [(self * self.ext.zeta(i)).coords for i in range(self.ext.f)]
        return [[cols[j][i] for j in range(self.ext.f)] for i in range(self.ext.f)]


# -- Teichmuller lifts and the Iwasawa logarithm ------------------------------------------

def teichmuller(a: int, p: int, prec: int = DEFAULT_PREC) -> PadicElement:
    """The (p-1)-th root of unity congruent to a mod p."""
    _require_odd_prime(p)
    if a % p == 0:
        raise PadicError(f"{a} is divisible by {p}")
    mod = p ** prec
    x = a % mod
    for _ in range(prec):
        x = pow(x, p, mod)
    return PadicElement(p, 0, x, prec)


def teichmuller_ext(u: UnramElement) -> UnramElement:
    """The (p^f - 1)-th root of unity congruent to u mod p."""
    ext = u.ext
    if not u.is_unit():
        raise PadicError("Teichmuller lift of a non-unit")
    y = u
    q = ext.p ** ext.f
    for _ in range(ext.prec):
        y = y ** q
    return y


def _ilog(n: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def _log_coefficients(p: int, prec: int):
    """Yield (n, c_n) with log(1 + p y) = sum c_n y^n mod p^prec."""
    mod = p ** prec
    n = 1
    while True:
        # v_p(c_n) >= n - floor(log_p n), which is non-decreasing in n
        if n - _ilog(n, p) >= prec:
            return
        vn = valuation(n, p)
        e = n - vn
        if e < prec:
            c = p ** e * pow(n // p ** vn, -1, mod) % mod
            yield n, c if n % 2 else -c % mod
        n += 1


def _log_principal_int(w: int, p: int, prec: int) -> int:
    mod = p ** prec
    x = (w - 1) % mod
    if x % p:
        raise PadicError("not a principal unit")
    y = x // p
    total, yn, last = 0, 1, 0
    for n, c in _log_coefficients(p, prec):
        yn = yn * pow(y, n - last, mod) % mod
        last = n
        total = (total + c * yn) % mod
    return total


def _log_principal_ext(w: UnramElement) -> UnramElement:
    ext = w.ext
    x = w - 1
    if any(c % ext.p for c in x.coords):
        raise PadicError("not a principal unit")
    y = UnramElement(ext, [c // ext.p for c in x.coords])
    total = ext.element([0])
    yn, last = ext.one(), 0
    for n, c in _log_coefficients(ext.p, ext.prec):
        yn = yn * y ** (n - last)
        last = n
        total = total + yn * c
    return total


def iwasawa_log(u):
    """log_p of a unit, normalised by log_p(p) = 0; torsion maps to 0.

    Accepts PadicElement (v = 0), UnramElement units, and RamElement units;
    for RamElement see :func:`iwasawa_log_scaled`.
    """
    if isinstance(u, PadicElement):
        if u.is_zero() or u.v != 0:
            raise PadicError("iwasawa_log needs a unit")
        p = u.p
        w = u.unit * pow(teichmuller(u.unit, p, u.prec).unit, -1, p ** u.prec)
        return PadicElement.from_int(_log_principal_int(w, p, u.prec), p, u.prec)
    if isinstance(u, UnramElement):
        if not u.is_unit():
            raise PadicError("iwasawa_log needs a unit")
        w = u * teichmuller_ext(u).inverse()
        return _log_principal_ext(w)
    if isinstance(u, RamElement):
        L, s = iwasawa_log_scaled(u)
        if s:
            raise PrecisionError("ramified logarithm is only known up to p^-s; use iwasawa_log_scaled")
        return L
    raise TypeError(f"unsupported type {type(u).__name__}")


# -- ramified cyclotomic tower ----------------------------------------------------------------

class RamCyc:
    """K_m = K_0(zeta_{p^m}) in the power basis of z = zeta_{p^m} over K_0.

    z is a root of Phi_{p^m}, which is Eisenstein in pi = z - 1. The CRT-compatible
    root zeta_{n p^m} = zeta_n^a z^b with a p^m = 1 mod n and b n = 1 mod p^m
    is used to embed cyclotomic elements.
    """

    def __init__(self, base: UnramExt, m: int):
        if m < 1:
            raise PadicError("m must be positive")
        self.base, self.m = base, m
        self.p, self.prec = base.p, base.prec
        self.q = base.p ** m
        self.e = euler_phi(self.q)
        self.phi_q = list(cyclotomic_poly(self.q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RamCyc):
            return NotImplemented
        return (self.base, self.m) == (other.base, other.m)

    def __hash__(self) -> int:
        return hash((RamCyc, self.base, self.m))

    @property
    def degree(self) -> int:
        return self.e * self.base.f

    def element(self, coeffs) -> RamElement:
        coeffs = list(coeffs)
        zero = self.base.element([0])
        coeffs = [c if isinstance(c, UnramElement) else self.base.element([c]) for c in coeffs]
        coeffs += [zero] * (self.e - len(coeffs))
        return RamElement(self, self._reduce(coeffs))

    def _reduce(self, coeffs: list[UnramElement]) -> list[UnramElement]:
        coeffs = list(coeffs)
        d = self.e
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if not c.is_zero():
                for j in range(d + 1):
                    if self.phi_q[j]:
                        coeffs[i - d + j] = coeffs[i - d + j] - c * self.phi_q[j]
        return coeffs[:d]

    def one(self) -> RamElement:
        return self.element([1])

    def z(self, k: int = 1) -> RamElement:
        zero = self.base.element([0])
        coeffs = [zero] * (k % self.q) + [self.base.one()]
        return self.element(coeffs)

    def uniformizer(self) -> RamElement:
        return self.z() - 1

    def zeta_N(self, k: int = 1) -> RamElement:
        n, q = self.base.n, self.q
        a = pow(q, -1, n) if n > 1 else 0
        b = pow(n, -1, q)
        zn = self.base.zeta(a * k)
        return self.z(b * k) * zn

    def embed(self, x) -> RamElement:
        """Image of a CycElement of level dividing n p^m with p-integral coordinates."""
        N = self.base.n * self.q
        if x.coeff_order != 1 or N % x.level:
            raise PadicError(f"cannot embed level {x.level} into level {N}")
        if x.den % self.p == 0:
            raise PadicError("element is not p-integral")
        step = N // x.level
        inv = pow(x.den, -1, self.base.mod)
        acc = self.element([0])
        for i, c in enumerate(x.num):
            if c:
                acc = acc + self.zeta_N(i * step) * (c * inv)
        return acc

    def __repr__(self) -> str:
        return f"RamCyc(p={self.p}, n={self.base.n}, m={self.m}, prec={self.prec})"


class RamElement:
    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: RamCyc, coeffs: list[UnramElement]):
        self.ext, self.coeffs = ext, tuple(coeffs)

    def _other(self, other) -> RamElement:
        if isinstance(other, RamElement):
            if other.ext != self.ext:
                raise PadicError("elements of different extensions")
            return other
        if isinstance(other, (int, UnramElement)):
            return self.ext.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RamElement(self.ext, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return RamElement(self.ext, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RamElement(self.ext, [a * other for a in self.coeffs])
        other = self._other(other)
        if other is NotImplemented:
            return other
        zero = self.ext.base.element([0])
        out = [zero] * (2 * self.ext.e - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return RamElement(self.ext, self.ext._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = self.ext.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RamElement({[list(c.coords) for c in self.coeffs]})"

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def galois(self, a: int) -> RamElement:
        """z -> z^a for a prime to p, fixing K_0."""
        acc = self.ext.element([0])
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + self.ext.z(a * j) * c
        return acc

    def trace_to_base(self) -> UnramElement:
        """Tr_{K_m/K_0} via Ramanujan sums of the basis powers z^j."""
        p, m, q = self.ext.p, self.ext.m, self.ext.q
        total = self.ext.base.element([0])
        for j, c in enumerate(self.coeffs):
            if j % q == 0:
                r = euler_phi(q)
            elif j % (q // p) == 0:
                r = -(q // p)
            else:
                r = 0
            if r:
                total = total + c * r
        return total

    def trace(self) -> PadicElement:
        return self.trace_to_base().trace()

    def norm_to(self, level: int) -> RamElement:
        """Norm from K_m to K_level (level < m), computed in K_m."""
        q, step = self.ext.q, self.ext.p ** level
        prod_ = self.ext.one()
        for a in units(q):
            if a % step == 1 % step:
                prod_ = prod_ * self.galois(a)
        return prod_

    def norm_to_base(self) -> UnramElement:
        n = self.norm_to(0)
        if any(not c.is_zero() for c in n.coeffs[1:]):
            raise PadicError("norm is not in K_0")
        return n.coeffs[0]

    def norm(self) -> PadicElement:
        return self.norm_to_base().norm()

    def valuation(self) -> Fraction:
        """Normalised valuation with v(p) = 1."""
        N = self.norm()
        if N.is_zero():
            return Fraction(N.prec, self.ext.degree)
        return Fraction(N.v, self.ext.degree)


def iwasawa_log_scaled(u: RamElement) -> tuple[RamElement, int]:
    """(L, s) with p^s log_p(u) = L for a unit u of K_m.

    u^{p^f - 1} is a principal unit; raising it to p^s with s = m pushes
    it to 1 + p O, where the series converges with exact coefficients.
    """
    ext = u.ext
    if u.valuation() != 0:
        raise PadicError("iwasawa_log needs a unit")
    p, f, mod = ext.p, ext.base.f, ext.base.mod
    s = ext.m
    w = (u ** (p ** f - 1)) ** (p ** s)
    x = w - 1
    if any(c % p for coef in x.coeffs for c in coef.coords):
        raise PadicError("unexpected: w - 1 not in p O")
    y = RamElement(ext, [UnramElement(ext.base, [c // p for c in coef.coords]) for coef in x.coeffs])
    total = ext.element([0])
    yn, last = ext.one(), 0
    for n, c in _log_coefficients(p, ext.prec):
        yn = yn * y ** (n - last)
        last = n
        total = total + yn * c
    # divide by p^f - 1 (a unit)
    return total * pow(p ** f - 1, -1, mod), s


# -- cyclotomic embedding, exact sequence, normal bases -------------------------------------------

def hensel_embed_cyclotomic(n: int, p: int, prec: int = DEFAULT_PREC) -> UnramExt:
    """K_0 = Q_p(zeta_n) with the distinguished root zeta_n; see UnramExt.embed."""
    return UnramExt(p, n, prec)


def check_unramified_exact_sequence(p: int, f: int, prec: int = DEFAULT_PREC,
                                    n: int | None = None) -> VerificationReport:
    """0 -> Z_p -> O_K0 --(Fr - 1)--> O_K0 --tr--> Z_p -> 0 modulo p^prec."""
    K = UnramExt(p, n, prec) if n is not None else UnramExt.of_degree(p, f, prec)
    if K.f != f:
        raise PadicError(f"level {K.n} gives degree {K.f}, not {f}")
    mod = K.mod
    A = [[(K.frob[i][j] - (i == j)) % mod for j in range(f)] for i in range(f)]
    sv = smith_valuations(A, p, prec)
    one = [1] + [0] * (f - 1)
    one_in_kernel = not any(_mat_vec(A, one, mod))
    kernel_rank_one = sv.count(prec) == 1
    image_saturated = all(v == 0 for v in sv if v < prec)
    trace_kills_image = all(
        sum(K._trace_basis[i] * A[i][j] for i in range(f)) % mod == 0 for j in range(f))
    gen = normal_basis_generator_ext(K)
    trace_unit = gen.trace().v == 0
    # im(Fr-1) and ker(tr) are both saturated of rank f-1 and im lies in ker
    checks = {
        "kernel_is_Zp": one_in_kernel and kernel_rank_one,
        "image_equals_trace_kernel": image_saturated and trace_kills_image and kernel_rank_one,
        "trace_surjective": trace_unit,
    }
    ok = all(checks.values())
    return VerificationReport(
        check_id="unramified-exact-sequence",
        inputs={"p": p, "f": f, "n": K.n, "prec": prec},
        lhs=checks, rhs={k: True for k in checks}, agreement=prec if ok else 0,
        requested=prec, verdict=PASS if ok else FAIL,
        details={"smith_valuations": sv, "generator": list(gen.coords[:4])})


def _orbit_matrix(x, group: list[int]) -> list[list[int]]:
    """Rows: coordinates of sigma_a(x) (CycElement, integral)."""
    return [[int(c) for c in x.galois(a).coordinates()] for a in group]


def normal_basis_generator(n: int, p: int, max_weight: int = 4):
    """zeta~_n = zeta_n + (roots of unity of order d | n, d < n) generating Z_p[zeta_n] over Z_p[H].

    H = Gal(Q(zeta_n)/Q) acts on Z_p (x) Z[zeta_n]; the orbit matrix must be
    invertible mod p. Returns (zeta~ as CycElement, list of corrections).
    Corrections are searched by increasing total weight.
    """
    from .chars import all_characters
    from .cyclo import CycElement, projector

    if n % p == 0:
        raise PadicError(f"p = {p} divides {n}")
    group = units(n)
    base = CycElement.root_of_unity(n, 1)
    lower = [(d, k) for d in range(1, n) if n % d == 0 for k in range(d) if gcd(k, d) == 1]

    def good(x) -> bool:
        return det_mod(_orbit_matrix(x, group), p, 1) != 0

    found = None
    if good(base):
        found = (base, [])
    else:
        for weight in range(1, max_weight + 1):
            for combo in _weighted_combos(len(lower), weight, p - 1):
                x = base
                for idx, c in combo:
                    d, k = lower[idx]
                    x = x + CycElement.root_of_unity(n, k * (n // d)) * c
                if good(x):
                    found = (x, [(lower[i][0], lower[i][1], c) for i, c in combo])
                    break
            if found:
                break
    if not found:
        raise PadicError(f"no normal basis generator found up to weight {max_weight}")
    x, corr = found
    for chi in all_characters(n):
        if chi.is_primitive and projector(chi, x) != projector(chi, base):
            raise PadicError("correction is not killed by a primitive projector")
    return x, corr


def _weighted_combos(size: int, weight: int, cmax: int):
    """Sparse vectors (index, coefficient) with coefficients in 1..cmax summing to weight."""
    def rec(start: int, remaining: int):
        if remaining == 0:
            yield []
            return
        for i in range(start, size):
            for c in range(1, min(cmax, remaining) + 1):
                for tail in rec(i + 1, remaining - c):
                    yield [(i, c)] + tail
    yield from rec(0, weight)


def normal_basis_generator_ext(K: UnramExt) -> UnramElement:
    """A generator of O_K0 over Z_p[Gal(K_0/Q_p)]: its Frobenius orbit matrix is invertible mod p.

    Candidates zeta^k + c (0 <= c < p) are tried in order; the image of the
    global generator need not work, since the etale algebra has several factors.
    """
    for c in range(K.p):
        for k in range(K.n):
            x = K.zeta(k) + c
            orbit = [y.coords for y in x.conjugates()]
            if det_mod([list(r) for r in orbit], K.p, 1):
                return x
    raise PadicError("no normal basis generator found")
