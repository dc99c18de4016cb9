"""Small integer helpers shared across modules."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here are desk-sized."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [a for a in range(1, n) if gcd(a, n) == 1]


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    # Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    num = [1]
    den = [1]
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _polymul(num, factor)
        else:
            den = _polymul(den, factor)
    q = _polydiv_exact(num, den)
    return tuple(q)


def mobius(n: int) -> int:
    f = factorize(n) if n > 1 else {}
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c, r = divmod(num[i], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i - dd] = c
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return q


def crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        # solve x + m*t = r mod n
        t = ((r - x) * pow(m, -1, n)) % n
        x += m * t
        m *= n
    return x % m


def primitive_root(n: int) -> int:
    """Smallest generator of (Z/n)^* for n = p^k with p odd, or n in {2, 4}."""
    if n in (1, 2):
        return 1
    if n == 4:
        return 3
    phi = euler_phi(n)
    fac = factorize(phi)
    for g in range(2, n):
        if gcd(g, n) != 1:
            continue
        if all(pow(g, phi // q, n) != 1 for q in fac):
            return g
    raise ValueError(f"(Z/{n})^* is not cyclic")
