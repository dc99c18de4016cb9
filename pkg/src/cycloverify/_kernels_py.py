"""Pure-Python versions of the integer polynomial kernels.

Same signatures as the compiled ``_kernels`` extension; used when the
extension is not built.  All inputs and outputs are flat lists of Python ints.
"""


def cyclic_mul2(a, b, n1, n2):
    """Product in Z[x, y]/(x^n1 - 1, y^n2 - 1).

    ``a`` and ``b`` are row-major with index ``i*n2 + j`` for x^i y^j and may be
    shorter than ``n1*n2`` (missing entries are zero).  Zero entries are skipped,
    which is what makes multiplication by binomials like 1 - x^k cheap.
    """
    out = [0] * (n1 * n2)
    nzb = [(k, v) for k, v in enumerate(b) if v]
    if not nzb:
        return out
    for ka, va in enumerate(a):
        if not va:
            continue
        ia, ja = divmod(ka, n2)
        for kb, vb in nzb:
            ib, jb = divmod(kb, n2)
            i = ia + ib
            if i >= n1:
                i -= n1
            j = ja + jb
            if j >= n2:
                j -= n2
            out[i * n2 + j] += va * vb
    return out


def _reduce_rows(c, rows, cols, phi):
    """Reduce each column polynomial in x (row index) modulo monic ``phi``."""
    deg = len(phi) - 1
    c = list(c)
    for i in range(rows - 1, deg - 1, -1):
        base = i * cols
        shift = (i - deg) * cols
        for j in range(cols):
            lead = c[base + j]
            if not lead:
                continue
            c[base + j] = 0
            for t in range(deg):
                coef = phi[t]
                if coef:
                    c[shift + t * cols + j] -= lead * coef
    return c[: min(rows, deg) * cols] + [0] * (max(0, deg - rows) * cols)


def reduce2(c, n1, n2, phi1, phi2):
    """Reduce a flat ``n1 x n2`` array modulo monic phi1(x) and phi2(y).

    Returns a flat ``deg(phi1) x deg(phi2)`` array.
    """
    d1 = len(phi1) - 1
    d2 = len(phi2) - 1
    c = _reduce_rows(c, n1, n2, phi1)
    # transpose, reduce in y, transpose back
    t = [c[i * n2 + j] for j in range(n2) for i in range(d1)]
    t = _reduce_rows(t, n2, d1, phi2)
    return [t[j * d1 + i] for i in range(d1) for j in range(d2)]


def poly_mulmod(a, b, g, q):
    """(a*b mod g) mod q for coefficient lists, g monic; q == 0 means no modulus."""
    if not a or not b:
        return [0] * (len(g) - 1)
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            prod[i + j] += x * y
    deg = len(g) - 1
    for i in range(len(prod) - 1, deg - 1, -1):
        lead = prod[i]
        if not lead:
            continue
        prod[i] = 0
        for t in range(deg):
            if g[t]:
                prod[i - deg + t] -= lead * g[t]
    out = prod[:deg] + [0] * max(0, deg - len(prod))
    if q:
        out = [x % q for x in out]
    return out


def series_mul(a, b, length, q):
    """Truncated product of power series (first ``length`` terms) mod q."""
    out = [0] * length
    for i, x in enumerate(a[:length]):
        if not x:
            continue
        lim = length - i
        for j, y in enumerate(b[:lim]):
            if y:
                out[i + j] += x * y
    if q:
        out = [x % q for x in out]
    return out
