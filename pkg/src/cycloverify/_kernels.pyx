# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer polynomial kernels.

Coefficients are arbitrary-size Python ints, so the arithmetic itself still
goes through CPython; the gain comes from typed index loops and skipping the
interpreter on the zero tests.  Semantics match ``_kernels_py`` exactly.
"""


def cyclic_mul2(list a, list b, Py_ssize_t n1, Py_ssize_t n2):
    cdef Py_ssize_t ka, kb, ia, ja, ib, jb, i, j, m, nb
    cdef list out = [0] * (n1 * n2)
    cdef list bidx = []
    cdef list bval = []
    cdef object va, vb
    for kb in range(len(b)):
        vb = b[kb]
        if vb:
            bidx.append(kb)
            bval.append(vb)
    nb = len(bidx)
    if nb == 0:
        return out
    for ka in range(len(a)):
        va = a[ka]
        if not va:
            continue
        ia = ka // n2
        ja = ka - ia * n2
        for m in range(nb):
            kb = <Py_ssize_t>bidx[m]
            ib = kb // n2
            jb = kb - ib * n2
            i = ia + ib
            if i >= n1:
                i -= n1
            j = ja + jb
            if j >= n2:
                j -= n2
            out[i * n2 + j] += va * bval[m]
    return out


cdef list _reduce_rows(list c, Py_ssize_t rows, Py_ssize_t cols, list phi):
    cdef Py_ssize_t deg = len(phi) - 1
    cdef Py_ssize_t i, j, t, base, shift
    cdef object lead, coef
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
    cdef Py_ssize_t keep = rows if rows < deg else deg
    cdef Py_ssize_t pad = deg - rows if deg > rows else 0
    return c[: keep * cols] + [0] * (pad * cols)


def reduce2(list c, Py_ssize_t n1, Py_ssize_t n2, list phi1, list phi2):
    cdef Py_ssize_t d1 = len(phi1) - 1
    cdef Py_ssize_t d2 = len(phi2) - 1
    cdef Py_ssize_t i, j
    c = _reduce_rows(c, n1, n2, phi1)
    cdef list t = [0] * (n2 * d1)
    for j in range(n2):
        for i in range(d1):
            t[j * d1 + i] = c[i * n2 + j]
    t = _reduce_rows(t, n2, d1, phi2)
    cdef list out = [0] * (d1 * d2)
    for i in range(d1):
        for j in range(d2):
            out[i * d2 + j] = t[j * d1 + i]
    return out


def poly_mulmod(list a, list b, list g, object q):
    cdef Py_ssize_t deg = len(g) - 1
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j, t
    cdef object x, lead
    if la == 0 or lb == 0:
        return [0] * deg
    cdef list prod = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if not x:
            continue
        for j in range(lb):
            if b[j]:
                prod[i + j] += x * b[j]
    for i in range(la + lb - 2, deg - 1, -1):
        lead = prod[i]
        if not lead:
            continue
        prod[i] = 0
        for t in range(deg):
            if g[t]:
                prod[i - deg + t] -= lead * g[t]
    cdef list out
    if la + lb - 1 >= deg:
        out = prod[:deg]
    else:
        out = prod + [0] * (deg - (la + lb - 1))
    if q:
        out = [x % q for x in out]
    return out


def series_mul(list a, list b, Py_ssize_t length, object q):
    cdef list out = [0] * length
    cdef Py_ssize_t i, j, la, lb, lim
    cdef object x, y
    la = len(a) if len(a) < length else length
    lb = len(b)
    for i in range(la):
        x = a[i]
        if not x:
            continue
        lim = length - i
        if lim > lb:
            lim = lb
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    if q:
        out = [x % q for x in out]
    return out
