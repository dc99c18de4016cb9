import os

import pytest
from hypothesis import given, strategies as st

from cycloverify import _kernels_py as pure
from cycloverify import kernels
from cycloverify.arith import cyclotomic_poly

compiled = pytest.importorskip("cycloverify._kernels")

ints = st.integers(-(2 ** 70), 2 ** 70)


def test_dispatch_follows_env():
    forced = os.environ.get("CYCLOVERIFY_PURE", "") in ("1", "true", "yes")
    assert kernels.BACKEND == ("python" if forced else "compiled")


@given(st.sampled_from([(3, 2), (5, 4), (8, 3), (12, 6)]), st.data())
def test_cyclic_mul2(shape, data):
    n1, n2 = shape
    a = data.draw(st.lists(ints, min_size=n1 * n2, max_size=n1 * n2))
    b = data.draw(st.lists(ints, min_size=0, max_size=n1 * n2))
    assert compiled.cyclic_mul2(a, b, n1, n2) == pure.cyclic_mul2(a, b, n1, n2)


@given(st.sampled_from([(3, 2), (5, 4), (9, 3), (12, 5)]), st.data())
def test_reduce2(shape, data):
    n1, n2 = shape
    c = data.draw(st.lists(ints, min_size=n1 * n2, max_size=n1 * n2))
    phi1, phi2 = list(cyclotomic_poly(n1)), list(cyclotomic_poly(n2))
    assert compiled.reduce2(c, n1, n2, phi1, phi2) == pure.reduce2(c, n1, n2, phi1, phi2)


@given(st.lists(ints, min_size=1, max_size=12), st.lists(ints, min_size=1, max_size=12),
       st.lists(st.integers(-50, 50), min_size=1, max_size=6), st.sampled_from([0, 3 ** 20, 7 ** 9]))
def test_poly_mulmod(a, b, g, q):
    g = g + [1]
    assert compiled.poly_mulmod(a, b, g, q) == pure.poly_mulmod(a, b, g, q)


@given(st.lists(ints, max_size=20), st.lists(ints, max_size=20), st.integers(1, 25),
       st.sampled_from([0, 5 ** 30]))
def test_series_mul(a, b, length, q):
    assert compiled.series_mul(a, b, length, q) == pure.series_mul(a, b, length, q)


def test_pure_fallback_selected_by_env(monkeypatch):
    import importlib

    monkeypatch.setenv("CYCLOVERIFY_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.series_mul is pure.series_mul
    finally:
        monkeypatch.undo()
        importlib.reload(kernels)
