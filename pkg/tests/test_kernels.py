"""Parity between the compiled kernels and the numpy fallback."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lforge import _pykernels, kernels

try:
    from lforge import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")

term_maps = st.dictionaries(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool),
    max_size=6,
)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython" or kernels._impl is _pykernels


def test_poly_mul_known():
    a = {(1,): Fraction(1), (0,): Fraction(1)}
    b = {(1,): Fraction(1), (0,): Fraction(-1)}
    assert _pykernels.poly_mul(a, b) == {(2,): 1, (0,): -1}


@needs_ext
@given(term_maps, term_maps)
def test_poly_mul_parity(a, b):
    assert _ckernels.poly_mul(a, b) == _pykernels.poly_mul(a, b)


@needs_ext
def test_loggamma_parity():
    rng = np.random.Generator(np.random.PCG64(3))
    z = rng.uniform(-8, 8, 2000) + 1j * rng.uniform(-60, 60, 2000)
    a = np.exp(_ckernels.loggamma(z))
    b = np.exp(_pykernels.loggamma(z))
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-12


@needs_ext
@settings(max_examples=20)
@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 40), st.integers(0, 2 ** 31))
def test_contract_parity(k, m, p, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.normal(size=(k, m)) + 1j * rng.normal(size=(k, m))
    b = rng.normal(size=(k, p)) + 1j * rng.normal(size=(k, p))
    ref = a.T @ b
    for impl in (_ckernels, _pykernels):
        assert np.allclose(impl.contract(a, b), ref, rtol=1e-12, atol=1e-12)


def test_contract_deterministic():
    rng = np.random.Generator(np.random.PCG64(0))
    a = rng.normal(size=(300, 50)) + 0j
    b = rng.normal(size=(300, 70)) + 0j
    assert np.array_equal(kernels.contract(a, b), kernels.contract(a, b))
