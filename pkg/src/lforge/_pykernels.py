"""Pure-Python/numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels`` (Cython) mirrors them and is
preferred when it was built. Both must produce identical results up to
floating-point rounding, and the exact kernels must agree bit-for-bit.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

# Lanczos approximation with Godfrey's coefficients, g = 607/128, n = 15.
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
LOG_2I = cmath.log(2j)


def poly_mul(a: dict, b: dict) -> dict:
    """Sparse product of two term maps ``{exponent tuple: coefficient}``.

    Exponent tuples must have equal length. Zero coefficients are dropped.
    """
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            key = tuple([x + y for x, y in zip(ea, eb)])
            out[key] = get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    # valid for Re(z) >= 1/2
    zm = z - 1.0
    x = np.full_like(zm, LANCZOS_COEF[0])
    for i in range(1, len(LANCZOS_COEF)):
        x = x + LANCZOS_COEF[i] / (zm + i)
    t = zm + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(x)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # log(sin(pi z)) without overflow for large |Im z|; some branch of log.
    upper = z.imag >= 0
    w = np.where(upper, z, np.conj(z))
    val = -1j * np.pi * w + np.log(np.exp(2j * np.pi * w) - 1.0) - LOG_2I
    return np.where(upper, val, np.conj(val))


def loggamma(z) -> np.ndarray:
    """Complex log-gamma on an array (some branch; ``exp`` of it is exact Gamma).

    Poles are not detected here; callers check them.
    """
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if right.any():
        out[right] = _loggamma_right(z[right])
    left = ~right
    if left.any():
        zl = z[left]
        out[left] = LOG_PI - _log_sin_pi(zl) - _loggamma_right(1.0 - zl)
    return out


def contract(a: np.ndarray, b: np.ndarray, chunk: int = 64) -> np.ndarray:
    """``out[m, p] = sum_k a[k, m] * b[k, p]`` summed in fixed order over k.

    Deliberately avoids BLAS so the reduction order never depends on the
    number of threads.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    k, m = a.shape
    p = b.shape[1]
    out = np.zeros((m, p), dtype=np.complex128)
    for start in range(0, m, chunk):
        stop = min(start + chunk, m)
        blk = a[:, start:stop, None] * b[:, None, :]
        out[start:stop] = blk.sum(axis=0)
    return out
