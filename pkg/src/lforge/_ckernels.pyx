# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "<complex.h>" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)

cdef double LANCZOS_G = 607.0 / 128.0
cdef double[15] LANCZOS_COEF
LANCZOS_COEF[:] = [
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
]
cdef double HALF_LOG_2PI = 0.91893853320467274178
cdef double LOG_PI = 1.14472988584940017414
cdef double PI = 3.14159265358979323846
cdef double complex LOG_2I = 0.69314718055994530942 + 1.57079632679489661923j


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t i, n
    cdef tuple ea, eb
    cdef list buf
    if len(a) < len(b):
        a, b = b, a
    for eb, cb in b.items():
        n = len(eb)
        for ea, ca in a.items():
            buf = [0] * n
            for i in range(n):
                buf[i] = <long>ea[i] + <long>eb[i]
            key = tuple(buf)
            prev = out.get(key)
            if prev is None:
                out[key] = ca * cb
            else:
                out[key] = prev + ca * cb
    return {k: v for k, v in out.items() if v != 0}


cdef inline double complex _lg_right(double complex z) nogil:
    cdef double complex zm = z - 1.0
    cdef double complex x = LANCZOS_COEF[0]
    cdef int i
    for i in range(1, 15):
        x = x + LANCZOS_COEF[i] / (zm + i)
    cdef double complex t = zm + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * clog(t) - t + clog(x)


cdef inline double complex _log_sin_pi(double complex z) nogil:
    cdef bint upper = cimag(z) >= 0
    cdef double complex w = z if upper else conj(z)
    cdef double complex val = -1j * PI * w + clog(cexp(2j * PI * w) - 1.0) - LOG_2I
    return val if upper else conj(val)


def loggamma(z):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] flat = np.ascontiguousarray(
        np.asarray(z, dtype=np.complex128).ravel())
    cdef Py_ssize_t n = flat.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double complex v
    with nogil:
        for i in range(n):
            v = flat[i]
            if creal(v) >= 0.5:
                out[i] = _lg_right(v)
            else:
                out[i] = LOG_PI - _log_sin_pi(v) - _lg_right(1.0 - v)
    return out.reshape(np.shape(z))


def contract(a, b, chunk=None):
    """``out[m, p] = sum_k a[k, m] * b[k, p]``, accumulated in ascending k."""
    A = np.ascontiguousarray(a, dtype=np.complex128)
    B = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t K = A.shape[0], M = A.shape[1], P = B.shape[1]
    out = np.zeros((M, P), dtype=np.complex128)
    # real views: (re, im) pairs interleaved along the last axis
    cdef double[:, ::1] Ar = A.view(np.float64)
    cdef double[:, ::1] Br = B.view(np.float64)
    cdef double[:, ::1] Or = out.view(np.float64)
    cdef Py_ssize_t k, m, p
    cdef double ar, ai, br, bi
    with nogil:
        for k in range(K):
            for m in range(M):
                ar = Ar[k, 2 * m]
                ai = Ar[k, 2 * m + 1]
                for p in range(P):
                    br = Br[k, 2 * p]
                    bi = Br[k, 2 * p + 1]
                    Or[m, 2 * p] += ar * br - ai * bi
                    Or[m, 2 * p + 1] += ar * bi + ai * br
    return out
