"""Gamma functions, archimedean gamma factors and symbolic products of them."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..errors import PoleAtNonPositiveInteger

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)
LOG_2 = math.log(2.0)
POLE_TOL = 1e-13


class ArchField(str, enum.Enum):
    R = "R"
    C = "C"

    @property
    def eps(self) -> int:
        return 1 if self is ArchField.R else 2


def as_field(f) -> ArchField:
    return f if isinstance(f, ArchField) else ArchField(str(f).upper())


def _pole_check(z: complex, scale: float = 1.0, what: str = "Gamma"):
    # Gamma(z / scale) has poles where z / scale is a non-positive integer
    w = z / scale
    k = round(w.real)
    if k <= 0 and abs(w - k) <= POLE_TOL * max(1.0, abs(w)):
        raise PoleAtNonPositiveInteger(f"{what} has a pole at {z}", factor=(what, z))


def log_complex_gamma(z) -> complex:
    z = complex(z)
    _pole_check(z)
    return complex(kernels.loggamma(np.array([z]))[0])


def complex_gamma(z) -> complex:
    """Gamma(z) in double precision (Lanczos, reflection for Re z < 1/2)."""
    return cmath.exp(log_complex_gamma(z))


def log_gamma_F(field, z) -> complex:
    z = complex(z)
    if as_field(field) is ArchField.R:
        _pole_check(z, 2.0, "Gamma_R")
        return -0.5 * z * LOG_PI + complex(kernels.loggamma(np.array([0.5 * z]))[0])
    _pole_check(z, 1.0, "Gamma_C")
    return LOG_2 - z * LOG_2PI + complex(kernels.loggamma(np.array([z]))[0])


def gamma_R(s) -> complex:
    """pi^{-s/2} Gamma(s/2)."""
    return cmath.exp(log_gamma_F(ArchField.R, s))


def gamma_C(s) -> complex:
    """2 (2 pi)^{-s} Gamma(s)."""
    return cmath.exp(log_gamma_F(ArchField.C, s))


def gamma_F(field, s) -> complex:
    return cmath.exp(log_gamma_F(field, s))


def log_gamma_F_array(field, z: np.ndarray) -> np.ndarray:
    """Vectorized log Gamma_F without pole checks (callers guarantee distance)."""
    z = np.asarray(z, dtype=np.complex128)
    if as_field(field) is ArchField.R:
        return -0.5 * LOG_PI * z + kernels.loggamma(0.5 * z)
    return LOG_2 - LOG_2PI * z + kernels.loggamma(z)


@dataclass(frozen=True)
class GammaFactor:
    """Gamma_F(sum_v coeffs[v] * v + const); ``power`` is +1 (numerator) or -1."""

    field: ArchField
    coeffs: tuple  # sorted ((var, int coefficient), ...) with nonzero coefficients
    const: complex
    power: int = 1

    @staticmethod
    def make(field, coeffs=None, const=0.0, power=1) -> "GammaFactor":
        items = tuple(sorted((v, int(c)) for v, c in (coeffs or {}).items() if int(c) != 0))
        return GammaFactor(as_field(field), items, complex(const), int(power))

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self.coeffs)

    def coefficient(self, var) -> int:
        return dict(self.coeffs).get(var, 0)

    def argument(self, point=None) -> complex:
        point = point or {}
        return self.const + sum(c * complex(point[v]) for v, c in self.coeffs)

    def key(self):
        return (self.field, self.coeffs, self.const)

    def describe(self) -> str:
        parts = [f"{c:+d}*{v}" for v, c in self.coeffs]
        parts.append(f"{self.const:+.6g}")
        body = " ".join(parts)
        return f"Gamma_{self.field.value}({body})" + ("" if self.power > 0 else "^-1")


@dataclass
class GammaProduct:
    """``scale * exp(sum_v expo[v] * v) * prod Gamma_F(...)^{+-1}``."""

    factors: list = field(default_factory=list)
    scale: complex = 1.0
    expo: dict = field(default_factory=dict)

    def num(self, field, coeffs=None, const=0.0) -> "GammaProduct":
        self.factors.append(GammaFactor.make(field, coeffs, const, 1))
        return self

    def den(self, field, coeffs=None, const=0.0) -> "GammaProduct":
        self.factors.append(GammaFactor.make(field, coeffs, const, -1))
        return self

    @property
    def numerator(self) -> list:
        return [f for f in self.factors if f.power > 0]

    @property
    def denominator(self) -> list:
        return [f for f in self.factors if f.power < 0]

    @property
    def variables(self) -> tuple:
        out = set(self.expo)
        for f in self.factors:
            out.update(f.variables)
        return tuple(sorted(out))

    def simplified(self, tol: float = 0.0) -> "GammaProduct":
        """Cancel numerator/denominator pairs with identical arguments."""
        pending = list(self.factors)
        out = []
        while pending:
            f = pending.pop(0)
            match = None
            for i, g in enumerate(pending):
                if (g.power == -f.power and g.field == f.field and g.coeffs == f.coeffs
                        and abs(g.const - f.const) <= tol):
                    match = i
                    break
            if match is None:
                out.append(f)
            else:
                pending.pop(match)
        return GammaProduct(out, self.scale, dict(self.expo))

    def log_value(self, point=None) -> complex:
        point = point or {}
        total = cmath.log(self.scale) if self.scale != 0 else -math.inf
        for v, lam in self.expo.items():
            total += lam * complex(point[v])
        for f in self.factors:
            z = f.argument(point)
            try:
                lg = log_gamma_F(f.field, z)
            except PoleAtNonPositiveInteger as exc:
                if f.power < 0:
                    return -math.inf  # 1/Gamma vanishes at its poles
                raise PoleAtNonPositiveInteger(str(exc), factor=f.describe()) from None
            total += f.power * lg
        return total

    def value(self, point=None) -> complex:
        lv = self.log_value(point)
        if lv == -math.inf:
            return 0j
        return cmath.exp(lv)
