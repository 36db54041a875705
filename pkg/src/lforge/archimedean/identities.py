"""Archimedean L-factors and numerical checks of the Mellin-Barnes identities."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import BalanceViolation, CentralCharacterViolation, ContourViolation
from .gamma import ArchField, GammaProduct, as_field
from .quadrature import MBIntegrand, QuadratureSpec, choose_contour, mb_integrate

CC_TOL = 1e-12


def _c(x) -> complex:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    return complex(x)


def cjson(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class ArchParams:
    mu: tuple
    nu: tuple
    field: ArchField = ArchField.R

    def __post_init__(self):
        if len(self.mu) != 4 or len(self.nu) != 2:
            raise ValueError("mu has 4 entries and nu has 2")
        object.__setattr__(self, "mu", tuple(_c(m) for m in self.mu))
        object.__setattr__(self, "nu", tuple(_c(v) for v in self.nu))
        object.__setattr__(self, "field", as_field(self.field))

    @property
    def mu_sum(self) -> complex:
        return sum(self.mu)

    def cc_defect(self) -> float:
        nu0, nu1 = self.nu
        return abs(2 * nu0 - nu1 + self.mu_sum)

    def check_cc(self, tol: float = CC_TOL):
        if self.cc_defect() > tol:
            raise CentralCharacterViolation(
                f"2 nu0 - nu1 + |mu| = {2 * self.nu[0] - self.nu[1] + self.mu_sum} is not 0")

    def to_json(self) -> dict:
        return {"mu": [cjson(m) for m in self.mu], "nu": [cjson(v) for v in self.nu],
                "field": self.field.value}

    @classmethod
    def from_json(cls, obj) -> "ArchParams":
        return cls(tuple(obj["mu"]), tuple(obj["nu"]), obj.get("field", "R"))

    @classmethod
    def with_cc(cls, mu, nu1, field=ArchField.R) -> "ArchParams":
        """Fill in nu0 from the central-character condition 2 nu0 - nu1 = -|mu|."""
        mu = tuple(_c(m) for m in mu)
        nu1 = _c(nu1)
        return cls(mu, ((nu1 - sum(mu)) / 2, nu1), field)


# -- L-factors ---------------------------------------------------------------------


def arch_lfactor_product(params: ArchParams, which: str, s) -> GammaProduct:
    F = params.field
    mu, (nu0, nu1) = params.mu, params.nu
    s = _c(s)
    g = GammaProduct()
    if which == "wedge2_std2":
        for i in range(4):
            for j in range(i + 1, 4):
                g.num(F, None, s + mu[i] + mu[j] + nu0)
                g.num(F, None, s + mu[i] + mu[j] + nu0 - nu1)
    elif which == "sym2_twist":
        # Sym^2 of the GL2 parameter is nu-shifts 2nu0, 2nu0 - nu1, 2nu0 - 2nu1
        m = params.mu_sum
        g.num(F, None, s + 2 * nu0 + m)
        g.num(F, None, s + 2 * nu0 - 2 * nu1 + m)
        g.num(F, None, s + 2 * nu0 - nu1 + m)
    else:
        raise ValueError(f"unknown archimedean factor {which!r}")
    return g


def arch_lfactor(params: ArchParams, which: str, s):
    """Value and structured GammaProduct of the archimedean factor."""
    g = arch_lfactor_product(params, which, s)
    return g.value(), g


def zeta_closed_form(params: ArchParams, s) -> complex:
    """L(s, wedge^2 (x) std2) / L(2s, Sym^2 (x) omega) evaluated via the L-factors."""
    s = _c(s)
    top, _ = arch_lfactor(params, "wedge2_std2", s)
    bot, _ = arch_lfactor(params, "sym2_twist", 2 * s)
    return top / bot


def zeta_closed_form_reduced(params: ArchParams, s) -> complex:
    """The same ratio written with |mu|/2 and nu1/2 shifts (no nu0)."""
    F, mu, nu1 = params.field, params.mu, params.nu[1]
    s = _c(s)
    m = params.mu_sum
    g = GammaProduct()
    for i in range(4):
        for j in range(i + 1, 4):
            g.num(F, None, s - m / 2 + mu[i] + mu[j] + nu1 / 2)
            g.num(F, None, s - m / 2 + mu[i] + mu[j] - nu1 / 2)
    g.den(F, None, 2 * s).den(F, None, 2 * s + nu1).den(F, None, 2 * s - nu1)
    return g.value()


# -- Barnes and Stade ------------------------------------------------------------------


def rel_err(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / abs(rhs) if rhs != 0 else abs(lhs - rhs)


@dataclass
class CheckResult:
    check: str
    params: dict
    lhs: complex
    rhs: complex
    quad_error: float = 0.0

    @property
    def rel_err(self) -> float:
        return rel_err(self.lhs, self.rhs)

    def report(self, tolerance: float) -> dict:
        return {"check": self.check, "params": self.params, "lhs": cjson(self.lhs),
                "rhs": cjson(self.rhs), "rel_err": self.rel_err,
                "pass": bool(self.rel_err <= tolerance)}


def _window_check(a, b, name):
    lo = max(-x.real for x in a)
    hi = min(x.real for x in b)
    if not lo < hi:
        raise ContourViolation(f"{name}: empty contour window ({lo:.4g}, {hi:.4g})")
    for x in a:
        for y in b:
            if (x + y).real <= 0:
                raise ContourViolation(f"{name}: Re(a + b) must be positive")


def barnes1_integrand(a, b, field) -> GammaProduct:
    g = GammaProduct()
    for x in a:
        g.num(field, {"z": 1}, x)
    for y in b:
        g.num(field, {"z": -1}, y)
    return g


def barnes1_rhs(a, b, field) -> complex:
    g = GammaProduct()
    for x in a:
        for y in b:
            g.num(field, None, x + y)
    g.den(field, None, sum(a) + sum(b))
    return g.value()


def check_barnes1(a1, a2, b1, b2, field="R", quad: QuadratureSpec | None = None) -> CheckResult:
    F = as_field(field)
    a, b = (_c(a1), _c(a2)), (_c(b1), _c(b2))
    _window_check(a, b, "Barnes-1")
    res = mb_integrate(MBIntegrand(barnes1_integrand(a, b, F), ("z",), spec=quad or QuadratureSpec()))
    params = {"a": [cjson(x) for x in a], "b": [cjson(y) for y in b], "field": F.value}
    return CheckResult("barnes_first_lemma", params, res.value, barnes1_rhs(a, b, F), res.error)


def verify_barnes1(a1, a2, b1, b2, field="R", quad=None) -> float:
    return check_barnes1(a1, a2, b1, b2, field, quad).rel_err


def barnes2_integrand(a, b, field) -> GammaProduct:
    g = barnes1_integrand(a, b, field)
    g.den(field, {"z": -1}, sum(a) + sum(b))
    return g


def barnes2_rhs(a, b, field) -> complex:
    g = GammaProduct()
    for x in a:
        for y in b:
            g.num(field, None, x + y)
    for k in range(3):
        rest = [b[i] for i in range(3) if i != k]
        g.den(field, None, sum(a) + sum(rest))
    return g.value()


def check_barnes2(a1, a2, b1, b2, b3, field="R", quad: QuadratureSpec | None = None) -> CheckResult:
    F = as_field(field)
    a, b = (_c(a1), _c(a2)), (_c(b1), _c(b2), _c(b3))
    _window_check(a, b, "Barnes-2")
    res = mb_integrate(MBIntegrand(barnes2_integrand(a, b, F), ("z",), spec=quad or QuadratureSpec()))
    params = {"a": [cjson(x) for x in a], "b": [cjson(y) for y in b], "field": F.value}
    return CheckResult("barnes_second_lemma", params, res.value, barnes2_rhs(a, b, F), res.error)


def verify_barnes2(a1, a2, b1, b2, b3, field="R", quad=None) -> float:
    return check_barnes2(a1, a2, b1, b2, b3, field, quad).rel_err


def stade_integrand(a, b, field) -> GammaProduct:
    g = GammaProduct()
    for x in a[:3]:
        g.num(field, {"z": 1}, x)
    for y in b[:3]:
        g.num(field, {"z": -1}, y)
    g.den(field, {"z": 1}, a[3]).den(field, {"z": -1}, b[3])
    return g


def stade_transform(a, b) -> tuple:
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (a1, a2, b4 - b1 - b2, a1 + a2 + b3), (b1, b2, a4 - a1 - a2, b1 + b2 + a3)


def stade_prefactor(a, b, field) -> complex:
    """Gamma ratio relating I(a, b) to I at the transformed parameters.

    Equal to 1 at the fixed points of the transformation.
    """
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    g = GammaProduct()
    for x in (a1 + b3, a2 + b3, a3 + b1, a3 + b2):
        g.num(field, None, x)
    for x in (a4 - a1, a4 - a2, b4 - b1, b4 - b2):
        g.den(field, None, x)
    return g.value()


def stade_balanced(a, b, tol=1e-12) -> bool:
    return abs(sum(a[:3]) + sum(b[:3]) - a[3] - b[3]) <= tol * max(1.0, sum(abs(x) for x in a + b))


def check_stade(a, b, field="R", quad: QuadratureSpec | None = None) -> CheckResult:
    """I(a, b) against stade_prefactor(a, b) * I(transformed a, b), both by quadrature."""
    F = as_field(field)
    a, b = tuple(_c(x) for x in a), tuple(_c(y) for y in b)
    if len(a) != 4 or len(b) != 4:
        raise ValueError("Stade's transformation takes four a's and four b's")
    if not stade_balanced(a, b):
        raise BalanceViolation("sum_{i<=3} (a_i + b_i) must equal a_4 + b_4")
    a2, b2 = stade_transform(a, b)
    quad = quad or QuadratureSpec()
    lhs = mb_integrate(MBIntegrand(stade_integrand(a, b, F), ("z",), spec=quad))
    rhs = mb_integrate(MBIntegrand(stade_integrand(a2, b2, F), ("z",), spec=quad))
    factor = stade_prefactor(a, b, F)
    params = {"a": [cjson(x) for x in a], "b": [cjson(y) for y in b], "field": F.value}
    return CheckResult("stade_transformation", params, lhs.value, factor * rhs.value,
                       lhs.error + abs(factor) * rhs.error)


def verify_stade(a, b, field="R", quad=None) -> float:
    return check_stade(a, b, field, quad).rel_err


# -- Whittaker functions ----------------------------------------------------------------


def whittaker_gl2_arch(nu, a0: float, a1: float, field="R", quad: QuadratureSpec | None = None) -> complex:
    """Radial part of the spherical GL2 Whittaker function, displayed normalization."""
    F = as_field(field)
    eps = F.eps
    nu0, nu1 = (_c(x) for x in nu)
    if a0 <= 0 or a1 <= 0:
        raise ValueError("a0 and a1 must be positive")
    g = GammaProduct()
    g.num(F, {"p0": 1}, nu1 / 2).num(F, {"p0": 1}, -nu1 / 2)
    g.expo = {"p0": -eps * math.log(a0 * a1 * a1)}
    res = mb_integrate(MBIntegrand(g, ("p0",), spec=quad or QuadratureSpec()))
    pref = (2 ** eps) * cmath.exp((eps * (nu0 - nu1 / 2) + eps / 2) * math.log(a0)) * a1 ** eps
    return pref * res.value


def u_kernel(g: GammaProduct, mu, F, q1="q1", q2="q2") -> GammaProduct:
    m = sum(mu)
    for i in range(1, 4):
        g.num(F, {q1: 1}, mu[i])
        g.num(F, {q2: 1}, m - mu[i])
    g.den(F, {q1: 1, q2: 1}, m)
    return g


def whittaker_gl4_kernel(mu, p1, p2, p3, field="R", quad: QuadratureSpec | None = None) -> complex:
    """The inner (q1, q2) integral V_mu(p1, p2, p3) of the GL4 Whittaker function."""
    F = as_field(field)
    mu = tuple(_c(x) for x in mu)
    p1, p2, p3 = _c(p1), _c(p2), _c(p3)
    m = sum(mu)
    g = u_kernel(GammaProduct(), mu, F)
    g.num(F, None, p1 + mu[0])
    g.num(F, {"q1": -1}, p1)
    g.num(F, {"q1": -1}, p2 + mu[0])
    g.num(F, {"q2": -1}, p2 - mu[0])
    g.num(F, {"q2": -1}, p3)
    g.num(F, None, p3 + m - mu[0])
    return mb_integrate(MBIntegrand(g, ("q1", "q2"), spec=quad or QuadratureSpec())).value


# -- the zeta integral -----------------------------------------------------------------


def zeta_after_barnes1_integrand(params: ArchParams, s) -> GammaProduct:
    """2-D (q1, q2) integrand left after the p2 and p3 integrals are done."""
    F, mu = params.field, params.mu
    nu1 = params.nu[1]
    m = params.mu_sum
    s = _c(s)
    g = GammaProduct()
    g.num(F, None, 2 * s)
    u_kernel(g, mu, F)
    # A1
    for sign in (1, -1):
        g.num(F, {"q1": -1}, s - m / 2 + sign * nu1 / 2 + mu[0])
        g.num(F, {"q2": -1}, s - m / 2 + sign * nu1 / 2 - mu[0])
    # A2
    g.num(F, {"q2": -1}, 2 * s - m + mu[0])
    g.num(F, {"q1": -1, "q2": -1}, 2 * s - m)
    g.num(F, {"q1": -1}, 2 * s - mu[0])
    g.den(F, {"q1": -1, "q2": -1}, 2 * s - m)
    g.den(F, {"q1": -1, "q2": -1}, 4 * s - m)
    return g


def zeta_full_integrand(params: ArchParams, s) -> GammaProduct:
    """4-D (p2, p3, q1, q2) integrand after the two Mellin inversions."""
    F, mu = params.field, params.mu
    nu1 = params.nu[1]
    m = params.mu_sum
    s = _c(s)
    g = u_kernel(GammaProduct(), mu, F)
    g.num(F, {"p2": -1}, s - m / 2 + nu1 / 2)
    g.num(F, {"p2": -1}, s - m / 2 - nu1 / 2)
    g.num(F, {"p3": -1}, 2 * s - m + mu[0])
    g.num(F, {"p3": -1, "q1": -1}, 2 * s - m)
    g.num(F, {"p2": 1, "q1": -1}, mu[0])
    g.num(F, {"p2": 1, "q2": -1}, -mu[0])
    g.num(F, {"p3": 1, "q2": -1}, 0)
    g.num(F, {"p3": 1}, m - mu[0])
    return g


STAGES = ("after_barnes1", "full")


def check_arch_zeta(params: ArchParams, s=1.0, stage="after_barnes1",
                    quad: QuadratureSpec | None = None) -> CheckResult:
    params.check_cc()
    quad = quad or QuadratureSpec()
    if stage == "after_barnes1":
        integrand = MBIntegrand(zeta_after_barnes1_integrand(params, s), ("q1", "q2"), spec=quad)
    elif stage == "full":
        integrand = MBIntegrand(zeta_full_integrand(params, s), ("p2", "p3", "q1", "q2"), spec=quad)
    else:
        raise ValueError(f"stage must be one of {STAGES}")
    res = mb_integrate(integrand)
    out = dict(params.to_json(), s=cjson(_c(s)), stage=stage)
    return CheckResult(f"archimedean_zeta_{stage}", out, res.value,
                       zeta_closed_form(params, s), res.error)


def arch_zeta_verify(params: ArchParams, s=1.0, stage="after_barnes1", quad=None) -> float:
    return check_arch_zeta(params, s, stage, quad).rel_err


# -- random admissible parameters ---------------------------------------------------------


def _rc(rng, lo, hi, im=1.0) -> complex:
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def random_barnes1(rng: np.random.Generator):
    """a, b with real parts in [0.3, 2] and imaginary parts in [-1, 1]."""
    return tuple(_rc(rng, 0.3, 2.0) for _ in range(2)), tuple(_rc(rng, 0.3, 2.0) for _ in range(2))


def random_barnes2(rng: np.random.Generator):
    return tuple(_rc(rng, 0.3, 2.0) for _ in range(2)), tuple(_rc(rng, 0.3, 2.0) for _ in range(3))


def _stade_admissible(a, b, margin=0.2) -> bool:
    g = stade_integrand(a, b, ArchField.R)
    try:
        choose_contour(g, ("z",), margin)
    except ContourViolation:
        return False
    return True


def random_stade(rng: np.random.Generator, max_tries: int = 1000):
    """Balanced parameters whose original and transformed contours are both admissible."""
    for _ in range(max_tries):
        a = [_rc(rng, 0.3, 1.5, 0.5) for _ in range(4)]
        b = [_rc(rng, 0.3, 1.5, 0.5) for _ in range(3)]
        b.append(sum(a[:3]) + sum(b) - a[3])
        a, b = tuple(a), tuple(b)
        a2, b2 = stade_transform(a, b)
        if _stade_admissible(a, b) and _stade_admissible(a2, b2):
            return a, b
    raise RuntimeError("could not draw admissible Stade parameters")


def stade_fixed_point(a1, a2, b1, b2, b3, b4):
    """Parameters mapped to themselves: a3 = b4 - b1 - b2, a4 = a1 + a2 + b3."""
    a = (_c(a1), _c(a2), _c(b4) - _c(b1) - _c(b2), _c(a1) + _c(a2) + _c(b3))
    return a, (_c(b1), _c(b2), _c(b3), _c(b4))


GENERIC_PARAMS = ArchParams.with_cc((0.1j, 0.05j, -0.05j, -0.1j), 0.1j)
TRIVIAL_PARAMS = ArchParams((0, 0, 0, 0), (0, 0))
