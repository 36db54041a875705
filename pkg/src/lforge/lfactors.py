"""Unramified Euler factors, Casselman-Shalika values and zeta-series identities.

Everything here is exact. A local factor is a list of blocks ``(lambda, d)``
standing for ``prod (1 - lambda T^d)^{-1}`` with ``T = q^{-s}``; the modulus
``q`` is carried through the Whittaker values as ``qh^2`` where ``qh`` is a
formal square root, so half-integral powers stay polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (
    LaurentPoly,
    TruncatedSeries,
    format_rational,
    ps_from_euler_polynomial,
    ps_from_inverse_roots,
    ps_mul,
)
from .parallel import ordered_map
from .reptheory import (
    RootSystemId,
    SatakeGL2,
    SatakeGL4,
    SatakeGSp4,
    exterior_square_torus_point,
    gl2_torus_point,
    satake_to_json,
    weyl_character,
)

QH = "qh"  # formal q^(1/2)
PLACES = ("split", "inert")


def _qpow(half_exponent: int) -> LaurentPoly:
    """q^(half_exponent / 2)."""
    return LaurentPoly.var(QH, half_exponent)


@dataclass
class EulerFactor:
    """``prod (1 - lambda X^d)^{-1}`` over ``blocks``; ``var`` 0 is T, 1 is U."""

    blocks: list
    label: str
    var: int = 0

    @property
    def degree(self) -> int:
        return sum(d for _, d in self.blocks)

    def inverse_roots(self) -> list:
        return [lam for lam, _ in self.blocks]

    def _roots(self):
        return [(lam, d, self.var) for lam, d in self.blocks]

    def series(self, N: int, names=("T",), orders=None) -> TruncatedSeries:
        return ps_from_inverse_roots(self._roots(), N, names, orders)

    def inverse_series(self, N: int, names=("T",), orders=None) -> TruncatedSeries:
        """The polynomial ``prod (1 - lambda X^d)`` truncated to the same orders."""
        return ps_from_euler_polynomial(self._roots(), N, names, orders)


@dataclass
class ZetaSeriesConfig:
    N_T: int = 8
    N_U: int = 4
    place: str = "split"

    def __post_init__(self):
        if self.N_T < 1:
            raise ValueError("N_T must be >= 1")
        if self.N_U < 0:
            raise ValueError("N_U must be >= 0")
        if self.place not in PLACES:
            raise ValueError(f"place must be one of {PLACES}")


# -- Euler factors ---------------------------------------------------------------


def lfactor_sym2(s: SatakeGL2, chi) -> EulerFactor:
    """L(2s, Sym^2 (x) chi): blocks beta1^2 chi, beta1 beta2 chi, beta2^2 chi at T^2."""
    chi = LaurentPoly.coerce(chi)
    b1, b2 = s.beta
    return EulerFactor([(b1 * b1 * chi, 2), (b1 * b2 * chi, 2), (b2 * b2 * chi, 2)], "sym2")


def lfactor_wedge2_std2_split(s4: SatakeGL4, s2: SatakeGL2) -> EulerFactor:
    a, chi = s4.alpha, s4.chi
    blocks = []
    for i in range(4):
        for j in range(i + 1, 4):
            for b in s2.beta:
                blocks.append((chi * a[i] * a[j] * b, 1))
    return EulerFactor(blocks, "wedge2_std2_split")


def lfactor_wedge2_std2_inert(c: SatakeGSp4, s2: SatakeGL2) -> EulerFactor:
    """Eight eigenvalue blocks plus the quadratic pair standing for the two
    square-root eigenvalues; these are never materialized individually."""
    blocks = [(e * b, 1) for b in s2.beta for e in c.eigenvalues]
    blocks += [(c.central * b * b, 2) for b in s2.beta]
    return EulerFactor(blocks, "wedge2_std2_inert")


def lfactor_tensor_gsp4_gl2(c: SatakeGSp4, s2: SatakeGL2) -> EulerFactor:
    return EulerFactor([(e * b, 1) for b in s2.beta for e in c.eigenvalues], "tensor8")


def lfactor_std4(s4: SatakeGL4) -> EulerFactor:
    """Standard factor in U = q^{-z-1/2}; blocks alpha1..alpha4 (no chi)."""
    return EulerFactor([(a, 1) for a in s4.alpha], "std4", var=1)


def lfactor_central(omega) -> EulerFactor:
    """Degree-one factor L(2s, omega)."""
    return EulerFactor([(LaurentPoly.coerce(omega), 2)], "central")


# -- Whittaker values ------------------------------------------------------------


def _check_nm(n, m):
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")


def cs_whittaker_gsp4(n: int, m: int, c: SatakeGSp4) -> LaurentPoly:
    """q^{-3n-2m} * chi_{(m+n, n)}(s_pi') on GSp4."""
    _check_nm(n, m)
    ch = weyl_character(RootSystemId.C2sim, (m + n, n))
    return _qpow(-2 * (3 * n + 2 * m)) * ch.subs(c.torus_point())


def cs_whittaker_gl4(n: int, m: int, s4: SatakeGL4) -> LaurentPoly:
    """q^{-3n-2m} * trace of the exterior square class on V_{(m+n, n, 0)} of GSO6."""
    _check_nm(n, m)
    ch = weyl_character(RootSystemId.D3sim, (m + n, n, 0))
    return _qpow(-2 * (3 * n + 2 * m)) * ch.subs(exterior_square_torus_point(s4))


def cs_whittaker_gl2(n: int, m: int, s2: SatakeGL2) -> LaurentPoly:
    """q^{-m/2} * chi_{(m+n, n)}(s_sigma) on GL2."""
    _check_nm(n, m)
    ch = weyl_character(RootSystemId.A1, (m + n, n))
    return _qpow(-m) * ch.subs(gl2_torus_point(s2))


def zeta_series(place: str, satake, s2: SatakeGL2, cfg: ZetaSeriesConfig | None = None,
                prefactor: bool = False) -> TruncatedSeries:
    """sum_{2n+m <= N} q^{4n+3m-(2n+m)(s+1/2)} W_sigma W_pi, with T = q^{-s}.

    ``satake`` is a SatakeGL4 (split) or SatakeGSp4 (inert). With
    ``prefactor=True`` the result is multiplied by L(2s, Sym^2 (x) omega_pi).
    """
    cfg = cfg or ZetaSeriesConfig(place=place)
    N = cfg.N_T
    if place == "split":
        if not isinstance(satake, SatakeGL4):
            raise TypeError("split place needs GL4 Satake data")
        w_pi = cs_whittaker_gl4
    elif place == "inert":
        if not isinstance(satake, SatakeGSp4):
            raise TypeError("inert place needs GSp4 Satake data")
        w_pi = cs_whittaker_gsp4
    else:
        raise ValueError(f"place must be one of {PLACES}")
    coeffs: dict = {}
    for k in range(N + 1):
        total = LaurentPoly.const(0)
        for n in range(k // 2 + 1):
            m = k - 2 * n
            # q^{4n+3m} q^{-(2n+m)/2}; the q^{-(2n+m)s} part is T^k
            scale = _qpow(2 * (4 * n + 3 * m) - k)
            total = total + scale * cs_whittaker_gl2(n, m, s2) * w_pi(n, m, satake)
        coeffs[(k, 0)] = total
    out = TruncatedSeries(("T",), (N, 0), coeffs)
    if prefactor:
        out = ps_mul(out, lfactor_sym2(s2, satake.central).series(N))
    return out


# -- reports ---------------------------------------------------------------------


def _report(identity: str, params, N, lhs: TruncatedSeries, rhs: TruncatedSeries) -> dict:
    mm = lhs.first_mismatch(rhs)
    first = None
    if mm is not None:
        deg, a, b = mm
        degree = deg[0] if len(lhs.names) == 1 else list(deg)
        first = {"degree": degree, "lhs": str(a), "rhs": str(b)}
    return {"identity": identity, "params": params, "order": N, "pass": mm is None,
            "first_mismatch": first}


def _corrupt(p: LaurentPoly) -> LaurentPoly:
    return p * 2 + 1 if p.is_constant() else p * 2


def verify_inert(c: SatakeGSp4, s2: SatakeGL2, N: int = 8, mutate: bool = False) -> list:
    """Both inert identities, each as its own report.

    zeta * L(2s, Sym^2 (x) omega) against the wedge^2 (x) std2 factor, and
    against L(2s, omega omega_sigma)^{-1} L(2s, Sym^2 (x) omega) L(s, r).
    ``mutate`` corrupts c0 on the Whittaker side only.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    params = satake_to_json(gsp4=c, gl2=s2)
    wc = SatakeGSp4(_corrupt(c.c0), c.c1, c.c2) if mutate else c
    lhs = ps_mul(zeta_series("inert", wc, s2, ZetaSeriesConfig(N, 0, "inert")),
                 lfactor_sym2(s2, c.central).series(N))
    rhs1 = lfactor_wedge2_std2_inert(c, s2).series(N)
    rhs2 = ps_mul(
        ps_mul(lfactor_central(c.central * s2.central).inverse_series(N),
               lfactor_sym2(s2, c.central).series(N)),
        lfactor_tensor_gsp4_gl2(c, s2).series(N))
    return [
        _report("inert_zeta_equals_wedge2_std2", params, N, lhs, rhs1),
        _report("inert_zeta_equals_sym2_tensor_ratio", params, N, lhs, rhs2),
    ]


def verify_split(s4: SatakeGL4, s2: SatakeGL2, N: int = 8, mutate: bool = False) -> list:
    """zeta * L(2s, Sym^2 (x) omega_pi) against the 12-dimensional split factor.

    ``mutate`` corrupts chi on the Whittaker side only.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    params = satake_to_json(gl4=s4, gl2=s2)
    ws = SatakeGL4(s4.alpha, _corrupt(s4.chi)) if mutate else s4
    lhs = ps_mul(zeta_series("split", ws, s2, ZetaSeriesConfig(N, 0, "split")),
                 lfactor_sym2(s2, s4.central).series(N))
    rhs = lfactor_wedge2_std2_split(s4, s2).series(N)
    return [_report("split_zeta_equals_wedge2_std2", params, N, lhs, rhs)]


def complete_homogeneous(values, ell: int) -> LaurentPoly:
    """h_ell of a list of LaurentPolys, as the T^ell coefficient of prod (1 - v T)^{-1}."""
    return ps_from_inverse_roots(list(values), ell).coefficient(ell)


def _plethysm_report(identity, params, lmax, lhs: list, rhs: list) -> dict:
    first = None
    for ell, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            first = {"degree": ell, "lhs": str(a), "rhs": str(b)}
            break
    return {"identity": identity, "params": params, "order": lmax, "pass": first is None,
            "first_mismatch": first}


def verify_sym_alg_fact(c: SatakeGSp4, s2: SatakeGL2, lmax: int = 8) -> dict:
    """h_l(e_i beta_k) == sum_{2i+j=l} (nu b1 b2)^i sum_{m1+m2=j} chi^C2_(m1,m2) chi^A1_(m1,m2)."""
    eig = [e * b for b in s2.beta for e in c.eigenvalues]
    lhs = [complete_homogeneous(eig, ell) for ell in range(lmax + 1)]
    twist = c.similitude * s2.central
    pt4, pt2 = c.torus_point(), gl2_torus_point(s2)
    inner = []
    for j in range(lmax + 1):
        tot = LaurentPoly.const(0)
        for m2 in range(j // 2 + 1):
            m1 = j - m2
            tot = tot + (weyl_character(RootSystemId.C2sim, (m1, m2)).subs(pt4)
                         * weyl_character(RootSystemId.A1, (m1, m2)).subs(pt2))
        inner.append(tot)
    rhs = []
    for ell in range(lmax + 1):
        rhs.append(sum((twist ** i * inner[ell - 2 * i] for i in range(ell // 2 + 1)),
                       LaurentPoly.const(0)))
    return _plethysm_report("symmetric_power_factorization_gsp4_gl2",
                            satake_to_json(gsp4=c, gl2=s2), lmax, lhs, rhs)


def verify_separation_split(s4: SatakeGL4, s2: SatakeGL2, lmax: int = 5) -> dict:
    """h_l(12 eigenvalues) == sum_{2i+j=l} h_i(omega Sym^2 s_sigma) sum_{m1+m2=j} chi^D3 chi^A1."""
    eig = lfactor_wedge2_std2_split(s4, s2).inverse_roots()
    lhs = [complete_homogeneous(eig, ell) for ell in range(lmax + 1)]
    sym = lfactor_sym2(s2, s4.central).inverse_roots()
    hs = [complete_homogeneous(sym, i) for i in range(lmax // 2 + 1)]
    pt6, pt2 = exterior_square_torus_point(s4), gl2_torus_point(s2)
    inner = []
    for j in range(lmax + 1):
        tot = LaurentPoly.const(0)
        for m2 in range(j // 2 + 1):
            m1 = j - m2
            tot = tot + (weyl_character(RootSystemId.D3sim, (m1, m2, 0)).subs(pt6)
                         * weyl_character(RootSystemId.A1, (m1, m2)).subs(pt2))
        inner.append(tot)
    rhs = []
    for ell in range(lmax + 1):
        rhs.append(sum((hs[i] * inner[ell - 2 * i] for i in range(ell // 2 + 1)),
                       LaurentPoly.const(0)))
    return _plethysm_report("symmetric_power_separation_split",
                            satake_to_json(gl4=s4, gl2=s2), lmax, lhs, rhs)


def two_variable_factor(s4: SatakeGL4, s2: SatakeGL2, cfg: ZetaSeriesConfig | None = None) -> TruncatedSeries:
    """Two-variable expansion in (T, U): std4 factor in U times the unnormalized zeta series."""
    cfg = cfg or ZetaSeriesConfig()
    names, orders = ("T", "U"), (cfg.N_T, cfg.N_U)
    z = zeta_series("split", s4, s2, ZetaSeriesConfig(cfg.N_T, cfg.N_U, "split"))
    z2 = TruncatedSeries(names, orders, z.coeffs)
    return ps_mul(lfactor_std4(s4).series(cfg.N_T, names, orders), z2)


def two_variable_product(s4: SatakeGL4, s2: SatakeGL2, cfg: ZetaSeriesConfig | None = None) -> TruncatedSeries:
    """Oracle: L(z+1/2, std4) L(s, wedge^2 (x) std2) / L(2s, Sym^2 (x) omega_pi)."""
    cfg = cfg or ZetaSeriesConfig()
    names, orders = ("T", "U"), (cfg.N_T, cfg.N_U)
    out = lfactor_std4(s4).series(cfg.N_T, names, orders)
    out = ps_mul(out, lfactor_wedge2_std2_split(s4, s2).series(cfg.N_T, names, orders))
    return ps_mul(out, lfactor_sym2(s2, s4.central).inverse_series(cfg.N_T, names, orders))


def verify_two_variable(s4: SatakeGL4, s2: SatakeGL2, cfg: ZetaSeriesConfig | None = None) -> dict:
    cfg = cfg or ZetaSeriesConfig()
    return _report("two_variable_factorization", satake_to_json(gl4=s4, gl2=s2), [cfg.N_T, cfg.N_U],
                   two_variable_factor(s4, s2, cfg), two_variable_product(s4, s2, cfg))


# -- random Satake data ----------------------------------------------------------


def random_rational(rng: np.random.Generator, height: int = 7) -> Fraction:
    """Nonzero rational with |numerator| <= height and denominator in 1..height."""
    num = int(rng.integers(1, height + 1)) * (1 if rng.integers(0, 2) else -1)
    den = int(rng.integers(1, height + 1))
    return Fraction(num, den)


def _c(x: Fraction) -> str:
    return format_rational(x)


def random_satake(rng: np.random.Generator, height: int = 7) -> dict:
    r = lambda: _c(random_rational(rng, height))  # noqa: E731
    return {
        "gl4": SatakeGL4(tuple(r() for _ in range(4)), r()),
        "gl2": SatakeGL2((r(), r())),
        "gsp4": SatakeGSp4(r(), r(), r()),
    }


def sweep_generators(seed: int, count: int) -> list:
    """One independent PCG64 stream per sweep index (SeedSequence spawn)."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(ss)) for ss in children]


def _sweep_one(args):
    which, seed_state, N = args
    rng = np.random.Generator(np.random.PCG64(seed_state))
    sat = random_satake(rng)
    if which == "split":
        return verify_split(sat["gl4"], sat["gl2"], N)
    return verify_inert(sat["gsp4"], sat["gl2"], N)


def random_sweep(which: str, seed: int, count: int, N: int = 8) -> list:
    """Run ``count`` random exact verifications; reports are in input order."""
    if which not in PLACES:
        raise ValueError(f"place must be one of {PLACES}")
    children = np.random.SeedSequence(seed).spawn(count)
    results = ordered_map(_sweep_one, [(which, ss, N) for ss in children])
    return [r for batch in results for r in batch]
