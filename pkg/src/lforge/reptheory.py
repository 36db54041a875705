"""Root systems, Weyl characters, Freudenthal multiplicities and Satake maps.

Torus coordinates for a system of rank ``r`` are named ``y1..yr``; the
similitude systems (C2sim = GSp4, D3sim = GSO6) carry an extra coordinate
``nu`` and their sign changes act as ``y_i -> nu / y_i``. Characters are
computed as exact alternant quotients in these generic variables and only
then specialized by monomial substitution.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Mapping, Sequence

from .algebra import LaurentPoly, lp_exact_div
from .errors import BoundExceeded

NU = "nu"


class RootSystemId(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    C2sim = "C2sim"
    D3sim = "D3sim"

    @property
    def rank(self) -> int:
        return {"A1": 2, "A2": 3, "A3": 4, "C2sim": 2, "D3sim": 3}[self.value]

    @property
    def similitude(self) -> bool:
        return self in (RootSystemId.C2sim, RootSystemId.D3sim)

    @property
    def rho(self) -> tuple:
        if self is RootSystemId.C2sim:
            return (2, 1)
        if self is RootSystemId.D3sim:
            return (2, 1, 0)
        n = self.rank
        return tuple(range(n - 1, -1, -1))


def _system(system) -> RootSystemId:
    return system if isinstance(system, RootSystemId) else RootSystemId(system)


def torus_vars(system) -> tuple:
    system = _system(system)
    names = tuple(f"y{i + 1}" for i in range(system.rank))
    return names + ((NU,) if system.similitude else ())


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: coordinate i goes to ``perm[i]`` and is flipped if ``signs[i] < 0``.

    Acting on a weight ``mu``: ``(w mu)[perm[i]] = signs[i] * mu[i]``.
    """

    perm: tuple
    signs: tuple

    @property
    def sign(self) -> int:
        # determinant of the signed permutation matrix
        n = len(self.perm)
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if self.perm[i] > self.perm[j])
        s = -1 if inv % 2 else 1
        for x in self.signs:
            s *= x
        return s

    def act(self, mu: Sequence[int]) -> tuple:
        out = [0] * len(mu)
        for i, m in enumerate(mu):
            out[self.perm[i]] = self.signs[i] * m
        return tuple(out)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other."""
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i in range(n):
            j = other.perm[i]
            perm[i] = self.perm[j]
            signs[i] = other.signs[i] * self.signs[j]
        return WeylElement(tuple(perm), tuple(signs))


@lru_cache(maxsize=None)
def weyl_group(system) -> tuple:
    """All Weyl group elements as signed coordinate permutations."""
    system = _system(system)
    n = system.rank
    out = []
    for perm in permutations(range(n)):
        if system in (RootSystemId.A1, RootSystemId.A2, RootSystemId.A3):
            out.append(WeylElement(perm, (1,) * n))
            continue
        for signs in product((1, -1), repeat=n):
            if system is RootSystemId.D3sim and signs.count(-1) % 2:
                continue
            out.append(WeylElement(perm, signs))
    return tuple(out)


def _monomial_exponent(system, w: WeylElement, mu: Sequence[int]) -> tuple:
    """Exponent vector (over torus_vars) of w(y^mu)."""
    n = len(mu)
    exps = [0] * n
    nu = 0
    for i, m in enumerate(mu):
        j = w.perm[i]
        if w.signs[i] > 0:
            exps[j] += m
        elif system.similitude:
            exps[j] -= m
            nu += m
        else:  # pragma: no cover - A systems have no sign changes
            raise ValueError("sign change in a type A Weyl group")
    return tuple(exps) + ((nu,) if system.similitude else ())


def alternant(system, mu: Sequence[int]) -> LaurentPoly:
    """A_mu = sum over W of sgn(w) w(y^mu) as a Laurent polynomial."""
    system = _system(system)
    terms: dict = {}
    for w in weyl_group(system):
        e = _monomial_exponent(system, w, mu)
        terms[e] = terms.get(e, 0) + w.sign
    return LaurentPoly(torus_vars(system), {e: c for e, c in terms.items() if c})


def check_dominant(system, lam: Sequence[int]) -> tuple:
    system = _system(system)
    lam = tuple(int(x) for x in lam)
    if len(lam) != system.rank:
        raise ValueError(f"{system.value} weights have {system.rank} entries, got {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"weight {lam} is not non-increasing")
    if system is RootSystemId.C2sim and lam[-1] < 0:
        raise ValueError(f"C2 weight {lam} must be non-negative")
    if system is RootSystemId.D3sim:
        if lam[1] < abs(lam[2]):
            raise ValueError(f"D3 weight {lam} is not dominant")
        if lam[2] != 0:
            raise ValueError("only last-coordinate-0 similitude weights are supported")
    return lam


@lru_cache(maxsize=None)
def weyl_character(system, lam: tuple) -> LaurentPoly:
    """Character of the irreducible module of highest weight ``lam``.

    Computed as the exact quotient A_{lam+rho} / A_rho in generic torus variables.
    """
    system = _system(system)
    lam = check_dominant(system, lam)
    rho = system.rho
    num = alternant(system, tuple(a + b for a, b in zip(lam, rho)))
    den = alternant(system, rho)
    return lp_exact_div(num, den)


def specialize(poly: LaurentPoly, system, point: Mapping[str, object]) -> LaurentPoly:
    """Substitute a TorusPoint (coordinate name -> LaurentPoly) into a character."""
    names = set(torus_vars(system))
    unknown = set(point) - names
    if unknown:
        raise ValueError(f"unknown torus coordinates {sorted(unknown)}")
    return poly.subs(point)


def apply_weyl(poly: LaurentPoly, system, w: WeylElement) -> LaurentPoly:
    """Act on a polynomial in the torus variables by the Weyl element ``w``."""
    system = _system(system)
    names = torus_vars(system)
    mapping = {}
    for i in range(system.rank):
        target = LaurentPoly.var(names[w.perm[i]])
        if w.signs[i] < 0:
            target = LaurentPoly.var(NU) * target.inverse()
        mapping[names[i]] = target
    # simultaneous substitution through fresh names
    fresh = {n: LaurentPoly.var("_" + n) for n in names[: system.rank]}
    back = {"_" + k: v for k, v in mapping.items()}
    return poly.subs(fresh).subs(back)


# -- Freudenthal oracle ---------------------------------------------------------


def positive_roots(system) -> list:
    system = _system(system)
    n = system.rank
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
            if system.similitude:
                w = [0] * n
                w[i], w[j] = 1, 1
                roots.append(tuple(w))
    if system is RootSystemId.C2sim:
        for i in range(n):
            v = [0] * n
            v[i] = 2
            roots.append(tuple(v))
    return roots


def simple_roots(system) -> list:
    system = _system(system)
    n = system.rank
    out = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(tuple(v))
    if system is RootSystemId.C2sim:
        out.append((0, 2))
    elif system is RootSystemId.D3sim:
        out.append((0, 1, 1))
    return out


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _dominant_rep(system, mu):
    system = _system(system)
    if system is RootSystemId.C2sim:
        return tuple(sorted((abs(x) for x in mu), reverse=True))
    if system is RootSystemId.D3sim:
        a = sorted((abs(x) for x in mu), reverse=True)
        neg = sum(1 for x in mu if x < 0) % 2
        if neg and a[-1] != 0:
            a[-1] = -a[-1]
        return tuple(a)
    return tuple(sorted(mu, reverse=True))


def _simple_coords(system, diff):
    """Coordinates of ``diff`` in the simple-root basis (Fractions), or None."""
    simple = simple_roots(system)
    n = len(diff)
    if len(simple) < n:
        # type A in GL coordinates: the difference must have zero sum
        if sum(diff) != 0:
            return None
        coords, acc = [], 0
        for i in range(n - 1):
            acc += diff[i]
            coords.append(Fraction(acc))
        return coords
    # square system: solve by Gaussian elimination over Q
    m = [[Fraction(simple[j][i]) for j in range(n)] + [Fraction(diff[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _below(system, lam, mu) -> bool:
    coords = _simple_coords(system, tuple(a - b for a, b in zip(lam, mu)))
    return coords is not None and all(c >= 0 and c.denominator == 1 for c in coords)


def weyl_orbit(system, mu) -> set:
    return {w.act(mu) for w in weyl_group(system)}


def freudenthal_multiplicities(system, lam, bound: int = 8) -> dict:
    """Weight multiplicities of the irreducible module of highest weight ``lam``.

    Freudenthal's recursion over dominant weights in order of increasing
    depth below ``lam``, using exact rationals. For type A the weight is first
    shifted so that its last entry is 0.
    """
    system = _system(system)
    lam = check_dominant(system, lam)
    if max(abs(x) for x in lam) > bound:
        raise BoundExceeded(f"weight {lam} exceeds bound {bound}")
    shift = 0
    if not system.similitude:
        shift = lam[-1]
        lam = tuple(x - shift for x in lam)
    rho = system.rho
    pos = positive_roots(system)
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    norm_top = _dot(lam_rho, lam_rho)
    lam_norm = _dot(lam, lam)

    # candidate dominant weights below lam
    n = len(lam)
    box = max(abs(x) for x in lam)
    candidates = []
    for mu in product(range(-box, box + 1), repeat=n):
        if _dominant_rep(system, mu) != mu or _dot(mu, mu) > lam_norm:
            continue
        if _below(system, lam, mu):
            depth = sum(_simple_coords(system, tuple(a - b for a, b in zip(lam, mu))))
            candidates.append((depth, mu))
    candidates.sort()

    mult: dict = {}
    for depth, mu in candidates:
        if mu == lam:
            mult[mu] = Fraction(1)
            continue
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_top - _dot(mu_rho, mu_rho)
        total = Fraction(0)
        for alpha in pos:
            k = 1
            while True:
                nxt = tuple(m + k * a for m, a in zip(mu, alpha))
                if _dot(nxt, nxt) > lam_norm:
                    break
                rep = _dominant_rep(system, nxt)
                total += mult.get(rep, 0) * _dot(nxt, alpha)
                k += 1
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {value} at {mu}")
        if value:
            mult[mu] = value
    out = {}
    for mu, m in mult.items():
        for nu in weyl_orbit(system, mu):
            out[tuple(x + shift for x in nu)] = int(m)
    return out


def weyl_dimension(system, lam) -> int:
    system = _system(system)
    lam = check_dominant(system, lam)
    rho = system.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    num, den = Fraction(1), Fraction(1)
    for alpha in positive_roots(system):
        num *= _dot(lam_rho, alpha)
        den *= _dot(rho, alpha)
    value = num / den
    return int(value)


def character_from_multiplicities(system, mult: Mapping) -> LaurentPoly:
    """Assemble the character polynomial from a weight -> multiplicity map.

    For similitude systems each weight ``mu`` of the semisimple part is
    lifted to the torus monomial whose nu-exponent makes it a weight of the
    module with highest weight monomial y^lam (lam the dominant weight).
    """
    system = _system(system)
    names = torus_vars(system)
    terms = {}
    if not mult:
        return LaurentPoly(names, {})
    # with y_i = nu^(1/2) x_i the sign changes become x_i -> 1/x_i; the top
    # weight fixes the nu-power: y^mu * nu^((|lam| - |mu|) / 2)
    top = max(sum(mu) for mu in mult)
    for mu, m in mult.items():
        mu = tuple(mu)
        if system.similitude:
            extra = top - sum(mu)
            if extra % 2:
                raise ArithmeticError(f"weight {mu} is not in the root lattice coset")
            terms[mu + (extra // 2,)] = m
        else:
            terms[mu] = m
    return LaurentPoly(names, terms)


# -- Satake data ----------------------------------------------------------------


def _mono(x) -> LaurentPoly:
    p = LaurentPoly.coerce(x)
    if not p.is_monomial():
        raise ValueError(f"Satake entries must be invertible monomials, got {p}")
    return p


@dataclass(frozen=True)
class SatakeGL2:
    beta: tuple

    def __post_init__(self):
        if len(self.beta) != 2:
            raise ValueError("GL2 Satake data has two entries")
        object.__setattr__(self, "beta", tuple(_mono(b) for b in self.beta))

    @property
    def central(self) -> LaurentPoly:
        return self.beta[0] * self.beta[1]


@dataclass(frozen=True)
class SatakeGL4:
    alpha: tuple
    chi: LaurentPoly = field(default_factory=lambda: LaurentPoly.const(1))

    def __post_init__(self):
        if len(self.alpha) != 4:
            raise ValueError("GL4 Satake data has four entries")
        object.__setattr__(self, "alpha", tuple(_mono(a) for a in self.alpha))
        object.__setattr__(self, "chi", _mono(self.chi))

    @property
    def central(self) -> LaurentPoly:
        """Central character at the uniformizer: chi^2 * alpha1 alpha2 alpha3 alpha4."""
        out = self.chi * self.chi
        for a in self.alpha:
            out = out * a
        return out


@dataclass(frozen=True)
class SatakeGSp4:
    c0: LaurentPoly
    c1: LaurentPoly
    c2: LaurentPoly

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, _mono(getattr(self, name)))

    @property
    def eigenvalues(self) -> tuple:
        return gsp4_satake_from_inert(self.c0, self.c1, self.c2)

    @property
    def similitude(self) -> LaurentPoly:
        return self.c0 * self.c0 * self.c1 * self.c2

    @property
    def central(self) -> LaurentPoly:
        return self.similitude

    def torus_point(self) -> dict:
        """C2sim coordinates with (y1, y2, nu/y2, nu/y1) = c0 (1, c1, c2, c1 c2)."""
        return {"y1": self.c0, "y2": self.c0 * self.c1, NU: self.similitude}


def exterior_square_satake(s: SatakeGL4):
    """Six eigenvalues chi*alpha_i*alpha_j (i<j) and the similitude nu."""
    a, chi = s.alpha, s.chi
    eig = tuple(chi * a[i] * a[j] for i in range(4) for j in range(i + 1, 4))
    return eig, s.central


def exterior_square_torus_point(s: SatakeGL4) -> dict:
    """D3sim coordinates t1 = chi a1 a2, t2 = chi a1 a3, t3 = chi a2 a3, nu = chi^2 prod a."""
    a, chi = s.alpha, s.chi
    return {"y1": chi * a[0] * a[1], "y2": chi * a[0] * a[2], "y3": chi * a[1] * a[2], NU: s.central}


def gsp4_satake_from_inert(c0, c1, c2) -> tuple:
    c0, c1, c2 = _mono(c0), _mono(c1), _mono(c2)
    return (c0, c0 * c1, c0 * c2, c0 * c1 * c2)


def gl2_torus_point(s: SatakeGL2) -> dict:
    return {"y1": s.beta[0], "y2": s.beta[1]}


# -- branching U(3) -> U(1) x U(2) ----------------------------------------------


def branching_u3_u2(lam) -> list:
    """Summands (det power, (mu1, mu2)) of the restriction of V_lam."""
    lam = check_dominant(RootSystemId.A2, lam)
    size = sum(lam)
    out = []
    for mu1 in range(lam[0], lam[1] - 1, -1):
        for mu2 in range(lam[1], lam[2] - 1, -1):
            out.append((size - mu1 - mu2, (mu1, mu2)))
    return out


@dataclass
class BranchingReport:
    lam: tuple
    ok: bool
    diff: LaurentPoly

    def __bool__(self):
        return self.ok


def verify_branching(lam) -> BranchingReport:
    """Check chi^{A2}_lam(t, x1, x2) == sum t^k chi^{A1}_mu(x1, x2) exactly."""
    lam = check_dominant(RootSystemId.A2, lam)
    t, x1, x2 = (LaurentPoly.var(n) for n in ("t", "x1", "x2"))
    lhs = weyl_character(RootSystemId.A2, lam).subs({"y1": t, "y2": x1, "y3": x2})
    rhs = LaurentPoly.const(0)
    for k, mu in branching_u3_u2(lam):
        chi = weyl_character(RootSystemId.A1, mu).subs({"y1": x1, "y2": x2})
        rhs = rhs + (t ** k) * chi
    diff = lhs - rhs
    return BranchingReport(lam, diff.is_zero(), diff)


# -- JSON interface ---------------------------------------------------------------


def _mono_json(p: LaurentPoly) -> str:
    return str(p)


def satake_to_json(gl4: SatakeGL4 | None = None, gl2: SatakeGL2 | None = None,
                   gsp4: SatakeGSp4 | None = None) -> dict:
    out = {}
    if gl4 is not None:
        out["gl4"] = {"alpha": [_mono_json(a) for a in gl4.alpha], "chi": _mono_json(gl4.chi)}
    if gl2 is not None:
        out["gl2"] = {"beta": [_mono_json(b) for b in gl2.beta]}
    if gsp4 is not None:
        out["gsp4"] = {k: _mono_json(getattr(gsp4, k)) for k in ("c0", "c1", "c2")}
    return out


def satake_from_json(obj: Mapping) -> dict:
    """Parse ``{"gl4": {...}, "gl2": {...}, "gsp4": {...}}``; absent groups are omitted.

    Each entry is a rational string ("3/2"), a number, or a symbol name.
    """
    if not isinstance(obj, Mapping):
        raise ValueError("Satake data must be a JSON object")
    unknown = set(obj) - {"gl4", "gl2", "gsp4"}
    if unknown:
        raise ValueError(f"unknown Satake groups {sorted(unknown)}")
    out = {}
    try:
        if "gl4" in obj:
            g = obj["gl4"]
            out["gl4"] = SatakeGL4(tuple(str(a) for a in g["alpha"]), str(g.get("chi", "1")))
        if "gl2" in obj:
            out["gl2"] = SatakeGL2(tuple(str(b) for b in obj["gl2"]["beta"]))
        if "gsp4" in obj:
            g = obj["gsp4"]
            out["gsp4"] = SatakeGSp4(str(g["c0"]), str(g["c1"]), str(g["c2"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed Satake data: {exc}") from exc
    for name, s in out.items():
        for p in _entries(s):
            if p.is_zero():
                raise ValueError(f"{name} Satake entries must be nonzero")
    return out


def _entries(s) -> tuple:
    if isinstance(s, SatakeGL4):
        return s.alpha + (s.chi,)
    if isinstance(s, SatakeGL2):
        return s.beta
    return (s.c0, s.c1, s.c2)


def symbolic_satake() -> dict:
    """Generic Satake data in free symbols a1..a4, chi, b1, b2, c0, c1, c2."""
    return {
        "gl4": SatakeGL4(("a1", "a2", "a3", "a4"), "chi"),
        "gl2": SatakeGL2(("b1", "b2")),
        "gsp4": SatakeGSp4("c0", "c1", "c2"),
    }


def trivial_satake() -> dict:
    return {
        "gl4": SatakeGL4(("1", "1", "1", "1"), "1"),
        "gl2": SatakeGL2(("1", "1")),
        "gsp4": SatakeGSp4("1", "1", "1"),
    }
