"""Exact arithmetic: rationals, multivariate Laurent polynomials, truncated series.

Coefficients are :class:`fractions.Fraction`. A :class:`LaurentPoly` keeps its
variable names sorted and stores a map from integer exponent tuples to nonzero
coefficients, so two polynomials that are equal have identical term maps once
unused variables are dropped.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Union

from .errors import NonExactDivision
from .kernels import poly_mul

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "LaurentPoly",
    "TruncatedSeries",
    "lp_arith",
    "lp_exact_div",
    "ps_from_inverse_roots",
    "ps_from_euler_polynomial",
    "ps_mul",
    "ps_eq",
    "parse_rational",
    "format_rational",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction (lowest terms)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str) and re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", text):
        return Fraction(text.replace(" ", ""))
    raise ValueError(f"not a rational: {text!r}")


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Immutable multivariate Laurent polynomial over the rationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names: {variables}")
        order = sorted(range(len(variables)), key=lambda i: variables[i])
        self.vars = tuple(variables[i] for i in order)
        out = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ValueError("exponent length does not match variable count")
            coef = parse_rational(coef) if not isinstance(coef, Fraction) else coef
            if coef:
                key = tuple(exp[i] for i in order)
                out[key] = out.get(key, 0) + coef
        self.terms = {k: v for k, v in out.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls._raw((name,), {(int(power),): Fraction(1)})

    @classmethod
    def monomial(cls, coef: Scalar = 1, powers: Mapping[str, int] | None = None) -> "LaurentPoly":
        powers = {k: v for k, v in (powers or {}).items()}
        names = tuple(sorted(powers))
        return cls(names, {tuple(powers[n] for n in names): Fraction(coef)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        t = self.trimmed()
        return not t.vars

    def constant_value(self) -> Fraction:
        t = self.trimmed()
        if t.vars:
            raise ValueError("polynomial is not constant")
        return t.terms.get((), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def trimmed(self) -> "LaurentPoly":
        """Drop variables that appear with exponent 0 in every term."""
        if not self.vars:
            return self
        used = [any(e[i] for e in self.terms) for i in range(len(self.vars))]
        if all(used):
            return self
        keep = [i for i, u in enumerate(used) if u]
        return LaurentPoly._raw(
            tuple(self.vars[i] for i in keep),
            {tuple(e[i] for i in keep): c for e, c in self.terms.items()},
        )

    def extend(self, variables: tuple) -> "LaurentPoly":
        """Re-express over the sorted variable tuple ``variables`` (a superset)."""
        if variables == self.vars:
            return self
        idx = []
        for v in variables:
            try:
                idx.append(self.vars.index(v))
            except ValueError:
                idx.append(-1)
        missing = set(self.vars) - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} missing from target")
        return LaurentPoly._raw(
            variables,
            {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in self.terms.items()},
        )

    def _aligned(self, other: "LaurentPoly"):
        if self.vars == other.vars:
            return self, other
        union = tuple(sorted(set(self.vars) | set(other.vars)))
        return self.extend(union), other.extend(union)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw(self.vars, {})
            return LaurentPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._aligned(other)
        if not a.terms or not b.terms:
            return LaurentPoly._raw(a.vars, {})
        return LaurentPoly._raw(a.vars, poly_mul(a.terms, b.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly._raw(self.vars, {(0,) * len(self.vars): Fraction(1)})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        """Multiplicative inverse; only monomials are invertible."""
        if len(self.terms) != 1:
            raise NonExactDivision("only nonzero monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.vars, {tuple(-x for x in e): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return lp_exact_div(self, LaurentPoly.coerce(other))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "LaurentPoly":
        """Substitute variables by Laurent polynomials (or scalars).

        Negative powers require the substituted value to be a monomial.
        """
        if not mapping:
            return self
        mapping = {k: LaurentPoly.coerce(v) for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        if all(v.is_monomial() for v in mapping.values()):
            return self._subs_monomial(mapping)
        powers: dict = {}

        def power(name, k):
            key = (name, k)
            if key not in powers:
                powers[key] = mapping[name] ** k
            return powers[key]

        keep = [i for i, v in enumerate(self.vars) if v not in mapping]
        kept_vars = tuple(self.vars[i] for i in keep)
        total = LaurentPoly.const(0)
        for e, c in self.terms.items():
            term = LaurentPoly._raw(kept_vars, {tuple(e[i] for i in keep): c})
            for i, v in enumerate(self.vars):
                if v in mapping and e[i]:
                    term = term * power(v, e[i])
            total = total + term
        return total

    def _subs_monomial(self, mapping) -> "LaurentPoly":
        new_vars = set(v for v in self.vars if v not in mapping)
        for m in mapping.values():
            new_vars |= set(m.vars)
        target = tuple(sorted(new_vars))
        pos = {v: i for i, v in enumerate(target)}
        # each source variable becomes (coef, exponent vector over target)
        images = []
        for v in self.vars:
            if v in mapping:
                m = mapping[v]
                (e, c), = m.terms.items()
                vec = [0] * len(target)
                for name, x in zip(m.vars, e):
                    vec[pos[name]] += x
                images.append((c, vec))
            else:
                vec = [0] * len(target)
                vec[pos[v]] = 1
                images.append((Fraction(1), vec))
        out: dict = {}
        n = len(target)
        for e, c in self.terms.items():
            vec = [0] * n
            coef = c
            for k, (ic, ivec) in zip(e, images):
                if k:
                    if ic != 1:
                        coef = coef * ic ** k
                    for j in range(n):
                        if ivec[j]:
                            vec[j] += k * ivec[j]
            key = tuple(vec)
            val = out.get(key, 0) + coef
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return LaurentPoly._raw(target, out)

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numerical value with every variable assigned a number."""
        total = 0
        for e, c in self.terms.items():
            v = complex(c) if not isinstance(c, Fraction) else c
            for name, k in zip(self.vars, e):
                if k:
                    v = v * values[name] ** k
            total += v
        return total

    def coefficient_sum(self) -> Fraction:
        """Value at the all-ones point."""
        return sum(self.terms.values(), Fraction(0))

    def leading_term(self):
        """(exponent, coefficient) of the lexicographically largest exponent."""
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    # -- rendering ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?:\^(?P<exp>[+-]?\d+))?|(?P<op>[*+-]))")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the textual form produced by ``str``, e.g. ``"3/2*x^2*y^-1 + 1"``."""
        text = text.strip()
        pos = 0
        total = cls.const(0)
        sign, coef, powers = 1, Fraction(1), {}
        have_factor, after_star = False, False
        while pos < len(text):
            m = cls._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            pos = m.end()
            op = m.group("op")
            if op in ("+", "-"):
                if after_star:
                    raise ValueError(f"operator after '*' in {text!r}")
                step = 1 if op == "+" else -1
                if have_factor:
                    total = total + cls.monomial(sign * coef, powers)
                    sign, coef, powers, have_factor = step, Fraction(1), {}, False
                else:
                    sign *= step
                continue
            if op == "*":
                if not have_factor or after_star:
                    raise ValueError(f"unexpected '*' in {text!r}")
                after_star = True
                continue
            if have_factor and not after_star:
                raise ValueError(f"missing operator in {text!r}")
            if m.group("num"):
                coef *= Fraction(m.group("num"))
            else:
                name = m.group("name")
                powers[name] = powers.get(name, 0) + int(m.group("exp") or 1)
            have_factor, after_star = True, False
        if not have_factor or after_star:
            raise ValueError(f"incomplete polynomial text {text!r}")
        return total + cls.monomial(sign * coef, powers)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        return cls(obj["vars"], {tuple(t["exp"]): parse_rational(t["coef"]) for t in obj["terms"]})


def lp_arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def lp_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient by leading-term elimination; raises NonExactDivision.

    Termination: any exact quotient has exponents inside the box
    ``[min(num) - min(den), lead(num) - lead(den)]`` per variable, so a
    candidate quotient term outside that box proves the division inexact.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    num, den = num._aligned(den)
    if num.is_zero():
        return num
    n = len(num.vars)
    lower = [
        min(e[i] for e in num.terms) - min(e[i] for e in den.terms) for i in range(n)
    ]
    upper = [
        max(e[i] for e in num.terms) - max(e[i] for e in den.terms) for i in range(n)
    ]
    de, dc = den.leading_term()
    rem = dict(num.terms)
    quot: dict = {}
    den_items = list(den.terms.items())
    while rem:
        re_, rc = max(rem.items())
        qe = tuple(x - y for x, y in zip(re_, de))
        if any(qe[i] < lower[i] or qe[i] > upper[i] for i in range(n)):
            raise NonExactDivision(f"{num} is not divisible by {den}")
        qc = rc / dc
        quot[qe] = qc
        for e, c in den_items:
            key = tuple(x + y for x, y in zip(qe, e))
            v = rem.get(key, 0) - qc * c
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return LaurentPoly._raw(num.vars, quot)


class TruncatedSeries:
    """Power series in one or two deformation variables with LaurentPoly coefficients.

    ``coeffs`` maps ``(deg_T, deg_U)`` to nonzero coefficients; all degrees are
    within ``orders`` (inclusive). One-variable series have ``N_U == 0``.
    """

    __slots__ = ("names", "orders", "coeffs")

    def __init__(self, names=("T",), orders=(8, 0), coeffs=None):
        names = tuple(names)
        if not 1 <= len(names) <= 2:
            raise ValueError("one or two deformation variables")
        orders = (int(orders[0]), int(orders[1]) if len(names) == 2 else 0)
        self.names = names
        self.orders = orders
        out = {}
        for (i, j), c in (coeffs or {}).items():
            if i <= orders[0] and j <= orders[1]:
                c = LaurentPoly.coerce(c)
                if not c.is_zero():
                    out[(i, j)] = c
        self.coeffs = out

    @classmethod
    def one(cls, names=("T",), orders=(8, 0)) -> "TruncatedSeries":
        return cls(names, orders, {(0, 0): LaurentPoly.const(1)})

    def coefficient(self, i: int, j: int = 0) -> LaurentPoly:
        return self.coeffs.get((i, j), LaurentPoly.const(0))

    def truncate(self, orders) -> "TruncatedSeries":
        return TruncatedSeries(self.names, orders, self.coeffs)

    def _common(self, other):
        if self.names != other.names:
            raise ValueError(f"deformation variables differ: {self.names} vs {other.names}")
        return (min(self.orders[0], other.orders[0]), min(self.orders[1], other.orders[1]))

    def __add__(self, other):
        orders = self._common(other)
        out = dict(self.truncate(orders).coeffs)
        for k, c in other.truncate(orders).coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TruncatedSeries(self.names, orders, out)

    def __neg__(self):
        return TruncatedSeries(self.names, self.orders, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return TruncatedSeries(self.names, self.orders, {k: c * other for k, c in self.coeffs.items()})
        return ps_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return ps_eq(self, other)

    __hash__ = None

    def degrees(self):
        """All (i, j) within bounds, ordered by total degree then i descending."""
        pts = product(range(self.orders[0] + 1), range(self.orders[1] + 1))
        return sorted(pts, key=lambda p: (p[0] + p[1], p[1], p[0]))

    def first_mismatch(self, other):
        """First (degree, lhs, rhs) where the two series differ, else None."""
        orders = self._common(other)
        for i, j in TruncatedSeries(self.names, orders).degrees():
            a, b = self.coefficient(i, j), other.coefficient(i, j)
            if a != b:
                return (i, j), a, b
        return None

    def degree_label(self, deg) -> str:
        i, j = deg
        parts = []
        if i:
            parts.append(self.names[0] if i == 1 else f"{self.names[0]}^{i}")
        if j:
            parts.append(self.names[1] if j == 1 else f"{self.names[1]}^{j}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        parts = []
        for deg in self.degrees():
            c = self.coeffs.get(deg)
            if c is None:
                continue
            mono = self.degree_label(deg)
            cs = str(c)
            if len(c) == 1:
                neg = cs.startswith("-")
                body = cs[1:] if neg else cs
                if mono != "1":
                    body = mono if body == "1" else f"{body}{mono}" if c.is_constant() else f"{body}*{mono}"
                term = ("-" if neg else "+", body)
            else:
                term = ("+", f"({cs})" + ("" if mono == "1" else f"*{mono}"))
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"TruncatedSeries({str(self)!r}, orders={self.orders})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "orders": list(self.orders[: len(self.names)]),
            "coeffs": [
                {"deg": list(deg[: len(self.names)]), "coef": self.coeffs[deg].to_json()}
                for deg in self.degrees()
                if deg in self.coeffs
            ],
        }


def _block(root) -> tuple:
    """Normalize an inverse-root block to (lambda, d, variable index)."""
    if isinstance(root, LaurentPoly) or isinstance(root, (int, Fraction)):
        return LaurentPoly.coerce(root), 1, 0
    lam, d, *rest = root
    var = rest[0] if rest else 0
    return LaurentPoly.coerce(lam), int(d), int(var)


def ps_from_inverse_roots(roots, N: int, names=("T",), orders=None) -> TruncatedSeries:
    """Expand ``prod_j (1 - lambda_j X_j^{d_j})^{-1}`` to the given order.

    Each root is a LaurentPoly (d = 1 in T), a pair ``(lambda, d)`` or a
    triple ``(lambda, d, var_index)`` where ``var_index`` selects T (0) or U (1).
    """
    if orders is None:
        orders = (N, 0)
    s = TruncatedSeries.one(names, orders)
    coeffs = dict(s.coeffs)
    NT, NU = s.orders
    for root in roots:
        lam, d, var = _block(root)
        if d < 1:
            raise ValueError("block degree must be >= 1")
        # dividing by (1 - lam X^d): c'[k] = c[k] + lam * c'[k - d] along X
        if var == 0:
            for j in range(NU + 1):
                for i in range(d, NT + 1):
                    prev = coeffs.get((i - d, j))
                    if prev is not None:
                        v = coeffs.get((i, j), LaurentPoly.const(0)) + lam * prev
                        if v.is_zero():
                            coeffs.pop((i, j), None)
                        else:
                            coeffs[(i, j)] = v
        else:
            for i in range(NT + 1):
                for j in range(d, NU + 1):
                    prev = coeffs.get((i, j - d))
                    if prev is not None:
                        v = coeffs.get((i, j), LaurentPoly.const(0)) + lam * prev
                        if v.is_zero():
                            coeffs.pop((i, j), None)
                        else:
                            coeffs[(i, j)] = v
    return TruncatedSeries(names, orders, coeffs)


def ps_from_euler_polynomial(roots, N: int, names=("T",), orders=None) -> TruncatedSeries:
    """Expand the polynomial ``prod_j (1 - lambda_j X_j^{d_j})`` (an inverse Euler factor)."""
    if orders is None:
        orders = (N, 0)
    s = TruncatedSeries.one(names, orders)
    for root in roots:
        lam, d, var = _block(root)
        deg = (d, 0) if var == 0 else (0, d)
        s = ps_mul(s, TruncatedSeries(names, orders, {(0, 0): 1, deg: -lam}))
    return s


def ps_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    orders = a._common(b)
    NT, NU = orders
    out: dict = {}
    for (i1, j1), c1 in a.coeffs.items():
        if i1 > NT or j1 > NU:
            continue
        for (i2, j2), c2 in b.coeffs.items():
            i, j = i1 + i2, j1 + j2
            if i > NT or j > NU:
                continue
            prod_ = c1 * c2
            out[(i, j)] = out[(i, j)] + prod_ if (i, j) in out else prod_
    return TruncatedSeries(a.names, orders, out)


def ps_eq(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    return a.first_mismatch(b) is None
