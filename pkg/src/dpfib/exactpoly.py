"""Exact arithmetic for bigraded polynomials over the rationals.

A polynomial lives in Q[t, x, y, z, w] (t may carry negative exponents in
intermediate Laurent results) and is stored sparsely as a map from exponent
tuples to ``Fraction`` coefficients.  The fiber variables x, y, z, w carry
one of two weight systems:

    degree 1:  (1, 1, 2, 3)
    degree 2:  (1, 1, 1, 2)

and t is the base parameter (the local coordinate on the base curve, or the
uniformizer of the valuation ring in germ mode).

All values are immutable after construction and every operation is a pure
function, so shared instances are safe to use concurrently.  The canonical
term order is degrevlex on (t, x, y, z, w); serialization lists terms in
increasing order, which keeps equations such as ``w^2 + z^3 + x^5 y + ...``
in their familiar shape.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import DenominatorNotInvertible

#: Variable names in canonical order.  Exponent tuples follow this order.
VARS = ("t", "x", "y", "z", "w")

#: Fiber weights of (x, y, z, w) for the two fiber degrees.
WEIGHTS_DEG1 = (1, 1, 2, 3)
WEIGHTS_DEG2 = (1, 1, 1, 2)

#: Exponent tuple type: (t, x, y, z, w).
Exponents = tuple

#: Exact rational scalar used throughout; always reduced, denominator > 0.
Rational = Fraction

_VAR_INDEX = {name: i for i, name in enumerate(VARS)}


def weights_for_degree(degree: int) -> tuple:
    if degree == 1:
        return WEIGHTS_DEG1
    if degree == 2:
        return WEIGHTS_DEG2
    raise ValueError(f"unsupported fiber degree {degree}")


def fiber_weight(exps: Exponents, weights: Sequence[int]) -> int:
    """Weighted degree of the fiber part of a monomial (t ignored)."""
    return sum(e * w for e, w in zip(exps[1:], weights))


def degrevlex_key(exps: Exponents):
    """Sort key realizing degrevlex on (t, x, y, z, w).

    Larger key = larger term.  Total exponent degree first; ties broken by
    the reverse-negated exponent vector, the standard degrevlex tiebreak.
    """
    return (sum(exps), tuple(-e for e in reversed(exps)))


class BigradedPoly:
    """Immutable sparse polynomial with a fixed fiber weight system."""

    __slots__ = ("_terms", "weights")

    def __init__(self, terms: Mapping[Exponents, Fraction], weights: Sequence[int]):
        weights = tuple(weights)
        if weights not in (WEIGHTS_DEG1, WEIGHTS_DEG2):
            raise ValueError(f"unknown weight system {weights}")
        clean = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != 5:
                raise ValueError(f"exponent tuple {exps} must have 5 entries")
            if any(e < 0 for e in exps[1:]):
                raise ValueError("fiber exponents must be non-negative")
            clean[exps] = coeff
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("BigradedPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, weights: Sequence[int]) -> "BigradedPoly":
        return cls({}, weights)

    @classmethod
    def constant(cls, value, weights: Sequence[int]) -> "BigradedPoly":
        return cls({(0, 0, 0, 0, 0): Fraction(value)}, weights)

    @classmethod
    def variable(cls, name: str, weights: Sequence[int]) -> "BigradedPoly":
        exps = [0, 0, 0, 0, 0]
        exps[_VAR_INDEX[name]] = 1
        return cls({tuple(exps): Fraction(1)}, weights)

    @classmethod
    def monomial(cls, coeff, exps: Exponents, weights: Sequence[int]) -> "BigradedPoly":
        return cls({tuple(exps): Fraction(coeff)}, weights)

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        """Term map (do not mutate; treat as read-only)."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.sorted_terms())

    def sorted_terms(self):
        """Terms in increasing degrevlex order (leading term last)."""
        return sorted(self._terms.items(), key=lambda item: degrevlex_key(item[0]))

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=degrevlex_key)
        return exps, self._terms[exps]

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree_in(self, var: str) -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        i = _VAR_INDEX[var]
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def min_t_exponent(self) -> int:
        if not self._terms:
            return 0
        return min(e[0] for e in self._terms)

    def fiber_weights_present(self) -> set:
        return {fiber_weight(e, self.weights) for e in self._terms}

    def t_coefficient_poly(self, fiber_exps: Exponents) -> dict:
        """Map t-exponent -> coefficient for a fixed fiber monomial."""
        fx = tuple(fiber_exps)
        return {e[0]: c for e, c in self._terms.items() if e[1:] == fx}

    def fiber_support(self) -> set:
        """Set of fiber exponent tuples (x, y, z, w) occurring in the poly."""
        return {e[1:] for e in self._terms}

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BigradedPoly):
            if other.weights != self.weights:
                raise ValueError("weight systems differ")
            return other
        if isinstance(other, (int, Fraction)):
            return BigradedPoly.constant(other, self.weights)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = out.get(exps, Fraction(0)) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return BigradedPoly(out, self.weights)

    __radd__ = __add__

    def __neg__(self):
        return BigradedPoly({e: -c for e, c in self._terms.items()}, self.weights)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(a + b for a, b in zip(ea, eb))
                acc = out.get(exps, Fraction(0)) + ca * cb
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
        return BigradedPoly(out, self.weights)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = BigradedPoly.constant(1, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        return self.weights == other.weights and self._terms == other._terms

    def __hash__(self):
        return hash((self.weights, frozenset(self._terms.items())))

    def __repr__(self):
        return f"BigradedPoly({to_text(self)!r}, weights={self.weights})"


# -- spec operations -------------------------------------------------------


def substitute_monomial(
    p: BigradedPoly, scale: Sequence[int], global_t_shift: int = 0
) -> BigradedPoly:
    """Apply x -> t^a x, y -> t^b y, z -> t^c z, w -> t^d w and a global t shift.

    ``scale`` is the per-fiber-variable t-exponent tuple (a, b, c, d); entries
    may be negative, and the result may be a Laurent polynomial in t.  This is
    the only operation permitted to introduce negative t exponents; consumers
    must gate on :func:`is_integral` before treating the result as a model
    equation.
    """
    a, b, c, d = (int(v) for v in scale)
    shift = int(global_t_shift)
    out = {}
    for (et, ex, ey, ez, ew), coeff in p.terms.items():
        nt = et + a * ex + b * ey + c * ez + d * ew + shift
        out[(nt, ex, ey, ez, ew)] = coeff
    return BigradedPoly(out, p.weights)


def is_integral(p: BigradedPoly) -> bool:
    """True iff no stored term carries a negative t exponent."""
    return all(e[0] >= 0 for e in p.terms)


def partial_derivative(p: BigradedPoly, var: str) -> BigradedPoly:
    """Formal partial derivative with exact coefficients."""
    i = _VAR_INDEX[var]
    out = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if e == 0:
            continue
        new = list(exps)
        new[i] = e - 1
        key = tuple(new)
        acc = out.get(key, Fraction(0)) + coeff * e
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)
    return BigradedPoly(out, p.weights)


def _coeff_mod(coeff: Fraction, p: int) -> int:
    den = coeff.denominator
    if den % p == 0:
        raise DenominatorNotInvertible(p, den)
    return (coeff.numerator * pow(den, -1, p)) % p


def evaluate(p: BigradedPoly, point: Sequence, modulus: Optional[int] = None):
    """Evaluate at a point (t, x, y, z, w), exactly or in a prime field.

    Without ``modulus`` the result is a ``Fraction``; with a prime modulus the
    coordinates are reduced mod p and an integer in [0, p) is returned.
    Raises :class:`DenominatorNotInvertible` when a coefficient denominator is
    divisible by the modulus.
    """
    if len(point) != 5:
        raise ValueError("point must supply values for (t, x, y, z, w)")
    if modulus is None:
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in p.terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e == 0:
                    continue
                if e < 0:
                    term *= Fraction(1) / (v**(-e))
                else:
                    term *= v**e
            total += term
        return total
    q = modulus
    vals_q = []
    for v in point:
        if isinstance(v, Fraction):
            vals_q.append(_coeff_mod(v, q))
        else:
            vals_q.append(int(v) % q)
    total_q = 0
    for exps, coeff in p.terms.items():
        term = _coeff_mod(coeff, q)
        for v, e in zip(vals_q, exps):
            if e == 0:
                continue
            if e < 0:
                term = term * pow(pow(v, -e, q), -1, q) % q
            else:
                term = term * pow(v, e, q) % q
        total_q = (total_q + term) % q
    return total_q


# -- gcd over Q[t, x, y, z, w] ----------------------------------------------


def divexact(f: BigradedPoly, d: BigradedPoly) -> Optional[BigradedPoly]:
    """Exact quotient f / d, or None when d does not divide f."""
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return BigradedPoly.zero(f.weights)
    quot: dict = {}
    rem = f
    lead_d, lc_d = d.leading_term()
    while not rem.is_zero:
        lead_r, lc_r = rem.leading_term()
        diff = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(e < 0 for e in diff[1:]) or diff[0] < 0:
            return None
        c = lc_r / lc_d
        quot[diff] = quot.get(diff, Fraction(0)) + c
        rem = rem - BigradedPoly.monomial(c, diff, f.weights) * d
    return BigradedPoly(quot, f.weights)


def _univar(p: BigradedPoly, i: int) -> dict:
    """View p as univariate in variable index i: degree -> coefficient poly."""
    coeffs: dict = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        rest = list(exps)
        rest[i] = 0
        coeffs.setdefault(e, {})[tuple(rest)] = coeff
    return {e: BigradedPoly(ts, p.weights) for e, ts in coeffs.items()}


def _from_univar(coeffs: dict, i: int, weights) -> BigradedPoly:
    out: dict = {}
    for e, poly in coeffs.items():
        for exps, coeff in poly.terms.items():
            new = list(exps)
            new[i] += e
            out[tuple(new)] = out.get(tuple(new), Fraction(0)) + coeff
    return BigradedPoly(out, weights)


def _attach(poly: BigradedPoly, i: int, e: int) -> BigradedPoly:
    out = {}
    for exps, coeff in poly.terms.items():
        new = list(exps)
        new[i] += e
        out[tuple(new)] = coeff
    return BigradedPoly(out, poly.weights)


def _is_constant(p: BigradedPoly) -> bool:
    return all(all(e == 0 for e in exps) for exps in p.terms)


def _gcd_pair(f: BigradedPoly, g: BigradedPoly) -> BigradedPoly:
    weights = f.weights
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    if _is_constant(f) or _is_constant(g):
        return BigradedPoly.constant(1, weights)
    for i, var in enumerate(VARS):
        df, dg = f.degree_in(var), g.degree_in(var)
        if df > 0 or dg > 0:
            break
    if df > 0 and dg == 0:
        return _gcd_pair(_content(f, i), g)
    if dg > 0 and df == 0:
        return _gcd_pair(f, _content(g, i))
    cf, cg = _content(f, i), _content(g, i)
    cont = _gcd_pair(cf, cg)
    pf = divexact(f, cf)
    pg = divexact(g, cg)
    prim = _gcd_primitive(pf, pg, i)
    return cont * prim


def _content(p: BigradedPoly, i: int) -> BigradedPoly:
    coeffs = list(_univar(p, i).values())
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = _gcd_pair(acc, c)
        if _is_constant(acc):
            return BigradedPoly.constant(1, p.weights)
    return _primitive_normal(acc)


def _primitive_normal(p: BigradedPoly) -> BigradedPoly:
    """Scale to leading coefficient 1 in the canonical term order."""
    if p.is_zero:
        return p
    _, lc = p.leading_term()
    return p * (Fraction(1) / lc)


def _prem(f: BigradedPoly, g: BigradedPoly, i: int) -> BigradedPoly:
    """Pseudo-remainder of f by g with respect to variable index i."""
    uf, ug = _univar(f, i), _univar(g, i)
    dg = max(ug)
    lead_g = ug[dg]
    r = f
    while not r.is_zero:
        ur = _univar(r, i)
        dr = max(ur)
        if dr < dg:
            break
        lead_r = ur[dr]
        r = lead_g * r - _attach(lead_r, i, dr - dg) * g
    return r


def _gcd_primitive(f: BigradedPoly, g: BigradedPoly, i: int) -> BigradedPoly:
    df, dg = max(_univar(f, i)), max(_univar(g, i))
    if df < dg:
        f, g = g, f
    while not g.is_zero:
        r = _prem(f, g, i)
        if r.is_zero:
            g_cont = _content(g, i) if not _is_constant(g) else None
            if g_cont is not None:
                g = divexact(g, g_cont)
            return _primitive_normal(g)
        if _is_constant(r) or r.degree_in(VARS[i]) == 0:
            return BigradedPoly.constant(1, f.weights)
        f, g = g, divexact(r, _content(r, i))
    return _primitive_normal(f)


def content_gcd(polys: Iterable[BigradedPoly]) -> BigradedPoly:
    """Greatest common divisor over Q, normalized monic in the term order.

    Inputs must be honest polynomials (no Laurent t exponents); the result is
    1 exactly when the inputs are coprime.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("content_gcd requires at least one polynomial")
    for p in polys:
        if p.min_t_exponent() < 0:
            raise ValueError("gcd is defined for integral polynomials only")
    acc = polys[0]
    for p in polys[1:]:
        acc = _gcd_pair(acc, p)
        if _is_constant(acc) and not acc.is_zero:
            return BigradedPoly.constant(1, acc.weights)
    return _primitive_normal(acc)


# -- canonical text form -----------------------------------------------------


def _monomial_text(exps: Exponents) -> str:
    factors = []
    for name, e in zip(VARS, exps):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    return " ".join(factors)


def to_text(p: BigradedPoly) -> str:
    """Canonical textual form: terms in increasing degrevlex order.

    Each term renders as ``coeff * t^a x^b y^c z^d w^e`` with exponent 1 and
    the factor ``1 *`` elided; the zero polynomial renders as ``0``.
    """
    if p.is_zero:
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms():
        mono = _monomial_text(exps)
        if not mono:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(mono)
        else:
            parts.append(f"{coeff} * {mono}")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+(?:/\d+)?)(?:\s*\*\s*|\s+|$))?(?P<mono>(?:[txyzw](?:\^-?\d+)?(?:\s+|$))*)$"
)
_FACTOR_RE = re.compile(r"([txyzw])(?:\^(-?\d+))?")


def parse_term(text: str, weights) -> BigradedPoly:
    text = text.strip()
    m = _TERM_RE.match(text)
    if not m or (m.group("coeff") is None and not m.group("mono").strip()):
        raise ValueError(f"cannot parse term {text!r}")
    coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
    exps = [0, 0, 0, 0, 0]
    mono = m.group("mono").strip()
    if mono:
        consumed = 0
        for fm in _FACTOR_RE.finditer(mono):
            idx = _VAR_INDEX[fm.group(1)]
            exps[idx] += int(fm.group(2)) if fm.group(2) else 1
            consumed += len(fm.group(0))
        if consumed != len(mono.replace(" ", "")):
            raise ValueError(f"cannot parse monomial {mono!r}")
    return BigradedPoly.monomial(coeff, tuple(exps), weights)


def parse_poly(text: str, weights) -> BigradedPoly:
    """Parse the canonical textual form back into a polynomial."""
    text = text.strip()
    if text == "0":
        return BigradedPoly.zero(weights)
    total = BigradedPoly.zero(weights)
    for part in text.split(" + "):
        total = total + parse_term(part, weights)
    return total
