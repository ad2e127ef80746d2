"""Monomial fiber transformations between local models over a valuation ring.

A fiber transformation between two germs V and U in weighted coordinates is
a diagonal map p = t^a x, q = t^b y, r = t^c z, s = t^d w with inverse
exponents (alpha, beta, gamma, delta).  Respecting the grading and avoiding
the singular sections forces, for some integer m > 0,

    degree 1:  a + alpha = b + beta = m,  c + gamma = 2m,  d + delta = 3m,
               2d = 3c,  2*delta = 3*gamma
    degree 2:  a + alpha = b + beta = c + gamma = m,  d + delta = 2m

with at least one zero in each of (a, b, c, d) and (alpha, beta, gamma,
delta).  Transporting the target model's coefficient polynomials back along
such a map multiplies the equation by a single t-power; when the result stays
in the valuation ring and the map is non-trivial, the valuation bounds force
a singular point of the computed source model at a coordinate chart origin.
Every designated point is re-verified by exact Jacobian evaluation before
being reported; a verification failure raises InternalInconsistency rather
than passing silently.

All functions are pure; the randomized property tests that drive this module
take explicit seeds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import Infeasible, InternalInconsistency, InvalidModel, SearchBoundExceeded
from .exactpoly import (
    BigradedPoly,
    evaluate,
    is_integral,
    partial_derivative,
    substitute_monomial,
    to_text,
)
from .model import GERM, FibrationModel, require_valid, validate

FIBER_VARS = ("x", "y", "z", "w")

CHART_POINTS = {
    "x": (0, 1, 0, 0, 0),
    "y": (0, 0, 1, 0, 0),
    "z": (0, 0, 0, 1, 0),
}

ISOMORPHISM = "isomorphism"
SING_IN_V = "forces-singularity-in-V"
SING_IN_U = "forces-singularity-in-U"
SING_IN_BOTH = "forces-singularity-in-both"
NOT_RELATED = "not-related"


@dataclass(frozen=True)
class MonomialMap:
    """Forward/backward exponent data of a diagonal fiber transformation."""

    degree: int
    forward: tuple
    backward: tuple
    m: int

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.forward)

    def inverse(self) -> "MonomialMap":
        return MonomialMap(self.degree, self.backward, self.forward, self.m)

    def constraint_violations(self) -> list:
        """Re-substitute the solution into every listed constraint equality."""
        a, b, c, d = self.forward
        al, be, ga, de = self.backward
        m = self.m
        out = []
        if self.is_trivial and all(v == 0 for v in self.backward):
            return out
        if m <= 0:
            out.append("m > 0")
        if a + al != m or b + be != m:
            out.append("a + alpha = b + beta = m")
        if self.degree == 1:
            if c + ga != 2 * m:
                out.append("c + gamma = 2m")
            if d + de != 3 * m:
                out.append("d + delta = 3m")
            if 2 * d != 3 * c or 2 * de != 3 * ga:
                out.append("2d = 3c and 2*delta = 3*gamma")
        else:
            if c + ga != m:
                out.append("c + gamma = m")
            if d + de != 2 * m:
                out.append("d + delta = 2m")
        if min(self.forward) != 0 or min(self.backward) != 0:
            out.append("each exponent set contains a zero")
        if any(v < 0 for v in self.forward + self.backward):
            out.append("exponents are non-negative")
        return out


def identity_map(degree: int) -> MonomialMap:
    return MonomialMap(degree, (0, 0, 0, 0), (0, 0, 0, 0), 0)


def solve_constraints(degree: int, forward) -> MonomialMap:
    """Solve the constraint system for the backward exponents and m.

    The solution is unique: m is pinned by the requirement that the backward
    tuple is non-negative and contains a zero.  Raises :class:`Infeasible`
    with the violated condition when no solution exists.
    """
    forward = tuple(int(v) for v in forward)
    if len(forward) != 4:
        raise Infeasible("forward exponents must be a 4-tuple")
    a, b, c, d = forward
    if any(v < 0 for v in forward):
        raise Infeasible("forward exponents must be non-negative")
    if forward == (0, 0, 0, 0):
        return identity_map(degree)
    if min(forward) != 0:
        raise Infeasible("the forward exponents must contain a zero")
    if degree == 1:
        if 2 * d != 3 * c:
            raise Infeasible("2d = 3c fails for the forward exponents")
        k = c // 2
        m = max(a, b, k)
        backward = (m - a, m - b, 2 * m - c, 3 * m - d)
    elif degree == 2:
        m = max(a, b, c, -(-d // 2))
        backward = (m - a, m - b, m - c, 2 * m - d)
    else:
        raise Infeasible("degree must be 1 or 2")
    if min(backward) != 0:
        raise Infeasible("no m makes the backward exponents contain a zero")
    mm = MonomialMap(degree, forward, backward, m)
    problems = mm.constraint_violations()
    if problems:
        raise Infeasible("; ".join(problems))
    return mm


@dataclass(frozen=True)
class TransportResult:
    """Source model data computed from a target model along a monomial map."""

    map: MonomialMap
    equation: BigradedPoly  # possibly Laurent in t
    f_parts: tuple
    integral: bool
    forced_singularity: Optional[tuple]  # (t, x, y, z, w)
    chart: Optional[str]

    @property
    def source_model(self) -> Optional[FibrationModel]:
        if not self.integral:
            return None
        return FibrationModel(self.map.degree, GERM, self.equation)


def _verify_singular(eq: BigradedPoly, point: tuple) -> bool:
    if evaluate(eq, point) != 0:
        return False
    for var in ("t", "x", "y", "z", "w"):
        if evaluate(partial_derivative(eq, var), point) != 0:
            return False
    return True


def _designated_chart(mm: MonomialMap) -> Optional[str]:
    """Chart origin forced singular by the valuation bounds, if any.

    Degree 1 (with k = c/2): the chart of a weight-1 variable v with scale
    s_v needs 6*s_v - 6k >= 2, 5*s_v + s_u - 6k >= 1 and 4*s_v - 4k >= 1.
    Degree 2: v among x, y, z with scale s_v needs 4*s_v - 2d >= 2 and
    s_u + 3*s_v - 2d >= 1 for both other weight-1 variables u.
    """
    a, b, c, d = mm.forward
    if mm.degree == 1:
        k = c // 2
        for chart, s_v, s_u in (("x", a, b), ("y", b, a)):
            if (
                6 * s_v - 6 * k >= 2
                and 5 * s_v + s_u - 6 * k >= 1
                and 4 * s_v - 4 * k >= 1
            ):
                return chart
        return None
    scales = {"x": a, "y": b, "z": c}
    for chart in ("z", "y", "x"):
        s_v = scales[chart]
        if 4 * s_v - 2 * d < 2:
            continue
        if all(
            scales[u] + 3 * s_v - 2 * d >= 1 for u in scales if u != chart
        ):
            return chart
    return None


def transport(mm: MonomialMap, target: FibrationModel) -> TransportResult:
    """Compute the source model's equation from the target's along the map.

    The whole target equation is rescaled and divided by t^(2d), which sends
    the coefficient polynomials g_i to the source's f_i; the unit w^2 (and
    z^3) terms are preserved exactly.  Non-integrality is reported through
    the ``integral`` flag: the pair of models is not related by this map.
    When the map is non-trivial, the transport integral, and the valuation
    bounds force a chart-origin singularity of the computed source, the
    designated point is verified by exact Jacobian evaluation and reported.
    """
    if mm.degree != target.degree:
        raise InvalidModel("map and target model degrees differ")
    if target.base != GERM:
        raise InvalidModel("transport works on valuation-ring germs")
    require_valid(target)
    problems = mm.constraint_violations()
    if problems:
        raise Infeasible("; ".join(problems))
    d = mm.forward[3]
    eq = substitute_monomial(target.equation, mm.forward, -2 * d)
    integral = is_integral(eq)
    if integral:
        parts = FibrationModel(mm.degree, GERM, eq).f_parts()
    else:
        parts = _laurent_parts(eq, mm.degree)
    forced = None
    chart = None
    if integral and not mm.is_trivial:
        chart = _designated_chart(mm)
        if chart is not None:
            point = CHART_POINTS[chart]
            if not _verify_singular(eq, point):
                raise InternalInconsistency(
                    f"designated point {point} failed Jacobian verification "
                    f"for {to_text(eq)}"
                )
            forced = point
    return TransportResult(
        map=mm,
        equation=eq,
        f_parts=parts,
        integral=integral,
        forced_singularity=forced,
        chart=chart,
    )


def _laurent_parts(eq: BigradedPoly, degree: int) -> tuple:
    f4_terms, f6_terms = {}, {}
    for exps, coeff in eq.terms.items():
        _, x, y, z, wexp = exps
        if wexp:
            continue
        if degree == 1:
            if z == 3 and x == y == 0:
                continue
            if z == 1:
                f4_terms[(exps[0], x, y, 0, 0)] = coeff
            elif z == 0:
                f6_terms[exps] = coeff
        else:
            f4_terms[exps] = coeff
    if degree == 1:
        return (
            BigradedPoly(f4_terms, eq.weights),
            BigradedPoly(f6_terms, eq.weights),
        )
    return (BigradedPoly(f4_terms, eq.weights),)


# -- substitutions (permutation composed with t-scalings) ---------------------


@dataclass(frozen=True)
class Substitution:
    """Variable map v -> t^(exps[v]) * perm[v] on the fiber coordinates."""

    perm: tuple  # images of (x, y, z, w), a weight-respecting permutation
    exps: tuple  # t-exponent per original variable (x, y, z, w)

    def describe(self) -> str:
        bits = []
        for v, image, e in zip(FIBER_VARS, self.perm, self.exps):
            if e == 0:
                text = image
            elif e == 1:
                text = f"t {image}"
            else:
                text = f"t^{e} {image}"
            bits.append(f"{v} -> {text}")
        return ", ".join(bits)


def identity_substitution() -> Substitution:
    return Substitution(FIBER_VARS, (0, 0, 0, 0))


def weight_preserving_permutations(degree: int) -> list:
    """Fiber-coordinate permutations preserving the weight system."""
    if degree == 1:
        swappable = ("x", "y")
    else:
        swappable = ("x", "y", "z")
    fixed = [v for v in FIBER_VARS if v not in swappable]
    perms = []
    for images in itertools.permutations(swappable):
        table = dict(zip(swappable, images))
        table.update({v: v for v in fixed})
        perms.append(tuple(table[v] for v in FIBER_VARS))
    return perms


def apply_substitution(p: BigradedPoly, sub: Substitution) -> BigradedPoly:
    index = {"x": 1, "y": 2, "z": 3, "w": 4}
    out: dict = {}
    for exps, coeff in p.terms.items():
        t_exp = exps[0]
        new_fiber = [0, 0, 0, 0, 0]
        for v, image, e in zip(FIBER_VARS, sub.perm, sub.exps):
            exp_v = exps[index[v]]
            if exp_v == 0:
                continue
            new_fiber[index[image]] += exp_v
            t_exp += e * exp_v
        key = (t_exp, *new_fiber[1:])
        out[key] = out.get(key, Fraction(0)) + coeff
    return BigradedPoly(out, p.weights)


def proportionality(a: BigradedPoly, b: BigradedPoly):
    """Return (scalar, t_power) with a = scalar * t^power * b, or None."""
    if a.is_zero or b.is_zero:
        return (Fraction(1), 0) if a.is_zero and b.is_zero else None
    ta, tb = a.sorted_terms(), b.sorted_terms()
    if len(ta) != len(tb):
        return None
    (ea, ca), (eb, cb) = ta[0], tb[0]
    if ea[1:] != eb[1:]:
        return None
    power = ea[0] - eb[0]
    scalar = ca / cb
    for (xa, va), (xb, vb) in zip(ta, tb):
        if xa[1:] != xb[1:] or xa[0] - xb[0] != power or va != scalar * vb:
            return None
    return (scalar, power)


def preserves_equation(sub: Substitution, model: FibrationModel) -> bool:
    """True iff the substituted equation is a t-power scalar multiple of it."""
    image = apply_substitution(model.equation, sub)
    return proportionality(image, model.equation) is not None


def deck_involution(model: FibrationModel) -> BigradedPoly:
    """Image of the equation under the built-in deck involution w -> -w."""
    out = {}
    for exps, coeff in model.equation.terms.items():
        out[exps] = -coeff if exps[4] % 2 else coeff
    return BigradedPoly(out, model.equation.weights)


# -- isomorphism search --------------------------------------------------------


def _solve_linear(rows: List[Tuple[tuple, int]], bound: int):
    """Integer solutions (e_x, e_y, e_z, e_w, s) of sum(coef*u) = rhs rows.

    Returns a generator of candidate solutions with |e_v| <= bound, found by
    exact elimination with the free variables enumerated over the bound box.
    """
    ncols = 5
    matrix = [[Fraction(c) for c in coefs] + [Fraction(rhs)] for coefs, rhs in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        matrix[r] = [v / matrix[r][col] for v in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [v - factor * w for v, w in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
    for row in matrix[r:]:
        if row[-1] != 0:
            return  # inconsistent
    free_cols = [c for c in range(ncols) if c not in pivots]
    # s (column 4) is bounded by the weighted bound; the e columns by bound
    ranges = []
    for c in free_cols:
        limit = bound if c < 4 else 6 * bound
        ranges.append(range(-limit, limit + 1))
    for combo in itertools.product(*ranges):
        sol = [Fraction(0)] * ncols
        for c, v in zip(free_cols, combo):
            sol[c] = Fraction(v)
        ok = True
        for row, col in zip(matrix, pivots):
            value = row[-1] - sum(row[c] * sol[c] for c in free_cols)
            if value.denominator != 1:
                ok = False
                break
            sol[col] = value
        if not ok:
            continue
        if any(v.denominator != 1 for v in sol):
            continue
        yield tuple(int(v) for v in sol)


def find_isomorphism(
    model_a: FibrationModel, model_b: FibrationModel, bound: Optional[int] = None
) -> Optional[Substitution]:
    """Search for a substitution sending equation B to ~ equation A.

    Weight-respecting variable permutations are composed with per-variable
    t-scalings; a hit maps equation B to a scalar times a t-power times
    equation A.  The scaling exponents are solved exactly from the matched
    monomial classes, so the default bound (largest t-degree plus 2) only
    filters the reported solution.  Raises :class:`SearchBoundExceeded` when
    solutions exist but all violate the bound.
    """
    if model_a.degree != model_b.degree:
        raise InvalidModel("models must have the same fiber degree")
    if bound is None:
        bound = (
            max(model_a.equation.degree_in("t"), model_b.equation.degree_in("t"), 0)
            + 2
        )
    eq_a, eq_b = model_a.equation, model_b.equation
    classes_a = _fiber_classes(eq_a)
    classes_b = _fiber_classes(eq_b)
    out_of_bound = False
    best = None  # (sort key, Substitution); minimal scaling wins
    for perm_index, perm in enumerate(weight_preserving_permutations(model_a.degree)):
        mapped = {}
        ok = True
        index = {"x": 0, "y": 1, "z": 2, "w": 3}
        for fiber, coeffs in classes_b.items():
            new = [0, 0, 0, 0]
            for v, image in zip(FIBER_VARS, perm):
                new[index[image]] += fiber[index[v]]
            key = tuple(new)
            if key in mapped:
                ok = False
                break
            mapped[key] = (fiber, coeffs)
        if not ok or set(mapped) != set(classes_a):
            continue
        rows = []
        scalar = None
        for key, (fiber_b, coeffs_b) in sorted(mapped.items()):
            prop = _coeff_ratio(classes_a[key], coeffs_b)
            if prop is None:
                ok = False
                break
            rho, h = prop
            if scalar is None:
                scalar = rho
            elif rho != scalar:
                ok = False
                break
            coefs = (*fiber_b, -1)  # e.(fiber exps) - s = h
            rows.append((coefs, h))
        if not ok:
            continue
        for sol in _solve_linear(rows, bound):
            e_x, e_y, e_z, e_w, s = sol
            exps = (e_x, e_y, e_z, e_w)
            if max(abs(e) for e in exps) > bound:
                out_of_bound = True
                continue
            cand = Substitution(perm, exps)
            if proportionality(apply_substitution(eq_b, cand), eq_a) is not None:
                key = (sum(abs(e) for e in exps), abs(s), perm_index, exps)
                if best is None or key < best[0]:
                    best = (key, cand)
    if best is not None:
        return best[1]
    if out_of_bound:
        raise SearchBoundExceeded(f"solutions exist only beyond |e| <= {bound}")
    return None


def _fiber_classes(p: BigradedPoly) -> Dict[tuple, dict]:
    classes: Dict[tuple, dict] = {}
    for exps, coeff in p.terms.items():
        classes.setdefault(exps[1:], {})[exps[0]] = coeff
    return classes


def _coeff_ratio(ca: dict, cb: dict):
    """(rho, h) with ca = rho * t^h * cb as t-polynomials, or None."""
    if len(ca) != len(cb):
        return None
    ta = sorted(ca.items())
    tb = sorted(cb.items())
    h = ta[0][0] - tb[0][0]
    rho = ta[0][1] / tb[0][1]
    for (ea, va), (eb, vb) in zip(ta, tb):
        if ea - eb != h or va != rho * vb:
            return None
    return (rho, h)


# -- uniqueness of a smooth model ---------------------------------------------


@dataclass(frozen=True)
class UniquenessResult:
    verdict: str
    forward: Optional[TransportResult]  # computes the V side from U
    backward: Optional[TransportResult]  # computes the U side from V
    consistent: bool  # transported equations match the given models


def uniqueness_check(
    model_v: FibrationModel, model_u: FibrationModel, mm: MonomialMap
) -> UniquenessResult:
    """Run transport both ways and report which side is forced singular.

    The trivial map yields ``isomorphism``; otherwise each direction with a
    confirmed Jacobian-singular designated point is reported, and a map that
    is non-integral in both directions relates neither model.  For a
    consistent non-trivial integral pair, at least one direction must
    confirm; anything else contradicts the uniqueness theorem and raises
    :class:`InternalInconsistency`.
    """
    if mm.is_trivial:
        return UniquenessResult(
            ISOMORPHISM,
            None,
            None,
            consistent=model_v.equation == model_u.equation,
        )
    res_v = transport(mm, model_u)
    res_u = transport(mm.inverse(), model_v)
    consistent = (
        res_v.integral
        and res_u.integral
        and res_v.equation == model_v.equation
        and res_u.equation == model_u.equation
    )
    if not res_v.integral and not res_u.integral:
        return UniquenessResult(NOT_RELATED, res_v, res_u, consistent=False)
    sing_v = res_v.integral and res_v.forced_singularity is not None
    sing_u = res_u.integral and res_u.forced_singularity is not None
    if sing_v and sing_u:
        verdict = SING_IN_BOTH
    elif sing_v:
        verdict = SING_IN_V
    elif sing_u:
        verdict = SING_IN_U
    else:
        if consistent:
            raise InternalInconsistency(
                "non-trivial integral transport with no forced singularity"
            )
        verdict = NOT_RELATED
    return UniquenessResult(verdict, res_v, res_u, consistent)
