"""Singularity detection and coarse classification on hypersurface germs.

Points are taken in weight-1 coordinate charts (x or y, plus z for degree 2);
valid models avoid the singular sections of the weighted bundle, so the
weighted z/w charts never carry points of the model.  Smoothness is the exact
Jacobian criterion; the finite-field search scans every chart point with the
base coordinate in a chosen range and is deterministic (sorted output)
regardless of evaluation order.

Local reports provide the quadratic rank, the corank, and Brieskorn data of
the t = 0 slice when the slice is a sum of pure powers and every mixed
base-direction term sits safely above the slice's Milnor number (so that it
cannot alter the slice type).  Compound Du Val labels are never certified
here: where a label is printed it is a hint, not a theorem.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from .errors import DenominatorNotInvertible, InvalidChart, NotSingular
from .exactpoly import (
    VARS,
    BigradedPoly,
    evaluate,
    partial_derivative,
)
from .model import GERM, FibrationModel, require_valid

_VAR_POS = {name: i for i, name in enumerate(VARS)}


def chart_variables(degree: int) -> tuple:
    """Weight-1 fiber coordinates usable as chart variables."""
    return ("x", "y") if degree == 1 else ("x", "y", "z")


@dataclass(frozen=True)
class ChartPoint:
    """A point in the affine chart where one weight-1 coordinate equals 1.

    ``coords`` lists the values of t and the remaining fiber coordinates in
    canonical variable order.
    """

    chart: str
    coords: tuple

    def full_point(self, degree: int) -> tuple:
        if self.chart not in chart_variables(degree):
            raise InvalidChart(f"chart {self.chart!r} is not a weight-1 chart")
        if len(self.coords) != 4:
            raise InvalidChart("chart points carry 4 affine coordinates")
        values = {}
        rest = [v for v in VARS if v != self.chart]
        for name, value in zip(rest, self.coords):
            values[name] = value
        values[self.chart] = 1
        return tuple(values[name] for name in VARS)


@dataclass(frozen=True)
class SingularityReport:
    is_singular: bool
    quadratic_rank: int
    corank: int
    brieskorn_exponents: Optional[tuple]
    milnor_number: Optional[int]
    label_hint: Optional[str]


def is_smooth_at(model: FibrationModel, pt: ChartPoint) -> bool:
    """Exact Jacobian criterion at a chart point.

    False exactly when the equation and all five partial derivatives
    (including the t-derivative) vanish at the point.
    """
    require_valid(model)
    point = pt.full_point(model.degree)
    eq = model.equation
    if evaluate(eq, point) != 0:
        return True
    return any(
        evaluate(partial_derivative(eq, var), point) != 0 for var in VARS
    )


def singular_search_fp(
    model: FibrationModel, p: int, t_range: Optional[Sequence[int]] = None
) -> List[ChartPoint]:
    """Exhaustive Jacobian-singular point search over F_p on weight-1 charts.

    Chart points are enumerated without overlap (later charts fix the earlier
    weight-1 coordinates to 0), so each projective fiber point away from the
    excluded sections appears exactly once.  The result is sorted; supporting
    but never proving characteristic-0 smoothness.
    """
    require_valid(model)
    if t_range is None:
        t_range = range(p)
    t_values = sorted(set(int(t) % p for t in t_range))
    charts = chart_variables(model.degree)
    found = []
    for chart_index, chart in enumerate(charts):
        polys = _chart_polys_mod_p(model, chart, p)
        free_vars = [
            v for v in VARS if v not in ("t", chart) and v not in charts[:chart_index]
        ]
        zeroed = [v for v in charts[:chart_index]]
        max_exp = max(
            (e for poly in polys for exps in poly for e in exps), default=0
        )
        pow_table = [[pow(v, e, p) for e in range(max_exp + 1)] for v in range(p)]
        positions = {}
        rest = [v for v in VARS if v != chart]
        for i, v in enumerate(rest):
            positions[v] = i
        for t_val in t_values:
            for combo in itertools.product(range(p), repeat=len(free_vars)):
                coords = [0] * 4
                coords[positions["t"]] = t_val
                for v in zeroed:
                    coords[positions[v]] = 0
                for v, value in zip(free_vars, combo):
                    coords[positions[v]] = value
                if _all_vanish_mod_p(polys, coords, pow_table, p):
                    found.append(ChartPoint(chart, tuple(coords)))
    found.sort(key=lambda cp: (charts.index(cp.chart), cp.coords))
    return found


def _chart_polys_mod_p(model: FibrationModel, chart: str, p: int) -> list:
    """Chart equation and its partials as coefficient/exponent lists mod p."""
    eq = model.equation
    polys = [eq] + [
        partial_derivative(eq, var) for var in VARS if var != chart
    ]
    chart_pos = _VAR_POS[chart]
    rest_pos = [i for i in range(5) if i != chart_pos]
    out = []
    for poly in polys:
        rows = {}
        for exps, coeff in poly.terms.items():
            den = coeff.denominator
            if den % p == 0:
                raise DenominatorNotInvertible(p, den)
            c = (coeff.numerator * pow(den, -1, p)) % p
            key = tuple(exps[i] for i in rest_pos)
            rows[key] = (rows.get(key, 0) + c) % p
        out.append([(c, *k) for k, c in rows.items() if c])
    return out


def _all_vanish_mod_p(polys, coords, pow_table, p) -> bool:
    for poly in polys:
        total = 0
        for row in poly:
            term = row[0]
            term = term * pow_table[coords[0]][row[1]] % p
            term = term * pow_table[coords[1]][row[2]] % p
            term = term * pow_table[coords[2]][row[3]] % p
            term = term * pow_table[coords[3]][row[4]] % p
            total = (total + term) % p
        if total:
            return False
    return True


# -- local reports -------------------------------------------------------------


def _chart_equation(model: FibrationModel, chart: str) -> BigradedPoly:
    """Dehomogenize by setting the (weight-1) chart coordinate to 1."""
    pos = _VAR_POS[chart]
    out = {}
    for exps, coeff in model.equation.terms.items():
        new = list(exps)
        new[pos] = 0
        key = tuple(new)
        out[key] = out.get(key, Fraction(0)) + coeff
    return BigradedPoly(out, model.equation.weights)


def _shift_to_origin(poly: BigradedPoly, chart: str, coords) -> BigradedPoly:
    """Translate so the chart point becomes the coordinate origin."""
    rest = [v for v in VARS if v != chart]
    shifted = poly
    for var, offset in zip(rest, coords):
        offset = Fraction(offset)
        if offset == 0:
            continue
        pos = _VAR_POS[var]
        out = {}
        for exps, coeff in shifted.terms.items():
            e = exps[pos]
            for i in range(e + 1):
                new = list(exps)
                new[pos] = i
                key = tuple(new)
                add = coeff * comb(e, i) * offset ** (e - i)
                value = out.get(key, Fraction(0)) + add
                if value:
                    out[key] = value
                else:
                    out.pop(key, None)
        shifted = BigradedPoly(out, poly.weights)
    return shifted


def _quadratic_rank(local: BigradedPoly, local_vars: list) -> int:
    pos = [_VAR_POS[v] for v in local_vars]
    n = len(local_vars)
    hessian = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in local.terms.items():
        if sum(exps) != 2:
            continue
        involved = [i for i, pp in enumerate(pos) if exps[pp] > 0]
        if len(involved) == 1:
            i = involved[0]
            hessian[i][i] += 2 * coeff
        else:
            i, j = involved
            hessian[i][j] += coeff
            hessian[j][i] += coeff
    # exact Gaussian elimination rank
    rank = 0
    mat = [row[:] for row in hessian]
    for col in range(n):
        pivot = next((r for r in range(rank, n) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(n):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / mat[rank][col]
                mat[r] = [v - factor * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
    return rank


_ADE_SLICES = {
    (2, 3, 3): "D4",
    (2, 3, 4): "E6",
    (2, 3, 5): "E8",
}


def _slice_label(exponents: tuple) -> Optional[str]:
    if len(exponents) != 3:
        return None
    exps = tuple(sorted(exponents))
    if exps[0] == 2 and exps[1] == 2:
        return f"A{exps[2] - 1}"
    return _ADE_SLICES.get(exps)


def _diagonal_exponents(poly: BigradedPoly, local_vars: list) -> Optional[tuple]:
    """Exponents when the poly is a sum of pure powers, one per variable."""
    seen = {}
    for exps, _ in poly.terms.items():
        involved = [v for v in local_vars if exps[_VAR_POS[v]] > 0]
        if len(involved) != 1:
            return None
        v = involved[0]
        if v in seen:
            return None
        seen[v] = exps[_VAR_POS[v]]
    if len(seen) != len(local_vars):
        return None
    return tuple(sorted(seen[v] for v in local_vars))


def local_report(model: FibrationModel, pt: ChartPoint) -> SingularityReport:
    """Quadratic rank, corank and slice Brieskorn data at a singular point.

    Brieskorn data is reported in two situations: the whole local equation is
    diagonal (a sum of pure powers of the 4 local variables), or the t = 0
    slice is diagonal in the 3 fiber variables and every term involving t
    has total local degree at least mu(slice) + 2, beyond the determinacy of
    the slice singularity.  Otherwise the fields stay empty and no type is
    hinted.
    """
    require_valid(model)
    if is_smooth_at(model, pt):
        raise NotSingular(f"{pt} is a smooth point of the model")
    chart_eq = _chart_equation(model, pt.chart)
    local = _shift_to_origin(chart_eq, pt.chart, pt.coords)
    local_vars = [v for v in VARS if v != pt.chart]
    fiber_vars = [v for v in local_vars if v != "t"]

    rank = _quadratic_rank(local, local_vars)
    corank = len(local_vars) - rank

    brieskorn = None
    milnor = None
    hint = None

    full_diag = _diagonal_exponents(local, local_vars)
    slice_terms = {
        exps: c for exps, c in local.terms.items() if exps[0] == 0
    }
    slice_poly = BigradedPoly(slice_terms, local.weights)
    slice_diag = _diagonal_exponents(slice_poly, fiber_vars)

    if full_diag is not None:
        brieskorn = full_diag
        milnor = 1
        for a in full_diag:
            milnor *= a - 1
        if slice_diag is not None:
            label = _slice_label(slice_diag)
            hint = f"slice type {label}" if label else None
    elif slice_diag is not None:
        mu_slice = 1
        for a in slice_diag:
            mu_slice *= a - 1
        mixed_ok = all(
            sum(exps) >= mu_slice + 2
            for exps in local.terms
            if exps[0] > 0
        )
        if mixed_ok:
            brieskorn = slice_diag
            milnor = mu_slice
            label = _slice_label(slice_diag)
            hint = f"slice type {label}" if label else None

    return SingularityReport(
        is_singular=True,
        quadratic_rank=rank,
        corank=corank,
        brieskorn_exponents=brieskorn,
        milnor_number=milnor,
        label_hint=hint,
    )
