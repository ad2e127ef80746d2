"""Domain types for del Pezzo fibration models and their validation.

Two presentations of a degree-1 or degree-2 del Pezzo fibration are handled:

* the hypersurface form, a bihomogeneous equation in a weighted projective
  bundle over P^1 (or over a DVR germ), stored as a :class:`FibrationModel`;
* the structure-constant form, the discrete splitting data
  (epsilon, n1, n2, n3) for degree 1 or (a, n1, n2) for degree 2, stored as
  :class:`StructureConstants`.

Twist convention for P^1 models: the coordinate section v has base cost
``e_v``, a monomial has base-degree ``sum(exp_v * e_v) + t_exp``, and every
monomial of the equation must have base-degree at most ``delta = 2 * e_w``
(the t-coefficient of a fiber monomial is a polynomial of the residual
degree).  The designated equation shapes are

    degree 1:  w^2 + z^3 + z*f4(t; x, y) + f6(t; x, y)
    degree 2:  w^2 + f4(t; x, y, z)

with unit coefficients on w^2 (and z^3), which is exactly the condition that
the model avoids the singular sections of the weighted bundle.

Everything here is an immutable value; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exactpoly
from .errors import InconsistentTwists, InvalidConstants, InvalidModel
from .exactpoly import BigradedPoly, fiber_weight, parse_poly

GERM = "germ"
P1 = "P1"


@dataclass(frozen=True)
class WeightSystem:
    """Fiber degree together with the weights it forces on (x, y, z, w)."""

    degree: int

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ValueError("degree must be 1 or 2")

    @property
    def fiber_weights(self) -> tuple:
        return exactpoly.weights_for_degree(self.degree)

    @property
    def equation_weight(self) -> int:
        return 6 if self.degree == 1 else 4


@dataclass(frozen=True)
class TwistVector:
    """Base costs of the coordinate sections over P^1."""

    e_x: int
    e_y: int
    e_z: int
    e_w: int

    def as_tuple(self) -> tuple:
        return (self.e_x, self.e_y, self.e_z, self.e_w)


@dataclass(frozen=True)
class StructureConstants:
    """Discrete invariants of the direct-image bundle splitting.

    Degree 1 carries (epsilon, n1, n2, n3); degree 2 carries (a, n1, n2).
    ``b`` is n1 + n2 + n3, resp. n1 + n2, and ``m_twist`` is the twist that
    normalizes the smallest splitting summand to 0.
    """

    degree: int
    n1: int
    n2: int
    epsilon: Optional[int] = None
    n3: Optional[int] = None
    a: Optional[int] = None

    @classmethod
    def d1(cls, epsilon: int, n1: int, n2: int, n3: int) -> "StructureConstants":
        return cls(degree=1, epsilon=epsilon, n1=n1, n2=n2, n3=n3)

    @classmethod
    def d2(cls, a: int, n1: int, n2: int) -> "StructureConstants":
        return cls(degree=2, a=a, n1=n1, n2=n2)

    def as_tuple(self) -> tuple:
        if self.degree == 1:
            return (self.epsilon, self.n1, self.n2, self.n3)
        return (self.a, self.n1, self.n2)

    @property
    def b(self) -> int:
        if self.degree == 1:
            return self.n1 + self.n2 + self.n3
        return self.n1 + self.n2

    @property
    def m_twist(self) -> int:
        if self.degree == 1:
            if self.epsilon == 0:
                return 2 * self.n2 - 4
            return 2 * self.n2 - self.n1 - 4
        return self.a + self.b - 2

    def violations(self) -> list:
        """Names of violated classification constraints (empty = valid)."""
        out = []
        if self.degree == 1:
            eps, n1, n2, n3 = self.epsilon, self.n1, self.n2, self.n3
            if eps is None or n3 is None or self.a is not None:
                return ["degree-1 constants must be (epsilon, n1, n2, n3)"]
            if not (0 <= n1 <= n2 <= n3):
                out.append("require 0 <= n1 <= n2 <= n3")
            if n3 <= 0:
                out.append("n3 > 0 (product case excluded)")
            if eps == 0:
                if 2 * n2 != n1 + n3:
                    out.append("epsilon = 0 requires 2*n2 = n1 + n3")
                if n1 % 2 or n3 % 2:
                    out.append("epsilon = 0 requires n1 and n3 even")
            elif eps == n1 and n1 > 0:
                if n3 != 2 * n2:
                    out.append("epsilon = n1 > 0 requires n3 = 2*n2")
                if n1 % 2:
                    out.append("epsilon = n1 > 0 requires n1 even")
                if n2 < 3 * n1:
                    out.append("epsilon = n1 > 0 requires n2 >= 3*n1")
            else:
                out.append("epsilon must be 0 or equal to n1 > 0")
        else:
            a, n1, n2 = self.a, self.n1, self.n2
            if a is None or self.epsilon is not None or self.n3 is not None:
                return ["degree-2 constants must be (a, n1, n2)"]
            if not (0 <= n1 <= n2):
                out.append("require 0 <= n1 <= n2")
            # Effectivity of the branch class 4M + 2aL: the largest summand
            # of Sym^4(O + O(n1) + O(n2)) twisted by 2a must have sections.
            if 4 * n2 + 2 * a < 0:
                out.append("branch divisor class 4M + 2aL is not effective")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self) -> "StructureConstants":
        problems = self.violations()
        if problems:
            raise InvalidConstants(f"{self.as_tuple()}: " + "; ".join(problems))
        return self


@dataclass(frozen=True)
class AmbientData:
    """Splitting and divisor classes of the ambient bundle construction."""

    splitting: tuple
    q_class: Optional[tuple]  # (coeff of M, coeff of L) or None
    r_class: tuple


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    notes: tuple

    @property
    def is_valid(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FibrationModel:
    """A hypersurface model, over P^1 (with twists) or over a DVR germ."""

    degree: int
    base: str
    equation: BigradedPoly
    twists: Optional[TwistVector] = None

    def __post_init__(self):
        if self.base not in (GERM, P1):
            raise ValueError("base must be 'germ' or 'P1'")

    @property
    def weights(self) -> WeightSystem:
        return WeightSystem(self.degree)

    @property
    def delta(self) -> Optional[int]:
        """Base-degree of the equation over P^1 (2*e_w); None for germs."""
        if self.base == P1 and self.twists is not None:
            return 2 * self.twists.e_w
        return None

    def f_parts(self):
        """Split the equation into its designated pieces.

        Degree 1 returns (f4, f6) from w^2 + z^3 + z*f4 + f6; degree 2
        returns (f4,) from w^2 + f4.  The unit w^2/z^3 terms are dropped.
        """
        w = self.equation.weights
        if self.degree == 1:
            f4_terms, f6_terms = {}, {}
            for exps, coeff in self.equation.terms.items():
                t, x, y, z, wexp = exps
                if wexp == 2 and x == y == z == 0:
                    continue
                if z == 3 and x == y == wexp == 0:
                    continue
                if z == 1 and wexp == 0:
                    f4_terms[(t, x, y, 0, 0)] = coeff
                elif z == 0 and wexp == 0:
                    f6_terms[exps] = coeff
            return BigradedPoly(f4_terms, w), BigradedPoly(f6_terms, w)
        f4_terms = {}
        for exps, coeff in self.equation.terms.items():
            if exps[4] == 2 and exps[1] == exps[2] == exps[3] == 0:
                continue
            if exps[4] == 0:
                f4_terms[exps] = coeff
        return (BigradedPoly(f4_terms, w),)


# -- validation --------------------------------------------------------------


def _unit_coefficient(model: FibrationModel, fiber_exps: tuple) -> bool:
    """The t-coefficient of a fiber monomial is a unit of the base ring."""
    coeffs = model.equation.t_coefficient_poly(fiber_exps)
    if not coeffs:
        return False
    if model.base == GERM:
        # a unit of the DVR: non-vanishing constant term
        return coeffs.get(0, 0) != 0
    # over P1 the coefficient must be a nowhere-vanishing section, i.e. a
    # non-zero constant
    return set(coeffs) == {0}


def validate(model: FibrationModel) -> ValidationReport:
    """Check a model against the designated-form invariants.

    The report lists each failed check by name; the model is accepted iff
    the violation list is empty.  Fiber reducedness is not algorithmically
    checked and is recorded as a note.
    """
    violations = []
    ws = model.weights
    eq = model.equation
    if eq.weights != ws.fiber_weights:
        return ValidationReport(("weight system mismatch",), ())
    w_eq = ws.equation_weight

    if eq.is_zero or any(
        fiber_weight(e, ws.fiber_weights) != w_eq for e in eq.terms
    ):
        violations.append("fiber-weight homogeneity")

    if eq.min_t_exponent() < 0:
        violations.append("equation integral over the base (no negative t exponents)")

    if not _unit_coefficient(model, (0, 0, 0, 2)):
        violations.append("coefficient of w^2 must be a unit")
    if model.degree == 1 and not _unit_coefficient(model, (0, 0, 3, 0)):
        violations.append("coefficient of z^3 must be a unit")

    for exps in eq.terms:
        _, x, y, z, wexp = exps
        if wexp not in (0, 2) or (wexp == 2 and (x or y or z)):
            violations.append("designated form: w only through the unit w^2 term")
            break
    if model.degree == 1:
        for exps in eq.terms:
            _, x, y, z, wexp = exps
            if wexp == 0 and z >= 2 and not (z == 3 and x == y == 0):
                violations.append(
                    "designated form: z-degree at most 1 outside the z^3 term"
                )
                break

    if model.base == P1:
        if model.twists is None:
            violations.append("twists required for projective-line base")
        else:
            tw = model.twists
            if model.degree == 1 and 2 * tw.e_w != 3 * tw.e_z:
                violations.append("twist relation 2*e_w = 3*e_z")
            delta = 2 * tw.e_w
            ev = (tw.e_x, tw.e_y, tw.e_z, tw.e_w)
            for exps, _ in eq.terms.items():
                base_deg = exps[0] + sum(e * c for e, c in zip(exps[1:], ev))
                if not (0 <= base_deg <= delta):
                    violations.append(
                        "bihomogeneity over P1: monomial base-degree within 0..delta"
                    )
                    break

    return ValidationReport(
        tuple(dict.fromkeys(violations)), ("unchecked: fiber reducedness",)
    )


def require_valid(model: FibrationModel) -> FibrationModel:
    report = validate(model)
    if not report.is_valid:
        raise InvalidModel("; ".join(report.violations))
    return model


# -- structure constants <-> ambient data ------------------------------------


def ambient_data(sc: StructureConstants) -> AmbientData:
    """Splitting and the Q/R divisor classes in the (M, L) basis."""
    sc.require_valid()
    if sc.degree == 1:
        splitting = (0, sc.n1, sc.n2, sc.n3)
        q_class = (2, -2 * sc.n2)
        r_class = (3, 0) if sc.epsilon == 0 else (3, -3 * sc.n1)
        return AmbientData(splitting, q_class, r_class)
    return AmbientData((0, sc.n1, sc.n2), None, (4, 2 * sc.a))


def normal_bundle_of_section(sc: StructureConstants) -> tuple:
    """Split degrees of the normal bundle of the base-point section (degree 1)."""
    sc.require_valid()
    if sc.degree != 1:
        raise InvalidConstants("the base-point section exists for degree 1 only")
    if sc.epsilon == 0:
        return (-sc.n1 // 2, -sc.n3 // 2)
    return (sc.n1 - sc.n3 // 2, sc.n1)


# -- twist dictionary ---------------------------------------------------------
#
# Derived by matching the weight-2 (degree 1) resp. weight-1 (degree 2)
# section counts of the hypersurface model against the splitting of the
# direct-image bundle.  The monomial "gains" forced by the splitting are
#
#   degree 1, eps = 0:   x, y, z, w  gain  n1/2, n3/2, 0, 0
#   degree 1, eps > 0:   x, y, z, w  gain  0, n2, n1, 3*n1/2
#   degree 2:            x, y, z, w  gain  0, n1, n2, -a
#
# and the cost twists below are lambda*weight - gain with lambda chosen so
# the smallest weight-1 cost is 0 (all costs non-negative).  This replaces
# fixing the twists ad hoc: with these values the hypersurface section counts
# reproduce the double-cover counts exactly, which the test suite enforces.


def catalog_twists(sc: StructureConstants) -> TwistVector:
    sc.require_valid()
    if sc.degree == 1:
        if sc.epsilon == 0:
            return TwistVector((sc.n3 - sc.n1) // 2, 0, sc.n3, 3 * sc.n3 // 2)
        lam = sc.n2
        return TwistVector(
            lam, 0, 2 * lam - sc.n1, 3 * lam - 3 * sc.n1 // 2
        )
    lam = sc.n2
    return TwistVector(lam, lam - sc.n1, 0, 2 * lam + sc.a)


def anticanonical_base_degree(model: FibrationModel) -> int:
    """Base-degree tau of -K_V = O_V(1) (+) O(tau) on a P^1 model.

    Standard adjunction bookkeeping on the weighted bundle: the sum of the
    coordinate costs plus 2 (from the base) minus the equation's base-degree.
    """
    if model.base != P1 or model.twists is None:
        raise InvalidModel("anticanonical base-degree needs a projective-line model")
    tw = model.twists
    return sum(tw.as_tuple()) + 2 - 2 * tw.e_w


def infer_constants(model: FibrationModel) -> StructureConstants:
    """Read structure constants off a projective-line model's twists.

    Inverts the catalog twist assignment; the result is invariant under the
    global re-twist (e + s*weights, delta + s*w_eq).  Raises
    :class:`InconsistentTwists` when no valid constants match.
    """
    if model.base != P1 or model.twists is None:
        raise InconsistentTwists("constants can only be inferred over P1")
    report = validate(model)
    if not report.is_valid:
        raise InvalidModel("; ".join(report.violations))
    tw = model.twists
    delta = 2 * tw.e_w
    if model.degree == 1:
        # the twist relation 2*e_w = 3*e_z normalizes the z and w gains to 0,
        # so the branch is read off the weight-1 gains alone: both
        # non-negative means the base-point section is minimal (epsilon = 0),
        # a negative one is the epsilon = n1 > 0 splitting.
        if delta % 6:
            raise InconsistentTwists("equation base-degree must be divisible by 6")
        lam = delta // 6
        lo = min(lam - tw.e_x, lam - tw.e_y)
        hi = max(lam - tw.e_x, lam - tw.e_y)
        if lo >= 0:
            sc = StructureConstants.d1(0, 2 * lo, lo + hi, 2 * hi)
        else:
            sc = StructureConstants.d1(-2 * lo, -2 * lo, hi - lo, 2 * (hi - lo))
    else:
        top, mid, low = sorted((tw.e_x, tw.e_y, tw.e_z), reverse=True)
        sc = StructureConstants.d2(tw.e_w - 2 * top, top - mid, top - low)
    problems = sc.violations()
    if problems:
        raise InconsistentTwists(f"{sc.as_tuple()}: " + "; ".join(problems))
    return sc


def catalog_model(sc: StructureConstants) -> FibrationModel:
    """Generic projective-line model with the catalog twists.

    Every budget-feasible monomial of the designated form appears once for
    each admissible t-power, all with coefficient 1.  The result passes
    validation for every valid constants tuple.
    """
    sc.require_valid()
    tw = catalog_twists(sc)
    delta = 2 * tw.e_w
    ws = exactpoly.weights_for_degree(sc.degree)
    ev = tw.as_tuple()
    terms = {(0, 0, 0, 0, 2): Fraction(1)}
    if sc.degree == 1:
        terms[(0, 0, 0, 3, 0)] = Fraction(1)
        fiber_monos = [(i, 4 - i, 1, 0) for i in range(5)] + [
            (i, 6 - i, 0, 0) for i in range(7)
        ]
    else:
        fiber_monos = [
            (i, j, 4 - i - j, 0)
            for i in range(5)
            for j in range(5 - i)
        ]
    for mono in fiber_monos:
        budget = delta - sum(e * c for e, c in zip(mono, ev))
        for texp in range(0, budget + 1):
            key = (texp, *mono)
            terms[key] = terms.get(key, Fraction(0)) + 1
    model = FibrationModel(
        degree=sc.degree,
        base=P1,
        equation=BigradedPoly(terms, ws),
        twists=tw,
    )
    return require_valid(model)


# -- model files --------------------------------------------------------------


def serialize_model(model: FibrationModel) -> str:
    """Canonical text form: parse -> serialize -> parse is the identity."""
    lines = [f"degree: {model.degree}", f"base: {model.base}"]
    if model.base == P1 and model.twists is not None:
        lines.append("twists: " + " ".join(str(v) for v in model.twists.as_tuple()))
    lines.append("equation:")
    for exps, coeff in model.equation.sorted_terms():
        mono = exactpoly._monomial_text(exps)
        if not mono:
            lines.append(f"term: {coeff}")
        elif coeff == 1:
            lines.append(f"term: {mono}")
        else:
            lines.append(f"term: {coeff} * {mono}")
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> FibrationModel:
    degree = None
    base = None
    twists = None
    terms = []
    in_equation = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "degree":
            degree = int(value)
        elif key == "base":
            if value not in (GERM, P1):
                raise ValueError(f"line {lineno}: base must be germ or P1")
            base = value
        elif key == "twists":
            parts = [int(v) for v in value.split()]
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: twists need four integers")
            twists = TwistVector(*parts)
        elif key == "equation":
            in_equation = True
        elif key == "term":
            if not in_equation:
                raise ValueError(f"line {lineno}: term before equation key")
            terms.append(value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if degree is None or base is None or not in_equation:
        raise ValueError("model file needs degree, base and equation")
    weights = exactpoly.weights_for_degree(degree)
    eq = BigradedPoly.zero(weights)
    for term in terms:
        eq = eq + exactpoly.parse_term(term, weights)
    return FibrationModel(degree=degree, base=base, equation=eq, twists=twists)


def load_model(path) -> FibrationModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())


def save_model(model: FibrationModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_model(model))


def germ_model(degree: int, equation_text: str) -> FibrationModel:
    """Convenience constructor for DVR-germ models from canonical text."""
    weights = exactpoly.weights_for_degree(degree)
    return FibrationModel(
        degree=degree, base=GERM, equation=parse_poly(equation_text, weights)
    )
