"""Cycle lattices, intersection tables and the K^2 effectivity condition.

Divisor classes on the fibration V live in the integral basis (-K, F); curve
classes live in the basis (s0, f) of the effective cone and may carry
rational coefficients (1-cycle expressions such as s_b = s0 + f/2 need
halves, while the Picard lattice stays integral).  The closed-form table
entries below are the case-by-case structure formulas; the pairing matrix is
forced by them together with F.f = 0, F.s0 = 1 and (-K).f = 1.

Remark on degree 2: s0 may fail to have an effective representative; the
effectivity test deliberately uses the closed cone spanned by s0 and f
regardless, and nothing downstream depends on strict effectivity of s0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidConstants
from .model import StructureConstants

BASIS_V = "-K,F"
BASIS_X = "M,L"


@dataclass(frozen=True)
class DivisorClass:
    """Integer divisor class in the (-K, F) basis on V or (M, L) on X."""

    basis: str
    c1: int
    c2: int

    def __post_init__(self):
        if self.basis not in (BASIS_V, BASIS_X):
            raise ValueError(f"unknown basis {self.basis!r}")


@dataclass(frozen=True)
class CurveClass:
    """1-cycle class sigma*s0 + phi*f with rational coefficients."""

    sigma: Fraction
    phi: Fraction

    @property
    def in_closed_cone(self) -> bool:
        return self.sigma >= 0 and self.phi >= 0

    @property
    def is_zero(self) -> bool:
        return self.sigma == 0 and self.phi == 0


@dataclass(frozen=True)
class IntersectionTable:
    degree: int
    constants: StructureConstants
    k_basis_label: str  # "G_V" for degree 1, "H" for degree 2
    k_in_gf: tuple  # (coeff of G_V resp. H, coeff of F) for K_V
    k_squared: CurveClass
    minus_k_cubed: int
    s0_dot_gv: Fraction
    sb_class: Optional[CurveClass]  # class of the base-point section, degree 1
    normal_bundle: Optional[tuple]  # split degrees of N_{s_b|V}, degree 1

    def rows(self) -> list:
        """Table rows serialized as formula = value report strings."""
        sc = self.constants
        out = []
        if self.degree == 1:
            n1, n2, n3 = sc.n1, sc.n2, sc.n3
            if sc.epsilon == 0:
                out.append(f"K_V = -G_V + (1/2*n1 - 2)*F = -G_V + ({self.k_in_gf[1]})*F")
                out.append(
                    f"K^2 = s0 + (4 - n2)*f = s0 + ({self.k_squared.phi})*f"
                )
                out.append(f"s0.G_V = -1/2*n3 = {self.s0_dot_gv}")
                out.append(f"(-K)^3 = 6 - 2*n2 = {self.minus_k_cubed}")
                out.append("s_b ~ s0")
            else:
                out.append(
                    f"K_V = -G_V - (1/2*n1 + 2)*F = -G_V + ({self.k_in_gf[1]})*F"
                )
                out.append(
                    f"K^2 = s0 + (4 + 3/2*n1 - n2)*f = s0 + ({self.k_squared.phi})*f"
                )
                out.append(f"s0.G_V = -1/2*n3 = {self.s0_dot_gv}")
                out.append(f"(-K)^3 = 6 + 2*n1 - 2*n2 = {self.minus_k_cubed}")
                out.append("s_b ~ s0 + 1/2*f")
            nb = self.normal_bundle
            out.append(f"N_sb = O({nb[0]}) (+) O({nb[1]})")
        else:
            out.append(f"K_V = -H + (a + b - 2)*F = -H + ({self.k_in_gf[1]})*F")
            out.append(
                f"K^2 = 2*s0 + (8 - 4*a - 2*b)*f = 2*s0 + ({self.k_squared.phi})*f"
            )
            out.append(f"(-K)^3 = 12 - 6*a - 4*b = {self.minus_k_cubed}")
        return out


def intersection_table(sc: StructureConstants) -> IntersectionTable:
    """Exact table values for a valid constants tuple."""
    sc.require_valid()
    if sc.degree == 1:
        n1, n2, n3 = sc.n1, sc.n2, sc.n3
        if sc.epsilon == 0:
            k_in_gf = (-1, Fraction(n1, 2) - 2)
            k_squared = CurveClass(Fraction(1), Fraction(4 - n2))
            cubed = 6 - 2 * n2
            sb = CurveClass(Fraction(1), Fraction(0))
            nb = (-n1 // 2, -n3 // 2)
        else:
            k_in_gf = (-1, -(Fraction(n1, 2) + 2))
            k_squared = CurveClass(Fraction(1), 4 + Fraction(3 * n1, 2) - n2)
            cubed = 6 + 2 * n1 - 2 * n2
            sb = CurveClass(Fraction(1), Fraction(1, 2))
            nb = (n1 - n3 // 2, n1)
        return IntersectionTable(
            degree=1,
            constants=sc,
            k_basis_label="G_V",
            k_in_gf=k_in_gf,
            k_squared=k_squared,
            minus_k_cubed=cubed,
            s0_dot_gv=-Fraction(n3, 2),
            sb_class=sb,
            normal_bundle=nb,
        )
    a, b = sc.a, sc.b
    return IntersectionTable(
        degree=2,
        constants=sc,
        k_basis_label="H",
        k_in_gf=(-1, a + b - 2),
        k_squared=CurveClass(Fraction(2), Fraction(8 - 4 * a - 2 * b)),
        minus_k_cubed=12 - 6 * a - 4 * b,
        s0_dot_gv=Fraction(-sc.n2),
        sb_class=None,
        normal_bundle=None,
    )


def minus_k_dot_s0(sc: StructureConstants) -> Fraction:
    """(-K).s0, solved from (-K)^3 = (-K).K^2 and the table entries."""
    sc.require_valid()
    if sc.degree == 1:
        if sc.epsilon == 0:
            return Fraction(2 - sc.n2)
        return 2 + Fraction(sc.n1, 2) - sc.n2
    return Fraction(2 - sc.a - sc.b)


def pairing(sc: StructureConstants, dc: DivisorClass, cc: CurveClass) -> Fraction:
    """Bilinear intersection pairing of a divisor class with a 1-cycle class.

    The matrix in the ((-K), F) x (s0, f) bases is [[(-K).s0, 1], [1, 0]].
    """
    if dc.basis != BASIS_V:
        raise ValueError("pairing is defined for divisor classes on V")
    ks0 = minus_k_dot_s0(sc)
    return dc.c1 * (ks0 * cc.sigma + cc.phi) + dc.c2 * cc.sigma


def k2_condition(sc: StructureConstants) -> bool:
    """True iff N*K^2 - f is non-effective for every integer N > 0.

    In the closed cone generated by s0 and f this is a closed-form test on
    the f-coefficient of K^2: the s0-part of N*K^2 - f is always positive,
    so the cycle escapes the cone for all N exactly when the f-coefficient
    of K^2 is non-positive.
    """
    table = intersection_table(sc)
    return table.k_squared.phi <= 0
