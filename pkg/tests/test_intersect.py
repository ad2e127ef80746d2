"""Tests for the intersection tables, pairing and the K^2 condition."""

from fractions import Fraction

import pytest

from dpfib import intersect as I
from dpfib.errors import InvalidConstants
from dpfib.model import StructureConstants

d1 = StructureConstants.d1
d2 = StructureConstants.d2


class TestTable:
    def test_flop_case(self):
        t = I.intersection_table(d1(0, 2, 2, 2))
        assert t.k_squared == I.CurveClass(Fraction(1), Fraction(2))
        assert t.minus_k_cubed == 2
        assert t.s0_dot_gv == -1

    def test_degree2_conic_bundle_case(self):
        # phi = 8 - 4a - 2b = 4; anything else would contradict
        # (-K)^3 = 6 through the pairing (-K).K^2 = 2*(2-a-b) + phi
        t = I.intersection_table(d2(1, 0, 0))
        assert t.k_squared == I.CurveClass(Fraction(2), Fraction(4))
        assert t.minus_k_cubed == 6

    def test_degree2_antiflip_case(self):
        assert I.intersection_table(d2(-1, 2, 3)).minus_k_cubed == -2

    def test_epsilon_positive_row(self):
        t = I.intersection_table(d1(2, 2, 6, 12))
        assert t.minus_k_cubed == 6 + 4 - 12
        assert t.k_squared.phi == 4 + 3 - 6
        assert t.sb_class == I.CurveClass(Fraction(1), Fraction(1, 2))

    def test_invalid_rejected(self):
        with pytest.raises(InvalidConstants):
            I.intersection_table(d1(2, 2, 4, 8))

    def test_report_row_format(self):
        rows = I.intersection_table(d1(0, 2, 2, 2)).rows()
        assert "(-K)^3 = 6 - 2*n2 = 2" in rows
        rows2 = I.intersection_table(d2(1, 0, 0)).rows()
        assert "(-K)^3 = 12 - 6*a - 4*b = 6" in rows2


class TestPairing:
    def test_fiber_curve(self):
        F = I.DivisorClass(I.BASIS_V, 0, 1)
        f = I.CurveClass(Fraction(0), Fraction(1))
        assert I.pairing(d1(0, 2, 2, 2), F, f) == 0

    def test_k_dot_k2_matches_cubed_degree1(self):
        sc = d1(0, 2, 2, 2)
        t = I.intersection_table(sc)
        mk = I.DivisorClass(I.BASIS_V, 1, 0)
        assert I.pairing(sc, mk, t.k_squared) == t.minus_k_cubed == 2

    def test_k_dot_k2_matches_cubed_degree2(self):
        sc = d2(1, 0, 0)
        t = I.intersection_table(sc)
        mk = I.DivisorClass(I.BASIS_V, 1, 0)
        assert I.pairing(sc, mk, t.k_squared) == t.minus_k_cubed == 6

    def test_pairing_matrix_forced_on_sweep(self):
        # (-K).K^2 computed through the pairing must equal the table's
        # (-K)^3 for every valid tuple in a small sweep
        from dpfib.rigidity import enumerate_constants

        for degree in (1, 2):
            for sc in enumerate_constants(degree, 6):
                t = I.intersection_table(sc)
                mk = I.DivisorClass(I.BASIS_V, 1, 0)
                assert I.pairing(sc, mk, t.k_squared) == t.minus_k_cubed, sc


class TestK2Condition:
    def test_degree2_threshold(self):
        assert I.k2_condition(d2(2, 0, 0)) is True  # b + 2a = 4
        assert I.k2_condition(d2(1, 0, 0)) is False  # b + 2a = 2

    def test_degree1_example(self):
        assert I.k2_condition(d1(0, 0, 1, 2)) is False

    def test_equivalent_to_f_coefficient(self):
        from dpfib.rigidity import enumerate_constants

        for degree in (1, 2):
            for sc in enumerate_constants(degree, 6):
                t = I.intersection_table(sc)
                assert I.k2_condition(sc) == (t.k_squared.phi <= 0)
                if degree == 2:
                    assert I.k2_condition(sc) == (sc.b + 2 * sc.a >= 4)
