"""Tests for section counting, base components and the conjecture check."""

import itertools

import pytest

from dpfib import linsys as L
from dpfib import model as M
from dpfib.errors import InvalidConstants
from dpfib.exactpoly import divexact, to_text
from dpfib.rigidity import enumerate_constants

d1 = M.StructureConstants.d1
d2 = M.StructureConstants.d2


class TestFiberH0:
    def test_degree1_values(self):
        assert [L.fiber_h0(1, n) for n in (1, 2, 3)] == [2, 4, 7]
        assert L.fiber_h0(1, 6) == 22

    def test_degree1_ambient_dimension(self):
        # 23 monomials of weight 6 minus the single relation
        assert len(L.fiber_monomials(1, 6)) == 23

    def test_degree2_values(self):
        assert [L.fiber_h0(2, n) for n in (1, 2)] == [3, 7]
        assert L.fiber_h0(2, 4) == 21
        assert len(L.fiber_monomials(2, 4)) == 22


class TestDoubleCover:
    def test_case_d2_4(self):
        sc = d2(1, 0, 0)
        # -K - F = H
        assert L.h0_double_cover_d2(sc, 1, 0) == 3

    def test_case_b4(self):
        sc = d2(2, 0, 0)
        # -K - F = H - F
        assert L.h0_double_cover_d2(sc, 1, -1) == 0

    def test_constants(self):
        assert L.h0_double_cover_d2(d2(1, 0, 0), 0, 0) == 1

    def test_monotone_in_k(self):
        sc = d2(-1, 1, 2)
        for n in range(5):
            values = [L.h0_double_cover_d2(sc, n, k) for k in range(-6, 7)]
            assert values == sorted(values)

    def test_degree1_rejected(self):
        with pytest.raises(InvalidConstants):
            L.h0_double_cover_d2(d1(0, 2, 2, 2), 1, 0)


class TestHypersurfaceCount:
    def test_brute_force_oracle(self):
        # independent oracle: enumerate ambient monomials directly and
        # subtract equation multiples, for the (1, 0, 0) catalog model
        mdl = M.catalog_model(d2(1, 0, 0))
        ev = mdl.twists.as_tuple()
        delta = mdl.delta

        def oracle(n, k):
            def ambient(nn, kk):
                if nn < 0:
                    return 0
                count = 0
                for mono in L.fiber_monomials(2, nn):
                    budget = kk - sum(e * c for e, c in zip(mono, ev))
                    count += max(0, budget + 1)
                return count

            total = ambient(n, k)
            if n >= 4:
                total -= ambient(n - 4, k - delta)
            return total

        for n in range(7):
            for k in range(-3, 8):
                assert L.h0_bidegree(mdl, n, k) == oracle(n, k)

    def test_anticanonical_h0_flop_case(self):
        # chi(-K) = 4 for (0,2,2,2) by Riemann-Roch on the threefold, and
        # the direct image is O(1) + O(1), so h0(-K) = 4
        assert L.h0_anticanonical_class(d1(0, 2, 2, 2), 1, 0) == 4
        assert L.h0_anticanonical_class(d1(0, 2, 2, 2), 1, -1) == 2

    def test_veronese_unique_divisor(self):
        # |-K - 2F| consists of exactly one element for (0, 0, 1, 2)
        assert L.h0_anticanonical_class(d1(0, 0, 1, 2), 1, -2) == 1


class TestCrossOracle:
    def test_cover_matches_hypersurface_degree2(self):
        # the two engines must agree on every class n <= 4 across a sweep;
        # the cover-side twist k translates by n * n2 on the model side
        for sc in enumerate_constants(2, 4):
            mdl = M.catalog_model(sc)
            for n in range(5):
                for k in range(-6, 7):
                    assert L.h0_double_cover_d2(sc, n, k) == L.h0_bidegree(
                        mdl, n, k + n * sc.n2
                    ), (sc, n, k)

    def test_span_length_equals_dimension_cover(self):
        for sc in [d2(1, 0, 0), d2(0, 1, 1), d2(-1, 2, 2), d2(-2, 2, 4)]:
            for n in range(1, 4):
                k = -n * (sc.a + sc.b - 2) - 1
                span = L.section_span_cover_d2(sc, n, k)
                assert len(span) == L.h0_double_cover_d2(sc, n, k)


class TestBaseComponent:
    def test_free_system(self):
        statuses, verdict = L.conjecture_status(d2(1, 0, 0), n_max=3)
        assert statuses[0].dim_h0 == 3
        assert statuses[0].base_component is None
        assert verdict == L.VERDICT_NON_RIGID

    def test_all_empty(self):
        statuses, verdict = L.conjecture_status(d2(2, 0, 0), n_max=3)
        assert all(s.dim_h0 == 0 for s in statuses)
        assert all(s.base_component is None for s in statuses)
        assert verdict == L.VERDICT_RIGID

    def test_component_divides_every_section(self):
        sc = d2(0, 0, 2)
        statuses, verdict = L.conjecture_status(sc, n_max=3)
        assert verdict == L.VERDICT_RIGID
        for status in statuses:
            if status.base_component is None:
                continue
            n = status.n
            k = -n * (sc.a + sc.b - 2) - 1
            for section in L.section_span_cover_d2(sc, n, k):
                assert divexact(section, status.base_component) is not None

    def test_degree1_flop_case_free_pencil(self):
        statuses, verdict = L.conjecture_status(d1(0, 2, 2, 2), n_max=3)
        assert statuses[0].dim_h0 == 2
        assert statuses[0].base_component is None
        assert verdict == L.VERDICT_NON_RIGID

    def test_degree1_rigid_case_has_component(self):
        statuses, verdict = L.conjecture_status(d1(0, 0, 2, 4), n_max=3)
        assert verdict == L.VERDICT_RIGID
        first = statuses[0]
        assert first.dim_h0 > 0
        assert to_text(first.base_component) == "y"


class TestReductionRemark:
    def test_n1_decides_over_sweep(self):
        # the full verdict agrees with the n = 1 system alone, for every
        # tuple the classification covers (tuples it excludes never occur as
        # smooth Mori fibrations, and the reduction is a geometric statement)
        from dpfib.rigidity import OUT_OF_CLASSIFICATION, classify

        for degree, bound in ((1, 6), (2, 4)):
            for sc in enumerate_constants(degree, bound):
                if classify(sc).status == OUT_OF_CLASSIFICATION:
                    continue
                statuses, verdict = L.conjecture_status(sc, n_max=6)
                first = statuses[0]
                n1_free = first.dim_h0 > 0 and first.base_component is None
                assert (verdict == L.VERDICT_NON_RIGID) == n1_free, sc


class TestIrreducibilityProbe:
    def test_catalog_models_pass(self):
        for sc in [d1(0, 2, 2, 2), d2(1, 0, 0), d2(-2, 2, 4)]:
            assert L.certify_irreducible(M.catalog_model(sc))

    def test_square_rejected(self):
        from dpfib.errors import IrreducibilityUnverified

        mdl = M.germ_model(2, "w^2 + -1 * x^4")  # w^2 - x^4 = (w - x^2)(w + x^2)
        with pytest.raises(IrreducibilityUnverified):
            L.certify_irreducible(mdl)
