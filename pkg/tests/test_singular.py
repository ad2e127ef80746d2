"""Tests for smoothness checks, finite-field searches and local reports."""

import pytest

from dpfib import fibertrans as FT
from dpfib import model as M
from dpfib import singular as S
from dpfib.errors import InvalidChart, NotSingular
from dpfib.exactpoly import parse_poly

from test_model import D1_EXAMPLES, D2_EXAMPLES


def germ(degree, text):
    return M.germ_model(degree, text)


# paper-annotated verdicts: (model name, singular chart point or None)
EXPECTED = {
    "d1_smooth_V": ("y", (0, 0, 0, 0)),
    "d1_smooth_U": None,
    "d1_auto_V": ("x", (0, 0, 0, 0)),
    "d1_auto_U": ("y", (0, 0, 0, 0)),
    "d2_smooth_V": ("y", (0, 0, 0, 0)),
    "d2_smooth_U": None,
    "d2_auto_V": ("y", (0, 0, 0, 0)),
    "d2_auto_U": ("z", (0, 0, 0, 0)),
}


def example_model(name):
    if name.startswith("d1"):
        return germ(1, D1_EXAMPLES[name])
    return germ(2, D2_EXAMPLES[name])


class TestIsSmoothAt:
    def test_d1_smooth_V_singular_at_chart_origin(self):
        mdl = example_model("d1_smooth_V")
        assert S.is_smooth_at(mdl, S.ChartPoint("y", (0, 0, 0, 0))) is False

    def test_d1_smooth_U_smooth_at_same_point(self):
        mdl = example_model("d1_smooth_U")
        assert S.is_smooth_at(mdl, S.ChartPoint("y", (0, 0, 0, 0))) is True

    def test_generic_fiber_point(self):
        mdl = example_model("d1_smooth_U")
        assert S.is_smooth_at(mdl, S.ChartPoint("y", (1, 0, 0, 0))) is True

    def test_weighted_chart_rejected(self):
        mdl = example_model("d1_smooth_V")
        with pytest.raises(InvalidChart):
            S.is_smooth_at(mdl, S.ChartPoint("z", (0, 0, 0, 0)))
        with pytest.raises(InvalidChart):
            S.is_smooth_at(mdl, S.ChartPoint("w", (0, 0, 0, 0)))

    def test_all_eight_verdicts_match_annotations(self):
        for name, expected in EXPECTED.items():
            mdl = example_model(name)
            if expected is None:
                continue
            chart, coords = expected
            assert S.is_smooth_at(mdl, S.ChartPoint(chart, coords)) is False, name


class TestSearchFp:
    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_smooth_models_empty(self, p):
        for name in ("d1_smooth_U", "d2_smooth_U"):
            assert S.singular_search_fp(example_model(name), p) == [], (name, p)

    def test_singular_point_found_mod5(self):
        pts = S.singular_search_fp(example_model("d1_smooth_V"), 5)
        assert pts == [S.ChartPoint("y", (0, 0, 0, 0))]

    def test_central_fiber_restriction(self):
        pts = S.singular_search_fp(example_model("d1_smooth_U"), 5, t_range=[0])
        assert pts == []

    def test_agrees_with_exact_check(self):
        mdl = example_model("d2_auto_V")
        for p in (5, 7, 11):
            found = {(pt.chart, pt.coords) for pt in S.singular_search_fp(mdl, p)}
            for chart in ("x", "y", "z"):
                for coords in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)]:
                    exact = S.is_smooth_at(mdl, S.ChartPoint(chart, coords))
                    reduced = tuple(c % p for c in coords)
                    if not exact:
                        assert (chart, reduced) in found


class TestLocalReport:
    def test_slice_e8(self):
        mdl = example_model("d1_smooth_V")
        report = S.local_report(mdl, S.ChartPoint("y", (0, 0, 0, 0)))
        assert report.quadratic_rank == 1
        assert report.corank == 3
        assert report.brieskorn_exponents == (2, 3, 5)
        assert report.milnor_number == 8
        assert report.label_hint == "slice type E8"

    def test_low_order_mixed_term_blocks_brieskorn(self):
        mdl = example_model("d2_auto_V")
        report = S.local_report(mdl, S.ChartPoint("y", (0, 0, 0, 0)))
        assert report.quadratic_rank == 1
        assert report.brieskorn_exponents is None
        assert report.label_hint is None

    def test_full_diagonal_a3(self):
        mdl = germ(2, "w^2 + t^2 z^4 + x^2 z^2 + y^4")
        report = S.local_report(mdl, S.ChartPoint("z", (0, 0, 0, 0)))
        assert report.quadratic_rank == 3
        assert report.corank == 1
        assert report.brieskorn_exponents == (2, 2, 2, 4)
        assert report.milnor_number == 3
        assert report.label_hint == "slice type A3"

    def test_synthetic_nondegenerate_quadratic(self):
        # corank-0 local form w^2 + x^2 + y^2 + t^2, checked on the raw
        # machinery since it is not itself a model equation
        local = parse_poly("w^2 + x^2 + y^2 + t^2", (1, 1, 2, 3))
        rank = S._quadratic_rank(local, ["t", "x", "y", "w"])
        assert rank == 4
        assert S._diagonal_exponents(local, ["t", "x", "y", "w"]) == (2, 2, 2, 2)

    def test_smooth_point_rejected(self):
        mdl = example_model("d1_smooth_U")
        with pytest.raises(NotSingular):
            S.local_report(mdl, S.ChartPoint("y", (0, 0, 0, 0)))

    def test_rank_invariant_under_substitution(self):
        # swapping x and y maps the d1 automorphism pair onto each other and
        # matches the singular chart origins accordingly
        v = example_model("d1_auto_V")
        u = example_model("d1_auto_U")
        sub = FT.find_isomorphism(v, u)
        assert sub is not None
        rep_v = S.local_report(v, S.ChartPoint("x", (0, 0, 0, 0)))
        rep_u = S.local_report(u, S.ChartPoint("y", (0, 0, 0, 0)))
        assert rep_v.quadratic_rank == rep_u.quadratic_rank
        assert rep_v.corank == rep_u.corank
