import math
import time
from fractions import Fraction

import numpy as np
import pytest

from symmetria.certificates import (
    AXIAL_BOUND, CASE1_FLOOR, T_STAR, TRIANGLE_FLOOR, AxialProgramPoint, DualPoint, axial_certificate,
    axial_primal_feasible, axiality_upper_chain, bound_axlb, bound_fary_redei, bound_glb, bound_pyramid,
    bounds_table, case1_bound, case2_product_gap, case4_reduces_to_case3, dimension_lift_bound,
    dual_feasible_case3, dual_objective_case3, dual_points, separation_check, theorem11_lower_bound, tight_case3_primal,
)
from symmetria.constructions import QUAD_LIMIT, quad_family
from symmetria.errors import BadParam
from symmetria.geometry import regular_polygon
from symmetria.measures import axiality
from symmetria.qsqrt2 import ONE, SQRT2, QSqrt2, qs_max, qs_min
from symmetria.samples import polygon_suite


class TestAxialCertificate:
    def test_value_is_exact(self):
        start = time.perf_counter()
        cert = axial_certificate()
        assert time.perf_counter() - start < 1.0
        assert cert.value == AXIAL_BOUND
        assert cert.value == 4 / (10 - 3 * SQRT2)
        assert float(cert.value) == pytest.approx(float(AXIAL_BOUND), abs=1e-15)
        assert float(cert.value) == pytest.approx(0.694763, abs=1e-6)
        assert cert.t_star == T_STAR

    def test_transcript_records_every_check(self):
        cert = axial_certificate()
        assert all(ok for _, ok, _ in cert.checks)
        lines = cert.transcript()
        assert len(lines) == len(cert.checks)
        assert all(line.startswith('ok') for line in lines)
        assert cert.to_dict()['status'] == 'exact'

    def test_case_values(self):
        cases = axial_certificate().case_values
        assert cases['case1'] == (9 * SQRT2 - 2) / 15
        assert cases['case1'] > CASE1_FLOOR
        assert cases['case2'] == QSqrt2(Fraction(3, 4))
        assert cases['case3'] == cases['case4'] == AXIAL_BOUND

    def test_case_chains_are_recorded(self):
        names = [name for name, _, _ in axial_certificate().checks]
        for expected in (
            'case 1: 3×hexagon_extension + 3/2×triangle_bdf weighs every area equally',
            'case 1: abd_cap + cef_cap gives t ≤ 2/3',
            'case 2: (1+f+e+c)(1+a+b+d) − (1+t) has only nonnegative quadratic terms',
            'case 2: abd_cap bounds the second factor, a+b+d ≤ 1/3',
        ):
            assert expected in names
        assert not any('1/(1+Fraction' in name for name in names)

    def test_public_bound(self):
        assert theorem11_lower_bound() == AXIAL_BOUND

    def test_engine_stays_above_bound(self):
        bound = float(theorem11_lower_bound())
        for P in polygon_suite(11, 6) + [quad_family(0.01), regular_polygon(5)]:
            assert axiality(P).value >= bound - 1e-9

    @pytest.mark.slow
    def test_engine_stays_above_bound_on_suite(self):
        bound = float(theorem11_lower_bound())
        assert min(axiality(P).value for P in polygon_suite(2025, 60)) >= bound - 1e-9


class TestDualPoints:
    @pytest.mark.parametrize('t', [0, Fraction(1, 3), T_STAR, 1, 3 * SQRT2])
    def test_both_points_feasible(self, t):
        first, second = dual_points(t)
        assert dual_feasible_case3(t, first)
        assert dual_feasible_case3(t, second)

    def test_objective_branches_cross_at_t_star(self):
        first, second = dual_points(T_STAR)
        assert dual_objective_case3(T_STAR, first) == dual_objective_case3(T_STAR, second) == AXIAL_BOUND
        assert 4 * T_STAR + 3 * SQRT2 - 1 == 5

    def test_infeasible_point(self):
        assert not dual_feasible_case3(0, DualPoint.make(1, 1, 1, 1, 1))
        assert not dual_feasible_case3(0, DualPoint.make(0, 0, 0, -1, 0))

    def test_negative_t(self):
        with pytest.raises(BadParam):
            dual_feasible_case3(-1, dual_points(0)[0])


class TestPrimal:
    def test_tight_point(self):
        x = tight_case3_primal()
        assert axial_primal_feasible(x) == []
        assert x.t == T_STAR
        assert x.lam == AXIAL_BOUND
        assert x.to_dict()['lambda'] == str(AXIAL_BOUND)

    def test_zero_lambda_violates_lambda_rows(self):
        x = AxialProgramPoint.make(0, 0, 0, 0, 0, 0, 0)
        assert set(axial_primal_feasible(x)) == {'hexagon_extension', 'triangle_ace', 'triangle_bdf'}

    def test_reports_cap_violations(self):
        x = AxialProgramPoint.make(1, 0, Fraction(1, 6), Fraction(1, 6), 0, 0, 0)
        assert 'bc_cap' in axial_primal_feasible(x)

    def test_weak_duality_in_case_region(self):
        rng = np.random.default_rng(41)
        checked = 0
        while checked < 200:
            a, b, c, d, e, f = (Fraction(int(v), 60) for v in rng.integers(0, 11, 6))
            if not (a >= f and b <= e and c <= d):
                continue
            if b + c > Fraction(1, 6) or d + e > Fraction(1, 6) or a + b + d > Fraction(1, 3) \
                    or c + e + f > Fraction(1, 3):
                continue
            t = a + b + c + d + e + f
            need = qs_max(
                1 + qs_min(a, f) + qs_min(b, e) + qs_min(c, d),
                TRIANGLE_FLOOR + 2 * (a + c + e),
                TRIANGLE_FLOOR + 2 * (b + d + f),
            )
            x = AxialProgramPoint.make(need / (1 + t), a, b, c, d, e, f)
            assert axial_primal_feasible(x) == []
            for y in dual_points(t):
                assert x.lam >= dual_objective_case3(t, y)
            checked += 1

    def test_case4_swap(self):
        assert case4_reduces_to_case3()
        assert case4_reduces_to_case3(Fraction(1, 2))

    def test_case1_floor(self):
        assert case1_bound(Fraction(2, 3)) == (9 * SQRT2 - 2) / 15
        assert case1_bound(Fraction(1, 2)) > case1_bound(Fraction(2, 3))
        assert case1_bound(0) == (3 + Fraction(3, 2) * TRIANGLE_FLOOR) / Fraction(9, 2)

    def test_case1_bound_holds_on_case_region(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 100:
            a, b, c, d, e, f = (Fraction(int(v), 60) for v in rng.integers(0, 11, 6))
            if not (a <= f and b >= e and c <= d):
                continue
            if a + b + d > Fraction(1, 3) or c + e + f > Fraction(1, 3):
                continue
            t = a + b + c + d + e + f
            need = qs_max(1 + a + e + c, TRIANGLE_FLOOR + 2 * (b + d + f))
            assert need / (1 + t) >= case1_bound(t)
            assert case1_bound(t) >= case1_bound(Fraction(2, 3))
            checked += 1

    def test_case2_product_gap(self):
        gap = case2_product_gap()
        assert set(gap) == {tuple(sorted((x, y))) for x in 'fec' for y in 'abd'}
        assert all(v == 1 for v in gap.values())


class TestClosedFormBounds:
    def test_general_lower_bound(self):
        assert bound_glb(2, 1) == Fraction(1, 4)
        assert bound_glb(3, 0) == Fraction(1, 8)
        with pytest.raises(BadParam):
            bound_glb(3, 3)

    @pytest.mark.parametrize('n, expected', [(1, Fraction(1)), (2, Fraction(2, 3)), (3, Fraction(1, 2))])
    def test_simplex_central_symmetry(self, n, expected):
        assert bound_fary_redei(n) == expected

    def test_simplex_central_symmetry_decreases(self):
        values = [bound_fary_redei(n) for n in range(1, 33)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_axial_lower_bound(self):
        assert bound_axlb(4) == Fraction(1, 8)
        with pytest.raises(BadParam):
            bound_axlb(1)

    def test_pyramid_and_lift(self):
        assert bound_pyramid(2) == pytest.approx((2 - 2 ** -0.5) ** -2)
        assert bound_pyramid(2) == pytest.approx(0.5982389, abs=1e-7)
        assert dimension_lift_bound(2, 0.9) == pytest.approx(0.9)
        assert dimension_lift_bound(2, 0.1) == pytest.approx(bound_pyramid(2))

    def test_upper_chain(self):
        chain = axiality_upper_chain(5)
        assert chain[0] == (2, pytest.approx(QUAD_LIMIT))
        assert [n for n, _ in chain] == [2, 3, 4, 5]
        assert all(u >= v for (_, u), (_, v) in zip(chain[1:], chain[:-1]))

    def test_separation_from_eleven(self):
        assert not any(separation_check(n) for n in range(2, 11))
        assert all(separation_check(n) for n in range(11, 33))

    def test_table(self):
        frame = bounds_table(12)
        assert list(frame['n']) == list(range(2, 13))
        row = frame.set_index('n').loc[11]
        assert bool(row['separation'])
        assert frame.set_index('n').loc[2, 'general_lower_bound'] == '1/4'
        assert frame.set_index('n').loc[2, 'simplex_central_symmetry'] == '2/3'
        assert math.isclose(frame.set_index('n').loc[4, 'axial_lower_bound_value'], 0.125)

    def test_table_rejects_small_dimension(self):
        with pytest.raises(BadParam):
            bounds_table(1)


def test_one_is_unit():
    assert ONE == 1
