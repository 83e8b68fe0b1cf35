import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzero.auxiliary import r_value
from rzero.counting import (
    DESK_T0,
    ArgTrace,
    BacklundInput,
    ContourSpec,
    CountResult,
    PathSegment,
    arg_variation,
    backlund_bound,
    count_zeros,
    log_modulus_bound,
    main_term,
    modulus_bound,
    rectangle_count,
    residual_table,
    top_edge_certificate,
    winding_number,
    winding_value,
)
from rzero.errors import (
    DomainError,
    NonIntegerWindingError,
    ZeroOnPathError,
)
from rzero.special_functions import TWO_PI


class TestBacklundBound:
    def test_zero_when_flat(self):
        inp = BacklundInput(big_m=3.0, f_at_center=3.0, radius=1.0, reach=0.5)
        assert backlund_bound(inp) == 0.0

    def test_unit_case(self):
        inp = BacklundInput(big_m=math.e ** 2, f_at_center=1.0,
                            radius=math.e, reach=1.0)
        assert backlund_bound(inp) == pytest.approx(1.0, rel=1e-12)

    def test_reference_value(self):
        inp = BacklundInput(big_m=100.0, f_at_center=0.25, radius=2.0,
                            reach=1.0)
        # (1/2) log(400) / log(2), frozen from a 30-digit evaluation
        assert backlund_bound(inp) == pytest.approx(4.321928094887362, rel=1e-13)

    def test_validation(self):
        with pytest.raises(DomainError):
            BacklundInput(big_m=1.0, f_at_center=0.0, radius=1.0, reach=0.5)
        with pytest.raises(DomainError):
            BacklundInput(big_m=1.0, f_at_center=0.5, radius=0.5, reach=0.5)
        with pytest.raises(DomainError):
            BacklundInput(big_m=1.0, f_at_center=2.0, radius=1.0, reach=0.5)


class TestPathSegment:
    def test_line_endpoints(self):
        seg = PathSegment.line(1.0, 1.0j)
        assert seg.first == 1.0 and seg.last == 1.0j

    def test_curve_parametrisation(self):
        seg = PathSegment.curve(20.0, 30.0)
        z = seg.point(0.0)
        assert z.imag == pytest.approx(20.0)
        assert z.real == pytest.approx(1.0 - 20.0 ** 0.4 * math.log(20.0))

    def test_curve_reversal(self):
        fwd = PathSegment.curve(20.0, 30.0)
        rev = PathSegment.curve(20.0, 30.0, reverse=True)
        assert fwd.point(0.25) == rev.point(0.75)

    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            PathSegment.line(1.0, 1.0)
        with pytest.raises(DomainError):
            PathSegment.curve(30.0, 20.0)


class TestArgVariation:
    def test_quarter_turn(self):
        trace = arg_variation(lambda z: z, PathSegment.line(1.0, 1.0j))
        assert trace.total_variation == pytest.approx(0.5 * math.pi, abs=1e-12)

    def test_exponential_vertical(self):
        h = 11.0
        seg = PathSegment.line(0.3, complex(0.3, h))
        trace = arg_variation(cmath.exp, seg)
        assert trace.total_variation == pytest.approx(h, rel=1e-12)

    def test_trace_invariants(self):
        seg = PathSegment.line(1.0, complex(1.0, 30.0))
        trace = arg_variation(cmath.exp, seg, seeds=4)
        steps = np.diff(trace.phases)
        assert np.all(np.abs(steps) < 0.5 * math.pi)
        assert trace.max_step_phase == pytest.approx(np.abs(steps).max())
        assert trace.total_variation == pytest.approx(
            trace.phases[-1] - trace.phases[0])

    def test_zero_on_path(self):
        seg = PathSegment.line(-1.0, 1.0)
        with pytest.raises(ZeroOnPathError):
            arg_variation(lambda z: z, seg)

    def test_left_curve_with_smooth_function(self):
        seg = PathSegment.curve(20.0, 40.0)
        trace = arg_variation(cmath.exp, seg)
        assert trace.total_variation == pytest.approx(20.0, rel=1e-9)

    def test_reverse_negates(self):
        fwd = PathSegment.curve(20.0, 40.0)
        rev = PathSegment.curve(20.0, 40.0, reverse=True)
        a = arg_variation(cmath.exp, fwd).total_variation
        b = arg_variation(cmath.exp, rev).total_variation
        assert a == pytest.approx(-b, rel=1e-12)

    def test_right_edge_variation_below_pi(self):
        # |R - 1| < 3/4 on sigma = 2 pins the argument inside a half turn
        seg = PathSegment.line(complex(2.0, 10.0), complex(2.0, 100.0))
        trace = arg_variation(r_value, seg, seeds=128)
        assert abs(trace.total_variation) <= math.pi


class TestWindingNumber:
    def rect(self):
        return ContourSpec.rectangle(0.0, 2.0, 9.0, 11.0)

    def test_single_zero(self):
        assert winding_number(lambda z: z - (1 + 10j), self.rect()) == 1

    def test_multiplicity(self):
        f = lambda z: (z - (1 + 10j)) ** 2 * (z - (1.2 + 10.5j))
        assert winding_number(f, self.rect()) == 3

    def test_no_zero(self):
        assert winding_number(lambda z: z - (5 + 10j), self.rect()) == 0

    def test_branch_cut_rejected(self):
        # the principal-sqrt discontinuity crosses the contour: the phase
        # contract cannot be met there and the failure must be loud
        f = lambda z: cmath.sqrt(z - (1 + 10j))
        with pytest.raises(ZeroOnPathError):
            winding_number(f, self.rect())

    def test_integrality_guard(self, monkeypatch):
        import rzero.counting as counting_mod
        monkeypatch.setattr(counting_mod, "winding_value",
                            lambda *a, **k: 0.63)
        with pytest.raises(NonIntegerWindingError):
            counting_mod.winding_number(lambda z: z, self.rect())

    def test_open_contour_rejected(self):
        spec = ContourSpec(segments=(PathSegment.line(0.0, 1.0),),
                           closed=False)
        with pytest.raises(DomainError):
            winding_number(lambda z: z + 5.0, spec)

    def test_closure_validated(self):
        with pytest.raises(DomainError):
            ContourSpec(segments=(
                PathSegment.line(0.0, 1.0),
                PathSegment.line(2.0, 0.0),
            ))

    def test_integrality_margin(self):
        raw = winding_value(lambda z: z - (1 + 10j), self.rect())
        assert abs(raw - 1.0) < 0.02


class TestModulusBound:
    def test_right_half(self):
        assert modulus_bound(1.0, 100.0) == pytest.approx(
            math.sqrt(100.0 / TWO_PI), rel=1e-12)

    def test_left_half(self):
        # 19 * 100/(2 pi) * (1 + 100^2)^(1/4), frozen from a 30-digit run
        assert modulus_bound(0.0, 100.0) == pytest.approx(3024.019515, rel=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            modulus_bound(0.5, 16.0 * math.pi)

    def test_log_form_consistent(self):
        for sigma, t in ((-3.0, 120.0), (0.5, 70.0), (-40.0, 300.0)):
            assert math.exp(log_modulus_bound(sigma, t)) == pytest.approx(
                modulus_bound(sigma, t), rel=1e-12)


class TestMainTerm:
    def test_at_two_pi(self):
        smooth, sqrt_term = main_term(TWO_PI)
        assert smooth == pytest.approx(-0.5, rel=1e-14)
        assert sqrt_term == pytest.approx(0.5, rel=1e-14)

    def test_at_two_pi_e_squared(self):
        smooth, sqrt_term = main_term(TWO_PI * math.e ** 2)
        assert smooth == pytest.approx(math.e ** 2 / 2.0, rel=1e-13)
        assert sqrt_term == pytest.approx(math.e / 2.0, rel=1e-13)
        assert smooth - sqrt_term == pytest.approx(2.3353871352358, rel=1e-12)

    def test_at_thousand(self):
        smooth, sqrt_term = main_term(1000.0)
        # frozen from a 30-digit evaluation of the closed form
        assert smooth - sqrt_term == pytest.approx(317.562786351433, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            main_term(0.0)

    @given(st.floats(1.0, 1e5))
    def test_sqrt_component(self, big_t):
        _, sqrt_term = main_term(big_t)
        assert sqrt_term == pytest.approx(0.5 * math.sqrt(big_t / TWO_PI))


class TestCountZeros:
    def test_empty_strip(self):
        res = count_zeros(10.0, 10.0, include_base=False)
        assert res.count == 0
        assert res.residual == pytest.approx(res.count - res.main_value)

    def test_preconditions(self):
        with pytest.raises(DomainError):
            count_zeros(5.0, 50.0)
        with pytest.raises(DomainError):
            count_zeros(10.0, 50.0, box_left=0.0)
        with pytest.raises(DomainError):
            count_zeros(20.0, 10.0)

    def test_strip_10_60(self):
        res = count_zeros(10.0, 60.0, certify_left=False)
        assert res.count == 6
        assert res.window[0] == pytest.approx(10.0, abs=0.01)
        assert res.residual == pytest.approx(res.count - res.main_value)
        names = [name for name, _ in res.certificates]
        assert names == ["bottom", "right", "top", "left"]

    def test_additivity(self):
        lo = count_zeros(10.0, 45.0, include_base=False, certify_left=False)
        hi = count_zeros(45.0, 80.0, include_base=False, certify_left=False)
        full = count_zeros(10.0, 80.0, include_base=False, certify_left=False)
        assert lo.count + hi.count == full.count

    def test_polynomial_rectangle(self):
        count, window, traces = rectangle_count(
            lambda z: (z - (0.5 + 30j)) * (z - (-2 + 55j)),
            -6.0, 2.0, 10.0, 60.0)
        assert count == 2
        assert set(traces) == {"bottom", "right", "top", "left"}


class TestTopEdgeCertificate:
    def test_backlund_cap_on_realised_variation(self):
        # the realised top-edge argument variation must sit below 2 pi times
        # the bound built from the modulus bound over the certification disc
        big_t, box_left = 200.0, -6.0
        bound_turns = top_edge_certificate(big_t, box_left)
        assert bound_turns is not None
        seg = PathSegment.line(complex(2.0, big_t), complex(box_left, big_t))
        trace = arg_variation(r_value, seg, seeds=64)
        assert abs(trace.total_variation) <= TWO_PI * bound_turns

    def test_low_heights_inadmissible(self):
        assert top_edge_certificate(60.0, -6.0) is None


class TestResidualTable:
    def test_small_grid(self):
        table = residual_table([20.0, 40.0, 60.0], certify_left=False)
        assert [r.big_t for r in table] == [20.0, 40.0, 60.0]
        counts = [r.count for r in table]
        assert counts == sorted(counts)
        assert counts[-1] == 6
        for r in table:
            assert r.residual == pytest.approx(r.count - r.main_value)
            assert r.smooth_term == pytest.approx(r.main_value + r.sqrt_term)

    def test_square_heights(self):
        k = 3
        table = residual_table([TWO_PI * k * k], certify_left=False)
        assert table[0].sqrt_term == pytest.approx(k / 2.0, rel=1e-13)

    def test_monotone_grid_required(self):
        with pytest.raises(DomainError):
            residual_table([30.0, 30.0])

    def test_matches_direct_count(self):
        table = residual_table([30.0, 55.0], certify_left=False)
        direct = count_zeros(10.0, 55.0, certify_left=False)
        assert table[-1].count == direct.count
