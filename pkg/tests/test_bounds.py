"""Bound assembly: x/y map, F, the affine coefficients, and H/K."""

import math

import numpy as np
import pytest

from shortsum.bounds import (
    BoundInput,
    HEAD_VARIANTS,
    LOG_DERIV_REMAINDER,
    PRIME_POWER_TAIL,
    affine_second_difference,
    big_f,
    g_of,
    h_and_k,
    objective_parts,
    verify_exp_lower,
    verify_exp_upper,
    verify_geometric_tail,
    xy_of,
)
from shortsum.envelope import ParamTriple
from shortsum.mertens import m_envelope
from shortsum.specfun import zeta_real

NEAR_OPTIMAL = ParamTriple(155.648, 0.213503, 1.18818)

# (degree d, N0, triple, H, K) reference rows for the exponent table.
TABLE_ROWS = [
    (1, 3.0, ParamTriple(155.648, 0.213503, 1.18818), 17.809, 17.809),
    (2, 23.0, ParamTriple(13.0627, 0.210516, 1.16757), 18.8667, 17.5328),
    (3, 117.0, ParamTriple(9.57219, 0.210398, 1.16682), 24.0981, 22.5199),
    (4, 1609.0, ParamTriple(7.5451, 0.208941, 1.15761), 28.1733, 26.9298),
    (5, 9747.0, ParamTriple(6.80012, 0.208989, 1.15791), 33.3541, 32.2334),
]


class TestXYMap:
    def test_exponential_conductor(self):
        inp = BoundInput(params=ParamTriple(2.0, 0.2, 1.2), d=1, N=math.exp(math.e))
        x, y = xy_of(inp)
        assert x == pytest.approx(math.e**2, rel=1e-12)
        assert y == pytest.approx(math.sqrt(math.e), rel=1e-14)

    def test_large_beta_formula(self):
        inp = BoundInput(params=NEAR_OPTIMAL, d=1, N=3.0)
        x, _ = xy_of(inp)
        assert x == pytest.approx(math.exp(155.648 * math.log(math.log(3.0))), rel=1e-10)

    def test_y_at_minimal_conductor(self):
        _, y = xy_of(BoundInput(params=NEAR_OPTIMAL, d=1, N=3.0))
        assert y == pytest.approx(1.04815, abs=1e-5)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            BoundInput(params=NEAR_OPTIMAL, d=0, N=3.0)
        with pytest.raises(ValueError):
            BoundInput(params=NEAR_OPTIMAL, d=1, N=2.9)


class TestBigF:
    def test_dominated_by_envelope_terms_for_large_x(self):
        y = 1.5
        value = big_f(1e8, y)
        assert value == pytest.approx(m_envelope(1e16) + m_envelope(y), rel=1e-6)

    def test_decreasing_in_x(self):
        y = 1.5
        values = [big_f(float(x), y) for x in np.linspace(2.0, 100.0, 500)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_exceeds_envelope_of_y(self):
        for x in (1.5, 3.0, 50.0):
            for y in (1.0, 1.2, 10.0):
                assert big_f(x, y) > m_envelope(y)

    def test_variants(self):
        x, y = 2276970.2348819096, 1.048147073968205
        base = big_f(x, y)
        assert big_f(x, y, variant="e_minus_one") == pytest.approx(
            base + (math.e - 2.0) * y / x, rel=1e-9
        )
        assert big_f(x, y, variant="pi_over_log") > base
        with pytest.raises(ValueError):
            big_f(x, y, variant="nope")
        assert set(HEAD_VARIANTS) == {"y_over_x", "e_minus_one", "pi_over_log"}

    def test_domain(self):
        with pytest.raises(ValueError):
            big_f(1.0, 1.5)
        with pytest.raises(ValueError):
            big_f(2.0, 0.9)


class TestObjectiveParts:
    def test_near_optimal_value(self):
        a, b = objective_parts(BoundInput(params=NEAR_OPTIMAL, d=1, N=3.0))
        assert a + b <= 13.53
        assert a + b == pytest.approx(13.5285602790736, abs=1e-10)

    def test_a_proportional_to_c6(self):
        # with x held fixed (same params), A is linear in log N through c6
        inp = BoundInput(params=NEAR_OPTIMAL, d=1, N=3.0)
        a, _ = objective_parts(inp)
        from shortsum.envelope import constants_for

        cs = constants_for(NEAR_OPTIMAL)
        x, _ = xy_of(inp)
        denom = x ** (0.5 - NEAR_OPTIMAL.delta) * math.log(x)
        assert a == pytest.approx(cs.c6 * math.log(3.0) / denom, rel=1e-10)

    def test_b_dual_path(self):
        # recompose B from independently coded constants and formula pieces
        beta, delta, eta = 4.5, 0.2197330687867739, 1.2
        p = ParamTriple(beta, delta, eta)
        inp = BoundInput(params=p, d=1, N=3.0)
        _, b = objective_parts(inp)

        c1 = zeta_real(1.5) / math.sqrt(2.0 * math.pi)
        c2 = (2.0 * eta - 1.0) / (2.0 * delta**2)
        c3 = (c1 * zeta_real(eta) / zeta_real(2.0 * eta)) ** 2
        c4 = (
            4.0
            * math.sqrt(2.0)
            * delta ** (delta - 0.5)
            * math.exp(1.0 / (6.0 * delta))
            / (math.sqrt(math.pi) * (1.0 - delta))
        )
        c5 = c4 * (math.log(c3) + math.pi / 2.0)
        c7 = c2 * c5 / (2.0 * math.pi)
        x, y = xy_of(inp)
        expected = (
            2.19
            + math.log(4.0 * beta)
            + (y / x + m_envelope(x * x) + m_envelope(y) + 4.0 / (x * math.exp(x)))
            + c7 / (x ** (0.5 - delta) * math.log(x))
        )
        assert b > 0.0
        assert b == pytest.approx(expected, rel=1e-9)

    def test_named_literals(self):
        assert LOG_DERIV_REMAINDER == 2.19
        assert PRIME_POWER_TAIL == 0.76


class TestHAndK:
    def test_equal_at_degree_one(self):
        h, k = h_and_k(BoundInput(params=NEAR_OPTIMAL, d=1, N=3.0))
        assert h == k

    @pytest.mark.parametrize("d,n0,triple,h_ref,k_ref", TABLE_ROWS)
    def test_reference_rows(self, d, n0, triple, h_ref, k_ref):
        h, k = h_and_k(BoundInput(params=triple, d=d, N=n0))
        assert h == pytest.approx(h_ref, abs=1e-3)
        assert k == pytest.approx(k_ref, abs=1e-3)

    def test_h_minus_k_identity(self):
        from shortsum.mertens import MEISSEL_MERTENS

        d, n = 3, 117.0
        h, k = h_and_k(BoundInput(params=NEAR_OPTIMAL, d=d, N=n))
        base = math.log(0.5) + MEISSEL_MERTENS + m_envelope(math.sqrt(math.log(n)))
        assert h - k == pytest.approx((d - 1) * base, rel=1e-12)


class TestStructuralInvariants:
    def test_affine_in_d_exact(self):
        for d, n0, triple, _, _ in TABLE_ROWS:
            inp = BoundInput(params=triple, d=d, N=n0)
            assert affine_second_difference(inp) == 0

    def test_g_matches_parts(self):
        inp = BoundInput(params=NEAR_OPTIMAL, d=3, N=117.0)
        a, b = objective_parts(inp)
        assert g_of(inp) == a + b * 3

    def test_decreasing_in_n_on_grid(self):
        ns = [3.0] + [10.0**k for k in range(1, 13)]
        prev = None
        for n in ns:
            inp = BoundInput(params=NEAR_OPTIMAL, d=2, N=n)
            g = g_of(inp)
            h, k = h_and_k(inp)
            if prev is not None:
                assert g < prev[0]
                assert h < prev[1]
                assert k < prev[2]
            prev = (g, h, k)

    def test_huge_discriminant_stays_finite(self):
        inp = BoundInput(params=ParamTriple(300.0, 0.21, 1.2), d=5, N=1e300)
        g = g_of(inp)
        h, k = h_and_k(inp)
        assert math.isfinite(g) and math.isfinite(h) and math.isfinite(k)


class TestElementaryGrids:
    def test_exp_upper(self):
        report = verify_exp_upper()
        assert report.passed
        assert report.points_checked == 10**4

    def test_exp_lower(self):
        report = verify_exp_lower()
        assert report.passed

    def test_geometric_tail(self):
        report = verify_geometric_tail()
        assert report.passed
        assert report.window == (2.0, 10.0)
