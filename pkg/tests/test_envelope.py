"""Strip function, critical parameter, derived constants, and the lattice
verifications."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortsum.envelope import (
    ConstantSet,
    ParamTriple,
    constants_for,
    f_abs,
    gamma_integral_rhs,
    in_search_region,
    mu_of,
    solve_tau,
    tau,
    verify_exp_log_integral,
    verify_gamma_envelope,
    verify_strip_max,
)
from shortsum.specfun import log_abs_gamma, zeta_real

TAU_REFERENCE = 0.219733068786773


def _edge_gap(delta):
    return f_abs(-1.0 + delta, 0.0, delta) - f_abs(-0.5 + delta, 0.0, delta)


class TestStripFunction:
    def test_left_edge_equals_mu(self):
        for delta in (0.05, 0.125, 0.2, tau()):
            assert f_abs(-1.0 + delta, 0.0, delta) == pytest.approx(
                mu_of(delta), rel=1e-14
            )

    def test_edges_meet_at_tau(self):
        t = tau()
        assert f_abs(-1.0 + t, 0.0, t) == pytest.approx(
            f_abs(-0.5 + t, 0.0, t), abs=1e-9
        )

    def test_decay_in_t(self):
        assert f_abs(-0.3, 1e6, 0.2) < 1e-4

    def test_strip_domain_enforced(self):
        with pytest.raises(ValueError):
            f_abs(0.0, 0.0, 0.2)
        with pytest.raises(ValueError):
            f_abs(-0.95, 0.0, 0.2)

    @given(st.floats(min_value=0.01, max_value=0.21))
    @settings(max_examples=100, deadline=None)
    def test_mu_identity_on_delta_grid(self, delta):
        assert f_abs(-1.0 + delta, 0.0, delta) == pytest.approx(mu_of(delta), rel=1e-13)


class TestTau:
    def test_reference_value(self):
        assert solve_tau() == pytest.approx(TAU_REFERENCE, abs=1e-12)

    def test_bracketing_signs(self):
        assert _edge_gap(0.1) > 0.0
        assert _edge_gap(0.4) < 0.0

    def test_root_property(self):
        assert abs(_edge_gap(solve_tau())) < 1e-10

    def test_unique_sign_change_on_grid(self):
        deltas = np.linspace(0.005, 0.49, 10**4)
        signs = np.sign([_edge_gap(float(d)) for d in deltas])
        changes = int(np.sum(signs[:-1] != signs[1:]))
        assert changes == 1

    def test_runtime_under_one_second(self):
        import time

        solve_tau.cache_clear()
        t0 = time.perf_counter()
        solve_tau()
        assert time.perf_counter() - t0 < 1.0


class TestStripMax:
    @pytest.mark.parametrize("delta_name", ["tau", "fifth", "eighth"])
    def test_passes(self, delta_name):
        delta = {"tau": tau(), "fifth": 0.2, "eighth": 0.125}[delta_name]
        report = verify_strip_max(delta, grid=500)
        assert report.passed
        assert report.points_checked == 500 * 500

    def test_preconditions(self):
        with pytest.raises(ValueError):
            verify_strip_max(tau() + 0.01, grid=200)
        with pytest.raises(ValueError):
            verify_strip_max(0.125, grid=50)

    def test_odd_grid_hits_exact_maximizer(self):
        # with t = 0 and sigma = -1+delta on the lattice, the max equals mu;
        # the relative slack keeps the margin positive
        report = verify_strip_max(0.125, grid=201)
        assert report.passed


class TestConstants:
    def test_c2_formula(self):
        cs = constants_for(ParamTriple(5.0, 0.2, 1.2))
        assert cs.c2 == pytest.approx(1.4 / 0.08, rel=1e-14)

    def test_c1_reference(self):
        cs = constants_for(ParamTriple(5.0, 0.2, 1.2))
        assert cs.c1 == pytest.approx(1.0421869788690765546, abs=1e-12)

    def test_internal_consistency(self):
        cs = constants_for(ParamTriple(155.648, 0.213503, 1.18818))
        assert cs.c6 * 2.0 * math.pi == pytest.approx(cs.c2 * cs.c4, rel=1e-12)
        assert cs.c7 * 2.0 * math.pi == pytest.approx(cs.c2 * cs.c5, rel=1e-12)
        assert isinstance(cs, ConstantSet)

    def test_c4_minimized_at_tau(self):
        deltas = np.linspace(1e-3, tau(), 400)
        c4s = [constants_for(ParamTriple(5.0, float(d), 1.2)).c4 for d in deltas]
        assert np.all(np.diff(c4s) < 0.0)
        assert min(c4s) == c4s[-1]

    def test_c2_decreasing_in_delta_c3_decreasing_in_eta(self):
        c2s = [
            constants_for(ParamTriple(5.0, float(d), 1.2)).c2
            for d in np.linspace(0.05, tau(), 50)
        ]
        assert all(a > b for a, b in zip(c2s, c2s[1:]))
        c3s = [
            constants_for(ParamTriple(5.0, 0.2, float(e))).c3
            for e in np.linspace(1.01, 1.5, 50)
        ]
        assert all(a > b for a, b in zip(c3s, c3s[1:]))

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            constants_for(ParamTriple(5.0, 0.0, 1.2))
        with pytest.raises(ValueError):
            constants_for(ParamTriple(5.0, 0.3, 1.2))
        with pytest.raises(ValueError):
            constants_for(ParamTriple(5.0, 0.2, 1.0))

    def test_search_region_predicate(self):
        assert in_search_region(ParamTriple(155.648, 0.213503, 1.18818))
        assert not in_search_region(ParamTriple(3.0, 0.2, 1.2))
        assert not in_search_region(ParamTriple(5.0, 0.25, 1.2))
        assert not in_search_region(ParamTriple(5.0, 0.2, 1.6))


class TestGammaIntegralBound:
    def test_limit_in_d_is_c5(self):
        cs = constants_for(ParamTriple(5.0, tau(), 1.18818))
        value = gamma_integral_rhs(tau(), 1.18818, 10**9, 3.0)
        assert value == pytest.approx(cs.c5, rel=1e-7)

    def test_formula_recomposition(self):
        cs = constants_for(ParamTriple(5.0, tau(), 1.18818))
        expected = cs.c4 * math.log(3.0) / 1 + cs.c5
        assert gamma_integral_rhs(tau(), 1.18818, 1, 3.0) == pytest.approx(
            expected, rel=1e-14
        )

    def test_quadrature_constant_below_one(self):
        report = verify_exp_log_integral()
        assert report.passed
        assert report.witness == pytest.approx(0.9713209701572633, abs=1e-9)


class TestGammaEnvelope:
    @pytest.mark.parametrize("delta_name", ["tau", "fifth", "eighth"])
    def test_passes(self, delta_name):
        delta = {"tau": tau(), "fifth": 0.2, "eighth": 0.125}[delta_name]
        samples = 10**4 if delta_name == "tau" else 3000
        report = verify_gamma_envelope(delta, samples=samples)
        assert report.passed

    def test_single_point_bound_at_left_edge(self):
        for delta in (0.125, 0.2):
            gamma_val = math.exp(log_abs_gamma(-1.0 + delta, 0.0))
            assert gamma_val <= mu_of(delta)

    def test_wide_margin_at_t_20(self):
        delta = 0.2
        lhs = math.exp(log_abs_gamma(-1.0 + delta, 20.0))
        rhs = mu_of(delta) * math.exp(-0.5 * math.pi * 20.0)
        assert rhs / lhs > 1.0

    def test_precondition(self):
        with pytest.raises(ValueError):
            verify_gamma_envelope(0.5, samples=1000)


class TestDualPathConstants:
    def test_constants_against_directly_coded_formulas(self):
        # second, independently written evaluation path
        delta, eta = 0.213503, 1.18818
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
        cs = constants_for(ParamTriple(155.648, delta, eta))
        assert cs.c2 == pytest.approx(c2, rel=1e-13)
        assert cs.c3 == pytest.approx(c3, rel=1e-13)
        assert cs.c4 == pytest.approx(c4, rel=1e-13)
        assert cs.c5 == pytest.approx(c5, rel=1e-13)
        assert cs.c6 == pytest.approx(c2 * c4 / (2.0 * math.pi), rel=1e-13)
        assert cs.c7 == pytest.approx(c2 * c5 / (2.0 * math.pi), rel=1e-13)
