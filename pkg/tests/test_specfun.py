"""Special-function evaluators against independent oracles and closed forms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortsum.specfun import (
    DEFAULT_OPTIONS,
    EvalOptions,
    MAX_SIEVE_LIMIT,
    kahan_sum,
    log_abs_gamma,
    prime_log_weight_sum,
    prime_recip_sum,
    prime_zeta,
    sieve,
    zeta_real,
)

# Frozen once from arbitrary-precision evaluation (30 significant digits).
ZETA_3_2 = 2.6123753486854883433
PRIME_ZETA_2 = 0.4522474200410654985
PRIME_ZETA_10 = 0.0009936035744369802
LOG_ABS_GAMMA_FIXTURE = -1.6072948578410220  # at sigma = -0.78, t = 1.3


def _raw_series_zeta_oracle(s: float, terms: int = 10**6) -> tuple[float, float]:
    # Independent bracket: sum_{n<=T} n^-s plus integral tail bounds
    # int_{T+1}^inf u^-s du <= tail <= int_T^inf u^-s du.
    ns = np.arange(1, terms + 1, dtype=np.float64)
    partial = math.fsum((ns**-s).tolist())
    lo = partial + (terms + 1) ** (1.0 - s) / (s - 1.0)
    hi = partial + terms ** (1.0 - s) / (s - 1.0)
    return lo, hi


class TestZetaReal:
    def test_closed_form_basel(self):
        assert zeta_real(2.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-14)

    def test_three_halves_against_raw_series_oracle(self):
        lo, hi = _raw_series_zeta_oracle(1.5)
        value = zeta_real(1.5)
        assert lo <= value <= hi
        assert value == pytest.approx(ZETA_3_2, abs=1e-12)

    def test_c1_constant(self):
        c1 = zeta_real(1.5) / math.sqrt(2.0 * math.pi)
        assert c1 == pytest.approx(1.0421869788690765546, abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            zeta_real(1.0)
        with pytest.raises(ValueError):
            zeta_real(0.5)

    @given(
        st.floats(min_value=1.05, max_value=10.0),
        st.floats(min_value=0.01, max_value=5.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_strictly_decreasing(self, s, gap):
        assert zeta_real(s) > zeta_real(s + gap)

    def test_pure(self):
        assert zeta_real(1.2345) == zeta_real(1.2345)


class TestPrimeZeta:
    def test_three_halves_within_stated_bracket(self):
        value = prime_zeta(1.5)
        assert 0.8494 < value < 0.849567

    def test_p2_against_direct_sieve_oracle(self):
        # Direct sum over primes to 1e7; the remainder lies in [0, 1.1e-7]
        # by the integer-tail integral int_c^inf u^-2 du.
        table = sieve(10**7)
        pv = table.primes.astype(np.float64)
        direct = math.fsum((1.0 / (pv * pv)).tolist())
        value = prime_zeta(2.0)
        assert direct <= value <= direct + 1.1e-7
        assert value == pytest.approx(PRIME_ZETA_2, abs=1e-12)

    def test_p10_dominated_by_first_terms(self):
        first_four = 2.0**-10 + 3.0**-10 + 5.0**-10 + 7.0**-10
        value = prime_zeta(10.0)
        # remainder below the integer tail int_10^inf u^-10 du
        assert first_four <= value <= first_four + 10.0**-9 / 9.0
        assert value == pytest.approx(PRIME_ZETA_10, abs=1e-15)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            prime_zeta(0.99)

    def test_exp_dominated_by_zeta_on_grid(self):
        # P(s) <= log zeta(s) term by term, so exp(P(s)) <= zeta(s).
        for s in np.linspace(1.01, 4.0, 80).tolist():
            assert math.exp(prime_zeta(s)) <= zeta_real(s)


class TestSieve:
    def test_small_tables(self):
        assert sieve(10).primes.tolist() == [2, 3, 5, 7]
        assert sieve(2).primes.tolist() == [2]

    def test_pi_of_one_million(self):
        assert len(sieve(10**6)) == 78498

    def test_against_second_implementation(self):
        # Odd-only incremental sieve, written independently of the main one.
        def odd_sieve(n):
            if n < 2:
                return []
            out = [2]
            flags = bytearray([1]) * ((n - 1) // 2)  # index i -> 2i + 3
            for i in range(len(flags)):
                if flags[i]:
                    p = 2 * i + 3
                    out.append(p)
                    for j in range((p * p - 3) // 2, len(flags), p):
                        flags[j] = 0
            return [p for p in out if p <= n]

        assert sieve(10**4).primes.tolist() == odd_sieve(10**4)

    def test_trial_division_on_small_table(self):
        for p in sieve(500).primes.tolist():
            assert all(p % q for q in range(2, int(math.isqrt(p)) + 1))

    def test_errors(self):
        with pytest.raises(ValueError):
            sieve(1)
        with pytest.raises(MemoryError):
            sieve(MAX_SIEVE_LIMIT + 1)


@pytest.fixture(scope="module")
def table():
    return sieve(10**4)


class TestPrimeRecipSum:

    def test_first_prime(self, table):
        assert prime_recip_sum(2.0, table) == 0.5

    def test_four_terms(self, table):
        expected = 1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7
        assert prime_recip_sum(10.0, table) == pytest.approx(expected, abs=1e-15)

    def test_constant_between_primes(self, table):
        assert prime_recip_sum(13.5, table) == prime_recip_sum(13.0, table)

    @given(st.floats(min_value=2.0, max_value=9000.0), st.floats(min_value=0.0, max_value=999.0))
    @settings(max_examples=150, deadline=None)
    def test_nondecreasing(self, table, x, step):
        assert prime_recip_sum(x + step, table) >= prime_recip_sum(x, table)

    def test_preconditions(self, table):
        with pytest.raises(ValueError):
            prime_recip_sum(1.5, table)
        with pytest.raises(ValueError):
            prime_recip_sum(10**5, table)


class TestPrimeLogWeightSum:
    def test_partial_two_terms(self):
        expected = math.log(2.0) / 2.0 + math.log(3.0) / 6.0
        assert expected == pytest.approx(0.5296756, abs=1e-7)

    def test_value_and_tail(self):
        value, tail = prime_log_weight_sum()
        assert value == pytest.approx(0.7553666, abs=1e-6)
        assert value + tail < 0.76
        assert tail > 0.0

    def test_smaller_cutoff_still_capped(self):
        value, tail = prime_log_weight_sum(EvalOptions(tail_cutoff=10**4))
        assert value < 0.7553666 < value + tail
        assert value + tail < 0.76


class TestLogAbsGamma:
    def test_gamma_one(self):
        assert log_abs_gamma(1.0, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_gamma_half(self):
        assert log_abs_gamma(0.5, 0.0) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-12)

    def test_reflection_fixture(self):
        assert log_abs_gamma(-0.78, 1.3) == pytest.approx(LOG_ABS_GAMMA_FIXTURE, abs=1e-9)

    def test_pole(self):
        for sigma in (0.0, -1.0, -2.0):
            with pytest.raises(ValueError):
                log_abs_gamma(sigma, 0.0)

    @given(
        st.floats(min_value=-4.6, max_value=4.0),
        st.floats(min_value=-8.0, max_value=8.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_recurrence(self, sigma, t):
        # |Gamma(s+1)| = |s| |Gamma(s)|; keep a small distance from the poles,
        # where binary64 cancellation in sin(pi sigma) dominates
        near_integer = abs(sigma - round(sigma)) < 1e-3
        if near_integer and abs(t) < 1e-3:
            return
        lhs = log_abs_gamma(sigma + 1.0, t)
        rhs = log_abs_gamma(sigma, t) + 0.5 * math.log(sigma * sigma + t * t)
        assert lhs == pytest.approx(rhs, abs=1e-9)


class TestOptionsAndHelpers:
    def test_kahan_matches_fsum(self):
        # well-conditioned inputs where naive summation already drifts
        values = [1.0 / p for p in range(1, 200000)]
        assert kahan_sum(values) == pytest.approx(math.fsum(values), abs=1e-12)
        naive = sum(values)
        assert abs(kahan_sum(values) - math.fsum(values)) <= abs(naive - math.fsum(values))

    def test_eval_options_validation(self):
        with pytest.raises(ValueError):
            EvalOptions(abs_tol=0.0)
        with pytest.raises(ValueError):
            EvalOptions(rel_tol=-1.0)
        with pytest.raises(ValueError):
            EvalOptions(tail_cutoff=100)
        assert DEFAULT_OPTIONS.tail_cutoff == 10**7
