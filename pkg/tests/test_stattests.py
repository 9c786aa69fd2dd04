"""Predictive-accuracy and unit-root tests.

ADF and KPSS are cross-checked against statsmodels with the nuisance
parameters (lag order, bandwidth) forced equal, where both implementations
must agree to near machine precision. The small DM/CW examples are frozen
from hand arithmetic on the defining formulas.
"""

import math

import numpy as np
import pytest
import warnings
from hypothesis import given, strategies as st
from scipy.stats import norm

from statsmodels.tsa.stattools import adfuller, kpss

import fxmidas as fx
from fxmidas import (
    DegenerateVariance,
    Deterministic,
    DimensionMismatch,
    EmptyInput,
    KpssDeterministic,
    OrderNotFound,
    SeriesTooShort,
)


class TestLongRunVariance:
    def test_zero_lags_is_population_variance(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert fx.long_run_variance(x, 0) == pytest.approx(1.25, abs=1e-15)

    def test_one_bartlett_lag_by_hand(self):
        # demeaned [-1.5,-0.5,0.5,1.5]: gamma0=1.25, gamma1=0.3125,
        # v = 1.25 + 2*(1/2)*0.3125 = 25/16
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert fx.long_run_variance(x, 1) == pytest.approx(25.0 / 16.0,
                                                           abs=1e-15)

    def test_errors(self):
        with pytest.raises(EmptyInput):
            fx.long_run_variance(np.array([]), 0)
        with pytest.raises(ValueError):
            fx.long_run_variance(np.ones(5), -1)

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=50),
           st.integers(0, 6))
    def test_never_negative_with_bartlett_weights(self, vals, lags):
        v = fx.long_run_variance(np.array(vals), lags)
        assert v >= -1e-9


class TestDieboldMariano:
    def test_hand_worked_example(self):
        # d = [0, 3, 8]: mean 11/3, population variance 98/9,
        # stat = (11/3) / sqrt(98/27) = 11*sqrt(6)/14
        r = fx.diebold_mariano(np.array([1.0, 2.0, 3.0]),
                               np.array([1.0, 1.0, 1.0]))
        expected = 11.0 * math.sqrt(6.0) / 14.0
        assert r.statistic == pytest.approx(expected, abs=1e-12)
        assert r.p_value == pytest.approx(2.0 * norm.sf(expected), abs=1e-12)
        assert r.meta["n"] == 3
        assert r.meta["hac_lags"] == 0

    def test_positive_statistic_favours_the_model(self):
        rng = np.random.default_rng(2)
        e_model = rng.normal(0, 0.5, 80)
        e_bench = e_model + rng.normal(0, 1.0, 80)
        r = fx.diebold_mariano(e_bench, e_model)
        assert r.statistic > 0

    def test_antisymmetry(self):
        rng = np.random.default_rng(3)
        a, b = rng.normal(size=(2, 60))
        fwd = fx.diebold_mariano(a, b)
        rev = fx.diebold_mariano(b, a)
        assert fwd.statistic == pytest.approx(-rev.statistic, abs=1e-12)
        assert fwd.p_value == pytest.approx(rev.p_value, abs=1e-12)

    def test_matches_direct_computation(self):
        rng = np.random.default_rng(4)
        e_b, e_m = rng.normal(size=(2, 97))
        r = fx.diebold_mariano(e_b, e_m)
        d = e_b ** 2 - e_m ** 2
        stat = d.mean() / math.sqrt(np.var(d) / d.size)
        assert r.statistic == pytest.approx(stat, abs=1e-12)

    def test_identical_forecasts_degenerate(self):
        e = np.arange(1.0, 11.0)
        with pytest.raises(DegenerateVariance):
            fx.diebold_mariano(e, e.copy())

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            fx.diebold_mariano(np.ones(4), np.ones(5))

    def test_empty(self):
        with pytest.raises(EmptyInput):
            fx.diebold_mariano(np.array([]), np.array([]))

    def test_decisions_follow_p_value(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            e_b, e_m = rng.normal(size=(2, 50))
            r = fx.diebold_mariano(e_b, e_m)
            for lvl in (0.01, 0.05, 0.10):
                assert r.decision_at[lvl] == (r.p_value < lvl)


class TestClarkWest:
    def test_hand_worked_example(self):
        # adj = [4, 0]: mean 2, population variance 4, stat = sqrt(2)
        r = fx.clark_west(e_small=np.array([2.0, 1.0]),
                          e_large=np.array([1.0, 1.0]),
                          f_small=np.array([0.0, 0.0]),
                          f_large=np.array([1.0, 0.0]))
        assert r.statistic == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert r.p_value == pytest.approx(norm.sf(math.sqrt(2.0)), abs=1e-12)

    def test_one_sided_upper_tail(self):
        rng = np.random.default_rng(6)
        e_s, e_l, f_s, f_l = rng.normal(size=(4, 60))
        r = fx.clark_west(e_s, e_l, f_s, f_l)
        assert r.p_value == pytest.approx(norm.sf(r.statistic), abs=1e-12)

    def test_adjustment_never_hurts_the_large_model(self):
        # mean(adjusted) - mean(raw) = mean((f_s - f_l)^2) >= 0, exactly
        rng = np.random.default_rng(7)
        for _ in range(10):
            e_s, e_l, f_s, f_l = rng.normal(size=(4, 40))
            adj = e_s ** 2 - (e_l ** 2 - (f_s - f_l) ** 2)
            raw = e_s ** 2 - e_l ** 2
            gap = adj.mean() - raw.mean()
            assert gap == pytest.approx(np.mean((f_s - f_l) ** 2), abs=1e-12)
            assert gap >= 0.0
            r = fx.clark_west(e_s, e_l, f_s, f_l)
            assert r.meta["mean_adjusted_diff"] == pytest.approx(adj.mean(),
                                                                 abs=1e-12)

    def test_identical_nested_forecasts_degenerate(self):
        e = np.arange(1.0, 9.0)
        f = np.zeros(8)
        with pytest.raises(DegenerateVariance):
            fx.clark_west(e, e.copy(), f, f.copy())

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            fx.clark_west(np.ones(4), np.ones(4), np.ones(4), np.ones(3))


class TestAdf:
    def test_schwert_rule(self):
        assert fx.schwert_max_lag(100) == 12
        assert fx.schwert_max_lag(500) == 17
        assert fx.schwert_max_lag(50) == 10

    def test_critical_values_frozen(self):
        r = fx.adf_test(np.random.default_rng(0).normal(size=100))
        assert r.meta["critical_values"] == {0.01: -3.43, 0.05: -2.86,
                                             0.10: -2.57}
        rt = fx.adf_test(np.random.default_rng(0).normal(size=100),
                         deterministic=Deterministic.CONSTANT_TREND)
        assert rt.meta["critical_values"] == {0.01: -3.96, 0.05: -3.41,
                                              0.10: -3.12}

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    @pytest.mark.parametrize("det,reg", [(Deterministic.CONSTANT, "c"),
                                         (Deterministic.CONSTANT_TREND, "ct")])
    def test_statistic_matches_statsmodels_at_same_lag(self, seed, det, reg):
        rng = np.random.default_rng(seed)
        y = 0.3 * rng.normal(size=200).cumsum() + rng.normal(size=200)
        ours = fx.adf_test(y, deterministic=det)
        ref = adfuller(y, maxlag=ours.meta["lags"], autolag=None,
                       regression=reg)
        assert ours.statistic == pytest.approx(ref[0], abs=1e-8)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_aic_choice_matches_statsmodels(self, seed):
        rng = np.random.default_rng(seed)
        y = 0.3 * rng.normal(size=200).cumsum() + rng.normal(size=200)
        ours = fx.adf_test(y)
        ref = adfuller(y, autolag="AIC", regression="c")
        assert ours.meta["lags"] == ref[2]

    def test_decisions_follow_critical_values(self):
        rng = np.random.default_rng(9)
        for y in (rng.normal(size=120), np.cumsum(rng.normal(size=120))):
            r = fx.adf_test(y)
            for lvl, cv in r.meta["critical_values"].items():
                assert r.decision_at[lvl] == (r.statistic < cv)

    def test_p_value_interpolation(self):
        rng = np.random.default_rng(10)
        wn = rng.normal(size=500)
        rw = np.cumsum(rng.normal(size=500))
        assert fx.adf_test(wn).p_value < 0.01
        assert fx.adf_test(rw).p_value > 0.10
        # saturation at the tabulated support
        r = fx.adf_test(wn)
        assert 0.0 <= r.p_value <= 1.0

    def test_forced_lag_cap(self):
        r = fx.adf_test(np.random.default_rng(11).normal(size=60), max_lag=3)
        assert r.meta["max_lag"] == 3
        assert r.meta["lags"] <= 3

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            fx.adf_test(np.ones(14))

    def test_accepts_time_series(self):
        rng = np.random.default_rng(12)
        vals = rng.normal(size=80)
        s = fx.TimeSeries(fx.Period.parse("1985Q1"), vals)
        assert fx.adf_test(s).statistic == fx.adf_test(vals).statistic


class TestKpss:
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    @pytest.mark.parametrize("det,reg", [(KpssDeterministic.LEVEL, "c"),
                                         (KpssDeterministic.TREND, "ct")])
    def test_matches_statsmodels_at_same_bandwidth(self, seed, det, reg):
        rng = np.random.default_rng(seed)
        y = rng.normal(size=150) + 0.1 * rng.normal(size=150).cumsum()
        ours = fx.kpss_test(y, deterministic=det)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ref_stat, ref_p, _, _ = kpss(y, regression=reg,
                                         nlags=ours.meta["bandwidth"])
        assert ours.statistic == pytest.approx(ref_stat, abs=1e-10)
        assert ours.p_value == pytest.approx(ref_p, abs=1e-6)

    def test_bandwidth_rule(self):
        r = fx.kpss_test(np.random.default_rng(0).normal(size=100))
        assert r.meta["bandwidth"] == 4
        r = fx.kpss_test(np.random.default_rng(0).normal(size=500))
        assert r.meta["bandwidth"] == int(np.floor(4.0 * 5.0 ** (2.0 / 9.0)))

    def test_critical_values_frozen(self):
        r = fx.kpss_test(np.random.default_rng(1).normal(size=100))
        assert r.meta["critical_values"] == {0.01: 0.739, 0.05: 0.463,
                                             0.10: 0.347}
        rt = fx.kpss_test(np.random.default_rng(1).normal(size=100),
                          deterministic=KpssDeterministic.TREND)
        assert rt.meta["critical_values"] == {0.01: 0.216, 0.05: 0.146,
                                              0.10: 0.119}

    def test_p_value_saturates(self):
        rng = np.random.default_rng(2)
        assert fx.kpss_test(rng.normal(size=300)).p_value == pytest.approx(0.10)
        walk = np.cumsum(rng.normal(size=300))
        assert fx.kpss_test(walk).p_value == pytest.approx(0.01)

    def test_rejects_a_walk_keeps_noise(self):
        rng = np.random.default_rng(0)
        assert not fx.kpss_test(rng.normal(size=500)).decision_at[0.05]
        assert fx.kpss_test(np.cumsum(rng.normal(size=500))).decision_at[0.01]

    def test_trend_variant_tolerates_drift(self):
        t = np.arange(200.0)
        rng = np.random.default_rng(3)
        y = 5.0 + 0.05 * t + rng.normal(size=200)
        assert fx.kpss_test(y).decision_at[0.05]  # level null rejects
        assert not fx.kpss_test(
            y, deterministic=KpssDeterministic.TREND).decision_at[0.05]

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            fx.kpss_test(np.ones(10))


class TestIntegrationOrder:
    def test_orders_zero_one_two(self):
        rng = np.random.default_rng(0)
        wn = rng.normal(size=400)
        assert fx.integration_order(wn) == 0
        rw = np.cumsum(rng.normal(size=400))
        assert fx.integration_order(rw) == 1
        i2 = np.cumsum(np.cumsum(rng.normal(size=400)))
        assert fx.integration_order(i2) == 2

    def test_order_beyond_cap_raises(self):
        rng = np.random.default_rng(0)
        i3 = np.cumsum(np.cumsum(np.cumsum(rng.normal(size=400))))
        with pytest.raises(OrderNotFound) as exc:
            fx.integration_order(i3)
        assert exc.value.max_order == 2

    def test_bad_cap(self):
        with pytest.raises(ValueError):
            fx.integration_order(np.ones(50), max_order=-1)


def test_result_string_carries_stars():
    r = fx.TestResult(2.5, 0.004, {0.01: True, 0.05: True, 0.10: True})
    assert str(r) == "2.5000 (p=0.004) ***"
    r = fx.TestResult(-1.0, 0.3, {0.01: False, 0.05: False, 0.10: False})
    assert str(r) == "-1.0000 (p=0.3)"
