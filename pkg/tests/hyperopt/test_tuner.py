# tests/hyperopt/test_tuner.py
"""
adaptive_cholesky_gp.hyperopt.tuner の単体テスト。
"""
import math
from itertools import groupby

import numpy as np
import pytest

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import KernelFamily
from adaptive_cholesky_gp.exact.oracle import ExactModel, exact_lml
from adaptive_cholesky_gp.hyperopt.tuner import (LogParams, TuneConfig, finite_difference_gradient, objective,
                                                 tune)

from tests.conftest import random_instance

# @intent:test_suite 目的関数、許容誤差のスケジュール、勾配降下の契約を検証します。

SE = KernelFamily.SQUARED_EXPONENTIAL


class TestTuneConfig:
    def test_tolerance_schedule(self):
        cfg = TuneConfig()
        tolerances = [cfg.tolerance(r) for r in range(8)]
        assert tolerances[0] == pytest.approx(2.0 / 3.0)
        assert all(a > b for a, b in zip(tolerances, tolerances[1:]))
        assert cfg.rtol(3) == cfg.tolerance(3)
        # 5回のリスタート後の r は (2/3)^6
        assert cfg.rtol(5) == pytest.approx((2.0 / 3.0) ** 6)
        assert cfg.rtol(5) < 0.088

    def test_unknown_frozen_name(self):
        with pytest.raises(InputError, match="Unknown hyperparameter names"):
            TuneConfig(frozen=frozenset({"log_period"}))

    def test_free_mask(self):
        cfg = TuneConfig(frozen=frozenset({"log_amplitude"}))
        assert cfg.free_mask().tolist() == [True, False, True]

    @pytest.mark.parametrize("kwargs", [{"max_restarts": -1}, {"fd_step": 0.0}, {"time_budget": -1.0}])
    def test_invalid_values(self, kwargs):
        with pytest.raises(InputError):
            TuneConfig(**kwargs)


class TestLogParams:
    def test_infinite_rejected(self):
        with pytest.raises(InputError, match="finite"):
            LogParams(log_lengthscale=math.inf)

    def test_vector_shape(self):
        assert LogParams.from_vector([0.1, 0.2, 0.3]) == LogParams(0.1, 0.2, 0.3)
        with pytest.raises(InputError, match="Expected 3"):
            LogParams.from_vector([0.1, 0.2])


class TestObjective:
    # @intent:test_case_exact r = 0 では目的関数が厳密な負の対数周辺尤度に一致することを検証します。
    def test_zero_rtol_is_exact(self):
        kernel, noise, X, y = random_instance(seed=51, n=96)
        params = LogParams(0.0, 0.0, math.log(0.1))
        value, processed = objective(params, X, y, SE, 0.0, TuneConfig(block_size=32))
        assert processed == 96
        assert value == pytest.approx(-exact_lml(ExactModel(kernel, noise, X, y)), rel=1e-8)

    def test_underflowing_noise_is_rejected_step(self):
        _, _, X, y = random_instance(seed=52, n=16)
        value, processed = objective(LogParams(0.0, 0.0, -800.0), X, y, SE, 0.1)
        assert value == math.inf
        assert processed == 0

    # @intent:test_case_gradient 2つの差分幅による log θ 方向の中心差分が一致することを検証します。
    def test_finite_difference_consistency(self):
        _, _, X, y = random_instance(seed=53, n=256)
        x = np.array([0.2, 0.1, math.log(0.2)])
        mask = np.array([False, True, False])

        def f(vector):
            return objective(LogParams.from_vector(vector), X, y, SE, 0.0)[0]

        coarse = finite_difference_gradient(f, x, 1e-4, mask)
        fine = finite_difference_gradient(f, x, 1e-5, mask)
        assert coarse[0] == 0.0 and coarse[2] == 0.0
        assert fine[1] == pytest.approx(coarse[1], rel=1e-4)


class TestTune:
    # @intent:test_case_closed_form 1点データで θ → 0 のとき、最適な σ² が y² に一致することを検証します。
    def test_single_point_stationarity(self):
        cfg = TuneConfig(max_restarts=40, max_steps_per_restart=50, block_size=2,
                         frozen=frozenset({"log_lengthscale", "log_amplitude"}))
        init = LogParams(0.0, -30.0, 0.0)
        result = tune([[0.0]], [2.0], init, SE, cfg)
        assert not result.budget_exhausted
        assert result.params.log_lengthscale == 0.0
        assert result.params.log_amplitude == -30.0
        assert result.params.log_noise == pytest.approx(math.log(4.0), abs=1e-3)

    def test_zero_steps_returns_init(self):
        _, _, X, y = random_instance(seed=54, n=32)
        init = LogParams(0.5, 0.0, -1.0)
        result = tune(X, y, init, SE, TuneConfig(max_steps_per_restart=0, block_size=8))
        assert result.params == init
        assert len(result.trajectory) == 1
        assert result.trajectory[0].step == 0
        assert result.objective == result.trajectory[0].objective

    def test_zero_time_budget(self):
        _, _, X, y = random_instance(seed=55, n=32)
        init = LogParams(0.5, 0.0, -1.0)
        result = tune(X, y, init, SE, TuneConfig(max_restarts=2, time_budget=0.0, block_size=8))
        assert result.budget_exhausted
        assert result.params == init

    # @intent:test_case_monotone 同じリスタート内で受理したステップの目的関数値が増えないことを検証します。
    def test_monotone_within_restart(self):
        _, _, X, y = random_instance(seed=56, n=64)
        cfg = TuneConfig(max_restarts=3, max_steps_per_restart=8, block_size=16, exact_eval_cap=24)
        result = tune(X, y, LogParams(1.0, 0.5, 0.0), SE, cfg)
        assert len(result.trajectory) > 1
        for _, points in groupby(result.trajectory, key=lambda p: p.restart):
            values = [p.objective for p in points]
            assert all(b <= a for a, b in zip(values, values[1:]))
        elapsed = [p.elapsed for p in result.trajectory]
        assert elapsed == sorted(elapsed)
        last = result.trajectory[-1]
        model = ExactModel(last.params.kernel(SE), last.params.noise(), X[:24], y[:24])
        assert last.exact_lml == pytest.approx(exact_lml(model))

    def test_length_mismatch(self):
        with pytest.raises(InputError, match="targets have 2"):
            tune([[0.0], [1.0], [2.0]], [0.0, 1.0], LogParams(), SE)
