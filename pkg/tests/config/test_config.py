# tests/config/test_config.py
"""
YAML実験設定の読み込みとライブラリオブジェクトへの変換のテスト。
"""
import math
from pathlib import Path

import pytest

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import AlphaMode, CorrelationMode, EstimatorMode, KernelFamily, UpperQuadMode
from adaptive_cholesky_gp.config import ConfigLoader, ExperimentBuilder, ExperimentConfig, KernelConfig, StopSettings
from adaptive_cholesky_gp.kernels.mean import ConstantMean, ZeroMean

# @intent:test_suite ConfigLoader と ExperimentBuilder を検証します。

YAML_TEXT = """
kernel:
  family: matern52
  log_lengthscale: 0.5
  log_amplitude: "2.0"
  sigma2: "1e-3"
  mean_constant: -2.5
stop:
  rtol: 0.05
  block_size: "128"
  max_n: 4096
  estimator: extrapolation
  alpha_mode: previous
  uq_mode: calibrated
  correlation_mode: alternate
tune:
  max_restarts: 3
  time_budget: 60
  frozen: [log_lengthscale]
data:
  source: "synthetic:visualization"
  n: 5000
seeds: [0, 1, 2]
memory_cap: 8192
"""


class TestConfigLoader:
    # @intent:test_case_file ファイルから全セクションを読み込めることを検証します。
    def test_load_from_file(self, tmp_path):
        path = tmp_path / "experiment.yaml"
        path.write_text(YAML_TEXT, encoding="utf-8")
        config = ConfigLoader().load_from_file(str(path))

        assert config.kernel.family == "matern52"
        assert config.kernel.log_amplitude == 2.0
        assert config.kernel.sigma2 == pytest.approx(1e-3)
        assert config.kernel.mean_constant == -2.5
        assert config.stop.block_size == 128
        assert config.stop.max_n == 4096
        assert config.stop.estimator == "extrapolation"
        assert config.tune.max_restarts == 3
        assert config.tune.time_budget == 60.0
        assert config.tune.frozen == ["log_lengthscale"]
        assert config.data.source == "synthetic:visualization"
        assert config.data.n == 5000
        assert config.seeds == [0, 1, 2]
        assert config.memory_cap == 8192

    # @intent:test_case_defaults 空のファイルはライブラリ既定値になることを検証します。
    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert ConfigLoader().load_from_file(str(path)) == ExperimentConfig()

    def test_scalar_seed(self):
        assert ConfigLoader().parse({"seeds": 4}).seeds == [4]

    @pytest.mark.parametrize("data, message", [
        ({"stop": {"block_size": 1.5}}, "Invalid integer format"),
        ({"stop": {"block_size": True}}, "Invalid integer format"),
        ({"kernel": {"sigma2": [1]}}, "Invalid number format"),
    ])
    def test_invalid_values(self, data, message):
        with pytest.raises(ValueError, match=message):
            ConfigLoader().parse(data)

    def test_non_mapping_rejected(self):
        with pytest.raises(ValueError, match="must be a mapping"):
            ConfigLoader().parse(["kernel"])

    @pytest.mark.parametrize("value, expected", [(-1, -1), ("2", 2), ("energy", "energy")])
    def test_target_column_index_or_name(self, value, expected):
        assert ConfigLoader().parse({"data": {"target_column": value}}).data.target_column == expected

    # @intent:test_case_bundled リポジトリ同梱の構成ファイルが読み込めることを検証します。
    def test_bundled_configs(self):
        configs = Path(__file__).resolve().parents[2] / "configs"
        visualization = ConfigLoader().load_from_file(str(configs / "visualization.yaml"))
        assert visualization.kernel.family == "matern52"
        assert visualization.kernel.sigma2 == 2.25
        assert visualization.data.source == "synthetic:visualization"
        assert visualization.seeds == list(range(10))
        tune = ConfigLoader().load_from_file(str(configs / "tune_protein.yaml"))
        assert tune.tune.exact_eval_cap == 2048
        assert tune.tune.fd_step == 1e-4
        assert tune.memory_cap == 16384
        ExperimentBuilder().build(visualization)


class TestExperimentBuilder:
    def test_build_bundle(self):
        config = ConfigLoader().parse({
            "kernel": {"family": "Matern-5/2", "log_lengthscale": 0.5, "sigma2": 0.25, "mean_constant": 1.5},
            "stop": {"rtol": 0.05, "block_size": 64, "estimator": "extrapolation", "alpha_mode": "previous",
                     "uq_mode": "calibrated", "correlation_mode": "alternate"},
        })
        bundle = ExperimentBuilder().build(config)
        assert bundle.kernel.family is KernelFamily.MATERN52
        assert bundle.kernel.log_lengthscale == 0.5
        assert bundle.noise.sigma2 == 0.25
        assert isinstance(bundle.mean, ConstantMean)
        assert bundle.stop.rtol == 0.05
        assert bundle.stop.block_size == 64
        assert bundle.stop.estimator is EstimatorMode.EXTRAPOLATION
        assert bundle.stop.alpha_mode is AlphaMode.PREVIOUS_BLOCK
        assert bundle.stop.uq_mode is UpperQuadMode.CALIBRATED
        assert bundle.stop.correlation_mode is CorrelationMode.ALTERNATE_PAIRS

    def test_zero_mean_by_default(self):
        assert isinstance(ExperimentBuilder().build_mean(KernelConfig()), ZeroMean)

    # @intent:test_case_error 未知のカーネル族や列挙値は ValueError になることを検証します。
    def test_unknown_family(self):
        with pytest.raises(ValueError, match="Unknown kernel family"):
            ExperimentBuilder().build_kernel(KernelConfig(family="periodic"))

    def test_unknown_estimator(self):
        with pytest.raises(ValueError):
            ExperimentBuilder().build_stop(StopSettings(estimator="median"))

    def test_invalid_block_size(self):
        with pytest.raises(InputError, match="even"):
            ExperimentBuilder().build_stop(StopSettings(block_size=3))

    def test_tune_settings(self):
        config = ConfigLoader().parse({"tune": {"frozen": ["log_noise"], "exact_eval_cap": 500},
                                       "stop": {"block_size": 32, "max_n": 64, "uq_mode": "calibrated"}})
        builder = ExperimentBuilder()
        tune = builder.build_tune(config.tune, config.stop)
        assert tune.frozen == frozenset({"log_noise"})
        assert tune.block_size == 32
        assert tune.exact_eval_cap == 500
        assert tune.estimator is EstimatorMode.EXTRAPOLATION
        assert tune.base_stop.max_n == 64
        assert tune.base_stop.uq_mode is UpperQuadMode.CALIBRATED
        init = builder.initial_params(KernelConfig(sigma2=0.5))
        assert init.log_noise == pytest.approx(math.log(0.5))
