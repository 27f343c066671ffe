import math
from dataclasses import dataclass

from adaptive_cholesky_gp.common.types import AlphaMode, CorrelationMode, EstimatorMode, UpperQuadMode
from adaptive_cholesky_gp.hyperopt.tuner import LogParams, TuneConfig
from adaptive_cholesky_gp.kernels.families import parse_family
from adaptive_cholesky_gp.kernels.mean import ConstantMean, MeanModel, ZeroMean
from adaptive_cholesky_gp.kernels.noise import HomoskedasticNoise
from adaptive_cholesky_gp.kernels.spec import KernelSpec
from adaptive_cholesky_gp.runner.acgp import StopConfig
from .models import ExperimentConfig, KernelConfig, StopSettings, TuneSettings


# @intent:responsibility 1実験分のライブラリオブジェクト一式。
@dataclass(frozen=True)
class ModelBundle:
    kernel: KernelSpec
    noise: HomoskedasticNoise
    mean: MeanModel
    stop: StopConfig


# @intent:responsibility 設定（Config）からカーネル、ノイズ、平均、停止設定、調整設定を生成します。
class ExperimentBuilder:
    def build(self, config: ExperimentConfig) -> ModelBundle:
        return ModelBundle(
            kernel=self.build_kernel(config.kernel),
            noise=HomoskedasticNoise(config.kernel.sigma2),
            mean=self.build_mean(config.kernel),
            stop=self.build_stop(config.stop),
        )

    def build_kernel(self, config: KernelConfig) -> KernelSpec:
        return KernelSpec(parse_family(config.family), config.log_lengthscale, config.log_amplitude)

    def build_mean(self, config: KernelConfig) -> MeanModel:
        if config.mean_constant is None:
            return ZeroMean()
        return ConstantMean(config.mean_constant)

    # @intent:rationale 列挙値の綴り誤りは ValueError（Enum の標準動作）として呼び出し側へ伝えます。
    def build_stop(self, config: StopSettings) -> StopConfig:
        return StopConfig(
            rtol=config.rtol,
            block_size=config.block_size,
            max_n=config.max_n,
            estimator=EstimatorMode(config.estimator),
            alpha_mode=AlphaMode(config.alpha_mode),
            uq_mode=UpperQuadMode(config.uq_mode),
            correlation_mode=CorrelationMode(config.correlation_mode),
            jitter=config.jitter,
        )

    def build_tune(self, config: TuneSettings, stop: StopSettings) -> TuneConfig:
        return TuneConfig(
            max_restarts=config.max_restarts,
            max_steps_per_restart=config.max_steps_per_restart,
            fd_step=config.fd_step,
            time_budget=config.time_budget,
            block_size=stop.block_size,
            estimator=EstimatorMode(config.estimator),
            frozen=frozenset(config.frozen),
            exact_eval_cap=config.exact_eval_cap,
            base_stop=self.build_stop(stop),
        )

    # @intent:responsibility 設定のカーネル値から調整の初期点を生成します。
    def initial_params(self, config: KernelConfig) -> LogParams:
        return LogParams(config.log_lengthscale, config.log_amplitude, math.log(config.sigma2))
