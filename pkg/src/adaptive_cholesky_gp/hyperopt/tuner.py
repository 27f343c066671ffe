# adaptive_cholesky_gp/hyperopt/tuner.py
"""
Hyperopt Layer (ハイパーパラメータ調整)

対数空間のハイパーパラメータ (log ℓ, log θ, log σ²) を、適応的Cholesky による
負の対数周辺尤度推定値に対して最小化します。勾配は中心差分、ステップは
Armijo 条件によるバックトラッキングで決めます。許容誤差はリスタートごとに (2/3)^(restart+1) で締めます。
"""
import logging
import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable, FrozenSet, List, Optional, Tuple

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError
from adaptive_cholesky_gp.common.types import Array, EstimatorMode, KernelFamily
from adaptive_cholesky_gp.exact.oracle import ExactModel, exact_lml
from adaptive_cholesky_gp.kernels.base import as_inputs
from adaptive_cholesky_gp.kernels.mean import MeanModel, ZeroMean
from adaptive_cholesky_gp.kernels.noise import HomoskedasticNoise
from adaptive_cholesky_gp.kernels.spec import KernelSpec
from adaptive_cholesky_gp.runner.acgp import StopConfig, acgp_run

logger = logging.getLogger(__name__)

PARAM_NAMES = ("log_lengthscale", "log_amplitude", "log_noise")

# Armijo 条件の十分減少係数
_ARMIJO = 1e-4


# @intent:responsibility 対数空間のハイパーパラメータを不変に保持します。
@dataclass(frozen=True)
class LogParams:
    log_lengthscale: float = 0.0
    log_amplitude: float = 0.0
    log_noise: float = 0.0

    def __post_init__(self):
        values = self.as_vector()
        if not np.all(np.isfinite(values)):
            raise InputError(f"Hyperparameters must be finite, got {values.tolist()}.")

    def as_vector(self) -> Array:
        return np.array([self.log_lengthscale, self.log_amplitude, self.log_noise], dtype=float)

    @classmethod
    def from_vector(cls, values) -> "LogParams":
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != len(PARAM_NAMES):
            raise InputError(f"Expected {len(PARAM_NAMES)} hyperparameters, got {values.shape[0]}.")
        return cls(*(float(v) for v in values))

    def kernel(self, family: KernelFamily) -> KernelSpec:
        return KernelSpec(family, self.log_lengthscale, self.log_amplitude)

    def noise(self) -> HomoskedasticNoise:
        return HomoskedasticNoise(math.exp(self.log_noise))


# @intent:responsibility 調整ループの設定を不変に保持します。
@dataclass(frozen=True)
class TuneConfig:
    """
    time_budget が None の場合は時間制限なし。exact_eval_cap が正の場合、軌跡の各点で
    先頭 exact_eval_cap 点の厳密な対数周辺尤度も記録します。
    base_stop は目的関数の停止設定の元になり、rtol、block_size、estimator だけが上書きされます。
    """
    max_restarts: int = 5
    max_steps_per_restart: int = 50
    fd_step: float = 1e-4
    time_budget: Optional[float] = None
    block_size: int = 256
    estimator: EstimatorMode = EstimatorMode.EXTRAPOLATION
    frozen: FrozenSet[str] = field(default_factory=frozenset)
    exact_eval_cap: int = 0
    initial_step: float = 1.0
    max_backtracks: int = 30
    base_stop: StopConfig = field(default_factory=StopConfig)

    def __post_init__(self):
        if self.max_restarts < 0 or self.max_steps_per_restart < 0:
            raise InputError("Restart and step counts must be nonnegative.")
        if not self.fd_step > 0.0:
            raise InputError(f"Finite-difference step must be positive, got {self.fd_step}.")
        if not self.initial_step > 0.0:
            raise InputError(f"Initial step must be positive, got {self.initial_step}.")
        if self.time_budget is not None and self.time_budget < 0.0:
            raise InputError(f"Time budget must be nonnegative, got {self.time_budget}.")
        unknown = set(self.frozen) - set(PARAM_NAMES)
        if unknown:
            raise InputError(f"Unknown hyperparameter names to freeze: {sorted(unknown)}.")
        object.__setattr__(self, "frozen", frozenset(self.frozen))

    # @intent:responsibility リスタート番号に対する収束許容誤差 (2/3)^(restart+1) を返します。
    def tolerance(self, restart: int) -> float:
        return (2.0 / 3.0) ** (restart + 1)

    # @intent:responsibility 停止条件の相対誤差目標。許容誤差と同じ値を使います。
    def rtol(self, restart: int) -> float:
        return self.tolerance(restart)

    def free_mask(self) -> Array:
        return np.array([name not in self.frozen for name in PARAM_NAMES])


# @intent:responsibility 軌跡の1点（経過秒数、リスタート、ステップ、パラメータ、目的関数値、処理点数、厳密値）。
@dataclass(frozen=True)
class TrajectoryPoint:
    elapsed: float
    restart: int
    step: int
    params: LogParams
    objective: float
    processed: int
    exact_lml: Optional[float] = None


@dataclass
class TuneResult:
    params: LogParams
    objective: float
    trajectory: List[TrajectoryPoint]
    budget_exhausted: bool = False


# @intent:responsibility 負の対数周辺尤度推定値と処理点数を返します。
# @intent:rationale 分解の失敗や桁あふれは +inf として返し、探索側で棄却させます。
def objective(params: LogParams, X, y, family: KernelFamily, rtol: float, cfg: TuneConfig = TuneConfig(),
              mean: Optional[MeanModel] = None) -> Tuple[float, int]:
    values = params.as_vector()
    if not np.all(np.isfinite(values)):
        raise InputError(f"Hyperparameters must be finite, got {values.tolist()}.")
    with np.errstate(over="ignore"):
        scaled = np.exp(values)
    if not np.all(np.isfinite(scaled)) or np.any(scaled <= 0.0):
        return math.inf, 0
    stop = replace(cfg.base_stop, rtol=rtol, block_size=cfg.block_size, estimator=cfg.estimator)
    try:
        result = acgp_run(params.kernel(family), mean or ZeroMean(), params.noise(), X, y, stop)
    except NotPositiveDefiniteError as exc:
        logger.info("Objective rejected parameters %s: %s", values.tolist(), exc)
        return math.inf, 0
    if not math.isfinite(result.estimate):
        return math.inf, result.processed
    return -result.estimate, result.processed


def _exact_lml(params: LogParams, X: Array, y: Array, family: KernelFamily, mean: MeanModel,
               cap: int) -> Optional[float]:
    if cap <= 0:
        return None
    try:
        model = ExactModel(params.kernel(family), params.noise(), X[:cap], y[:cap], mean)
    except NotPositiveDefiniteError:
        return None
    return exact_lml(model)


# @intent:responsibility 凍結されていない成分について、中心差分による勾配を返します。
def finite_difference_gradient(func: Callable[[Array], float], x: Array, step: float, mask: Array) -> Array:
    grad = np.zeros_like(x)
    for i in np.flatnonzero(mask):
        shift = np.zeros_like(x)
        shift[i] = step
        grad[i] = (func(x + shift) - func(x - shift)) / (2.0 * step)
    return grad


# @intent:responsibility リスタート付き勾配降下でハイパーパラメータを調整し、軌跡を返します。
# @intent:pre-condition init は有限値。X と y の長さが一致していること。
def tune(X, y, init: LogParams, family: KernelFamily, cfg: TuneConfig = TuneConfig(),
         mean: Optional[MeanModel] = None, clock: Callable[[], float] = time.perf_counter) -> TuneResult:
    """
    各リスタートは前のリスタートの最適点から始め、相対変化が tol(restart) を下回るか
    ステップ数の上限で終了します。受理したステップで目的関数値が増えることはありません。
    時間予算を使い切った場合は、その時点の最良点と budget_exhausted=True を返します。
    """
    X = as_inputs(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.shape[0] != y.shape[0]:
        raise InputError(f"Inputs have {X.shape[0]} rows but targets have {y.shape[0]} entries.")
    mean = mean or ZeroMean()
    started = clock()
    mask = cfg.free_mask()

    def over_budget() -> bool:
        return cfg.time_budget is not None and clock() - started >= cfg.time_budget

    def record(restart: int, step: int, params: LogParams, value: float, processed: int) -> TrajectoryPoint:
        return TrajectoryPoint(clock() - started, restart, step, params, value, processed,
                               _exact_lml(params, X, y, family, mean, cfg.exact_eval_cap))

    current = init
    value, processed = objective(current, X, y, family, cfg.rtol(0), cfg, mean)
    trajectory = [record(0, 0, current, value, processed)]
    if cfg.max_restarts == 0 or cfg.max_steps_per_restart == 0:
        return TuneResult(current, value, trajectory)

    for restart in range(cfg.max_restarts):
        rtol = cfg.rtol(restart)
        tol = cfg.tolerance(restart)

        def f(vector: Array) -> float:
            return objective(LogParams.from_vector(vector), X, y, family, rtol, cfg, mean)[0]

        # 許容誤差が変わると推定値も変わるため、リスタートの開始点で評価し直す
        value, processed = objective(current, X, y, family, rtol, cfg, mean)
        for step in range(1, cfg.max_steps_per_restart + 1):
            if over_budget():
                logger.info("Time budget exhausted at restart %d, step %d", restart, step)
                return TuneResult(current, value, trajectory, budget_exhausted=True)
            x = current.as_vector()
            grad = finite_difference_gradient(f, x, cfg.fd_step, mask)
            sq_norm = float(grad @ grad)
            if not math.isfinite(sq_norm) or sq_norm == 0.0:
                logger.info("Restart %d: gradient is degenerate, ending restart", restart)
                break

            accepted = None
            size = cfg.initial_step
            for _ in range(cfg.max_backtracks):
                candidate = x - size * grad
                if np.all(np.isfinite(candidate)):
                    candidate_params = LogParams.from_vector(candidate)
                    new_value, new_processed = objective(candidate_params, X, y, family, rtol, cfg, mean)
                    if new_value <= value - _ARMIJO * size * sq_norm:
                        accepted = (candidate_params, new_value, new_processed)
                        break
                size *= 0.5
            if accepted is None:
                logger.info("Restart %d, step %d: line search found no decrease", restart, step)
                break

            previous = value
            current, value, processed = accepted
            trajectory.append(record(restart, step, current, value, processed))
            logger.debug("Restart %d, step %d: objective %.6g (M=%d)", restart, step, value, processed)
            if abs(previous - value) <= tol * max(abs(previous), abs(value), 1.0):
                break
        logger.info("Restart %d finished with objective %.6g at %s", restart, value, current.as_vector().tolist())

    return TuneResult(current, value, trajectory)

