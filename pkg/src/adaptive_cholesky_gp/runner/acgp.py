# adaptive_cholesky_gp/runner/acgp.py
"""
Runner Layer (適応的Cholesky GP)

ブロック化Cholesky分解をブロックごとに進め、各ブロックの分解前に境界を評価し、
停止条件を満たした時点で推定値を返します。停止後は処理済みの部分集合で予測を行います。
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from adaptive_cholesky_gp.bounds.estimators import (check_stop, evaluate_bounds, extrapolation_estimator,
                                                    midpoint_estimator, optimal_alpha, processed_lml)
from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import AlphaMode, Array, CorrelationMode, EstimatorMode, UpperQuadMode
from adaptive_cholesky_gp.core.engine import AdaptiveCholesky
from adaptive_cholesky_gp.core.snapshot import BoundsReport
from adaptive_cholesky_gp.kernels.base import as_inputs
from adaptive_cholesky_gp.kernels.mean import MeanModel, ZeroMean
from adaptive_cholesky_gp.kernels.noise import NoiseModel
from adaptive_cholesky_gp.kernels.source import CovarianceSource
from adaptive_cholesky_gp.kernels.spec import KernelSpec, kernel_block
from adaptive_cholesky_gp.linalg.dense import chol_in_place, forward_solve

logger = logging.getLogger(__name__)


# @intent:responsibility 停止条件とブロック処理の設定を不変に保持します。
@dataclass(frozen=True)
class StopConfig:
    """
    rtol = 0 は到達不能な目標であり、停止判定を無効にして厳密な分解を行います。
    max_n が None の場合はデータセット全体が上限です。
    """
    rtol: float = 0.1
    block_size: int = 256
    max_n: Optional[int] = None
    estimator: EstimatorMode = EstimatorMode.MIDPOINT
    alpha_mode: AlphaMode = AlphaMode.CURRENT_BLOCK
    uq_mode: UpperQuadMode = UpperQuadMode.CUTOFF_TAIL
    correlation_mode: CorrelationMode = CorrelationMode.ALL_PAIRS
    jitter: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.rtol) or self.rtol < 0.0:
            raise InputError(f"Relative error target must be finite and nonnegative, got {self.rtol}.")
        if self.block_size < 2 or self.block_size % 2:
            raise InputError(f"Block size must be an even count of at least 2, got {self.block_size}.")
        if self.max_n is not None and self.max_n < 1:
            raise InputError(f"max_n must be positive, got {self.max_n}.")

    # @intent:responsibility データセットの大きさ N に対する実効的な処理上限を返します。
    def limit(self, n_total: int) -> int:
        return n_total if self.max_n is None else min(self.max_n, n_total)


# @intent:responsibility トレースの1行（ブロック境界、境界レポート、経過秒数）。
@dataclass(frozen=True)
class TraceEntry:
    s: int
    t: int
    report: BoundsReport
    elapsed: float


# @intent:responsibility 1回の実行結果。因子と α は処理済みの M 点分のコピーです。
@dataclass
class AcgpResult:
    estimate: float
    stopped: bool
    processed: int
    n_total: int
    factor: Array
    alpha: Array
    logdet: float
    quad: float
    trace: List[TraceEntry] = field(default_factory=list)
    bounds_at_stop: Optional[Tuple[float, float]] = None
    mean: MeanModel = field(default_factory=ZeroMean)

    # @intent:responsibility 処理済み部分の対数周辺尤度 log p(y[:M]) を返します。
    @property
    def processed_lml(self) -> float:
        return processed_lml(self.logdet, self.quad, self.processed)

    # @intent:responsibility 1点も処理していない結果を返します。予測は事前分布になります。
    @classmethod
    def empty(cls, n_total: int) -> "AcgpResult":
        return cls(estimate=float("nan"), stopped=False, processed=0, n_total=n_total,
                   factor=np.zeros((0, 0)), alpha=np.zeros(0), logdet=0.0, quad=0.0)


def _estimate(cfg: StopConfig, report: BoundsReport, logdet: float, quad: float, tau: int, n_total: int) -> float:
    if cfg.estimator is EstimatorMode.EXTRAPOLATION:
        return extrapolation_estimator(processed_lml(logdet, quad, tau), tau, n_total)
    return midpoint_estimator(report.lml_lower, report.lml_upper)


# @intent:responsibility 適応的Cholesky分解を実行し、停止または上限到達で結果を返します。
# @intent:pre-condition X の行数と y の長さが一致していること。
def acgp_run(kernel: KernelSpec, mean: MeanModel, noise: NoiseModel, X, y, cfg: StopConfig,
             source: Optional[CovarianceSource] = None) -> AcgpResult:
    """
    カーネル要素は最後に処理したブロックまでしか評価しません。
    source を渡すと、そのソース経由でカーネルを評価します（アクセス記録用など）。
    """
    X = as_inputs(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.shape[0] != y.shape[0]:
        raise InputError(f"Inputs have {X.shape[0]} rows but targets have {y.shape[0]} entries.")
    n_total = X.shape[0]
    if n_total == 0:
        raise InputError("Cannot run on an empty dataset.")
    if source is None:
        source = CovarianceSource(kernel, noise, X)
    elif source.size != n_total:
        raise InputError(f"Covariance source covers {source.size} points, dataset has {n_total}.")

    limit = cfg.limit(n_total)
    engine = AdaptiveCholesky(source, mean, y, capacity=limit, jitter=cfg.jitter)
    started = time.perf_counter()
    trace: List[TraceEntry] = []
    previous_alpha: Optional[float] = None

    engine.step(min(cfg.block_size, limit))
    while engine.buffer.s < limit:
        s = engine.buffer.s
        t = min(s + cfg.block_size, limit)
        snapshot = engine.downdate(t)
        if t - s >= 2:
            alpha = None
            if cfg.alpha_mode is AlphaMode.PREVIOUS_BLOCK:
                # 最初の評価ブロックでは α = 0、すなわち下界は Q そのもの
                alpha = 0.0 if previous_alpha is None else previous_alpha
                previous_alpha = optimal_alpha(snapshot, cfg.correlation_mode)
            report = evaluate_bounds(snapshot, alpha=alpha, uq_mode=cfg.uq_mode,
                                     correlation_mode=cfg.correlation_mode)
            trace.append(TraceEntry(s, t, report, time.perf_counter() - started))
            if check_stop(report, cfg.rtol):
                state = engine.state
                estimate = _estimate(cfg, report, state.logdet, state.quad, s, n_total)
                logger.info("Stopped at s=%d of N=%d with bounds [%.6g, %.6g]", s, n_total,
                            report.lml_lower, report.lml_upper)
                factor, alpha_vec = engine.buffer.export()
                return AcgpResult(estimate=estimate, stopped=True, processed=s, n_total=n_total,
                                  factor=factor, alpha=alpha_vec, logdet=state.logdet, quad=state.quad,
                                  trace=trace, bounds_at_stop=(report.lml_lower, report.lml_upper), mean=mean)
        engine.commit()

    state = engine.state
    if limit == n_total:
        final = evaluate_bounds(engine.final_snapshot())
        trace.append(TraceEntry(n_total, n_total, final, time.perf_counter() - started))
        estimate = processed_lml(state.logdet, state.quad, n_total)
    else:
        estimate = extrapolation_estimator(processed_lml(state.logdet, state.quad, limit), limit, n_total)
    logger.info("Processed %d of %d points without stopping", limit, n_total)
    factor, alpha_vec = engine.buffer.export()
    return AcgpResult(estimate=estimate, stopped=False, processed=limit, n_total=n_total,
                      factor=factor, alpha=alpha_vec, logdet=state.logdet, quad=state.quad, trace=trace, mean=mean)


# @intent:responsibility 処理済みの M 点だけを使う部分集合予測器で、予測平均と予測分散を返します。
# @intent:rationale M = 0 の場合は事前分布（平均モデルと k(x, x) + σ²）を返します。
# @intent:rationale mean を省略すると、α の計算に使った実行時の平均モデルを使います。
def predict(result: AcgpResult, kernel: KernelSpec, noise: NoiseModel, X_train_prefix, y_prefix, X_star,
            mean: Optional[MeanModel] = None) -> Tuple[Array, Array]:
    mean = result.mean if mean is None else mean
    X_star = as_inputs(X_star)
    prior_mean = mean(X_star)
    prior_var = kernel.prior_variance(X_star) + noise.variance(X_star)
    M = result.processed
    if M == 0:
        return prior_mean, prior_var
    X_train_prefix = as_inputs(X_train_prefix)
    y_prefix = np.asarray(y_prefix, dtype=float).reshape(-1)
    if X_train_prefix.shape[0] < M or y_prefix.shape[0] < M:
        raise InputError(f"Training prefix has {X_train_prefix.shape[0]} inputs and {y_prefix.shape[0]} targets, "
                         f"but {M} points were processed.")
    W = solve_triangular(result.factor, kernel_block(kernel, X_train_prefix[:M], X_star), lower=True,
                         check_finite=False)
    post_mean = prior_mean + W.T @ result.alpha
    post_var = prior_var - np.einsum("ij,ij->j", W, W)
    return post_mean, post_var


# @intent:responsibility 1回の完全な分解から、部分的な対数周辺尤度 log p(y[:n]) の列 (n = 1..N) を計算します。
def lml_curve(kernel: KernelSpec, mean: MeanModel, noise: NoiseModel, X, y) -> Array:
    X = as_inputs(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.shape[0] == 0:
        raise InputError("The likelihood curve needs at least one point.")
    if X.shape[0] != y.shape[0]:
        raise InputError(f"Inputs have {X.shape[0]} rows but targets have {y.shape[0]} entries.")
    source = CovarianceSource(kernel, noise, X)
    L = source.diagonal((0, X.shape[0]))
    chol_in_place(L)
    alpha = forward_solve(L, y - mean(X))
    increments = -np.log(np.diagonal(L)) - 0.5 * alpha * alpha - 0.5 * math.log(2.0 * math.pi)
    return np.cumsum(increments)
