# adaptive_cholesky_gp/cli/experiments.py
"""
CLI Layer (実験ランナー)

境界の掃引、対数周辺尤度曲線、学習と予測、ハイパーパラメータ調整、オーバーヘッド計測の
各実験を実行し、ExperimentRecord の列として返します。乱数は全て明示的なシードから生成します。
"""
import logging
import math
import time
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence

import numpy as np

from adaptive_cholesky_gp.bounds.estimators import evaluate_bounds
from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array, KernelFamily
from adaptive_cholesky_gp.core.engine import AdaptiveCholesky
from adaptive_cholesky_gp.exact.oracle import ExactModel, exact_lml
from adaptive_cholesky_gp.hyperopt.tuner import LogParams, TuneConfig, tune
from adaptive_cholesky_gp.kernels.mean import MeanModel, ZeroMean
from adaptive_cholesky_gp.kernels.noise import HomoskedasticNoise, NoiseModel
from adaptive_cholesky_gp.kernels.source import CovarianceSource
from adaptive_cholesky_gp.kernels.spec import KernelSpec
from adaptive_cholesky_gp.loader.dataset import Dataset
from adaptive_cholesky_gp.loader.synthetic import gen_synthetic
from adaptive_cholesky_gp.runner.acgp import StopConfig, acgp_run, lml_curve, predict
from .records import ExperimentRecord

logger = logging.getLogger(__name__)

SWEEP_LOG_LENGTHSCALES = (-1.0, 0.0, 1.0, 2.0, 3.0)
SWEEP_FAMILIES = (KernelFamily.SQUARED_EXPONENTIAL, KernelFamily.ORNSTEIN_UHLENBECK)


# @intent:responsibility 対数周辺尤度曲線の1設定。
@dataclass(frozen=True)
class CurveSetting:
    family: KernelFamily
    log_lengthscale: float
    log_amplitude: float
    sigma2: float


# @intent:responsibility 処理上限が因子バッファの上限を超えないことを確認します。
def check_memory_cap(n: int, cap: Optional[int]) -> None:
    if cap is None:
        return
    if n > cap:
        raise InputError(f"{n} points need a {n}x{n} factor buffer, beyond the memory cap of {cap} points.")
    if n > 0.9 * cap:
        logger.warning("Factor buffer of %d points is close to the memory cap of %d", n, cap)


def _clock(timing: bool):
    return time.perf_counter if timing else (lambda: 0.0)


def _maybe(value: float, timing: bool) -> Optional[float]:
    return value if timing else None


def _rmse(pred: Array, target: Array) -> Optional[float]:
    if target.shape[0] == 0:
        return None
    return float(np.sqrt(np.mean((pred - target) ** 2)))


def _shuffled(dataset: Dataset, seed: int) -> Dataset:
    order = np.random.default_rng(seed).permutation(dataset.size)
    return dataset.permuted(order, seed)


# @intent:responsibility カーネル族と長さスケールの格子について、停止なしの実行の全ブロックの境界を記録します。
# @intent:rationale 最終行は s = N の崩壊ケースで、境界が厳密値と一致します。
def run_bound_sweep(dataset: Dataset, families: Sequence[KernelFamily] = SWEEP_FAMILIES,
                    log_lengthscales: Sequence[float] = SWEEP_LOG_LENGTHSCALES, sigma2: float = 1e-3,
                    log_amplitude: float = 0.0, block_size: int = 256, seeds: Sequence[int] = (0,),
                    max_n: Optional[int] = None, stop: Optional[StopConfig] = None, memory_cap: Optional[int] = None,
                    timing: bool = True) -> List[ExperimentRecord]:
    """
    シードごとにデータを並べ替え、先頭 max_n 点を対象データとして扱います。
    厳密な D と Q は対象データ全体の1回の分解から求めます。
    """
    limit = dataset.size if max_n is None else min(max_n, dataset.size)
    check_memory_cap(limit, memory_cap)
    cfg = replace(stop or StopConfig(), rtol=0.0, block_size=block_size, max_n=None)
    noise = HomoskedasticNoise(sigma2)
    records: List[ExperimentRecord] = []
    for family in families:
        for log_ell in log_lengthscales:
            kernel = KernelSpec(family, log_ell, log_amplitude)
            for seed in seeds:
                data = _shuffled(dataset, seed)
                X, y = data.X[:limit], data.y[:limit]
                exact = ExactModel(kernel, noise, X, y)
                result = acgp_run(kernel, ZeroMean(), noise, X, y, cfg)
                for entry in result.trace:
                    report = entry.report
                    records.append(ExperimentRecord(
                        experiment="bound-sweep", dataset=dataset.name, kernel=family.value,
                        log_lengthscale=log_ell, log_amplitude=log_amplitude, sigma2=sigma2, seed=seed,
                        block_size=block_size, s=entry.s, t=entry.t, processed=entry.s,
                        elapsed=_maybe(entry.elapsed, timing),
                        logdet_lower=report.logdet_lower, logdet_upper=report.logdet_upper,
                        quad_lower=report.quad_lower, quad_upper=report.quad_upper,
                        quad_upper_alt=report.quad_upper_alt,
                        exact_logdet=exact.logdet, exact_quad=exact.quad,
                        lml_lower=report.lml_lower, lml_upper=report.lml_upper,
                        exact_lml=exact_lml(exact),
                    ))
                logger.info("Swept %s log_lengthscale=%g seed=%d: %d blocks", family.value, log_ell, seed,
                            len(result.trace))
    return records


# @intent:responsibility 各設定について部分的な対数周辺尤度 log p(y[:n]) の曲線を記録します。
def run_lml_curve(dataset: Dataset, settings: Iterable[CurveSetting],
                  memory_cap: Optional[int] = None) -> List[ExperimentRecord]:
    check_memory_cap(dataset.size, memory_cap)
    records: List[ExperimentRecord] = []
    for setting in settings:
        kernel = KernelSpec(setting.family, setting.log_lengthscale, setting.log_amplitude)
        curve = lml_curve(kernel, ZeroMean(), HomoskedasticNoise(setting.sigma2), dataset.X, dataset.y)
        for n, value in enumerate(curve, 1):
            records.append(ExperimentRecord(
                experiment="lml-curve", dataset=dataset.name, kernel=setting.family.value,
                log_lengthscale=setting.log_lengthscale, log_amplitude=setting.log_amplitude,
                sigma2=setting.sigma2, processed=n, estimate=float(value),
            ))
    return records


# @intent:responsibility 学習用データで適応的Cholesky を実行し、推定値・停止位置・テストRMSEを記録します。
def run_fit(train: Dataset, test: Dataset, kernel: KernelSpec, noise: NoiseModel, cfg: StopConfig,
            mean: Optional[MeanModel] = None, exact: bool = False, seed: Optional[int] = None,
            memory_cap: Optional[int] = None, timing: bool = True) -> ExperimentRecord:
    mean = mean or ZeroMean()
    check_memory_cap(cfg.limit(train.size), memory_cap)
    started = time.perf_counter()
    result = acgp_run(kernel, mean, noise, train.X, train.y, cfg)
    elapsed = time.perf_counter() - started
    pred, _ = predict(result, kernel, noise, train.X, train.y, test.X, mean)
    lower, upper = result.bounds_at_stop or (None, None)
    record = ExperimentRecord(
        experiment="fit", dataset=train.name, kernel=kernel.family.value,
        log_lengthscale=kernel.log_lengthscale, log_amplitude=kernel.log_amplitude,
        sigma2=getattr(noise, "sigma2", None), seed=seed, block_size=cfg.block_size,
        processed=result.processed, elapsed=_maybe(elapsed, timing),
        lml_lower=lower, lml_upper=upper, estimate=result.estimate,
        rmse=_rmse(pred, test.y), stopped=int(result.stopped),
    )
    if exact:
        model = ExactModel(kernel, noise, train.X, train.y, mean)
        exact_pred, _ = model.predict(test.X)
        record.exact_lml = exact_lml(model)
        record.exact_logdet = model.logdet
        record.exact_quad = model.quad
        record.exact_rmse = _rmse(exact_pred, test.y)
    logger.info("Fit on %s: M=%d of %d, estimate %.6g", train.name, result.processed, train.size, result.estimate)
    return record


# @intent:responsibility ハイパーパラメータ調整の軌跡を1点1行で記録します。
def run_tune(train: Dataset, init: LogParams, family: KernelFamily, cfg: TuneConfig,
             mean: Optional[MeanModel] = None, memory_cap: Optional[int] = None,
             timing: bool = True) -> List[ExperimentRecord]:
    check_memory_cap(train.size, memory_cap)
    result = tune(train.X, train.y, init, family, cfg, mean, clock=_clock(timing))
    if result.budget_exhausted:
        logger.warning("Tuning stopped on the time budget after %d accepted steps", len(result.trajectory) - 1)
    records = []
    for point in result.trajectory:
        records.append(ExperimentRecord(
            experiment="tune", dataset=train.name, kernel=family.value,
            log_lengthscale=point.params.log_lengthscale, log_amplitude=point.params.log_amplitude,
            sigma2=math.exp(point.params.log_noise), block_size=cfg.block_size,
            processed=point.processed, elapsed=_maybe(point.elapsed, timing),
            exact_lml=point.exact_lml, restart=point.restart, step=point.step, objective=point.objective,
        ))
    return records


# @intent:responsibility ブロックごとに境界評価の時間とブロック分解の時間を計測します。
# @intent:rationale 分解の時間はパネルの三角ソルブとダウンデートを含み、境界評価はその間に挟まれます。
def run_benchmark(n: int, block_sizes: Sequence[int], seed: int = 0,
                  family: KernelFamily = KernelFamily.MATERN52, sigma2: float = 0.1,
                  memory_cap: Optional[int] = None) -> List[ExperimentRecord]:
    check_memory_cap(n, memory_cap)
    data = gen_synthetic("iid", n, seed)
    kernel = KernelSpec(family)
    noise = HomoskedasticNoise(sigma2)
    records: List[ExperimentRecord] = []
    for m in block_sizes:
        if m < 2 or m > n:
            raise InputError(f"Benchmark block size must lie in [2, {n}], got {m}.")
        engine = AdaptiveCholesky(CovarianceSource(kernel, noise, data.X), ZeroMean(), data.y, capacity=n)
        engine.step(m)
        while engine.buffer.s < n:
            s = engine.buffer.s
            t = min(s + m, n)
            started = time.perf_counter()
            snapshot = engine.downdate(t)
            downdated = time.perf_counter()
            if t - s >= 2:
                evaluate_bounds(snapshot)
            evaluated = time.perf_counter()
            engine.commit()
            committed = time.perf_counter()
            records.append(ExperimentRecord(
                experiment="bench", dataset=data.name, kernel=family.value, sigma2=sigma2, seed=seed,
                block_size=m, s=s, t=t,
                bound_seconds=evaluated - downdated,
                factor_seconds=(downdated - started) + (committed - evaluated),
            ))
        logger.info("Benchmarked block size %d on N=%d", m, n)
    return records


# @intent:responsibility ベンチマーク結果から、ブロックサイズごとの (境界評価時間, 分解時間) の合計を返します。
def summarize_benchmark(records: Iterable[ExperimentRecord]) -> dict:
    totals: dict = {}
    for record in records:
        bound, factor = totals.get(record.block_size, (0.0, 0.0))
        totals[record.block_size] = (bound + record.bound_seconds, factor + record.factor_seconds)
    return totals
