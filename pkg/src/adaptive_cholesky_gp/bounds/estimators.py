# adaptive_cholesky_gp/bounds/estimators.py
"""
Bounds Layer (境界と停止判定)

ダウンデート済みブロックのスナップショットから、対数行列式と二次形式の
上下界、停止判定、対数周辺尤度の推定量を計算します。計算量はブロックサイズに対して線形です。
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from adaptive_cholesky_gp.bounds.inequalities import little_gauss
from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError
from adaptive_cholesky_gp.common.types import Array, CorrelationMode, UpperQuadMode
from adaptive_cholesky_gp.core.snapshot import BlockSnapshot, BoundsReport

logger = logging.getLogger(__name__)

_LOG_2PI = math.log(2.0 * math.pi)


# @intent:responsibility 相関の推定に使う副対角のインデックスを返します。
def _pair_indices(m: int, mode: CorrelationMode) -> Array:
    if mode is CorrelationMode.ALTERNATE_PAIRS:
        return np.arange(0, m - 1, 2)
    return np.arange(m - 1)


# @intent:responsibility 推定した減少が決定的な床を横切るステップ ψ を [s, N] に切り詰めて返します。
# @intent:rationale slope が 0 なら減少しないので ψ = N です。
def _cutoff(s: int, n_total: int, offset: float, headroom: float, slope: float) -> int:
    if slope <= 0.0:
        return n_total
    value = offset + headroom / slope
    if not math.isfinite(value) or value >= n_total:
        return n_total
    return int(min(max(math.floor(value), s), n_total))


# @intent:responsibility 対数行列式と二次形式の境界を対数周辺尤度のスケールへ変換します。
# @intent:rationale 尤度の上界は二つの項の下界から、下界は上界から得られるため符号が入れ替わります。
def lml_scale(logdet_lower: float, logdet_upper: float, quad_lower: float, quad_upper: float,
              n: int) -> Tuple[float, float]:
    const = 0.5 * n * _LOG_2PI
    lower = -0.5 * logdet_upper - 0.5 * quad_upper - const
    upper = -0.5 * logdet_lower - 0.5 * quad_lower - const
    return lower, upper


def _collapsed_report(snapshot: BlockSnapshot) -> BoundsReport:
    d, q = snapshot.logdet, snapshot.quad
    lower, upper = lml_scale(d, d, q, q, snapshot.n_total)
    return BoundsReport(
        n_total=snapshot.n_total, s=snapshot.s, t=snapshot.t,
        logdet_lower=d, logdet_upper=d, quad_lower=q, quad_upper=q,
        lml_lower=lower, lml_upper=upper, quad_upper_alt=q,
        psi_d=snapshot.n_total, psi_q=snapshot.n_total,
    )


# @intent:responsibility 二次形式の下界に使う (平均二乗誤差, 曲率 μ'_Q + (N − s − 1)ρ_Q, ρ_Q) を返します。
def _quad_lower_statistics(snapshot: BlockSnapshot, pairs: Array) -> Tuple[float, float, float]:
    e, V, C = snapshot.residuals, snapshot.variances, snapshot.covariances
    mean_sq = float(np.mean(e * e))
    weighted_sq = float(np.mean(e * e * V))
    rho_q = float(np.mean(e[pairs] * e[pairs + 1] * C[pairs]))
    curvature = weighted_sq + (snapshot.n_total - snapshot.s - 1) * rho_q
    return mean_sq, curvature, rho_q


# @intent:responsibility 較正形の上界の相関増分 (N − s − 1)/m · Σ_j (Ce)_j² / (V_j σ⁴(x_j)) を返します。
# @intent:rationale C は副対角だけを持つ対称な三重対角行列です。相関の取り方に含まれない副対角は 0 とします。
def _calibration_increase(snapshot: BlockSnapshot, pairs: Array) -> float:
    e, V, noise = snapshot.residuals, snapshot.variances, snapshot.noise
    C = np.zeros_like(snapshot.covariances)
    C[pairs] = snapshot.covariances[pairs]
    Ce = np.zeros_like(e)
    Ce[:-1] += C * e[1:]
    Ce[1:] += C * e[:-1]
    remaining_after = snapshot.n_total - snapshot.s - 1
    return remaining_after * float(np.mean(Ce * Ce / (V * noise * noise)))


def _optimal_alpha(mean_sq: float, curvature: float, s: int) -> float:
    if curvature > 0.0:
        return mean_sq / curvature
    logger.debug("Nonpositive curvature %.3e at s=%d; quadratic lower bound falls back to Q", curvature, s)
    return 0.0


# @intent:responsibility 現在のブロックの統計量から、二次形式の下界を最大にする α を返します。
# @intent:rationale 次のブロックでこの値を使えば、α は処理済みの点だけに依存します。
def optimal_alpha(snapshot: BlockSnapshot,
                  correlation_mode: CorrelationMode = CorrelationMode.ALL_PAIRS) -> float:
    if snapshot.block_size < 2:
        raise InputError(f"Bounds need at least two points in the block, got {snapshot.block_size}.")
    mean_sq, curvature, _ = _quad_lower_statistics(snapshot, _pair_indices(snapshot.block_size, correlation_mode))
    return _optimal_alpha(mean_sq, curvature, snapshot.s)


# @intent:responsibility スナップショットから4つの境界と中間統計量を計算します。
# @intent:pre-condition ブロックは2点以上（s = N の崩壊ケースを除く）。
def evaluate_bounds(snapshot: BlockSnapshot, *, alpha: Optional[float] = None,
                    uq_mode: UpperQuadMode = UpperQuadMode.CUTOFF_TAIL,
                    correlation_mode: CorrelationMode = CorrelationMode.ALL_PAIRS) -> BoundsReport:
    """
    alpha を与えた場合、二次形式の下界はその値を使います（前ブロック由来の α など）。
    与えない場合は現在のブロックから最適な α を計算します。
    """
    n_total, s = snapshot.n_total, snapshot.s
    if s == n_total:
        return _collapsed_report(snapshot)

    m = snapshot.block_size
    if m < 2:
        raise InputError(f"Bounds need at least two points in the block, got {m}.")
    V = snapshot.variances
    bad = np.flatnonzero(V <= 0.0)
    if bad.size:
        raise NotPositiveDefiniteError(s + int(bad[0]), f"Downdated block has a nonpositive variance at index {s + int(bad[0])}.")

    C, e, noise = snapshot.covariances, snapshot.residuals, snapshot.noise
    D, Q = snapshot.logdet, snapshot.quad
    remaining = n_total - s
    log_floor = math.log(snapshot.noise_floor)
    pairs = _pair_indices(m, correlation_mode)
    noise_pair = noise[pairs] * noise[pairs + 1]
    e2 = e * e

    # 対数行列式
    mu_d = float(np.mean(np.log(V)))
    rho_d = float(np.mean(C[pairs] ** 2 / noise_pair))
    psi_d = _cutoff(s, n_total, s - 1.0, 2.0 * (mu_d - log_floor), rho_d)
    logdet_upper = D + remaining * mu_d
    logdet_lower = D + (psi_d - s) * mu_d - little_gauss(psi_d, s, s) * rho_d + (n_total - psi_d) * log_floor

    # 二次形式の上界
    mu_q = float(np.mean(e2 / V))
    rho_q_upper = float(np.mean(e2[pairs] * C[pairs] ** 2 / (V[pairs] * noise_pair)))
    tail_q = float(np.mean(e2 / noise))
    # 平均 μ_Q + (ψ − s − 1)/2 · ρ が末尾項に達するステップ。ψ_D と同じ形
    psi_q = _cutoff(s, n_total, s - 1.0, 2.0 * (tail_q - mu_q), rho_q_upper)
    upper_cutoff = Q + (psi_q - s) * mu_q + little_gauss(psi_q, s, s) * rho_q_upper + (n_total - psi_q) * tail_q
    rho_q_calibrated = _calibration_increase(snapshot, pairs)
    upper_calibrated = Q + remaining * (mu_q + rho_q_calibrated)
    if uq_mode is UpperQuadMode.CALIBRATED:
        quad_upper, quad_upper_alt = upper_calibrated, upper_cutoff
    else:
        quad_upper, quad_upper_alt = upper_cutoff, upper_calibrated

    # 二次形式の下界
    mean_sq, curvature, rho_q = _quad_lower_statistics(snapshot, pairs)
    if alpha is None:
        alpha = _optimal_alpha(mean_sq, curvature, s)
    quad_lower = Q + alpha * remaining * (2.0 * mean_sq - alpha * curvature)

    lower, upper = lml_scale(logdet_lower, logdet_upper, quad_lower, quad_upper, n_total)
    return BoundsReport(
        n_total=n_total, s=s, t=snapshot.t,
        logdet_lower=logdet_lower, logdet_upper=logdet_upper,
        quad_lower=quad_lower, quad_upper=quad_upper,
        lml_lower=lower, lml_upper=upper, quad_upper_alt=quad_upper_alt,
        mu_d=mu_d, rho_d=rho_d, psi_d=psi_d,
        mu_q=mu_q, rho_q=rho_q, rho_q_upper=rho_q_upper, rho_q_calibrated=rho_q_calibrated,
        tail_q=tail_q, psi_q=psi_q,
        alpha=float(alpha),
    )


# @intent:responsibility 尤度スケールの境界 (lower, upper) が相対誤差 r の停止条件を満たすか判定します。
def stop_condition(lower: float, upper: float, r: float) -> bool:
    if r < 0.0:
        raise InputError(f"Relative error target must be nonnegative, got {r}.")
    if upper < lower or lower == 0.0 or upper == 0.0 or (lower > 0.0) != (upper > 0.0):
        return False
    return (upper - lower) / (2.0 * min(abs(upper), abs(lower))) < r


# @intent:responsibility レポートの結合境界について停止条件を判定します。
def check_stop(report: BoundsReport, r: float) -> bool:
    return stop_condition(report.lml_lower, report.lml_upper, r)


def midpoint_estimator(lower: float, upper: float) -> float:
    return 0.5 * (lower + upper)


# @intent:responsibility 処理済み τ 点の対数周辺尤度を N/τ 倍に線形外挿します。
def extrapolation_estimator(lml_processed: float, tau: int, n: int) -> float:
    if tau < 1:
        raise InputError(f"Extrapolation needs at least one processed point, got {tau}.")
    return n / tau * lml_processed


# @intent:responsibility 処理済み部分の D, Q から log p(y[:n]) を計算します。
def processed_lml(logdet: float, quad: float, n: int) -> float:
    return -0.5 * logdet - 0.5 * quad - 0.5 * n * _LOG_2PI
