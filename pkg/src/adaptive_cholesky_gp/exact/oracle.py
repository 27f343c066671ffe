# adaptive_cholesky_gp/exact/oracle.py
"""
Exact Layer (厳密GP回帰)

密行列による厳密なGP回帰。受け入れテストの基準値と、境界が依存する恒等式の
総当たり検証に使います。ブロック化経路とは独立した非ブロックのCholesky（numpy）を使います。
"""
import math
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from adaptive_cholesky_gp.bounds.estimators import evaluate_bounds
from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError
from adaptive_cholesky_gp.common.types import Array, CorrelationMode, UpperQuadMode
from adaptive_cholesky_gp.core.snapshot import BlockSnapshot, BoundsReport
from adaptive_cholesky_gp.kernels.base import as_inputs
from adaptive_cholesky_gp.kernels.mean import MeanModel, ZeroMean
from adaptive_cholesky_gp.kernels.noise import NoiseModel
from adaptive_cholesky_gp.kernels.spec import KernelSpec, kernel_block

_LOG_2PI = math.log(2.0 * math.pi)


def _cholesky(K: Array) -> Array:
    try:
        return np.linalg.cholesky(K)
    except np.linalg.LinAlgError as exc:
        # numpy は失敗位置を返さないため、対角から推定できる最初の非正位置を載せる
        bad = np.flatnonzero(np.diagonal(K) <= 0.0)
        raise NotPositiveDefiniteError(int(bad[0]) if bad.size else -1) from exc


# @intent:responsibility 学習データ全体に対する厳密モデル。全体の因子 L と α = L⁻¹(y − μ) をキャッシュします。
class ExactModel:
    def __init__(self, kernel: KernelSpec, noise: NoiseModel, X, y, mean: Optional[MeanModel] = None):
        self.kernel = kernel
        self.noise = noise
        self.mean = mean or ZeroMean()
        self.X = as_inputs(X)
        self.y = np.asarray(y, dtype=float).reshape(-1)
        if self.X.shape[0] != self.y.shape[0]:
            raise InputError(f"Inputs have {self.X.shape[0]} rows but targets have {self.y.shape[0]} entries.")
        self.K = self.prefix_matrix(self.size)
        self.L = _cholesky(self.K)
        self.centered = self.y - self.mean(self.X)
        self.alpha = solve_triangular(self.L, self.centered, lower=True)

    @property
    def size(self) -> int:
        return self.X.shape[0]

    # @intent:responsibility 先頭 s 点の正則化カーネル行列 K[:s, :s] を返します。
    def prefix_matrix(self, s: int) -> Array:
        Xs = self.X[:s]
        K = kernel_block(self.kernel, Xs, Xs)
        K[np.diag_indices_from(K)] += self.noise.variance(Xs)
        return K

    @property
    def logdet(self) -> float:
        return float(2.0 * np.sum(np.log(np.diagonal(self.L))))

    @property
    def quad(self) -> float:
        return float(self.alpha @ self.alpha)

    # @intent:responsibility 先頭 s 点の log|K[:s,:s]| と二次形式を、その部分行列を直接分解して返します。
    def prefix_terms(self, s: int) -> Tuple[float, float]:
        if s == 0:
            return 0.0, 0.0
        L = _cholesky(self.prefix_matrix(s))
        a = solve_triangular(L, self.centered[:s], lower=True)
        return float(2.0 * np.sum(np.log(np.diagonal(L)))), float(a @ a)

    # @intent:responsibility 先頭 s 点で条件付けた事後平均 m*⁽ˢ⁾(X_rest) を返します。
    def posterior_mean(self, s: int, X_rest) -> Array:
        X_rest = as_inputs(X_rest)
        prior = self.mean(X_rest)
        if s == 0:
            return prior
        L = _cholesky(self.prefix_matrix(s))
        a = solve_triangular(L, self.centered[:s], lower=True)
        W = solve_triangular(L, kernel_block(self.kernel, self.X[:s], X_rest), lower=True)
        return prior + W.T @ a

    # @intent:responsibility 全学習点で条件付けた予測平均と予測分散（ノイズ込み）を返します。
    def predict(self, X_star) -> Tuple[Array, Array]:
        X_star = as_inputs(X_star)
        W = solve_triangular(self.L, kernel_block(self.kernel, self.X, X_star), lower=True)
        mean = self.mean(X_star) + W.T @ self.alpha
        var = self.kernel.prior_variance(X_star) + self.noise.variance(X_star) - np.einsum("ij,ij->j", W, W)
        return mean, var

    # @intent:responsibility 各点 n について、先行 n − 1 点で条件付けた予測分散と残差を返します。
    def sequential_conditionals(self) -> Tuple[Array, Array]:
        variances = np.empty(self.size)
        residuals = np.empty(self.size)
        for n in range(self.size):
            x = self.X[n:n + 1]
            variances[n] = posterior_cov(self, n, x)[0, 0] + self.noise.variance(x)[0]
            residuals[n] = self.y[n] - self.posterior_mean(n, x)[0]
        return variances, residuals


# @intent:responsibility 厳密な対数周辺尤度 −½log|K| − ½yᵀK⁻¹y − (N/2)log 2π を返します。
def exact_lml(model: ExactModel) -> float:
    return -0.5 * model.logdet - 0.5 * model.quad - 0.5 * model.size * _LOG_2PI


# @intent:responsibility 先頭 s 点で条件付けた事後共分散 Σ*⁽ˢ⁾(X_rest, X_rest) を直接の公式で返します（ノイズを含みません）。
# @intent:pre-condition 0 ≤ s ≤ N。s = 0 の場合は事前カーネルのブロックです。
def posterior_cov(model: ExactModel, s: int, X_rest) -> Array:
    if not 0 <= s <= model.size:
        raise InputError(f"Prefix size {s} is outside [0, {model.size}].")
    X_rest = as_inputs(X_rest)
    prior = kernel_block(model.kernel, X_rest, X_rest)
    if s == 0:
        return prior
    L = _cholesky(model.prefix_matrix(s))
    W = solve_triangular(L, kernel_block(model.kernel, model.X[:s], X_rest), lower=True)
    return prior - W.T @ W


# @intent:responsibility 定義どおりの事後量から V, C, e を組み立て、境界を計算します。
# @intent:rationale 停止したCholeskyの中間状態が定義上の量と一致することを確かめるための独立経路です。
def brute_force_snapshot(model: ExactModel, s: int, t: int) -> BlockSnapshot:
    n_total = model.size
    if s == n_total and t == n_total:
        return BlockSnapshot(n_total=n_total, s=s, t=t, logdet=model.logdet, quad=model.quad, noise_floor=model.noise.floor)
    if not 0 <= s < t <= n_total or t - s < 2:
        raise InputError(f"Brute-force bounds need 0 <= s < t <= N with t - s >= 2, got s={s}, t={t}.")
    X_block = model.X[s:t]
    sigma = posterior_cov(model, s, X_block)
    noise = model.noise.variance(X_block)
    d, q = model.prefix_terms(s)
    return BlockSnapshot(
        n_total=n_total, s=s, t=t, logdet=d, quad=q,
        variances=np.diagonal(sigma) + noise,
        covariances=np.diagonal(sigma, offset=-1),
        residuals=model.y[s:t] - model.posterior_mean(s, X_block),
        noise=noise,
        noise_floor=model.noise.floor,
    )


def brute_force_bounds(model: ExactModel, s: int, t: int, *, alpha: Optional[float] = None,
                       uq_mode: UpperQuadMode = UpperQuadMode.CUTOFF_TAIL,
                       correlation_mode: CorrelationMode = CorrelationMode.ALL_PAIRS) -> BoundsReport:
    return evaluate_bounds(brute_force_snapshot(model, s, t), alpha=alpha, uq_mode=uq_mode,
                           correlation_mode=correlation_mode)
