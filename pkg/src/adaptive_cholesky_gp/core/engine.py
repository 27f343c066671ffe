# adaptive_cholesky_gp/core/engine.py
"""
Core Layer (ブロック化Cholesky)

行方向のブロック化Cholesky分解と前進代入を、ブロックごとに
「三角ソルブ → ダウンデート」と「ブロック分解 → 前進代入」の2段階に分けて駆動します。
境界評価はこの2段階の間、すなわち分解ステップの前に差し込まれます。
"""
import logging

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError
from adaptive_cholesky_gp.common.types import Array
from adaptive_cholesky_gp.core.snapshot import BlockSnapshot
from adaptive_cholesky_gp.core.state import AdaptiveCholState
from adaptive_cholesky_gp.kernels.mean import MeanModel
from adaptive_cholesky_gp.kernels.source import CovarianceSource
from adaptive_cholesky_gp.linalg.buffer import FactorBuffer
from adaptive_cholesky_gp.linalg.dense import (chol_in_place, forward_solve, logdet_from_chol, quad_from_alpha,
                                               solve_right_transposed, symmetric_downdate)

logger = logging.getLogger(__name__)


# @intent:responsibility 一つの分解について因子バッファを排他的に所有し、ブロック単位で分解を進めます。
class AdaptiveCholesky:
    """
    K = K_ff + Diag(σ²) の分解を、必要なカーネル要素だけを評価しながら進めるエンジン。
    使い方: downdate(t) でスナップショットを得て、続けるなら commit() を呼びます。
    """
    # @intent:pre-condition y の長さは source の点数と一致し、capacity ≤ 点数です。
    def __init__(self, source: CovarianceSource, mean: MeanModel, y, capacity: int, jitter: float = 0.0):
        y = np.asarray(y, dtype=float).reshape(-1)
        if y.shape[0] != source.size:
            raise InputError(f"Targets have {y.shape[0]} entries but inputs have {source.size} rows.")
        if capacity > source.size:
            raise InputError(f"Capacity {capacity} exceeds the dataset size {source.size}.")
        if jitter < 0.0:
            raise InputError(f"Jitter must be nonnegative, got {jitter}.")
        self._source = source
        self._mean = mean
        self._y = y
        self._jitter = float(jitter)
        self._noise_block: Array = np.zeros(0)
        self.state = AdaptiveCholState(FactorBuffer(capacity))

    @property
    def n_total(self) -> int:
        return self._source.size

    @property
    def buffer(self) -> FactorBuffer:
        return self.state.buffer

    # @intent:responsibility 行 s..t について、非対角の三角ソルブ・対角ブロック評価・残差更新・ダウンデートを行います。
    # @intent:post-condition 保留ブロックは Σ*⁽ˢ⁾ + noise、保留中の α は e* = y − m*⁽ˢ⁾ を保持します。
    def downdate(self, t: int) -> BlockSnapshot:
        buf = self.buffer
        if buf.t != buf.s:
            raise InputError("The previous block must be committed before the next downdate.")
        s = buf.s
        buf.extend(t)
        rows = (s, t)

        panel = buf.panel
        if s > 0:
            panel[...] = self._source.cross(rows, (0, s))
            solve_right_transposed(panel, buf.factor)

        block = buf.pending
        block[...] = self._source.diagonal(rows)
        if self._jitter:
            block[np.diag_indices_from(block)] += self._jitter
        self._noise_block = self._source.noise_variance(rows)

        X_rows = self._source.X[s:t]
        resid = buf.pending_alpha
        resid[...] = self._y[s:t] - self._mean(X_rows)
        if s > 0:
            resid -= panel @ buf.solved
            symmetric_downdate(block, panel)

        snapshot = self.snapshot()
        logger.debug("Downdated rows %d..%d (block %d)", s, t, self.state.blocks)
        return snapshot

    # @intent:responsibility 現在の保留ブロックからスナップショットを作ります。
    def snapshot(self) -> BlockSnapshot:
        buf = self.buffer
        block = buf.pending
        return BlockSnapshot(
            n_total=self.n_total,
            s=buf.s,
            t=buf.t,
            logdet=self.state.logdet,
            quad=self.state.quad,
            variances=np.diagonal(block),
            covariances=np.diagonal(block, offset=-1),
            residuals=buf.pending_alpha,
            noise=self._noise_block,
            noise_floor=self._source.noise.floor,
        )

    # @intent:responsibility 保留ブロックを分解し、前進代入で α を確定し、D と Q を累積します。
    def commit(self) -> None:
        buf = self.buffer
        block = buf.pending
        try:
            chol_in_place(block)
        except NotPositiveDefiniteError as exc:
            raise NotPositiveDefiniteError(buf.s + exc.index) from exc
        solved = forward_solve(block, buf.pending_alpha)
        buf.pending_alpha[...] = solved
        self.state.logdet += logdet_from_chol(block)
        self.state.quad += quad_from_alpha(solved)
        self.state.blocks += 1
        buf.commit()

    # @intent:responsibility 1ブロック分を中断なしで進めます（停止判定を挟まない経路）。
    def step(self, t: int) -> BlockSnapshot:
        snapshot = self.downdate(t)
        self.commit()
        return snapshot

    # @intent:responsibility 全点処理後の崩壊ケース (s = N) のスナップショットを返します。
    def final_snapshot(self) -> BlockSnapshot:
        if self.buffer.s != self.n_total:
            raise InputError(f"Final snapshot requires all {self.n_total} points processed, got {self.buffer.s}.")
        return BlockSnapshot(
            n_total=self.n_total, s=self.n_total, t=self.n_total,
            logdet=self.state.logdet, quad=self.state.quad,
            noise_floor=self._source.noise.floor,
        )
