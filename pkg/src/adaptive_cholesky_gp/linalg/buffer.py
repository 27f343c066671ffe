# adaptive_cholesky_gp/linalg/buffer.py
"""
事前確保された因子バッファ。

Cholesky分解の作業領域 A (maxN × maxN) と解ベクトル α を一度だけ確保し、
以降は全ての更新をこの領域内で行います。
"""
import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array


# @intent:responsibility Cholesky因子の作業領域と処理済みカウンタ s, t を保持します。
# @intent:rationale 行 s..t の列 :s には T = K[s:t, :s] L⁻ᵀ が、列 s..t にはダウンデート済みブロックが入ります。
class FactorBuffer:
    """
    下三角が意味を持つ正方バッファ A と解ベクトル α。
    不変条件: 0 ≤ s ≤ t ≤ capacity、A[:s, :s] は K[:s, :s] のCholesky因子。
    """
    # @intent:pre-condition capacity は正の整数である必要があります。
    def __init__(self, capacity: int):
        if not isinstance(capacity, (int, np.integer)) or capacity <= 0:
            raise InputError("Buffer capacity must be a positive integer.")
        self._capacity = int(capacity)
        self.A = np.zeros((self._capacity, self._capacity))
        self.alpha = np.zeros(self._capacity)
        self.s = 0
        self.t = 0

    @property
    def capacity(self) -> int:
        return self._capacity

    # @intent:responsibility 完全に分解済みの因子 L = A[:s, :s] のビューを返します。
    @property
    def factor(self) -> Array:
        return self.A[:self.s, :self.s]

    @property
    def solved(self) -> Array:
        return self.alpha[:self.s]

    # @intent:responsibility 行 s..t の非対角部分 A[s:t, :s] のビューを返します。
    @property
    def panel(self) -> Array:
        return self.A[self.s:self.t, :self.s]

    # @intent:responsibility 保留中の対角ブロック A[s:t, s:t] のビューを返します。
    @property
    def pending(self) -> Array:
        return self.A[self.s:self.t, self.s:self.t]

    @property
    def pending_alpha(self) -> Array:
        return self.alpha[self.s:self.t]

    # @intent:responsibility 保留中の行を t まで広げます。
    def extend(self, t: int) -> None:
        if not self.s <= self.t <= t <= self._capacity:
            raise InputError(f"Cannot extend pending rows to {t} (s={self.s}, t={self.t}, capacity={self._capacity}).")
        self.t = t

    # @intent:responsibility 保留中の行を分解済みとして確定します (s ← t)。
    def commit(self) -> None:
        self.s = self.t

    # @intent:responsibility 処理済み部分の因子と解ベクトルをコピーして返します。
    def export(self):
        return self.factor.copy(), self.solved.copy()
