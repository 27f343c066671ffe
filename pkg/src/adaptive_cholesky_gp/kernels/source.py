"""
インデックス範囲によるカーネル行列の遅延評価。

ドライバは学習データ全体の行列を持たず、必要なブロックだけをこのソースから要求します。
"""
from typing import List, Tuple

import numpy as np

from adaptive_cholesky_gp.common.types import Array, IndexRange
from adaptive_cholesky_gp.kernels.base import as_inputs
from adaptive_cholesky_gp.kernels.noise import NoiseModel
from adaptive_cholesky_gp.kernels.spec import KernelSpec, kernel_block, regularized_diag_block


# @intent:responsibility 学習入力 X 上の正則化カーネル行列 K をブロック単位で評価します。
class CovarianceSource:
    def __init__(self, spec: KernelSpec, noise: NoiseModel, X):
        self.spec = spec
        self.noise = noise
        self.X = as_inputs(X)

    @property
    def size(self) -> int:
        return self.X.shape[0]

    # @intent:responsibility 非対角ブロック K[rows, cols] を返します（ノイズ項を含みません）。
    def cross(self, rows: IndexRange, cols: IndexRange) -> Array:
        return kernel_block(self.spec, self.X[rows[0]:rows[1]], self.X[cols[0]:cols[1]])

    # @intent:responsibility 対角ブロック K[rows, rows] + Diag(σ²) を返します。
    def diagonal(self, rows: IndexRange) -> Array:
        return regularized_diag_block(self.spec, self.noise, self.X[rows[0]:rows[1]])

    # @intent:responsibility 範囲内の点のノイズ分散を返します。
    def noise_variance(self, rows: IndexRange) -> Array:
        return self.noise.variance(self.X[rows[0]:rows[1]])


# @intent:responsibility 評価したブロックの範囲を全て記録するソース。アクセスが処理済みの点に限られることの検証に使います。
class RecordingSource(CovarianceSource):
    def __init__(self, spec: KernelSpec, noise: NoiseModel, X):
        super().__init__(spec, noise, X)
        self.accesses: List[Tuple[IndexRange, IndexRange]] = []

    def cross(self, rows: IndexRange, cols: IndexRange) -> Array:
        self.accesses.append((rows, cols))
        return super().cross(rows, cols)

    def diagonal(self, rows: IndexRange) -> Array:
        self.accesses.append((rows, rows))
        return super().diagonal(rows)

    def noise_variance(self, rows: IndexRange) -> Array:
        self.accesses.append((rows, rows))
        return super().noise_variance(rows)

    # @intent:responsibility 評価された最大の（排他的）インデックス境界を返します。
    def max_index(self) -> int:
        if not self.accesses:
            return 0
        return int(max(max(r[1], c[1]) for r, c in self.accesses))
