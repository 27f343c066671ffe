"""
観測ノイズモデル。

ノイズ分散 σ²(x) は常に正の下限 σ²_min を持ちます。下限は境界計算の決定的な床として使われます。
"""
from abc import ABC, abstractmethod
from typing import Callable

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array


# @intent:responsibility ノイズモデルの共通インターフェース。
class NoiseModel(ABC):
    # @intent:responsibility 入力ごとのノイズ分散を返します。
    @abstractmethod
    def variance(self, X: Array) -> Array:
        pass

    # @intent:responsibility ノイズ分散の下限 σ²_min を返します。
    @property
    @abstractmethod
    def floor(self) -> float:
        pass


class HomoskedasticNoise(NoiseModel):
    """
    全入力で一定のノイズ分散 σ² を持つモデル。下限は σ² 自身です。
    """
    def __init__(self, sigma2: float):
        if not np.isfinite(sigma2) or sigma2 <= 0.0:
            raise InputError(f"Noise variance must be positive and finite, got {sigma2}.")
        self._sigma2 = float(sigma2)

    @property
    def sigma2(self) -> float:
        return self._sigma2

    @property
    def floor(self) -> float:
        return self._sigma2

    def variance(self, X: Array) -> Array:
        return np.full(X.shape[0], self._sigma2)

    def __repr__(self) -> str:
        return f"HomoskedasticNoise(sigma2={self._sigma2!r})"


class HeteroskedasticNoise(NoiseModel):
    """
    入力依存のノイズ分散 x ↦ σ²(x) を持つモデル。下限 σ²_min は呼び出し側が宣言します。
    """
    # @intent:pre-condition func は (n, p) の入力に対し長さ n の分散ベクトルを返す関数です。
    def __init__(self, func: Callable[[Array], Array], floor: float):
        if not np.isfinite(floor) or floor <= 0.0:
            raise InputError(f"Declared noise floor must be positive and finite, got {floor}.")
        self._func = func
        self._floor = float(floor)

    @property
    def floor(self) -> float:
        return self._floor

    # @intent:responsibility 分散を評価し、宣言された下限を下回る値があれば拒否します。
    def variance(self, X: Array) -> Array:
        values = np.asarray(self._func(X), dtype=float).reshape(-1)
        if values.shape[0] != X.shape[0]:
            raise InputError(
                f"Noise function returned {values.shape[0]} values for {X.shape[0]} inputs."
            )
        if values.size and values.min() < self._floor:
            raise InputError(
                f"Noise variance {values.min()!r} falls below the declared floor {self._floor!r}."
            )
        return values
