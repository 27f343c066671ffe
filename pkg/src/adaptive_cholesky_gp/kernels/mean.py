"""
事前平均関数モデル。
"""
from abc import ABC, abstractmethod

import numpy as np

from adaptive_cholesky_gp.common.types import Array


class MeanModel(ABC):
    @abstractmethod
    def __call__(self, X: Array) -> Array:
        pass


class ZeroMean(MeanModel):
    def __call__(self, X: Array) -> Array:
        return np.zeros(X.shape[0])

    def __repr__(self) -> str:
        return "ZeroMean()"


class ConstantMean(MeanModel):
    def __init__(self, c: float):
        self.c = float(c)

    def __call__(self, X: Array) -> Array:
        return np.full(X.shape[0], self.c)

    def __repr__(self) -> str:
        return f"ConstantMean(c={self.c!r})"
