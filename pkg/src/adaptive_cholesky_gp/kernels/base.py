# adaptive_cholesky_gp/kernels/base.py
"""
Kernel Layer (抽象カーネル)

定常カーネルの共通インターフェースを定義します。
具体的な形状（SE, OU, Matérn）は各カーネル族クラスへ委譲されます。
"""
from abc import ABC, abstractmethod

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array, KernelFamily


# @intent:responsibility 二つの入力行列間の二乗距離を計算します。
# @intent:rationale sqrtの前に負の丸め誤差が残るとNaNになるため、0で下限を切ります。
def squared_distances(rows: Array, cols: Array) -> Array:
    """
    ‖x‖² + ‖z‖² − 2x·z を 0 で切り詰めた二乗距離行列を返します。
    rows と cols が同一オブジェクトの場合、対角は厳密に 0 になります。
    """
    row_sq = np.einsum("ij,ij->i", rows, rows)
    col_sq = row_sq if cols is rows else np.einsum("ij,ij->i", cols, cols)
    sq = row_sq[:, None] + col_sq[None, :] - 2.0 * (rows @ cols.T)
    np.maximum(sq, 0.0, out=sq)
    if cols is rows:
        np.fill_diagonal(sq, 0.0)
    return sq


# @intent:responsibility 入力を2次元の float64 行列へ正規化します。1次元入力は1列の行列として扱います。
def as_inputs(X) -> Array:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InputError(f"Inputs must be a vector or a matrix, got an array with {X.ndim} dimensions.")
    return X


# @intent:responsibility 単位正規化された定常カーネルの形状関数を定義します。
class AbstractKernel(ABC):
    """
    全てのカーネル族の基底となる抽象クラス。
    k(x, z) = θ · profile(‖x − z‖² / ℓ²) の profile 部分だけを実装させます。
    """
    # @intent:responsibility このカーネルが表すカーネル族を返します。
    @property
    @abstractmethod
    def family(self) -> KernelFamily:
        pass

    # @intent:responsibility スケール済み二乗距離から形状を計算します。profile(0) = 1 でなければなりません。
    @abstractmethod
    def profile(self, scaled_sq: Array) -> Array:
        pass

    # @intent:responsibility カーネル行列のブロックを評価します。
    # @intent:pre-condition rows と cols は同じ列数を持つ2次元配列です。
    def evaluate(self, rows: Array, cols: Array, lengthscale: float, amplitude: float) -> Array:
        sq = squared_distances(rows, cols)
        return amplitude * self.profile(sq / (lengthscale * lengthscale))
