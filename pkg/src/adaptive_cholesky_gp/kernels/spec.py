# adaptive_cholesky_gp/kernels/spec.py
"""
カーネル仕様とカーネル行列ブロックの評価。

K = K_ff + Diag(σ²(X)) のブロックを生成する関数群を提供します。
ハイパーパラメータは対数空間で保持され、正値制約を自然に満たします。
"""
from dataclasses import dataclass

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array, KernelFamily
from adaptive_cholesky_gp.kernels.base import as_inputs
from adaptive_cholesky_gp.kernels.families import get_kernel
from adaptive_cholesky_gp.kernels.noise import NoiseModel


# @intent:responsibility カーネル族とハイパーパラメータ (log ℓ, log θ) を不変に保持します。
@dataclass(frozen=True)
class KernelSpec:
    family: KernelFamily
    log_lengthscale: float = 0.0
    log_amplitude: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.log_lengthscale) and np.isfinite(self.log_amplitude)):
            raise InputError(
                f"Kernel hyperparameters must be finite, got log_lengthscale={self.log_lengthscale}, "
                f"log_amplitude={self.log_amplitude}."
            )

    # @intent:responsibility 正値パラメータから仕様を生成します。
    @classmethod
    def from_values(cls, family: KernelFamily, lengthscale: float, amplitude: float) -> "KernelSpec":
        if lengthscale <= 0.0 or amplitude <= 0.0:
            raise InputError(f"Lengthscale and amplitude must be positive, got {lengthscale} and {amplitude}.")
        return cls(family, float(np.log(lengthscale)), float(np.log(amplitude)))

    @property
    def lengthscale(self) -> float:
        return float(np.exp(self.log_lengthscale))

    @property
    def amplitude(self) -> float:
        return float(np.exp(self.log_amplitude))

    # @intent:responsibility 単一入力での k(x, x) = θ を返します。全カーネル族が定常であるため入力に依存しません。
    def prior_variance(self, X: Array) -> Array:
        return np.full(as_inputs(X).shape[0], self.amplitude)

    def __call__(self, rows, cols) -> Array:
        return kernel_block(self, rows, cols)


# @intent:responsibility 入力行列 rows, cols の間のカーネル行列ブロックを評価します。
# @intent:pre-condition rows と cols の列数（入力次元 p）は一致している必要があります。
def kernel_block(spec: KernelSpec, rows, cols) -> Array:
    """
    (i, j) 要素が k(rows_i, cols_j) となる密行列を返します。
    rows と cols が同一の場合、結果は対称半正定値です。
    """
    same = rows is cols
    rows = as_inputs(rows)
    cols = rows if same else as_inputs(cols)
    if rows.shape[1] != cols.shape[1]:
        raise InputError(
            f"Input dimension mismatch: rows have {rows.shape[1]} columns, cols have {cols.shape[1]}."
        )
    return get_kernel(spec.family).evaluate(rows, cols, spec.lengthscale, spec.amplitude)


# @intent:responsibility 対角ブロック k(X, X) + Diag(σ²(X)) を評価します。
# @intent:pre-condition ブロックは空であってはなりません。
def regularized_diag_block(spec: KernelSpec, noise: NoiseModel, X_block) -> Array:
    X_block = as_inputs(X_block)
    if X_block.shape[0] == 0:
        raise InputError("Diagonal block must contain at least one input.")
    block = kernel_block(spec, X_block, X_block)
    block[np.diag_indices_from(block)] += noise.variance(X_block)
    return block
