"""
カーネル族の具象実装。

Matérn 族は多項式 × 指数関数の閉形式で実装します。
"""
from typing import Dict

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array, KernelFamily
from adaptive_cholesky_gp.kernels.base import AbstractKernel

_SQRT3 = np.sqrt(3.0)
_SQRT5 = np.sqrt(5.0)


class SquaredExponentialKernel(AbstractKernel):
    @property
    def family(self) -> KernelFamily:
        return KernelFamily.SQUARED_EXPONENTIAL

    def profile(self, scaled_sq: Array) -> Array:
        return np.exp(-0.5 * scaled_sq)


class OrnsteinUhlenbeckKernel(AbstractKernel):
    @property
    def family(self) -> KernelFamily:
        return KernelFamily.ORNSTEIN_UHLENBECK

    def profile(self, scaled_sq: Array) -> Array:
        return np.exp(-np.sqrt(scaled_sq))


class Matern32Kernel(AbstractKernel):
    @property
    def family(self) -> KernelFamily:
        return KernelFamily.MATERN32

    def profile(self, scaled_sq: Array) -> Array:
        r = _SQRT3 * np.sqrt(scaled_sq)
        return (1.0 + r) * np.exp(-r)


class Matern52Kernel(AbstractKernel):
    @property
    def family(self) -> KernelFamily:
        return KernelFamily.MATERN52

    def profile(self, scaled_sq: Array) -> Array:
        r = _SQRT5 * np.sqrt(scaled_sq)
        return (1.0 + r + r * r / 3.0) * np.exp(-r)


# @intent:responsibility カーネル族からシングルトン実装を引くためのレジストリ。
_KERNELS: Dict[KernelFamily, AbstractKernel] = {
    kernel.family: kernel
    for kernel in (SquaredExponentialKernel(), OrnsteinUhlenbeckKernel(), Matern32Kernel(), Matern52Kernel())
}


def get_kernel(family: KernelFamily) -> AbstractKernel:
    try:
        return _KERNELS[family]
    except KeyError:
        raise InputError(f"Unsupported kernel family: {family}") from None


# @intent:responsibility 短縮名（"se", "ou", "matern32", "matern52"）からカーネル族を解決します。
def parse_family(name: str) -> KernelFamily:
    key = name.strip().lower().replace("-", "").replace("_", "").replace("/", "")
    aliases = {
        "se": KernelFamily.SQUARED_EXPONENTIAL,
        "rbf": KernelFamily.SQUARED_EXPONENTIAL,
        "squaredexponential": KernelFamily.SQUARED_EXPONENTIAL,
        "ou": KernelFamily.ORNSTEIN_UHLENBECK,
        "exponential": KernelFamily.ORNSTEIN_UHLENBECK,
        "ornsteinuhlenbeck": KernelFamily.ORNSTEIN_UHLENBECK,
        "matern32": KernelFamily.MATERN32,
        "matern52": KernelFamily.MATERN52,
    }
    if key not in aliases:
        raise InputError(f"Unknown kernel family '{name}'.")
    return aliases[key]
