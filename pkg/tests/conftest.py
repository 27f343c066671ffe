# tests/conftest.py
"""
テスト共通のフィクスチャ。乱数インスタンスは全てシードから再現可能に生成します。
"""
import numpy as np
import pytest

from adaptive_cholesky_gp.common.types import KernelFamily
from adaptive_cholesky_gp.kernels.noise import HomoskedasticNoise
from adaptive_cholesky_gp.kernels.spec import KernelSpec


def random_instance(seed: int, n: int, family: KernelFamily = KernelFamily.SQUARED_EXPONENTIAL,
                    log_lengthscale: float = 0.0, log_amplitude: float = 0.0, sigma2: float = 0.1, dim: int = 1):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, dim))
    y = np.sin(2.0 * X[:, 0]) + 0.3 * rng.normal(size=n)
    return KernelSpec(family, log_lengthscale, log_amplitude), HomoskedasticNoise(sigma2), X, y


@pytest.fixture
def make_instance():
    return random_instance


@pytest.fixture
def small_instance():
    return random_instance(seed=7, n=64)
