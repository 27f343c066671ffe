"""
適応的Cholesky分解によるガウス過程回帰。

ブロック化Cholesky分解の途中状態から対数周辺尤度の上下界を計算し、
指定した相対誤差を満たした時点で分解を打ち切ります。
"""
from adaptive_cholesky_gp.common.types import AlphaMode, CorrelationMode, EstimatorMode, KernelFamily, UpperQuadMode
from adaptive_cholesky_gp.kernels.spec import KernelSpec
from adaptive_cholesky_gp.kernels.noise import HomoskedasticNoise, HeteroskedasticNoise
from adaptive_cholesky_gp.kernels.mean import ZeroMean, ConstantMean
from adaptive_cholesky_gp.runner.acgp import StopConfig, AcgpResult, acgp_run, predict, lml_curve

__version__ = "0.1.0"
