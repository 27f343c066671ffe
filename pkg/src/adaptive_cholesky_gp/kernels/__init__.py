from .base import AbstractKernel, squared_distances, as_inputs
from .families import get_kernel, parse_family
from .spec import KernelSpec, kernel_block, regularized_diag_block
from .noise import NoiseModel, HomoskedasticNoise, HeteroskedasticNoise
from .mean import MeanModel, ZeroMean, ConstantMean
from .source import CovarianceSource, RecordingSource
