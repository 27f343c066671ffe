from .errors import AcgpError, InputError, NotPositiveDefiniteError, SingularTriangularError, DatasetError
from .types import Array, IndexRange, KernelFamily, EstimatorMode, AlphaMode, UpperQuadMode, CorrelationMode
