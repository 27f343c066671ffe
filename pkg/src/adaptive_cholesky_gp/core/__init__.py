from .snapshot import BlockSnapshot, BoundsReport
from .state import AdaptiveCholState
from .engine import AdaptiveCholesky
