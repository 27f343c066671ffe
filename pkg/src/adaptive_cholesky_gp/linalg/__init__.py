from .dense import (chol_in_place, solve_right_transposed, symmetric_downdate, forward_solve,
                    logdet_from_chol, quad_from_alpha)
from .buffer import FactorBuffer
