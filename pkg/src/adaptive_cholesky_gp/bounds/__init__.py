from .estimators import (evaluate_bounds, optimal_alpha, check_stop, stop_condition, lml_scale, midpoint_estimator,
                         extrapolation_estimator, processed_lml)
from .inequalities import little_gauss, little_gauss_brute, log_trick_lower, fraction_trick_upper, relative_error_bound
