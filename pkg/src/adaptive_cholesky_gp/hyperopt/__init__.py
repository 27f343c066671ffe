from .tuner import (PARAM_NAMES, LogParams, TuneConfig, TrajectoryPoint, TuneResult, objective,
                    finite_difference_gradient, tune)
