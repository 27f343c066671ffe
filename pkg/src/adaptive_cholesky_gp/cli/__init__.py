from .records import ExperimentRecord, HEADER, write_records, read_records, merge_record_files
from .experiments import (CurveSetting, run_bound_sweep, run_lml_curve, run_fit, run_tune, run_benchmark,
                          summarize_benchmark, check_memory_cap)
