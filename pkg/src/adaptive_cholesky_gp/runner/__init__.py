from .acgp import StopConfig, TraceEntry, AcgpResult, acgp_run, predict, lml_curve
