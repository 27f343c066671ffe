from .models import ExperimentConfig, KernelConfig, StopSettings, TuneSettings, DataSettings
from .loader import ConfigLoader
from .builder import ExperimentBuilder, ModelBundle
