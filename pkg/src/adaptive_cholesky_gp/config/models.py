from dataclasses import dataclass, field
from typing import List, Optional, Union


@dataclass
class KernelConfig:
    family: str = "se"
    log_lengthscale: float = 0.0
    log_amplitude: float = 0.0
    sigma2: float = 1e-3
    mean_constant: Optional[float] = None  # None の場合はゼロ平均


@dataclass
class StopSettings:
    rtol: float = 0.1
    block_size: int = 256
    max_n: Optional[int] = None
    estimator: str = "midpoint"  # "midpoint", "extrapolation"
    alpha_mode: str = "current"  # "current", "previous"
    uq_mode: str = "cutoff"  # "cutoff", "calibrated"
    correlation_mode: str = "all"  # "all", "alternate"
    jitter: float = 0.0


@dataclass
class TuneSettings:
    max_restarts: int = 5
    max_steps_per_restart: int = 50
    fd_step: float = 1e-4
    time_budget: Optional[float] = None
    exact_eval_cap: int = 0
    estimator: str = "extrapolation"  # 調整では外挿推定量を既定とする
    frozen: List[str] = field(default_factory=list)


@dataclass
class DataSettings:
    source: Optional[str] = None  # CSVパス、または "synthetic:<kind>"
    target_column: Union[int, str] = -1  # 列番号、またはヘッダー名
    split: float = 2.0 / 3.0
    seed: int = 0
    n: int = 1000  # 合成データの点数


@dataclass
class ExperimentConfig:
    kernel: KernelConfig = field(default_factory=KernelConfig)
    stop: StopSettings = field(default_factory=StopSettings)
    tune: TuneSettings = field(default_factory=TuneSettings)
    data: DataSettings = field(default_factory=DataSettings)
    seeds: List[int] = field(default_factory=lambda: [0])
    memory_cap: Optional[int] = None
