import yaml
from typing import Any, Dict, List, Optional

from .models import DataSettings, ExperimentConfig, KernelConfig, StopSettings, TuneSettings


# @intent:responsibility YAML形式の実験設定を読み込み、ExperimentConfig へ変換します。
class ConfigLoader:
    def load_from_file(self, path: str) -> ExperimentConfig:
        with open(path, 'r', encoding="utf-8") as f:
            data = yaml.safe_load(f)
        return self.parse(data or {})

    def parse(self, data: Dict[str, Any]) -> ExperimentConfig:
        if not isinstance(data, dict):
            raise ValueError(f"Experiment config must be a mapping, got {type(data).__name__}.")

        kernel_data = data.get("kernel", {}) or {}
        mean_constant = kernel_data.get("mean_constant")
        kernel = KernelConfig(
            family=str(kernel_data.get("family", "se")),
            log_lengthscale=self._parse_float(kernel_data.get("log_lengthscale", 0.0)),
            log_amplitude=self._parse_float(kernel_data.get("log_amplitude", 0.0)),
            sigma2=self._parse_float(kernel_data.get("sigma2", 1e-3)),
            mean_constant=None if mean_constant is None else self._parse_float(mean_constant),
        )

        stop_data = data.get("stop", {}) or {}
        stop = StopSettings(
            rtol=self._parse_float(stop_data.get("rtol", 0.1)),
            block_size=self._parse_int(stop_data.get("block_size", 256)),
            max_n=self._parse_optional_int(stop_data.get("max_n")),
            estimator=str(stop_data.get("estimator", "midpoint")),
            alpha_mode=str(stop_data.get("alpha_mode", "current")),
            uq_mode=str(stop_data.get("uq_mode", "cutoff")),
            correlation_mode=str(stop_data.get("correlation_mode", "all")),
            jitter=self._parse_float(stop_data.get("jitter", 0.0)),
        )

        tune_data = data.get("tune", {}) or {}
        budget = tune_data.get("time_budget")
        tune = TuneSettings(
            max_restarts=self._parse_int(tune_data.get("max_restarts", 5)),
            max_steps_per_restart=self._parse_int(tune_data.get("max_steps_per_restart", 50)),
            fd_step=self._parse_float(tune_data.get("fd_step", 1e-4)),
            time_budget=None if budget is None else self._parse_float(budget),
            exact_eval_cap=self._parse_int(tune_data.get("exact_eval_cap", 0)),
            estimator=str(tune_data.get("estimator", "extrapolation")),
            frozen=[str(name) for name in tune_data.get("frozen", []) or []],
        )

        data_section = data.get("data", {}) or {}
        source = data_section.get("source")
        dataset = DataSettings(
            source=None if source is None else str(source),
            target_column=self._parse_column(data_section.get("target_column", -1)),
            split=self._parse_float(data_section.get("split", 2.0 / 3.0)),
            seed=self._parse_int(data_section.get("seed", 0)),
            n=self._parse_int(data_section.get("n", 1000)),
        )

        return ExperimentConfig(
            kernel=kernel,
            stop=stop,
            tune=tune,
            data=dataset,
            seeds=self._parse_int_list(data.get("seeds", [0])),
            memory_cap=self._parse_optional_int(data.get("memory_cap")),
        )

    def _parse_int(self, value: Any) -> int:
        if isinstance(value, bool):
            raise ValueError(f"Invalid integer format: {value}")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            return int(value.strip())
        raise ValueError(f"Invalid integer format: {value}")

    def _parse_optional_int(self, value: Any) -> Optional[int]:
        return None if value is None else self._parse_int(value)

    # @intent:rationale PyYAML は "1e-3" のような指数表記を文字列として読むため、文字列も受け付けます。
    def _parse_float(self, value: Any) -> float:
        if isinstance(value, bool):
            raise ValueError(f"Invalid number format: {value}")
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            return float(value.strip())
        raise ValueError(f"Invalid number format: {value}")

    def _parse_int_list(self, value: Any) -> List[int]:
        if isinstance(value, (list, tuple)):
            return [self._parse_int(v) for v in value]
        return [self._parse_int(value)]

    # @intent:rationale 目的変数の列は番号でもヘッダー名でも指定できます。
    def _parse_column(self, value: Any):
        if isinstance(value, str) and not value.strip().lstrip("-").isdigit():
            return value.strip()
        return self._parse_int(value)
