# adaptive_cholesky_gp/cli/records.py
"""
実験結果のCSVレコード。

全ての実験は同じ固定ヘッダーを持つCSVを書き出します。各行は experiment 列で自己記述的で、
その実験に無関係な列は空欄です。浮動小数点は repr で書き出し、読み戻すと同じ値になります。
"""
import csv
from dataclasses import astuple, dataclass, fields
from typing import Dict, Iterable, List, Optional, Sequence

from adaptive_cholesky_gp.common.errors import DatasetError


# @intent:data_structure 1行分の実験結果。None は空欄として書き出します。
@dataclass
class ExperimentRecord:
    experiment: str
    dataset: str = ""
    kernel: str = ""
    log_lengthscale: Optional[float] = None
    log_amplitude: Optional[float] = None
    sigma2: Optional[float] = None
    seed: Optional[int] = None
    block_size: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    processed: Optional[int] = None
    elapsed: Optional[float] = None
    bound_seconds: Optional[float] = None
    factor_seconds: Optional[float] = None
    logdet_lower: Optional[float] = None
    logdet_upper: Optional[float] = None
    quad_lower: Optional[float] = None
    quad_upper: Optional[float] = None
    quad_upper_alt: Optional[float] = None
    exact_logdet: Optional[float] = None
    exact_quad: Optional[float] = None
    lml_lower: Optional[float] = None
    lml_upper: Optional[float] = None
    estimate: Optional[float] = None
    exact_lml: Optional[float] = None
    rmse: Optional[float] = None
    exact_rmse: Optional[float] = None
    stopped: Optional[int] = None
    restart: Optional[int] = None
    step: Optional[int] = None
    objective: Optional[float] = None


HEADER: List[str] = [f.name for f in fields(ExperimentRecord)]

_INT_FIELDS = {f.name for f in fields(ExperimentRecord) if f.type in (int, Optional[int])}
_STR_FIELDS = {"experiment", "dataset", "kernel"}

# 並べ替えキー（マージ時）
_SORT_KEY = ("experiment", "dataset", "kernel", "log_lengthscale", "log_amplitude", "sigma2", "seed",
             "block_size", "restart", "step", "s", "t", "processed")


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_row(record: ExperimentRecord) -> List[str]:
    return [_format(v) for v in astuple(record)]


# @intent:responsibility ヘッダーとレコードをCSVへ書き出します。改行は常に "\n" です。
def write_records(path: str, records: Iterable[ExperimentRecord]) -> int:
    count = 0
    with open(path, 'w', encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(HEADER)
        for record in records:
            writer.writerow(to_row(record))
            count += 1
    return count


def _parse_field(name: str, text: str, row: int):
    if text == "":
        return "" if name in _STR_FIELDS else None
    if name in _STR_FIELDS:
        return text
    try:
        return int(text) if name in _INT_FIELDS else float(text)
    except ValueError:
        raise DatasetError(f"Invalid value '{text}' for column '{name}'", row=row) from None


# @intent:responsibility 結果CSVを読み込み、ヘッダーを検証してレコードに戻します。
def read_records(path: str) -> List[ExperimentRecord]:
    with open(path, 'r', encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != HEADER:
            raise DatasetError(f"Unexpected header in {path}: {header}")
        records = []
        for i, row in enumerate(reader, 1):
            if len(row) != len(HEADER):
                raise DatasetError(f"Expected {len(HEADER)} columns, got {len(row)}", row=i)
            values: Dict[str, object] = {name: _parse_field(name, text, i) for name, text in zip(HEADER, row)}
            records.append(ExperimentRecord(**values))
    return records


def _sort_key(record: ExperimentRecord):
    key = []
    for name in _SORT_KEY:
        value = getattr(record, name)
        # None は先頭に並べる
        key.append((value is not None, value if value is not None else 0))
    return tuple(key)


# @intent:responsibility 複数の結果ファイルを読み込み、キー順に並べて1ファイルにまとめます。
def merge_record_files(paths: Sequence[str], out: str) -> int:
    records: List[ExperimentRecord] = []
    for path in sorted(paths):
        records.extend(read_records(path))
    records.sort(key=_sort_key)
    return write_records(out, records)
