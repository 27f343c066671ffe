# adaptive_cholesky_gp/loader/dataset.py
"""
データセットの型と、CSVの読み込み・分割・標準化。
"""
import csv
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from adaptive_cholesky_gp.common.errors import DatasetError, InputError
from adaptive_cholesky_gp.common.types import Array

logger = logging.getLogger(__name__)

_MISSING = {"", "na", "nan", "null", "none", "?"}


# @intent:responsibility 入力行列 X（N×p）と目的変数 y（長さ N）を保持します。
@dataclass
class Dataset:
    X: Array
    y: Array
    name: str = ""
    shuffle_seed: Optional[int] = None
    standardized: bool = False

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        if self.X.ndim == 1:
            self.X = self.X[:, None]
        self.y = np.asarray(self.y, dtype=float).reshape(-1)
        if self.X.shape[0] != self.y.shape[0]:
            raise InputError(f"Dataset has {self.X.shape[0]} inputs but {self.y.shape[0]} targets.")

    @property
    def size(self) -> int:
        return self.y.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    # @intent:responsibility 同じメタデータで行を並べ替えたデータセットを返します。
    def permuted(self, order: Array, seed: Optional[int] = None) -> "Dataset":
        return Dataset(self.X[order], self.y[order], self.name, seed, self.standardized)


def _standardize(train: Array, test: Array) -> Tuple[Array, Array]:
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    # 定数列は平行移動のみ
    std = np.where(std > 0.0, std, 1.0)
    return (train - mean) / std, (test - mean) / std


# @intent:responsibility シードで並べ替え、先頭 round(N · split_fraction) 点を学習用に分割します。
# @intent:pre-condition 0 < split_fraction ≤ 1、かつ学習用が1点以上になること。
def split_dataset(X: Array, y: Array, name: str, split_fraction: float, seed: int,
                  standardize: bool) -> Tuple[Dataset, Dataset]:
    """
    standardize が真の場合、入力の各列と目的変数を学習用データの平均と標準偏差で正規化し、
    同じ変換をテスト用データにも適用します。
    """
    if not 0.0 < split_fraction <= 1.0:
        raise InputError(f"Split fraction must lie in (0, 1], got {split_fraction}.")
    n = y.shape[0]
    n_train = int(round(n * split_fraction))
    if n_train < 1:
        raise InputError(f"Split fraction {split_fraction} leaves no training rows out of {n}.")
    order = np.random.default_rng(seed).permutation(n)
    train_idx, test_idx = order[:n_train], order[n_train:]
    X_train, X_test = X[train_idx], X[test_idx]
    y_train, y_test = y[train_idx], y[test_idx]
    if standardize:
        X_train, X_test = _standardize(X_train, X_test)
        y_train, y_test = (v.reshape(-1) for v in _standardize(y_train[:, None], y_test[:, None]))
    return (Dataset(X_train, y_train, f"{name}-train", seed, standardize),
            Dataset(X_test, y_test, f"{name}-test", seed, standardize))


def _parse_cell(cell: str, row: int, column: int) -> float:
    text = cell.strip()
    if text.lower() in _MISSING:
        raise DatasetError(f"Missing value in column {column}", row=row)
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(f"Non-numeric value '{text}' in column {column}", row=row) from None
    if not math.isfinite(value):
        raise DatasetError(f"Non-finite value '{text}' in column {column}", row=row)
    return value


def _is_header(row: List[str]) -> bool:
    for cell in row:
        text = cell.strip()
        if text.lower() in _MISSING:
            continue
        try:
            float(text)
        except ValueError:
            return True
    return False


def _resolve_target(target_column: Union[int, str], header: Optional[List[str]], width: int) -> int:
    if isinstance(target_column, str):
        stripped = target_column.strip()
        if header is not None and stripped in header:
            return header.index(stripped)
        try:
            target_column = int(stripped)
        except ValueError:
            raise DatasetError(f"Target column '{target_column}' not found in header") from None
    index = target_column + width if target_column < 0 else target_column
    if not 0 <= index < width:
        raise DatasetError(f"Target column {target_column} is out of range for {width} columns")
    return index


# @intent:responsibility 数値CSVを読み込み、入力行列と目的変数に分けて返します。
# @intent:rationale 欠損値と非数値は黙って捨てず、データ行番号（1始まり）付きで拒否します。
def read_numeric_csv(path: str, target_column: Union[int, str] = -1,
                     delimiter: str = ",") -> Tuple[Array, Array]:
    with open(path, 'r', encoding="utf-8", newline="") as f:
        rows = [row for row in csv.reader(f, delimiter=delimiter) if any(cell.strip() for cell in row)]
    if not rows:
        raise DatasetError(f"No data rows in {path}")
    header = None
    if _is_header(rows[0]):
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
    if not rows:
        raise DatasetError(f"No data rows in {path}")
    width = len(header) if header is not None else len(rows[0])
    if width < 2:
        raise DatasetError(f"Need at least one input column and one target column, got {width} columns")
    target = _resolve_target(target_column, header, width)

    values = np.empty((len(rows), width))
    for i, row in enumerate(rows, 1):
        if len(row) != width:
            raise DatasetError(f"Expected {width} columns, got {len(row)}", row=i)
        for j, cell in enumerate(row):
            values[i - 1, j] = _parse_cell(cell, i, j)
    inputs = [j for j in range(width) if j != target]
    logger.info("Read %d rows with %d inputs from %s", values.shape[0], len(inputs), path)
    return values[:, inputs], values[:, target]


# @intent:responsibility CSVを読み込み、シードで並べ替えて分割し、学習用の統計量で標準化します。
def load_csv(path: str, target_column: Union[int, str] = -1, split_fraction: float = 2.0 / 3.0,
             seed: int = 0, delimiter: str = ",") -> Tuple[Dataset, Dataset]:
    X, y = read_numeric_csv(path, target_column, delimiter)
    name = path.replace("\\", "/").rsplit("/", 1)[-1].rsplit(".", 1)[0]
    return split_dataset(X, y, name, split_fraction, seed, standardize=True)
