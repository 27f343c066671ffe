# adaptive_cholesky_gp/loader/loader.py
"""
データソースローダー。
CSV/TSV ファイルと "synthetic:<kind>" 形式の合成データをサポートします。
"""
import os
from abc import ABC, abstractmethod
from typing import Tuple, Union

from adaptive_cholesky_gp.loader.dataset import Dataset, load_csv, split_dataset
from adaptive_cholesky_gp.loader.synthetic import gen_synthetic

SYNTHETIC_PREFIX = "synthetic:"


# @intent:responsibility 全てのローダーの共通インターフェースを定義します。
class BaseLoader(ABC):
    @abstractmethod
    def load(self, source: str, *, split_fraction: float, seed: int, **kwargs) -> Tuple[Dataset, Dataset]:
        """
        データソースを読み込み、(学習用, テスト用) の組を返します。
        """
        pass


class CsvLoader(BaseLoader):
    """
    区切り文字付きの数値表を読み込み、学習用の統計量で標準化するローダー。
    """
    def __init__(self, delimiter: str = ","):
        self.delimiter = delimiter

    def load(self, source: str, *, split_fraction: float, seed: int,
             target_column: Union[int, str] = -1, **kwargs) -> Tuple[Dataset, Dataset]:
        return load_csv(source, target_column, split_fraction, seed, self.delimiter)


class SyntheticLoader(BaseLoader):
    """
    合成データを生成して分割するローダー。合成データは標準化しません。
    """
    def __init__(self, kind: str):
        self.kind = kind

    def load(self, source: str, *, split_fraction: float, seed: int, n: int = 1000,
             **kwargs) -> Tuple[Dataset, Dataset]:
        data = gen_synthetic(self.kind, n, seed)
        return split_dataset(data.X, data.y, data.name, split_fraction, seed, standardize=False)


class LoaderFactory:
    @staticmethod
    def create_loader(source: str) -> BaseLoader:
        if source.startswith(SYNTHETIC_PREFIX):
            return SyntheticLoader(source[len(SYNTHETIC_PREFIX):])
        ext = os.path.splitext(source)[1].lower()
        if ext in ['.csv', '.txt']:
            return CsvLoader(",")
        elif ext in ['.tsv']:
            return CsvLoader("\t")
        else:
            raise ValueError(f"Unsupported data source: {source}")
