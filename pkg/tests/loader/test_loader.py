# tests/loader/test_loader.py
"""
adaptive_cholesky_gp.loader のCSV読み込みとローダー選択の単体テスト。
"""
import numpy as np
import pytest

from adaptive_cholesky_gp.common.errors import DatasetError, InputError
from adaptive_cholesky_gp.loader.dataset import Dataset, load_csv, read_numeric_csv, split_dataset
from adaptive_cholesky_gp.loader.loader import CsvLoader, LoaderFactory, SyntheticLoader

# @intent:test_suite データセットの読み込み、分割、標準化、エラー報告を検証します。

TOY_CSV = """x1,x2,y
1.0,10.0,0.5
2.0,20.0,1.5
3.0,15.0,2.5
4.0,30.0,3.0
5.0,25.0,4.5
6.0,40.0,5.0
"""


@pytest.fixture
def toy_csv(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(TOY_CSV, encoding="utf-8")
    return str(path)


class TestLoadCsv:
    # @intent:test_case_split 6行のCSVを 2/3 で分割すると学習用4行、テスト用2行になることを検証します。
    def test_split_sizes(self, toy_csv):
        train, test = load_csv(toy_csv, split_fraction=2.0 / 3.0, seed=0)
        assert train.size == 4
        assert test.size == 2
        assert train.dim == 2
        assert train.name == "toy-train"
        assert test.name == "toy-test"
        assert train.standardized and test.standardized
        assert train.shuffle_seed == 0

    def test_same_seed_is_deterministic(self, toy_csv):
        a_train, a_test = load_csv(toy_csv, seed=3)
        b_train, b_test = load_csv(toy_csv, seed=3)
        np.testing.assert_array_equal(a_train.X, b_train.X)
        np.testing.assert_array_equal(a_test.y, b_test.y)

    # @intent:test_case_standardize 学習用データの各列が平均 0、分散 1 に正規化されることを検証します。
    def test_standardized_by_training_statistics(self, toy_csv):
        train, test = load_csv(toy_csv, seed=1)
        assert np.all(np.abs(train.X.mean(axis=0)) < 1e-6)
        assert abs(train.y.mean()) < 1e-6
        np.testing.assert_allclose(train.X.var(axis=0), 1.0, rtol=1e-6)
        assert train.y.var() == pytest.approx(1.0, rel=1e-6)
        # テスト用データは学習用の統計量で変換されるため平均 0 にはならない
        assert test.X.shape == (2, 2)

    def test_target_by_header_name(self, toy_csv):
        X, y = read_numeric_csv(toy_csv, target_column="x2")
        np.testing.assert_array_equal(y, [10.0, 20.0, 15.0, 30.0, 25.0, 40.0])
        np.testing.assert_array_equal(X[:, 1], [0.5, 1.5, 2.5, 3.0, 4.5, 5.0])

    def test_headerless_file(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("1,2\n3,4\n", encoding="utf-8")
        X, y = read_numeric_csv(str(path), target_column=0)
        np.testing.assert_array_equal(X[:, 0], [2.0, 4.0])
        np.testing.assert_array_equal(y, [1.0, 3.0])

    # @intent:test_case_error 欠損値はデータ行番号付きで拒否されることを検証します。
    def test_missing_value_reports_row(self, tmp_path):
        path = tmp_path / "missing.csv"
        path.write_text("a,b\n1,2\n3,4\n5,\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="Missing value in column 1") as excinfo:
            read_numeric_csv(str(path))
        assert excinfo.value.row == 3
        assert "(row 3)" in str(excinfo.value)

    def test_non_numeric_rejected(self, tmp_path):
        path = tmp_path / "text.csv"
        path.write_text("1,2\n3,four\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="Non-numeric value 'four'") as excinfo:
            read_numeric_csv(str(path))
        assert excinfo.value.row == 2

    @pytest.mark.parametrize("content, message", [
        ("", "No data rows"),
        ("a,b\n", "No data rows"),
        ("y\n1\n2\n", "at least one input column"),
        ("1,2\n3,4,5\n", "Expected 2 columns"),
    ])
    def test_malformed_files(self, tmp_path, content, message):
        path = tmp_path / "bad.csv"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(DatasetError, match=message):
            read_numeric_csv(str(path))

    def test_unknown_target_name(self, toy_csv):
        with pytest.raises(DatasetError, match="not found"):
            read_numeric_csv(toy_csv, target_column="z")


class TestSplitDataset:
    def test_invalid_fraction(self):
        with pytest.raises(InputError, match="Split fraction"):
            split_dataset(np.zeros((4, 1)), np.zeros(4), "d", 0.0, 0, standardize=False)

    def test_full_split_keeps_all_rows(self):
        X = np.arange(5.0)[:, None]
        train, test = split_dataset(X, np.arange(5.0), "d", 1.0, 0, standardize=False)
        assert train.size == 5 and test.size == 0
        np.testing.assert_array_equal(np.sort(train.y), np.arange(5.0))

    def test_dataset_shape_check(self):
        with pytest.raises(InputError, match="3 inputs but 2 targets"):
            Dataset(np.zeros((3, 1)), np.zeros(2))


class TestLoaderFactory:
    def test_csv_and_tsv(self, tmp_path):
        path = tmp_path / "data.tsv"
        path.write_text("a\tb\ty\n1\t2\t3\n4\t5\t6\n7\t8\t9\n", encoding="utf-8")
        loader = LoaderFactory.create_loader(str(path))
        assert isinstance(loader, CsvLoader)
        assert loader.delimiter == "\t"
        train, test = loader.load(str(path), split_fraction=2.0 / 3.0, seed=0)
        assert (train.size, test.size) == (2, 1)
        assert LoaderFactory.create_loader("data.CSV").delimiter == ","

    def test_synthetic_source(self):
        loader = LoaderFactory.create_loader("synthetic:iid")
        assert isinstance(loader, SyntheticLoader)
        train, test = loader.load("synthetic:iid", split_fraction=0.5, seed=2, n=10)
        assert (train.size, test.size) == (5, 5)
        assert not train.standardized

    def test_unsupported_source(self):
        with pytest.raises(ValueError, match="Unsupported data source"):
            LoaderFactory.create_loader("data.parquet")
