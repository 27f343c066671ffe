from .dataset import Dataset, load_csv, read_numeric_csv, split_dataset
from .synthetic import gen_synthetic, periodic_trend, SYNTHETIC_KINDS, VISUALIZATION_NOISE_VAR, IID_NOISE_VAR
from .loader import BaseLoader, CsvLoader, SyntheticLoader, LoaderFactory
