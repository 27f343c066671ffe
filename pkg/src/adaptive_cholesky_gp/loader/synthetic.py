# adaptive_cholesky_gp/loader/synthetic.py
"""
合成データセットの生成。

smooth:        入力 ~ N(0, 100)、滑らかなランダム関数を平均 −2.5・分散 25 に調整した目的変数。
visualization: 入力 ~ 5·N(0, 1)、周期関数 + 線形トレンド + 分散 2.25 のノイズ。
iid:           入力 ~ N(0, 1)、sin(2x) + 分散 0.09 のノイズ。
"""
import math
from typing import Callable, Dict

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array
from adaptive_cholesky_gp.loader.dataset import Dataset

VISUALIZATION_NOISE_VAR = 2.25
IID_NOISE_VAR = 0.09

# smooth の目的関数を作るランダムフーリエ特徴の数と長さスケール
_SMOOTH_FEATURES = 64
_SMOOTH_LENGTHSCALE = 5.0
_SMOOTH_NOISE_STD = 0.1


# @intent:responsibility 可視化用データの雑音なし関数 2 sin(2πx/5) + 0.5x。
def periodic_trend(x: Array) -> Array:
    return 2.0 * np.sin(2.0 * np.pi * x / 5.0) + 0.5 * x


def _rescale(values: Array, mean: float, var: float) -> Array:
    std = values.std()
    centered = values - values.mean()
    if std > 0.0:
        centered = centered / std
    return mean + math.sqrt(var) * centered


def _smooth(n: int, rng: np.random.Generator) -> Dataset:
    x = rng.normal(0.0, 10.0, size=n)
    freqs = rng.normal(0.0, 1.0 / _SMOOTH_LENGTHSCALE, size=_SMOOTH_FEATURES)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=_SMOOTH_FEATURES)
    weights = rng.normal(size=_SMOOTH_FEATURES)
    f = np.cos(np.outer(x, freqs) + phases) @ weights
    f = (f - f.mean()) / (f.std() if f.std() > 0.0 else 1.0)
    y = _rescale(f + _SMOOTH_NOISE_STD * rng.normal(size=n), -2.5, 25.0)
    return Dataset(x[:, None], y, "smooth")


def _visualization(n: int, rng: np.random.Generator) -> Dataset:
    x = 5.0 * rng.normal(size=n)
    y = periodic_trend(x) + math.sqrt(VISUALIZATION_NOISE_VAR) * rng.normal(size=n)
    return Dataset(x[:, None], y, "visualization")


def _iid(n: int, rng: np.random.Generator) -> Dataset:
    x = rng.normal(size=n)
    y = np.sin(2.0 * x) + math.sqrt(IID_NOISE_VAR) * rng.normal(size=n)
    return Dataset(x[:, None], y, "iid")


_GENERATORS: Dict[str, Callable[[int, np.random.Generator], Dataset]] = {
    "smooth": _smooth,
    "visualization": _visualization,
    "iid": _iid,
}

SYNTHETIC_KINDS = tuple(_GENERATORS)


# @intent:responsibility 種類とシードから再現可能な合成データセットを生成します。
def gen_synthetic(kind: str, n: int, seed: int = 0) -> Dataset:
    if n < 1:
        raise InputError(f"Synthetic dataset needs at least one point, got {n}.")
    try:
        generator = _GENERATORS[kind.strip().lower()]
    except KeyError:
        raise InputError(f"Unknown synthetic dataset kind '{kind}'. Expected one of {list(SYNTHETIC_KINDS)}.") from None
    dataset = generator(n, np.random.default_rng(seed))
    dataset.shuffle_seed = seed
    return dataset
