"""
共通の型定義を提供するモジュール。
プロジェクト全体で使用される列挙型と型エイリアスを定義します。
"""
from enum import Enum
from typing import Tuple

import numpy as np

# @intent:data_structure 実数行列・ベクトルの型エイリアス。全レイヤーで float64 を前提とします。
Array = np.ndarray

# @intent:data_structure 評価済みカーネルブロックの (行範囲, 列範囲) を表す型エイリアス。
IndexRange = Tuple[int, int]


# @intent:responsibility サポートするカーネル族を定義します。値はCLIやYAMLで使う短縮名です。
class KernelFamily(Enum):
    SQUARED_EXPONENTIAL = "se"
    ORNSTEIN_UHLENBECK = "ou"
    MATERN32 = "matern32"
    MATERN52 = "matern52"


# @intent:responsibility 停止時に返す推定量の種類。
class EstimatorMode(Enum):
    MIDPOINT = "midpoint"
    EXTRAPOLATION = "extrapolation"


# @intent:responsibility 二次形式の下界で使う α をどのブロックから計算するか。
# @intent:rationale PREVIOUS_BLOCK は α が処理済みの点のみに依存するため、期待値の意味での下界が保たれます。
class AlphaMode(Enum):
    CURRENT_BLOCK = "current"
    PREVIOUS_BLOCK = "previous"


# @intent:responsibility 二次形式の上界の形。
# CUTOFF_TAIL は ψ_Q 以降を保守的な末尾項で、CALIBRATED は誤差の較正と相関による増分で外挿します。
class UpperQuadMode(Enum):
    CUTOFF_TAIL = "cutoff"
    CALIBRATED = "calibrated"


# @intent:responsibility 非対角相関の推定に使う要素の取り方。
class CorrelationMode(Enum):
    ALL_PAIRS = "all"
    ALTERNATE_PAIRS = "alternate"
