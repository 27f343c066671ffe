# adaptive_cholesky_gp/common/errors.py
"""
共通の例外階層。

全レイヤーが送出する例外はAcgpErrorを根に持ち、呼び出し側が
ライブラリ由来のエラーをまとめて捕捉できるようにします。
"""
from typing import Optional

import numpy as np


# @intent:responsibility ライブラリ全体の例外の基底クラスです。
class AcgpError(Exception):
    pass


# @intent:responsibility 形状の不一致や不正なパラメータなど、呼び出し側の入力エラーを表します。
class InputError(AcgpError, ValueError):
    pass


# @intent:responsibility Cholesky分解中に非正のピボットを検出したことを表します。
# @intent:rationale 黙ってジッターを加えることはせず、失敗したインデックスを呼び出し側へ返します。
class NotPositiveDefiniteError(AcgpError, np.linalg.LinAlgError):
    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"Matrix is not positive definite (failing pivot at index {index}).")


# @intent:responsibility 三角行列の対角にゼロがあり、三角ソルブが実行できないことを表します。
class SingularTriangularError(AcgpError, np.linalg.LinAlgError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Triangular factor is singular (zero diagonal at index {index}).")


# @intent:responsibility データセットの読み込み・検証の失敗を表します。rowはCSVのデータ行番号（1始まり）です。
class DatasetError(AcgpError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)
