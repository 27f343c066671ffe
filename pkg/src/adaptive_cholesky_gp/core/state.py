# adaptive_cholesky_gp/core/state.py
"""
Core Layer (分解状態)

因子バッファと、処理済み部分の対数行列式 D・二次形式 Q の累積和を保持します。
"""
from dataclasses import dataclass, field

from adaptive_cholesky_gp.linalg.buffer import FactorBuffer


# @intent:responsibility 分解の進行状態を保持します。D と Q は毎ブロック再計算せず累積します。
@dataclass
class AdaptiveCholState:
    buffer: FactorBuffer
    logdet: float = 0.0
    quad: float = 0.0
    blocks: int = 0

    @property
    def processed(self) -> int:
        return self.buffer.s

    @property
    def pending(self) -> int:
        return self.buffer.t - self.buffer.s
