# adaptive_cholesky_gp/core/snapshot.py
"""
ブロック単位の不変スナップショット

ダウンデート直後（ブロック分解の前）の中間状態と、そこから計算した境界を
不変のデータ構造として記録します。境界計算とトレース出力はこれらを介してのみ情報を受け取ります。
"""
from dataclasses import dataclass, field

import numpy as np

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.common.types import Array


def _frozen(values) -> Array:
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


# @intent:responsibility 境界計算に必要な中間量（V, C, e, D, Q）を不変に記録します。
@dataclass(frozen=True)
class BlockSnapshot:
    """
    s 点で条件付けた残り t − s 点の事後量。
    variances は σ²(x_j) + Σ*⁽ˢ⁾(x_j, x_j)、covariances は第一副対角 Σ*⁽ˢ⁾(x_j, x_{j+1})、
    residuals は y_j − m*⁽ˢ⁾(x_j) です。
    """
    n_total: int
    s: int
    t: int
    logdet: float
    quad: float
    variances: Array = field(default_factory=lambda: _frozen([]))
    covariances: Array = field(default_factory=lambda: _frozen([]))
    residuals: Array = field(default_factory=lambda: _frozen([]))
    noise: Array = field(default_factory=lambda: _frozen([]))
    noise_floor: float = 1.0

    # @intent:rationale 配列はコピーして書き込み禁止にし、スナップショットの不変性を保ちます。
    def __post_init__(self):
        for name in ("variances", "covariances", "residuals", "noise"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        m = self.t - self.s
        if not 0 <= self.s <= self.t <= self.n_total:
            raise InputError(f"Invalid snapshot indices s={self.s}, t={self.t}, N={self.n_total}.")
        if len(self.variances) != m or len(self.residuals) != m or len(self.noise) != m:
            raise InputError(
                f"Snapshot block of size {m} has {len(self.variances)} variances, "
                f"{len(self.residuals)} residuals and {len(self.noise)} noise values."
            )
        if len(self.covariances) != max(m - 1, 0):
            raise InputError(f"Snapshot block of size {m} needs {max(m - 1, 0)} covariances, got {len(self.covariances)}.")
        if self.noise_floor <= 0.0:
            raise InputError(f"Noise floor must be positive, got {self.noise_floor}.")

    @property
    def block_size(self) -> int:
        return self.t - self.s

    # @intent:responsibility 有効な共分散ブロックであれば V_j V_{j+1} ≥ C_j² が成り立つことを確認します。
    def covariance_consistent(self, rtol: float = 1e-9) -> bool:
        if self.block_size < 2:
            return True
        # 対角にはノイズが含まれるため、事後分散部分で比較する
        post = self.variances - self.noise
        lhs = post[:-1] * post[1:]
        return bool(np.all(self.covariances ** 2 <= lhs * (1.0 + rtol) + rtol))


# @intent:responsibility 1ブロック分の境界と中間統計量を不変に記録します。
# @intent:rationale 境界は期待値でのみ成り立つため、lower ≤ upper は保証されず、並べ替えもしません。
@dataclass(frozen=True)
class BoundsReport:
    n_total: int
    s: int
    t: int
    logdet_lower: float
    logdet_upper: float
    quad_lower: float
    quad_upper: float
    lml_lower: float
    lml_upper: float
    quad_upper_alt: float = float("nan")
    mu_d: float = float("nan")
    rho_d: float = float("nan")
    psi_d: int = 0
    mu_q: float = float("nan")
    rho_q: float = float("nan")
    rho_q_upper: float = float("nan")
    rho_q_calibrated: float = float("nan")
    tail_q: float = float("nan")
    psi_q: int = 0
    alpha: float = 0.0

    @property
    def collapsed(self) -> bool:
        return self.s == self.n_total
