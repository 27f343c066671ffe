# adaptive_cholesky_gp/linalg/dense.py
"""
Linalg Layer (密行列プリミティブ)

ブロック化Cholesky分解を構成するインプレースの基本操作を提供します。
全ての行列は下三角のみが意味を持つ規約に従います。
"""
import numpy as np
from scipy.linalg import lapack, solve_triangular

from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError, SingularTriangularError
from adaptive_cholesky_gp.common.types import Array


def _require_square(M: Array, name: str) -> None:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be a square matrix, got shape {M.shape}.")


def _require_nonsingular(L: Array) -> None:
    zeros = np.flatnonzero(np.diagonal(L) == 0.0)
    if zeros.size:
        raise SingularTriangularError(int(zeros[0]))


# @intent:responsibility 正方ブロックの下三角をそのCholesky因子 L で上書きします。
# @intent:pre-condition ブロックは対称正定値です。読まれるのは下三角のみです。
# @intent:rationale LAPACKのpotrfは失敗したピボットの位置を返すため、そのままエラーに載せます。
def chol_in_place(block: Array) -> None:
    """
    L Lᵀ = block となる下三角因子で block を上書きします。上三角はゼロになります。
    非正のピボットに当たった場合は NotPositiveDefiniteError（0始まりのindex付き）を送出します。
    """
    _require_square(block, "Cholesky block")
    if block.shape[0] == 0:
        return
    factor, info = lapack.dpotrf(block, lower=1, clean=1, overwrite_a=0)
    if info > 0:
        raise NotPositiveDefiniteError(info - 1)
    if info < 0:
        raise InputError(f"Invalid argument {-info} passed to potrf.")
    block[...] = factor


# @intent:responsibility T ← T L⁻ᵀ をインプレースで計算します（T_new Lᵀ = T_old）。
# @intent:pre-condition L は対角が非ゼロの下三角行列で、T の列数は L の次数と一致します。
def solve_right_transposed(T: Array, L: Array) -> None:
    _require_square(L, "Triangular factor")
    if T.ndim != 2 or T.shape[1] != L.shape[0]:
        raise InputError(f"Cannot solve a block of shape {T.shape} against a factor of shape {L.shape}.")
    if L.shape[0] == 0 or T.shape[0] == 0:
        return
    _require_nonsingular(L)
    T[...] = solve_triangular(L, T.T, lower=True, check_finite=False).T


# @intent:responsibility C ← C − T Tᵀ の対称ダウンデートをインプレースで行います。
# @intent:rationale 結果が不定値になっても、ここでは検出しません。次の chol_in_place が検出します。
def symmetric_downdate(C: Array, T: Array) -> None:
    _require_square(C, "Downdate block")
    if T.ndim != 2 or T.shape[0] != C.shape[0]:
        raise InputError(f"Downdate factor of shape {T.shape} does not match block of shape {C.shape}.")
    if T.shape[1] == 0:
        return
    C -= T @ T.T


# @intent:responsibility 前進代入で L⁻¹ v を返します。
def forward_solve(L: Array, v: Array) -> Array:
    _require_square(L, "Triangular factor")
    v = np.asarray(v, dtype=float)
    if v.shape[0] != L.shape[0]:
        raise InputError(f"Right-hand side of length {v.shape[0]} does not match factor of order {L.shape[0]}.")
    if L.shape[0] == 0:
        return v.copy()
    _require_nonsingular(L)
    return solve_triangular(L, v, lower=True, check_finite=False)


# @intent:responsibility Cholesky因子から log|K| = 2 Σ log L_nn を計算します。
def logdet_from_chol(L: Array) -> float:
    diag = np.diagonal(L)
    bad = np.flatnonzero(diag <= 0.0)
    if bad.size:
        raise NotPositiveDefiniteError(int(bad[0]), f"Cholesky factor has a nonpositive diagonal at index {int(bad[0])}.")
    return float(2.0 * np.sum(np.log(diag)))


# @intent:responsibility 解ベクトル α = L⁻¹(y − μ) から二次形式 yᵀK⁻¹y = Σ α_n² を計算します。
def quad_from_alpha(alpha: Array) -> float:
    alpha = np.asarray(alpha, dtype=float)
    return float(alpha @ alpha)
