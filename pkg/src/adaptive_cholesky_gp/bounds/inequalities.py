"""
境界の導出で使う補助不等式と恒等式。

いずれも境界計算の部品であり、テストでは乱数入力に対して性質を確認します。
"""
import math

from adaptive_cholesky_gp.common.errors import InputError


# @intent:responsibility Σ_{j=t+1}^{n} Σ_{i=t0+1}^{j-1} 1 の閉形式 (n − t)((n + t − 1)/2 − t0) を整数演算で返します。
# @intent:rationale (n − t) と (n + t − 1) の一方は必ず偶数なので、積は常に2で割り切れます。
def little_gauss(n: int, t: int, t0: int) -> int:
    return (n - t) * (n + t - 1 - 2 * t0) // 2


# @intent:responsibility little_gauss の総当たり版。閉形式の検証用です。
def little_gauss_brute(n: int, t: int, t0: int) -> int:
    total = 0
    for j in range(t + 1, n + 1):
        for _ in range(t0 + 1, j):
            total += 1
    return total


# @intent:responsibility log(c + b − a) ≥ log(c + b) − a/c の右辺を返します（c > 0, b ≥ a ≥ 0）。
def log_trick_lower(a: float, b: float, c: float) -> float:
    if c <= 0.0 or not b >= a >= 0.0:
        raise InputError(f"log trick requires c > 0 and b >= a >= 0, got a={a}, b={b}, c={c}.")
    return math.log(c + b) - a / c


# @intent:responsibility x/(c + a − b) ≤ x(c + b)/(c(c + a)) の右辺を返します（c > 0, x, b ≥ 0, a ≥ b）。
def fraction_trick_upper(x: float, a: float, b: float, c: float) -> float:
    if c <= 0.0 or x < 0.0 or b < 0.0 or a < b:
        raise InputError(f"fraction trick requires c > 0, x, b >= 0 and a >= b, got x={x}, a={a}, b={b}, c={c}.")
    return x * (c + b) / (c * (c + a))


# @intent:responsibility 真値 x が [lower, upper] にあるとき、推定値 estimate の相対誤差の上界を返します。
# @intent:pre-condition sign(lower) = sign(upper) ≠ 0。
def relative_error_bound(lower: float, upper: float, estimate: float) -> float:
    if lower == 0.0 or upper == 0.0 or (lower > 0.0) != (upper > 0.0):
        raise InputError(f"Bounds must share a nonzero sign, got lower={lower}, upper={upper}.")
    return max(upper - estimate, estimate - lower) / min(abs(lower), abs(upper))
