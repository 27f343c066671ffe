# tests/linalg/test_dense.py
"""
adaptive_cholesky_gp.linalg.dense のインプレース・プリミティブの単体テスト。
"""
import numpy as np
import pytest

from adaptive_cholesky_gp.common.errors import InputError, NotPositiveDefiniteError, SingularTriangularError
from adaptive_cholesky_gp.linalg.dense import (chol_in_place, forward_solve, logdet_from_chol, quad_from_alpha,
                                               solve_right_transposed, symmetric_downdate)

# @intent:test_suite Cholesky、三角ソルブ、ダウンデート、累積量の計算を検証します。


def random_spd(seed: int, n: int) -> np.ndarray:
    B = np.random.default_rng(seed).normal(size=(n, n))
    return B @ B.T + np.eye(n)


class TestCholInPlace:
    # @intent:test_case_value 1×1 の分解は平方根であることを検証します。
    def test_scalar(self):
        block = np.array([[4.0]])
        chol_in_place(block)
        np.testing.assert_array_equal(block, [[2.0]])

    def test_identity(self):
        block = np.eye(5)
        chol_in_place(block)
        np.testing.assert_array_equal(block, np.eye(5))

    # @intent:test_case_reconstruct 乱数SPD行列の再構成誤差が ‖M‖_max の 10⁻¹⁰ 倍以内であることを検証します。
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_reconstruction(self, seed):
        M = random_spd(seed, 8)
        L = M.copy()
        chol_in_place(L)
        assert np.allclose(np.triu(L, 1), 0.0)
        assert np.all(np.diagonal(L) > 0.0)
        assert np.max(np.abs(L @ L.T - M)) <= 1e-10 * np.max(np.abs(M))

    # @intent:test_case_view 大きなバッファのビューに対してもインプレースで書き込まれることを検証します。
    def test_writes_through_view(self):
        A = np.zeros((6, 6))
        A[2:5, 2:5] = random_spd(4, 3)
        expected = np.linalg.cholesky(A[2:5, 2:5])
        chol_in_place(A[2:5, 2:5])
        np.testing.assert_allclose(A[2:5, 2:5], expected, rtol=1e-12)

    # @intent:test_case_error 非正定値行列では失敗したピボットのインデックス付きでエラーになることを検証します。
    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError) as excinfo:
            chol_in_place(np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert excinfo.value.index == 1
        with pytest.raises(NotPositiveDefiniteError) as excinfo:
            chol_in_place(np.array([[-1.0]]))
        assert excinfo.value.index == 0
        assert isinstance(excinfo.value, np.linalg.LinAlgError)

    def test_non_square_rejected(self):
        with pytest.raises(InputError, match="square"):
            chol_in_place(np.zeros((2, 3)))


class TestSolveRightTransposed:
    def test_identity_factor(self):
        T = np.array([[2.0, 0.0]])
        solve_right_transposed(T, np.eye(2))
        np.testing.assert_array_equal(T, [[2.0, 0.0]])

    # @intent:test_case_multiply_back 解に Lᵀ を掛けると元の行に戻ることを検証します。
    def test_multiply_back(self):
        L = np.array([[2.0, 0.0], [1.0, 3.0]])
        original = np.array([[3.0, 4.0]])
        T = original.copy()
        solve_right_transposed(T, L)
        np.testing.assert_allclose(T @ L.T, original, atol=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(InputError, match="Cannot solve"):
            solve_right_transposed(np.zeros((2, 3)), np.eye(2))

    # @intent:test_case_error 対角にゼロがある因子は SingularTriangularError になることを検証します。
    def test_singular_factor(self):
        L = np.array([[1.0, 0.0], [1.0, 0.0]])
        with pytest.raises(SingularTriangularError) as excinfo:
            solve_right_transposed(np.ones((1, 2)), L)
        assert excinfo.value.index == 1


class TestSymmetricDowndate:
    def test_zero_update(self):
        C = 2.0 * np.eye(2)
        symmetric_downdate(C, np.zeros((2, 3)))
        np.testing.assert_array_equal(C, 2.0 * np.eye(2))

    # @intent:test_case_value C = 2I, T = [[1],[1]] の手計算結果を検証します。
    def test_two_by_two(self):
        C = 2.0 * np.eye(2)
        symmetric_downdate(C, np.array([[1.0], [1.0]]))
        np.testing.assert_array_equal(np.tril(C), [[1.0, 0.0], [-1.0, 1.0]])

    def test_row_mismatch(self):
        with pytest.raises(InputError, match="does not match"):
            symmetric_downdate(np.eye(2), np.ones((3, 1)))


class TestForwardSolve:
    def test_identity(self):
        np.testing.assert_array_equal(forward_solve(np.eye(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])

    def test_hand_substitution(self):
        np.testing.assert_allclose(forward_solve(np.array([[2.0, 0.0], [1.0, 1.0]]), [2.0, 2.0]), [1.0, 1.0])

    # @intent:test_case_residual 乱数系の残差が ‖v‖∞ の 10⁻¹² 倍以内であることを検証します。
    def test_residual(self):
        rng = np.random.default_rng(9)
        L = np.linalg.cholesky(random_spd(9, 12))
        v = rng.normal(size=12)
        x = forward_solve(L, v)
        assert np.max(np.abs(L @ x - v)) <= 1e-12 * np.max(np.abs(v))

    def test_singular(self):
        with pytest.raises(SingularTriangularError):
            forward_solve(np.array([[0.0, 0.0], [1.0, 1.0]]), [1.0, 1.0])


class TestAccumulators:
    def test_trivial_values(self):
        assert logdet_from_chol(np.eye(4)) == 0.0
        assert quad_from_alpha(np.zeros(4)) == 0.0

    # @intent:test_case_oracle 対数行列式と二次形式が固有値分解・逆行列の結果と一致することを検証します。
    def test_against_dense_oracle(self):
        K = random_spd(21, 10)
        y = np.random.default_rng(21).normal(size=10)
        L = np.linalg.cholesky(K)
        alpha = forward_solve(L, y)
        eig = np.linalg.eigvalsh(K)
        np.testing.assert_allclose(logdet_from_chol(L), np.sum(np.log(eig)), rtol=1e-8)
        np.testing.assert_allclose(quad_from_alpha(alpha), y @ np.linalg.inv(K) @ y, rtol=1e-8)

    def test_nonpositive_diagonal(self):
        with pytest.raises(NotPositiveDefiniteError, match="nonpositive diagonal"):
            logdet_from_chol(np.array([[1.0, 0.0], [0.0, -1.0]]))
