# tests/linalg/test_buffer.py
"""
adaptive_cholesky_gp.linalg.buffer の単体テスト。
"""
import numpy as np
import pytest

from adaptive_cholesky_gp.common.errors import InputError
from adaptive_cholesky_gp.linalg.buffer import FactorBuffer

# @intent:test_suite 事前確保された因子バッファのカウンタとビューを検証します。


class TestFactorBuffer:
    @pytest.mark.parametrize("capacity", [0, -1, 1.5])
    def test_invalid_capacity(self, capacity):
        with pytest.raises(InputError, match="Buffer capacity must be a positive integer."):
            FactorBuffer(capacity)

    # @intent:test_case_views ビューが s, t に応じた領域を指し、書き込みが共有されることを検証します。
    def test_views_follow_counters(self):
        buf = FactorBuffer(6)
        buf.extend(2)
        buf.pending[...] = [[4.0, 0.0], [2.0, 5.0]]
        buf.pending_alpha[...] = [1.0, 2.0]
        buf.commit()
        assert (buf.s, buf.t) == (2, 2)
        np.testing.assert_array_equal(buf.factor, [[4.0, 0.0], [2.0, 5.0]])
        buf.extend(5)
        assert buf.panel.shape == (3, 2)
        assert buf.pending.shape == (3, 3)
        buf.panel[...] = 7.0
        assert buf.A[4, 1] == 7.0

    # @intent:test_case_bounds 容量を超える拡張や後退が拒否されることを検証します。
    def test_extend_out_of_range(self):
        buf = FactorBuffer(4)
        with pytest.raises(InputError, match="Cannot extend"):
            buf.extend(5)
        buf.extend(3)
        with pytest.raises(InputError, match="Cannot extend"):
            buf.extend(2)

    # @intent:test_case_export エクスポートはコピーであることを検証します。
    def test_export_copies(self):
        buf = FactorBuffer(3)
        buf.extend(2)
        buf.pending[...] = np.eye(2)
        buf.commit()
        factor, alpha = buf.export()
        factor[0, 0] = 9.0
        assert buf.A[0, 0] == 1.0
        assert alpha.shape == (2,)
