import numpy as np
import pytest

from nvee.engine.exceptions import NveeError
from nvee.engine.structures import field as ff


class TestPrimeField:
    """
    Linear algebra over F_p
    Target: src/nvee/engine/structures/field.py
    """

    def test_tc_field_001_prime_check(self):
        """TC-FIELD-001: 素数でない位数は拒否"""
        assert ff.check_prime(5) == 5
        with pytest.raises(NveeError, match="prime"):
            ff.check_prime(4)

    def test_tc_field_002_inverse(self):
        """TC-FIELD-002: 乗法逆元"""
        assert ff.inverse(2, 5) == 3
        assert ff.inverse(-1, 3) == 2

    def test_tc_field_003_rank_depends_on_field(self):
        """
        TC-FIELD-003: Rank per Field
        [[1, 2], [2, 1]] の行列式は -3 なので F_3 では階数 1、F_2 では 2
        """
        a = np.array([[1, 2], [2, 1]])

        assert ff.rank(a, 3) == 1
        assert ff.rank(a, 2) == 2
        assert ff.rank(np.zeros((0, 3), dtype=np.int64), 2) == 0

    def test_tc_field_004_nullspace(self):
        """TC-FIELD-004: 核の基底"""
        a = np.array([[1, 1]])

        basis = ff.nullspace(a, 2)

        assert basis.shape == (2, 1)
        assert not np.mod(a @ basis, 2).any()
        assert ff.nullspace(np.zeros((0, 2), dtype=np.int64), 3).shape == (2, 2)

    def test_tc_field_005_solve(self):
        """TC-FIELD-005: a x = b の解"""
        a = np.array([[1, 1], [0, 1]])
        x = ff.solve(a, np.array([1, 1]), 2)

        assert x.tolist() == [[0], [1]]

    def test_tc_field_006_inconsistent(self):
        """TC-FIELD-006: 解がなければ None"""
        a = np.array([[1], [1]])
        b = np.array([[0], [1]])

        assert ff.solve(a, b, 3) is None
        assert not ff.is_consistent(a, b, 3)

    def test_tc_field_007_no_unknowns(self):
        """TC-FIELD-007: 未知数 0 個なら b = 0 のときだけ解がある"""
        empty = np.zeros((2, 0), dtype=np.int64)
        assert ff.solve(empty, np.zeros((2, 1), dtype=np.int64), 2).shape == (0, 1)
        assert ff.solve(empty, np.array([[0], [1]]), 2) is None

    def test_tc_field_008_extend_to_basis(self):
        """TC-FIELD-008: 独立な列を可逆行列に補完する"""
        a = np.array([[1], [1]])

        full = ff.extend_to_basis(a, 2)

        assert full.shape == (2, 2)
        assert ff.rank(full, 2) == 2
        assert full[:, 0].tolist() == [1, 1]

    def test_tc_field_009_column_basis(self):
        """TC-FIELD-009: 像の基底は主成分列"""
        a = np.array([[1, 1, 0], [0, 0, 1]])
        assert ff.column_basis(a, 2).tolist() == [[1, 0], [0, 1]]
