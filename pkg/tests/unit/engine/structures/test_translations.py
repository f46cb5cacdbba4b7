import pytest

from nvee.types import Translation
from nvee.engine.exceptions import BruteForceCapError, NveeError
from nvee.engine.structures import translations as tr
from nvee.engine.structures.poset import build_nvee
from nvee.harness.fixtures import chain_poset


@pytest.fixture
def vee2():
    """1-Vee [2], 重み (1, 1): m=0, x1=1, x2=2, inf=3"""
    return build_nvee([2], (1, 1))


class TestTranslationBasics:
    """
    Translations, heights & composition
    Target: src/nvee/engine/structures/translations.py
    """

    def test_tc_trans_001_identity_and_infinity(self, vee2):
        """TC-TRANS-001: 恒等写像の高さは 0、全て ∞ へ送る写像の高さは d(m, ∞)"""
        assert tr.height(vee2, tr.identity(vee2)) == 0
        assert tr.height(vee2, tr.to_infinity(vee2)) == 3

    @pytest.mark.parametrize("images", [
        (2, 1, 3, 3),  # 単調でない
        (0, 0, 2, 3),  # 膨張的でない
        (0, 1, 2, 2),  # ∞ を動かす
    ])
    def test_tc_trans_002_rejects_non_translations(self, vee2, images):
        """TC-TRANS-002: 平行移動でない像の列は拒否されること"""
        with pytest.raises(NveeError, match="Not a translation"):
            tr.make_translation(vee2, images)

    def test_tc_trans_003_compose_applies_right_first(self):
        """
        TC-TRANS-003: Composition Order
        compose(s, t) は先に t、次に s を適用する
        """
        s = Translation(images=(1, 1, 2))
        t = Translation(images=(0, 2, 2))

        assert tr.compose(s, t).images == (1, 2, 2)
        assert tr.compose(t, s).images == (2, 2, 2)

    def test_tc_trans_004_power_and_dominance(self, vee2):
        """TC-TRANS-004: power と dominates"""
        shift = tr.maximal_translation(vee2, 1)

        assert tr.power(shift, 0) == tr.identity(vee2)
        assert tr.power(shift, 2) == tr.compose(shift, shift)
        assert tr.dominates(vee2, tr.to_infinity(vee2), shift)
        assert not tr.dominates(vee2, tr.identity(vee2), shift)

    def test_tc_trans_005_unsuspended_rejected(self):
        """TC-TRANS-005: 未懸垂ポセットでは平行移動を扱わない"""
        with pytest.raises(NveeError, match="suspended"):
            tr.enumerate_translations(chain_poset(3, weight=None))

    def test_tc_trans_006_enumeration_cap(self):
        """TC-TRANS-006: 全列挙は頂点数の上限を持つ"""
        with pytest.raises(BruteForceCapError):
            tr.enumerate_translations(build_nvee([4, 6], (1, 1)))


class TestMaximalTranslations:
    """極大平行移動と高さのスペクトル"""

    def test_tc_trans_010_thresholds(self, vee2):
        """TC-TRANS-010: 候補閾値は x ≤ y の距離の集合"""
        assert tr.candidate_thresholds(vee2) == (0, 1, 2, 3)

    def test_tc_trans_011_one_vee_shift(self, vee2):
        """
        TC-TRANS-011: 1-Vee Shift
        高さ 1 の最大平行移動は全ての点を一つ上へ送る
        """
        assert tr.maximal_translation(vee2, 0) == tr.identity(vee2)
        assert tr.maximal_translation(vee2, 1).images == (1, 2, 3, 3)
        assert tr.maximal_translation(vee2, 2).images == (2, 3, 3, 3)
        assert tr.maximal_translation(vee2, 3) == tr.to_infinity(vee2)

    def test_tc_trans_012_minimum_moves_into_long_branch_early(self):
        """
        TC-TRANS-012: Minimum Moves Early
        枝長 [1, 2]、重み (1, 1) では高さ 1 で既に m → y1 と動ける
        （x1 → ∞, y1 → y2, y2 → ∞）
        """
        p = build_nvee([1, 2], (1, 1))

        shift = tr.maximal_translation(p, 1)

        assert shift.images == (2, 4, 3, 4, 4)
        assert tr.height(p, shift) == 1

    def test_tc_trans_013_matches_enumeration(self):
        """
        TC-TRANS-013: Brute-Force Agreement
        全列挙した高さ eps 以下の平行移動は、全て Λ_eps に支配される
        """
        p = build_nvee([1, 2], (1, 1))
        everything = tr.enumerate_translations(p)

        for eps in tr.candidate_thresholds(p):
            top = tr.maximal_translation(p, eps)
            assert tr.height(p, top) <= eps
            for t in everything:
                if tr.height(p, t) <= eps:
                    assert tr.dominates(p, top, t), f"{t.images} escapes at eps={eps}"

    def test_tc_trans_014_symmetric_has_no_maximum(self):
        """
        TC-TRANS-014: Symmetric Shapes
        枝長 [1, 1] では m → x1 と m → y1 の二つの極大元があり、最大元はない
        """
        p = build_nvee([1, 1], (1, 1))

        maxima = tr.maximal_translations(p, 1)

        assert {t.images for t in maxima} == {(1, 3, 3, 3), (2, 3, 3, 3)}
        with pytest.raises(NveeError, match="No unique maximal translation"):
            tr.maximal_translation(p, 1)

    def test_tc_trans_015_negative_height(self, vee2):
        """TC-TRANS-015: 負の高さは拒否"""
        with pytest.raises(NveeError, match="non-negative"):
            tr.maximal_translations(vee2, -1)

    def test_tc_trans_016_spectrum(self, vee2):
        """TC-TRANS-016: 高さのスペクトルは全列挙と一致する"""
        assert tr.height_spectrum(vee2) == (0, 1, 2, 3)
        assert tr.brute_force_spectrum(vee2) == tr.height_spectrum(vee2)
