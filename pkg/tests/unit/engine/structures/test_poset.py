import pytest

from nvee.types import Weight
from nvee.engine.exceptions import BruteForceCapError, NveeError
from nvee.engine.structures import poset as po
from nvee.harness.fixtures import ex4_poset, two_maxima_poset


class TestBuildPoset:
    """
    Poset construction & suspension
    Target: src/nvee/engine/structures/poset.py
    """

    def test_tc_poset_001_default_labels(self):
        """
        TC-POSET-001: Default Labels
        ラベル省略時は "1".."n" が振られ、未懸垂であること
        """
        p = po.build_poset(3, [(0, 1), (1, 2)])

        assert p.labels == ("1", "2", "3")
        assert not p.suspended
        assert p.core == (0, 1, 2)

    @pytest.mark.parametrize("covers, message", [
        ([(0, 1), (1, 0)], "cycle"),
        ([(0, 1), (1, 2), (0, 2)], "not transitively reduced"),
        ([(0, 5)], "outside"),
        ([(1, 1)], "self-loop"),
    ])
    def test_tc_poset_002_rejects_bad_covers(self, covers, message):
        """
        TC-POSET-002: Invalid Cover Relations
        閉路・推移辺・範囲外・自己ループは stage=Poset で拒否されること
        """
        with pytest.raises(NveeError, match=message) as excinfo:
            po.build_poset(3, covers)
        assert excinfo.value.stage == "Poset"

    def test_tc_poset_003_suspend_adds_infinity(self):
        """
        TC-POSET-003: Suspension
        ∞ が全ての極大元の上に付き、∞ への辺だけ重み b になること
        """
        base = po.build_poset(3, [(0, 1), (0, 2)])

        p = po.suspend(base, Weight(a=1, b=2))

        assert p.infinity == 3
        assert p.labels[-1] == "inf"
        assert (1, 3) in p.covers and (2, 3) in p.covers
        assert po.distance(p, 0, 1) == 1
        assert po.distance(p, 1, 3) == 2

    def test_tc_poset_004_suspend_twice_fails(self):
        """TC-POSET-004: 懸垂済みのポセットは再懸垂できないこと"""
        p = po.suspend(po.build_poset(1, []), Weight())
        with pytest.raises(NveeError, match="already suspended"):
            po.suspend(p, Weight())


class TestNVee:
    """n-Vee の構築と距離"""

    def test_tc_poset_010_ex4_layout(self):
        """
        TC-POSET-010: Branch Layout
        枝長 (3, 6) の n-Vee の頂点番号・ラベル・形状
        """
        p = ex4_poset()

        assert p.size == 11
        assert p.labels[:4] == ("m", "x1", "x2", "x3")
        assert p.labels[4:10] == ("y1", "y2", "y3", "y4", "y5", "y6")
        assert p.infinity == 10
        assert p.shape.branch_lengths == (3, 6)
        assert p.shape.long_branch == 1

    def test_tc_poset_011_distances_use_shortest_route(self):
        """
        TC-POSET-011: Weighted Distances
        距離は無向の重み付き最短路（最小元経由・∞経由を含む）
        """
        p = ex4_poset()
        x1, x3, y1 = po.vertex_of(p, "x1"), po.vertex_of(p, "x3"), po.vertex_of(p, "y1")

        assert po.distance(p, 0, p.infinity) == 5
        assert po.distance(p, x3, p.infinity) == 2
        assert po.distance(p, x1, y1) == 2

    def test_tc_poset_012_order_queries(self):
        """TC-POSET-012: leq / interval / 極大・極小元"""
        p = ex4_poset()

        assert po.leq(p, 0, 9)
        assert not po.leq(p, 1, 4)
        assert po.interval(p, 0, 2) == (0, 1, 2)
        assert po.maximal_elements(p) == (10,)
        assert po.maximal_elements(p, within=p.core) == (3, 9)
        assert po.minimal_elements(p) == (0,)
        assert po.lower_covers(p, 10) == (3, 9)

    def test_tc_poset_013_rejects_bad_lengths(self):
        """TC-POSET-013: 枝長 0 は拒否されること"""
        with pytest.raises(NveeError, match="positive"):
            po.build_nvee([2, 0], (1, 1))

    @pytest.mark.parametrize("weight", [(0, 1), (1, -2), (1,)])
    def test_tc_poset_016_rejects_bad_weight(self, weight):
        """
        TC-POSET-016: Non-positive Weight
        正でない重みは pydantic の検証エラーではなく NveeError (Poset 段) になること
        """
        with pytest.raises(NveeError, match="Weights must be two positive integers") as exc_info:
            po.build_nvee([2], weight)

        assert exc_info.value.stage == "Poset"

    def test_tc_poset_014_unknown_label(self):
        """TC-POSET-014: 未知のラベル"""
        with pytest.raises(NveeError, match="Unknown vertex label"):
            po.vertex_of(ex4_poset(), "q7")

    def test_tc_poset_015_disconnected_distance(self):
        """TC-POSET-015: 非連結なポセットの距離は定義されない"""
        with pytest.raises(NveeError, match="not connected"):
            po.distance_matrix(po.build_poset(2, []))


class TestInflationaryMaps:
    """膨張的単調写像の列挙と固定点"""

    def test_tc_poset_020_two_chain(self):
        """TC-POSET-020: 2 点の鎖の写像は (0,1) と (1,1) の二つ"""
        p = po.build_poset(2, [(0, 1)])
        assert sorted(po.inflationary_maps(p)) == [(0, 1), (1, 1)]

    def test_tc_poset_021_fixed_points(self):
        """
        TC-POSET-021: Fixed Points
        0 < 1 < 2, 1 < 3 では 1 を動かすと単調性が壊れるので {1, 2, 3} が固定点
        """
        assert po.fixed_points(two_maxima_poset()) == frozenset({1, 2, 3})

    def test_tc_poset_022_cap(self):
        """TC-POSET-022: 頂点数が上限を超えると BruteForceCapError"""
        with pytest.raises(BruteForceCapError) as excinfo:
            list(po.inflationary_maps(ex4_poset()))
        assert excinfo.value.cap == 10
