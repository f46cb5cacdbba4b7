import pytest

from nvee.types import Barcode, Interleaving, Matching, ScalarMorphism
from nvee.engine.exceptions import HallViolation, NveeError
from nvee.engine.metrics import matching as mt
from nvee.engine.metrics.interleaving import check_interleaving, interleaving_distance
from nvee.engine.structures.convex import make_module
from nvee.engine.structures.poset import build_nvee
from nvee.engine.structures.translations import identity, maximal_translation
from nvee.harness.fixtures import exnew_modules, exnew_poset


@pytest.fixture
def vee2():
    """1-Vee [2]、重み (1, 1): m=0, x1=1, x2=2, inf=3"""
    return build_nvee([2], (1, 1))


def _bars(p, *supports):
    return Barcode(bars=tuple(make_module(p, s) for s in supports))


class TestHalfMatching:
    """
    Hall's condition & half matchings
    Target: src/nvee/engine/metrics/matching.py
    """

    def test_tc_match_001_example_assignment(self):
        """
        TC-MATCH-001: Tight Sets First
        タイト集合 {4}, {5} を先に割り当ててから残りを決める
        """
        options = {1: {"a", "b", "d"}, 2: {"b", "c", "e"}, 3: {"a", "c", "d"}, 4: {"d"}, 5: {"e"}}

        result = mt.half_matching([1, 2, 3, 4, 5], options)

        assert result == {1: "a", 2: "b", 3: "c", 4: "d", 5: "e"}

    def test_tc_match_002_hall_violation(self):
        """TC-MATCH-002: 二つの点が一つの候補を取り合うと witness 付きで失敗する"""
        with pytest.raises(HallViolation, match="Hall's condition fails") as exc_info:
            mt.half_matching([1, 2], {1: {"a"}, 2: {"a"}})

        assert exc_info.value.witness == (1, 2)
        assert exc_info.value.stage == "Matching"

    def test_tc_match_003_hall_holds(self):
        """TC-MATCH-003: Hall の条件が成り立てば witness はない"""
        assert mt.hall_witness([1, 2], {1: {"a", "b"}, 2: {"a"}}) is None

    def test_tc_match_004_large_sets_use_max_matching(self):
        """TC-MATCH-004: 上限を超えると最大マッチングで代用する"""
        result = mt.half_matching([1, 2], {1: {"a", "b"}, 2: {"b"}}, subset_cap=1)

        assert result == {1: "a", 2: "b"}

    def test_tc_match_005_empty(self):
        """TC-MATCH-005: 空の入力"""
        assert mt.half_matching([], {}) == {}


class TestBottleneck:
    """
    Epsilon matchings & bottleneck distance
    Target: src/nvee/engine/metrics/matching.py
    """

    def test_tc_match_006_identical(self, vee2):
        """TC-MATCH-006: 同じバー同士は 0 で対応する"""
        bars = _bars(vee2, [0])

        d_b, match = mt.bottleneck_distance(vee2, bars, bars)

        assert d_b == 0
        assert match.pairs == ((0, 0),)
        assert match.eps == 0

    def test_tc_match_007_empty_against_simple(self):
        """
        TC-MATCH-007: Unmatched Bar
        空のバーコードとの距離は {m} の幅 a
        """
        p = exnew_poset()

        d_b, match = mt.bottleneck_distance(p, Barcode(), _bars(p, [0]))

        assert d_b == p.weight.a
        assert match.pairs == ()

    def test_tc_match_008_exnew(self):
        """TC-MATCH-008: {m, x1, x2} と {m, x1} の D_B は a"""
        p = exnew_poset()
        mods = exnew_modules(p)
        left, right = Barcode(bars=(mods["A"],)), Barcode(bars=(mods["B"],))

        d_b, match = mt.bottleneck_distance(p, left, right)

        assert d_b == p.weight.a
        assert mt.check_matching(p, left, right, match).ok

    def test_tc_match_009_below_bottleneck(self):
        """TC-MATCH-009: D_B 未満の eps ではマッチングがない"""
        p = exnew_poset()
        mods = exnew_modules(p)

        assert mt.epsilon_matching(p, Barcode(bars=(mods["A"],)), Barcode(bars=(mods["B"],)), 0) is None


class TestCheckMatching:
    """
    Matching re-verification
    Target: src/nvee/engine/metrics/matching.py
    """

    def test_tc_match_010_unmatched_wide_bar(self, vee2):
        """TC-MATCH-010: 幅が eps を超えるバーが対応していない"""
        bars = _bars(vee2, [0])

        verdict = mt.check_matching(vee2, bars, bars, Matching(pairs=(), eps=0))

        assert not verdict.ok
        assert "unmatched" in verdict.reason

    def test_tc_match_011_not_injective(self, vee2):
        """TC-MATCH-011: 同じバーへ二度対応させている"""
        verdict = mt.check_matching(
            vee2, _bars(vee2, [0], [1]), _bars(vee2, [0]), Matching(pairs=((0, 0), (1, 0)), eps=3)
        )

        assert not verdict.ok
        assert "not injective" in verdict.reason

    def test_tc_match_012_no_eps(self, vee2):
        """TC-MATCH-012: eps を持たないマッチング"""
        bars = _bars(vee2, [0])

        assert mt.check_matching(vee2, bars, bars, Matching(pairs=((0, 0),))).reason == "Matching carries no eps"

    def test_tc_match_013_out_of_range(self, vee2):
        """TC-MATCH-013: 範囲外の添字"""
        bars = _bars(vee2, [0])

        verdict = mt.check_matching(vee2, bars, bars, Matching(pairs=((0, 1),), eps=0))

        assert "out of range" in verdict.reason


class TestInterleavingMatchings:
    """
    Diagonal interleavings & induced matchings
    Target: src/nvee/engine/metrics/matching.py
    """

    def test_tc_match_014_diagonal_interleaving(self, vee2):
        """TC-MATCH-014: ε-マッチングから作った対角インターリーブは検証を通る"""
        bars = _bars(vee2, [0, 1], [2])
        _, match = mt.bottleneck_distance(vee2, bars, bars)

        result = mt.diagonal_interleaving_from_matching(vee2, bars, bars, match)

        assert result.phi.entries == ((1, 0), (0, 1))
        assert check_interleaving(vee2, bars, bars, result)

    def test_tc_match_015_diagonal_rejects_bad_matching(self, vee2):
        """TC-MATCH-015: 許容的でないマッチングからは作らない"""
        bars = _bars(vee2, [0])

        with pytest.raises(NveeError, match="Matching is not admissible"):
            mt.diagonal_interleaving_from_matching(vee2, bars, bars, Matching(pairs=(), eps=0))

    def test_tc_match_016_induced_identical(self, vee2):
        """
        TC-MATCH-016: Induced Matching on a Chain
        同じバーの間の恒等インターリーブは、そのバー同士の対応を誘導する
        """
        bars = _bars(vee2, [0, 1])
        witness = interleaving_distance(vee2, bars, bars, (2,))[2].interleaving

        induced = mt.induced_matching_from_interleaving(vee2, bars, bars, witness)

        assert induced.pairs == ((0, 0),)
        assert induced.eps == 0

    def test_tc_match_017_induced_needs_equal_translations(self, vee2):
        """TC-MATCH-017: Λ ≠ Γ のインターリーブからは誘導しない"""
        bars = _bars(vee2, [0])
        mixed = Interleaving(
            forward=identity(vee2),
            backward=maximal_translation(vee2, 1),
            phi=ScalarMorphism(field=2, entries=((1,),)),
            psi=ScalarMorphism(field=2, entries=((1,),)),
            field=2,
        )

        with pytest.raises(NveeError, match="Induced matchings need a"):
            mt.induced_matching_from_interleaving(vee2, bars, bars, mixed)
