import pytest

from nvee.types import Barcode, MatchMode
from nvee.engine.exceptions import NveeError
from nvee.engine.structures import chain as ch
from nvee.engine.structures.poset import build_nvee

CHAIN = (0, 1, 2)


class TestChainRepresentations:
    """
    Linear representations of chains
    Target: src/nvee/engine/structures/chain.py
    """

    def test_tc_chain_001_to_interval(self):
        """TC-CHAIN-001: 台を鎖の位置の区間に直す"""
        assert ch.to_interval(CHAIN, [1, 2]) == (1, 2)
        assert ch.to_interval(CHAIN, [5]) is None
        with pytest.raises(NveeError, match="not an interval"):
            ch.to_interval(CHAIN, [0, 2])

    def test_tc_chain_002_interval_homs(self):
        """
        TC-CHAIN-002: Interval Homs
        Hom([x, X], [y, Y]) ≠ 0 ⇔ y ≤ x ≤ Y ≤ X
        """
        assert ch.interval_hom_nonzero((1, 2), (0, 1))
        assert not ch.interval_hom_nonzero((0, 1), (1, 2))
        assert not ch.interval_hom_nonzero(None, (0, 1))

    def test_tc_chain_003_rank_invariant_recovers_bars(self):
        """TC-CHAIN-003: 階数不変量から区間分解が復元される"""
        rep = ch.rep_from_intervals(CHAIN, [(1, 1), (0, 2)], 2)

        assert rep.dims == (1, 2, 1)
        assert ch.intervals_of_rep(rep) == [(0, 2), (1, 1)]

    def test_tc_chain_004_barcode_round(self):
        """TC-CHAIN-004: バーコード → 表現 → バーコード"""
        p = build_nvee([2], (1, 1))
        barcode = Barcode.from_supports([(0, 1), (1, 2)])

        rep = ch.rep_from_barcode(ch.chain_of(p), barcode, 3)

        assert ch.barcode_of_rep(rep) == barcode

    def test_tc_chain_005_scalars_ignore_vanishing_homs(self):
        """
        TC-CHAIN-005: Vanishing Components
        Hom([0, 2], [1, 2]) = 0 なので、その成分の係数は無視される
        """
        f = ch.morphism_from_scalars(CHAIN, [(0, 2)], [(0, 2), (1, 2)], [[1], [1]], 2)

        assert ch.commutes(f)
        assert f.components[0].tolist() == [[1]]
        assert f.components[1].tolist() == [[1], [0]]


class TestKernelImageCokernel:
    """核・像・余核"""

    def test_tc_chain_010_injection(self):
        """
        TC-CHAIN-010: Submodule Inclusion
        [1, 2] ↪ [0, 2] は単射で、余核は [0, 0]
        """
        f = ch.morphism_from_scalars(CHAIN, [(1, 2)], [(0, 2)], [[1]], 2)

        ker, im, coker = ch.kernel_image_cokernel(f)

        assert ch.is_injective(f)
        assert not ch.is_surjective(f)
        assert ch.intervals_of_rep(ker) == []
        assert ch.intervals_of_rep(im) == [(1, 2)]
        assert ch.intervals_of_rep(coker) == [(0, 0)]

    def test_tc_chain_011_surjection(self):
        """
        TC-CHAIN-011: Quotient Map
        [0, 2] ↠ [0, 1] は全射で、核は [2, 2]
        """
        f = ch.morphism_from_scalars(CHAIN, [(0, 2)], [(0, 1)], [[1]], 3)

        ker, im, coker = ch.kernel_image_cokernel(f)

        assert ch.is_surjective(f)
        assert ch.intervals_of_rep(ker) == [(2, 2)]
        assert ch.intervals_of_rep(im) == [(0, 1)]
        assert ch.intervals_of_rep(coker) == []

    def test_tc_chain_012_zero_scalar(self):
        """TC-CHAIN-012: 係数 0 の射は核が全体"""
        f = ch.morphism_from_scalars(CHAIN, [(0, 2)], [(0, 2)], [[0]], 2)

        ker, im, _ = ch.kernel_image_cokernel(f)

        assert ch.intervals_of_rep(ker) == [(0, 2)]
        assert ch.intervals_of_rep(im) == []


class TestInducedMatchings:
    """端点を共有するバーの標準マッチング"""

    def test_tc_chain_020_injection_matches_right_ends(self):
        """TC-CHAIN-020: 単射では右端点が一致するバーを長い順に対応させる"""
        pairs = ch.canonical_matching([(1, 2), (2, 2)], [(0, 2), (1, 2)], MatchMode.INJECTION)
        assert pairs == [(0, 0), (1, 1)]

    def test_tc_chain_021_surjection_matches_left_ends(self):
        """TC-CHAIN-021: 全射では左端点が一致するバー同士"""
        pairs = ch.canonical_matching([(0, 2), (1, 1)], [(0, 1)], MatchMode.SURJECTION)
        assert pairs == [(0, 0)]

    def test_tc_chain_022_induced_matching(self):
        """TC-CHAIN-022: 射の種類が違えば拒否"""
        f = ch.morphism_from_scalars(CHAIN, [(1, 2)], [(0, 2)], [[1]], 2)

        source, target, pairs = ch.induced_matching(f, MatchMode.INJECTION)

        assert (source, target, pairs) == ([(1, 2)], [(0, 2)], [(0, 0)])
        with pytest.raises(NveeError, match="not surjective"):
            ch.induced_matching(f, MatchMode.SURJECTION)

    def test_tc_chain_023_endpoint_counts(self):
        """TC-CHAIN-023: 端点ごとのバー数"""
        bars = [(0, 2), (1, 2), (0, 0)]
        assert ch.endpoint_counts(bars, 0) == {0: 2, 1: 1}
        assert ch.endpoint_counts(bars, 1) == {2: 2, 0: 1}

    def test_tc_chain_024_chain_of_needs_shape(self):
        """TC-CHAIN-024: 形状のないポセットでは鎖を取れない"""
        p = build_nvee([2], (1, 1)).model_copy(update={"shape": None})
        with pytest.raises(NveeError, match="n-Vee"):
            ch.chain_of(p)

