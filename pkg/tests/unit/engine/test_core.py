import pytest
from unittest.mock import patch

from nvee import analyze_instance
from nvee.types import Barcode, DistanceResult, Instance, Matching, MatchingVerdict, Verdict
from nvee.engine.exceptions import NveeError
from nvee.engine.structures.convex import make_module
from nvee.engine.structures.poset import build_nvee, build_poset


@pytest.fixture
def vee1():
    """1-Vee [1]、重み (1, 1): m=0, x1=1, inf=2"""
    return build_nvee([1], (1, 1))


def _per_field(distance, overrides=None):
    """interleaving_distance の代わり: 要求された体ごとに距離を返す"""
    overrides = overrides or {}
    return lambda p, left, right, fields, options=None: {
        f: DistanceResult(distance=overrides.get(f, distance), field=f) for f in fields
    }


def _instance(p, left, right, fields=(2, 3)):
    return Instance(
        seed=7,
        poset=p,
        left=Barcode(bars=tuple(make_module(p, s) for s in left)),
        right=Barcode(bars=tuple(make_module(p, s) for s in right)),
        fields=fields,
    )


class TestAnalyzeInstance:
    """
    Analysis facade
    Target: src/nvee/engine/core.py
    """

    @pytest.fixture
    def mocks(self):
        """距離計算の各モジュールをMock化する"""
        with patch("nvee.engine.core.vee") as mock_vee, \
             patch("nvee.engine.core.barcodes") as mock_barcodes, \
             patch("nvee.engine.core.matching") as mock_matching, \
             patch("nvee.engine.core.interleaving") as mock_interleaving:

            yield {
                "vee": mock_vee,
                "barcodes": mock_barcodes,
                "matching": mock_matching,
                "interleaving": mock_interleaving,
            }

    def _arrange(self, mocks, p, d_b, fields=(2,)):
        mocks["vee"].validate.return_value = p.shape
        mocks["barcodes"].validate_fields.return_value = fields
        mocks["matching"].bottleneck_distance.return_value = (d_b, Matching(pairs=(), eps=d_b))
        mocks["matching"].check_matching.return_value = MatchingVerdict(ok=True)
        mocks["interleaving"].zero_interleaving_valid.return_value = True

    def test_tc_core_001_identical_bars_pass(self, vee1):
        """
        TC-CORE-001: End-to-End Pass
        同じバーコード同士は D = D_B = 0 で PASS、誘導マッチングも検証を通る
        """
        instance = _instance(vee1, [[0]], [[0]])

        report = analyze_instance(instance)

        assert report.verdict == Verdict.PASS
        assert report.bottleneck_distance == 0
        assert report.interleaving_distances == {2: 0, 3: 0}
        assert report.matching == [(0, 0)]
        assert report.witness_field == 2
        assert report.induced_matching_ok is True
        assert report.shape == (1,)
        assert report.left == [["m"]]
        assert report.elapsed is None

    def test_tc_core_002_pipeline_order(self, mocks, vee1):
        """
        TC-CORE-002: Pipeline Execution Order
        入力検査 → ボトルネック → インターリーブ → 再検証の順に呼ばれること
        """
        self._arrange(mocks, vee1, 0)
        mocks["interleaving"].interleaving_distance.side_effect = _per_field(0)
        instance = _instance(vee1, [[0]], [[0]])

        report = analyze_instance(instance)

        assert report.verdict == Verdict.PASS
        mocks["vee"].validate.assert_called_once_with(vee1)
        assert mocks["barcodes"].validate_barcode.call_count == 2
        mocks["matching"].bottleneck_distance.assert_called_once_with(vee1, instance.left, instance.right)
        mocks["interleaving"].interleaving_distance.assert_called_once_with(
            vee1, instance.left, instance.right, (2,), None
        )
        mocks["matching"].diagonal_interleaving_from_matching.assert_called_once()
        mocks["matching"].induced_matching_from_interleaving.assert_not_called()

    def test_tc_core_003_below_bottleneck_fails(self, mocks, vee1):
        """TC-CORE-003: D < D_B は FAIL"""
        self._arrange(mocks, vee1, 1)
        mocks["interleaving"].interleaving_distance.side_effect = _per_field(0)

        report = analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert report.verdict == Verdict.FAIL
        assert "interleaving distance is below the bottleneck distance" in report.notes

    def test_tc_core_004_field_suspect(self, mocks, vee1):
        """
        TC-CORE-004: Field Escalation
        D > D_B でも F_5 で一致すれば体依存の疑いとして報告する
        """
        self._arrange(mocks, vee1, 0)
        mocks["interleaving"].interleaving_distance.side_effect = _per_field(1, {5: 0})

        report = analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert report.verdict == Verdict.FIELD_SUSPECT
        assert report.interleaving_distances == {2: 1, 5: 0}

    def test_tc_core_005_above_bottleneck_fails(self, mocks, vee1):
        """TC-CORE-005: F_5 でも D > D_B なら FAIL"""
        self._arrange(mocks, vee1, 0)
        mocks["interleaving"].interleaving_distance.side_effect = _per_field(1)

        report = analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert report.verdict == Verdict.FAIL

    def test_tc_core_006_failed_certificate(self, mocks, vee1):
        """TC-CORE-006: D = D_B でもマッチングの再検証に失敗すれば FAIL"""
        self._arrange(mocks, vee1, 0)
        mocks["interleaving"].interleaving_distance.side_effect = _per_field(0)
        mocks["matching"].check_matching.return_value = MatchingVerdict(ok=False, reason="x")

        report = analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert report.verdict == Verdict.FAIL
        assert "bottleneck matching failed re-verification" in report.notes

    def test_tc_core_007_known_error_passthrough(self, mocks, vee1):
        """TC-CORE-007: NveeError はそのまま通過し、後続は呼ばれない"""
        mocks["vee"].validate.side_effect = NveeError("Not an n-Vee", stage="InputGuard")

        with pytest.raises(NveeError, match="Not an n-Vee") as exc_info:
            analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert exc_info.value.stage == "InputGuard"
        mocks["matching"].bottleneck_distance.assert_not_called()

    def test_tc_core_008_exception_wrapping(self, mocks, vee1):
        """
        TC-CORE-008: Exception Wrapping & Cause Preservation
        想定外の例外は Internal error にラップされ、原因を保持する
        """
        self._arrange(mocks, vee1, 0)
        mocks["matching"].bottleneck_distance.side_effect = RuntimeError("boom")

        with pytest.raises(NveeError, match="Internal error: boom") as exc_info:
            analyze_instance(_instance(vee1, [[0]], [[0]]))

        assert exc_info.value.stage == "Unknown"
        assert isinstance(exc_info.value.__cause__, RuntimeError)

    def test_tc_core_009_unsuspended_poset(self):
        """TC-CORE-009: 懸垂していないポセットは受け付けない"""
        p = build_poset(2, [(0, 1)])
        instance = Instance(seed=0, poset=p, left=Barcode(), right=Barcode())

        with pytest.raises(NveeError, match="must be suspended") as exc_info:
            analyze_instance(instance)

        assert exc_info.value.stage == "InputGuard"

    def test_tc_core_010_timing(self, vee1):
        """TC-CORE-010: timing=True なら経過時間を含める"""
        report = analyze_instance(_instance(vee1, [[0, 1]], [[0, 1]]), timing=True)

        assert report.elapsed is not None
        assert report.elapsed >= 0
