# Copyright (c) 2026 Centillion System, Inc.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import logging
import time
from typing import Optional

from nvee.types import Instance, InstanceReport, SolverOptions, Verdict
from nvee.types.constants import ESCALATION_FIELD
from nvee.utils import barcode_labels

from .exceptions import NveeError
from .metrics import interleaving, matching
from .rules import barcodes, vee
from .structures.poset import with_shape

logger = logging.getLogger(__name__)


def analyze_instance(
    instance: Instance,
    options: Optional[SolverOptions] = None,
    timing: bool = False,
) -> InstanceReport:
    """
    一つのインスタンスについて D（体ごと）と D_B を計算し、証拠を検証して報告する。

    Pipeline Sequence:
      1. Input Guard: n-Vee 判定・バーの凸性・体の検査
      2. Bottleneck: 幅と d_2 から D_B と ε-マッチング
      3. Interleaving: 体ごとの D と証拠
      4. Certificates: マッチング・インターリーブ・対角インターリーブの再検証
      5. Induced Matching: 証拠から誘導されるマッチングの検査
      6. Verdict: D = D_B と証拠の成否から判定

    Args:
        instance: ポセットと二つのバーコード
        options: 解探索の設定
        timing: True なら経過時間を報告に含める

    Returns:
        InstanceReport

    Raises:
        NveeError: 入力が不正、または内部エラーの場合
    """
    started = time.perf_counter()
    p = instance.poset
    if not p.suspended:
        raise NveeError("Instance poset must be suspended", stage="InputGuard")

    try:
        # Step 1: Input Guard
        logger.debug("Starting Phase 1: Input Guard")
        shape = vee.validate(p)
        if p.shape is None:
            p = with_shape(p, shape)
        barcodes.validate_barcode(p, instance.left, "left")
        barcodes.validate_barcode(p, instance.right, "right")
        fields = barcodes.validate_fields(instance.fields)
        notes: list[str] = []

        # Step 2: Bottleneck
        logger.debug("Starting Phase 2: Bottleneck")
        d_b, match = matching.bottleneck_distance(p, instance.left, instance.right)

        # Step 3: Interleaving
        logger.debug("Starting Phase 3: Interleaving")
        results = interleaving.interleaving_distance(p, instance.left, instance.right, fields, options)
        distances = {f: r.distance for f, r in results.items()}

        # Step 4: Certificates
        logger.debug("Starting Phase 4: Certificates")
        certified = matching.check_matching(p, instance.left, instance.right, match).ok
        if not certified:
            notes.append("bottleneck matching failed re-verification")
        for f, r in results.items():
            if r.interleaving is not None:
                ok = interleaving.check_interleaving(p, instance.left, instance.right, r.interleaving)
            else:
                ok = interleaving.zero_interleaving_valid(p, instance.left, instance.right, r.forward, r.backward)
            if not ok:
                certified = False
                notes.append(f"interleaving witness over F_{f} failed re-verification")
            if not r.exhaustive:
                notes.append(f"random search was used over F_{f}")
        if p.shape.asymmetric or len(p.shape.branches) == 1:
            try:
                matching.diagonal_interleaving_from_matching(p, instance.left, instance.right, match, fields[0])
            except NveeError as e:
                certified = False
                notes.append(f"diagonal interleaving from matching failed: {e}")

        # Step 5: Induced Matching
        logger.debug("Starting Phase 5: Induced Matching")
        induced_ok = None
        witness = next((r for r in results.values() if r.interleaving is not None), None)
        if witness is not None and witness.forward == witness.backward:
            try:
                induced = matching.induced_matching_from_interleaving(
                    p, instance.left, instance.right, witness.interleaving
                )
                induced_ok = matching.check_matching(p, instance.left, instance.right, induced).ok
            except NveeError as e:
                induced_ok = False
                notes.append(f"induced matching failed: {e}")

        # Step 6: Verdict
        logger.debug("Starting Phase 6: Verdict")
        verdict = Verdict.PASS
        if any(d < d_b for d in distances.values()):
            verdict = Verdict.FAIL
            notes.append("interleaving distance is below the bottleneck distance")
        elif any(d > d_b for d in distances.values()):
            verdict = Verdict.FAIL
            if ESCALATION_FIELD not in distances:
                extra = interleaving.interleaving_distance(
                    p, instance.left, instance.right, (ESCALATION_FIELD,), options
                )[ESCALATION_FIELD]
                distances[ESCALATION_FIELD] = extra.distance
                if extra.distance == d_b:
                    verdict = Verdict.FIELD_SUSPECT
                    notes.append(f"F_{ESCALATION_FIELD} agrees with the bottleneck distance")
        if verdict == Verdict.PASS and (not certified or induced_ok is False):
            verdict = Verdict.FAIL

        report = InstanceReport(
            seed=instance.seed,
            shape=p.shape.branch_lengths,
            weight=(p.weight.a, p.weight.b),
            left=barcode_labels(p, instance.left),
            right=barcode_labels(p, instance.right),
            bottleneck_distance=d_b,
            interleaving_distances=distances,
            matching=list(match.pairs),
            witness_field=witness.field if witness is not None else None,
            induced_matching_ok=induced_ok,
            verdict=verdict,
            notes=notes,
            elapsed=round(time.perf_counter() - started, 4) if timing else None,
        )
        logger.info(f"Instance {instance.seed} analysed: D_B={d_b}, D={distances}, verdict={verdict}")
        return report

    except NveeError:
        # 既知のエラーはそのまま通過させる
        raise
    except Exception as e:
        # 予期せぬ内部エラー（実装バグやライブラリエラー）をラップする
        logger.error(f"Unexpected analysis error: {str(e)}", exc_info=True)
        raise NveeError(
            message=f"Internal error: {str(e)}",
            stage="Unknown"
        ) from e

