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

from nvee.types import NVeeCondition, NVeeShape, NVeeVerdict, Poset

from ..exceptions import NveeError
from ..structures.poset import maximal_elements, minimal_elements, order_matrix


def classify(p: Poset) -> NVeeVerdict:
    """
    ポセットが n-Vee かどうかを判定する（懸垂点は無視する）。

    条件は順に
    (1) 最小元 m がちょうど一つ、
    (2) 各極大区間 [m, M_i] が全順序、
    (3) 極大区間同士は m でのみ交わる。

    Args:
        p: 判定対象のポセット

    Returns:
        NVeeVerdict: 成立時は shape を、不成立時は最初に破れた条件を持つ
    """
    core = set(p.core)
    minima = minimal_elements(p, within=core)
    if len(minima) != 1:
        return NVeeVerdict(
            ok=False,
            failed_condition=NVeeCondition.UNIQUE_MINIMUM,
            message=f"Expected a unique minimum, found {len(minima)}",
        )
    m = minima[0]
    leq_m = order_matrix(p)

    intervals = []
    for top in maximal_elements(p, within=core):
        interval = sorted(v for v in core if leq_m[m, v] and leq_m[v, top])
        if not all(leq_m[u, v] or leq_m[v, u] for u in interval for v in interval):
            return NVeeVerdict(
                ok=False,
                failed_condition=NVeeCondition.TOTALLY_ORDERED,
                message=f"Interval [{p.labels[m]}, {p.labels[top]}] is not totally ordered",
            )
        intervals.append((top, interval))

    for i, (top_i, left) in enumerate(intervals):
        for top_j, right in intervals[i + 1:]:
            shared = set(left) & set(right)
            if shared != {m}:
                return NVeeVerdict(
                    ok=False,
                    failed_condition=NVeeCondition.DISJOINT_BRANCHES,
                    message=(
                        f"Intervals below {p.labels[top_i]} and {p.labels[top_j]} share "
                        f"{[p.labels[v] for v in sorted(shared)]}"
                    ),
                )

    branches = sorted(
        (tuple(sorted((v for v in interval if v != m), key=lambda v: int(leq_m[:, v].sum())))
         for _, interval in intervals if len(interval) > 1),
        key=min,
    )
    if not branches:
        return NVeeVerdict(
            ok=False,
            failed_condition=NVeeCondition.TOTALLY_ORDERED,
            message="A single point has no branch",
        )
    return NVeeVerdict(ok=True, shape=NVeeShape(minimum=m, branches=tuple(branches)))


def validate(p: Poset) -> NVeeShape:
    """
    n-Vee であることを検証し、その形状を返す。

    Raises:
        NveeError: n-Vee でない場合
    """
    verdict = classify(p)
    if not verdict.ok:
        raise NveeError(
            f"Not an n-Vee ({verdict.failed_condition}): {verdict.message}",
            stage="InputGuard",
        )
    return verdict.shape
