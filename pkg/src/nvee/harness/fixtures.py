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

"""
既知の例題を実行可能なフィクスチャとして埋め込む。
"""

import logging
from typing import Any

from nvee.types import Barcode, ConvexModule, ExampleName, Poset, SolverOptions, Weight
from nvee.engine.metrics.interleaving import (
    build_system,
    interleaving_distance,
    solve_over_field,
    variety_staircase,
)
from nvee.engine.structures.poset import build_nvee, build_poset, suspend, with_shape
from nvee.engine.structures.translations import maximal_translation
from nvee.engine.rules import vee
from nvee.utils import parse_support

logger = logging.getLogger(__name__)

# X vs Y⊕Z を Λ_a で比べたときの方程式（α = lam[0,0], β = lam[0,1], λ = mu[0,0], μ = mu[1,0]）
EX4_XYZ_EQUATIONS = frozenset({
    "lam[0,0]*mu[0,0] + lam[0,1]*mu[1,0] = 1",
    "lam[0,0]*mu[0,0] = 1",
    "lam[0,1]*mu[0,0] = 0",
})
EX4_XYZ_COUNTS = {2: 2, 3: 6}
EX4_GL2_COUNTS = {2: 6, 3: 48}


def _weight(weight) -> Weight:
    return weight if isinstance(weight, Weight) else Weight(a=weight[0], b=weight[1])


def ex4_poset(weight=(1, 2)) -> Poset:
    return build_nvee([3, 6], _weight(weight))


def ex4_modules(p: Poset) -> dict[str, ConvexModule]:
    return {
        "A": parse_support(p, "m,x1,x2,y1,y2"),
        "B": parse_support(p, "m,x1,x2,y1"),
        "C": parse_support(p, "m,x1,x2,y1,y2"),
        "D": parse_support(p, "m,x1,y1,y2"),
        "X": parse_support(p, "y3,y4,y5"),
        "Y": parse_support(p, "y3,y4,y5"),
        "Z": parse_support(p, "y4,y5"),
    }


def exnew_poset(weight=(1, 2)) -> Poset:
    return build_nvee([3], _weight(weight))


def exnew_modules(p: Poset) -> dict[str, ConvexModule]:
    return {
        "A": parse_support(p, "m,x1,x2"),
        "B": parse_support(p, "m,x1"),
        "C": parse_support(p, "m"),
    }


def _general(size: int, covers, weight=None) -> Poset:
    p = build_poset(size, covers)
    verdict = vee.classify(p)
    if verdict.ok:
        p = with_shape(p, verdict.shape)
    return suspend(p, _weight(weight)) if weight is not None else p


def chain_poset(length: int = 6, weight=(1, 1)) -> Poset:
    """1 < 2 < … < length"""
    return _general(length, [(i, i + 1) for i in range(length - 1)], weight)


def diamond_poset(weight=(1, 1)) -> Poset:
    """1 < 2, 3 < 4（E）"""
    return _general(4, [(0, 1), (0, 2), (1, 3), (2, 3)], weight)


def poset_f(weight=(1, 1)) -> Poset:
    """被覆 1→2, 1→3, 2→4, 3→4, 3→5, 4→6, 5→6"""
    return _general(6, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)], weight)


def two_maxima_poset() -> Poset:
    """0 < 1 < 2, 1 < 3（未懸垂。固定点は {1, 2, 3}）"""
    p = build_poset(4, [(0, 1), (1, 2), (1, 3)], labels=["0", "1", "2", "3"])
    return p


def asymmetric_three_vee(weight=(1, 1)) -> Poset:
    return build_nvee([1, 2, 3], _weight(weight))


# --- 再現 ---

def _check(name: str, expected: Any, actual: Any) -> dict:
    return {"check": name, "expected": expected, "actual": actual, "ok": expected == actual}


def reproduce(name: str | ExampleName) -> dict:
    """
    既知の例題を再計算し、期待値との照合結果を返す。

    Returns:
        {"example", "skipped", "checks": [...], "ok"} の辞書
    """
    name = ExampleName(name)
    if name == ExampleName.EX3:
        return {
            "example": name.value,
            "skipped": True,
            "reason": "supports of this example are not recoverable",
            "checks": [],
            "ok": True,
        }
    checks = _reproduce_ex4() if name == ExampleName.EX4 else _reproduce_exnew()
    return {
        "example": name.value,
        "skipped": False,
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
    }


def _reproduce_ex4() -> list[dict]:
    p = ex4_poset()
    mods = ex4_modules(p)
    shift = maximal_translation(p, p.weight.a)
    exhaustive = SolverOptions(allow_random=False)
    checks = []

    x = Barcode(bars=(mods["X"],))
    yz = Barcode(bars=(mods["Y"], mods["Z"]))
    system = build_system(p, x, yz, shift, shift)
    checks.append(_check("X vs Y+Z equations", sorted(EX4_XYZ_EQUATIONS), sorted(system.render())))
    for q, expected in EX4_XYZ_COUNTS.items():
        found = solve_over_field(system, q, count=True, options=exhaustive).count
        checks.append(_check(f"X vs Y+Z points over F_{q}", expected, found))

    ab = Barcode(bars=(mods["A"], mods["B"]))
    cd = Barcode(bars=(mods["C"], mods["D"]))
    system = build_system(p, ab, cd, shift, shift)
    for q, expected in EX4_GL2_COUNTS.items():
        found = solve_over_field(system, q, count=True, options=exhaustive).count
        checks.append(_check(f"A+B vs C+D points over F_{q}", expected, found))
    return checks


def _reproduce_exnew() -> list[dict]:
    p = exnew_poset()
    mods = exnew_modules(p)
    a = p.weight.a
    left, right = Barcode(bars=(mods["A"],)), Barcode(bars=(mods["B"],))
    checks = []
    for q in (2, 3):
        rows = variety_staircase(p, left, right, q)
        points = {row["eps"]: row["points"] for row in rows}
        checks.append(_check(f"empty variety at 0 over F_{q}", 0, points.get(0)))
        checks.append(_check(f"points at a over F_{q}", q - 1, points.get(a)))
        checks.append(_check(f"points at 2a over F_{q}", q, points.get(2 * a)))
        tail = sorted({n for eps, n in points.items() if eps >= 3 * a})
        checks.append(_check(f"only the zero point from 3a over F_{q}", [1], tail))
        checks.append(_check(f"D(A,B) over F_{q}", a, interleaving_distance(p, left, right, (q,))[q].distance))
    return checks
