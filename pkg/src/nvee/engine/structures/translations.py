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
平行移動（単調・膨張的な自己写像）とその高さ、極大平行移動。
"""

import functools
import logging
from typing import Optional

from nvee.types import NVeeShape, Poset, Translation, Vertex
from nvee.types.constants import TRANSLATION_ENUM_CAP

from ..exceptions import NveeError
from .poset import distance_matrix, inflationary_maps, order_matrix

logger = logging.getLogger(__name__)

STAGE = "Translations"


def _require_suspended(p: Poset) -> int:
    if p.infinity is None:
        raise NveeError("Translations are defined on suspended posets only", stage=STAGE)
    return p.infinity


def identity(p: Poset) -> Translation:
    return Translation(images=tuple(range(p.size)))


def to_infinity(p: Poset) -> Translation:
    """全ての点を ∞ へ送る平行移動（高さ最大）"""
    inf = _require_suspended(p)
    return Translation(images=(inf,) * p.size)


def is_translation(p: Poset, images: tuple[Vertex, ...]) -> bool:
    if len(images) != p.size or any(not 0 <= y < p.size for y in images):
        return False
    leq_m = order_matrix(p)
    if p.infinity is not None and images[p.infinity] != p.infinity:
        return False
    if not all(leq_m[x, images[x]] for x in range(p.size)):
        return False
    return all(leq_m[images[u], images[v]] for u, v in p.covers)


def make_translation(p: Poset, images) -> Translation:
    """
    像の列から平行移動を作る。

    Raises:
        NveeError: 単調でない・膨張的でない・∞ を動かす場合
    """
    images = tuple(int(y) for y in images)
    if not is_translation(p, images):
        raise NveeError(f"Not a translation: {images}", stage=STAGE)
    return Translation(images=images)


def height(p: Poset, t: Translation) -> int:
    """h(Λ) = max_x d(x, Λx)"""
    dist = distance_matrix(p)
    return int(max(dist[x, t.images[x]] for x in range(p.size)))


def compose(s: Translation, t: Translation) -> Translation:
    """
    合成 s∘t（先に t、次に s）。

    モジュールへの作用は (MΛ)Γ = M(ΛΓ) なので、
    act(act(m, s), t) == act(m, compose(s, t)) が成り立つ。
    """
    if len(s.images) != len(t.images):
        raise NveeError("Cannot compose translations of different posets", stage=STAGE)
    return Translation(images=tuple(s.images[y] for y in t.images))


def power(t: Translation, k: int) -> Translation:
    result = Translation(images=tuple(range(len(t.images))))
    for _ in range(k):
        result = compose(t, result)
    return result


def dominates(p: Poset, s: Translation, t: Translation) -> bool:
    """全ての x で t(x) ≤ s(x) なら True"""
    leq_m = order_matrix(p)
    return all(leq_m[b, a] for a, b in zip(s.images, t.images))


def enumerate_translations(p: Poset, cap: int = TRANSLATION_ENUM_CAP) -> list[Translation]:
    """全ての平行移動を列挙する（小さなポセット専用）"""
    _require_suspended(p)
    return [Translation(images=images) for images in inflationary_maps(p, cap)]


@functools.lru_cache(maxsize=256)
def candidate_thresholds(p: Poset) -> tuple[int, ...]:
    """
    距離が変化し得る閾値 {d(x, y) : x ≤ y} を昇順に返す。
    高さは必ずこの集合に属する。
    """
    dist = distance_matrix(p)
    leq_m = order_matrix(p)
    return tuple(sorted({int(dist[x, y]) for x in range(p.size) for y in range(p.size) if leq_m[x, y]}))


def _keep_maxima(p: Poset, feasible: list[tuple[Vertex, ...]]) -> tuple[Translation, ...]:
    leq_m = order_matrix(p)
    unique = sorted(set(feasible))
    maxima = []
    for t in unique:
        dominated = any(
            u != t and all(leq_m[a, b] for a, b in zip(t, u)) for u in unique
        )
        if not dominated:
            maxima.append(Translation(images=t))
    return tuple(maxima)


def _greedy_with_minimum_image(
    p: Poset, shape: NVeeShape, eps: int, c: Vertex
) -> Optional[tuple[Vertex, ...]]:
    """
    Λ(m) = c を固定したときの高さ eps 以下の最大の平行移動を作る。

    各枝を上から順に、直前に決めた像を上限として
    「距離 eps 以内かつ c 以上」の最も高い点を選ぶ。候補が尽きれば None。
    """
    inf = p.infinity
    dist = distance_matrix(p)
    leq_m = order_matrix(p)
    images = list(range(p.size))
    images[shape.minimum] = c
    for branch in shape.branches:
        ladder = list(branch) + [inf]
        bound = len(ladder) - 1
        for k in range(len(branch) - 1, -1, -1):
            x = branch[k]
            chosen = None
            for pos in range(bound, k - 1, -1):
                y = ladder[pos]
                if dist[x, y] <= eps and leq_m[c, y]:
                    chosen = pos
                    break
            if chosen is None:
                return None
            images[x] = ladder[chosen]
            bound = chosen
    return tuple(images)


@functools.lru_cache(maxsize=1024)
def maximal_translations(p: Poset, eps: int) -> tuple[Translation, ...]:
    """
    高さ eps 以下の平行移動のうち極大なものを全て返す。

    n-Vee では Λ(m) の候補ごとに最大の平行移動を構成し、その中の極大元を取る。
    非対称な n-Vee では結果は一つだが、対称な形状では複数になり得る。
    一般のポセットでは全列挙に頼る。
    """
    _require_suspended(p)
    if eps < 0:
        raise NveeError(f"Height bound must be non-negative: {eps}", stage=STAGE)

    if p.shape is None:
        feasible = [t.images for t in enumerate_translations(p) if height(p, t) <= eps]
        return _keep_maxima(p, feasible)

    dist = distance_matrix(p)
    leq_m = order_matrix(p)
    m = p.shape.minimum
    feasible = []
    for c in range(p.size):
        if leq_m[m, c] and dist[m, c] <= eps:
            candidate = _greedy_with_minimum_image(p, p.shape, eps, c)
            if candidate is not None:
                feasible.append(candidate)
    return _keep_maxima(p, feasible)


def maximal_translation(p: Poset, eps: int) -> Translation:
    """
    高さ eps 以下の最大の平行移動 Λ_eps を返す。

    Raises:
        NveeError: 最大元が存在しない（対称な形状などで極大元が複数ある）場合
    """
    maxima = maximal_translations(p, eps)
    if len(maxima) == 1:
        return maxima[0]
    raise NveeError(
        f"No unique maximal translation at height {eps}: {len(maxima)} maxima",
        stage=STAGE,
    )


def height_spectrum(p: Poset) -> tuple[int, ...]:
    """極大平行移動の高さとして現れる値の集合 T(P)"""
    values = set()
    for eps in candidate_thresholds(p):
        for t in maximal_translations(p, eps):
            values.add(height(p, t))
    return tuple(sorted(values))


def brute_force_spectrum(p: Poset, cap: int = TRANSLATION_ENUM_CAP) -> tuple[int, ...]:
    """全列挙による T(P)。height_spectrum の検算用"""
    everything = enumerate_translations(p, cap)
    heights = {t.images: height(p, t) for t in everything}
    values = set()
    for eps in candidate_thresholds(p):
        feasible = [images for images, h in heights.items() if h <= eps]
        for t in _keep_maxima(p, feasible):
            values.add(heights[t.images])
    return tuple(sorted(values))
