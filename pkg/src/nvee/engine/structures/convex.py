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
凸加群 I_S の組合せ論的な計算。

凸加群は台だけで決まるので、Hom・平行移動の作用・トリミング・幅は
全て台の上の集合演算として計算する。
"""

import functools
import logging
from collections import deque
from typing import Iterable, Optional

import networkx as nx

from nvee.types import Barcode, CanonicalHom, ConvexModule, Poset, Translation, Vertex
from nvee.types.constants import SIGMA_SUBSET_CAP, SIGMA_VERTEX_CAP, TRANSLATION_ENUM_CAP

from ..exceptions import BruteForceCapError, NveeError
from .poset import hasse_graph, maximal_elements, minimal_elements, order_matrix
from .translations import (
    candidate_thresholds,
    compose,
    enumerate_translations,
    height,
    maximal_translations,
)

logger = logging.getLogger(__name__)

STAGE = "Convex"


def components(p: Poset, vertices: Iterable[Vertex]) -> list[tuple[Vertex, ...]]:
    """頂点集合を Hasse 図の（無向）連結成分に分ける。最小頂点の順に並べる"""
    subset = set(vertices)
    if not subset:
        return []
    sub = hasse_graph(p).subgraph(subset).to_undirected()
    return sorted((tuple(sorted(c)) for c in nx.connected_components(sub)), key=lambda c: c[0])


def is_convex_support(p: Poset, support: Iterable[Vertex]) -> bool:
    """空でなく、懸垂点を含まず、連結かつ区間凸なら True"""
    s = set(support)
    if not s or p.infinity in s:
        return False
    if any(not 0 <= v < p.size for v in s):
        return False
    if len(components(p, s)) != 1:
        return False
    leq_m = order_matrix(p)
    for x in s:
        for y in s:
            if leq_m[x, y]:
                between = {z for z in range(p.size) if leq_m[x, z] and leq_m[z, y]}
                if not between <= s:
                    return False
    return True


def make_module(p: Poset, support: Iterable[Vertex]) -> ConvexModule:
    """
    Raises:
        NveeError: 台が凸でない場合
    """
    s = tuple(support)
    if not is_convex_support(p, s):
        raise NveeError(
            f"Support {[p.labels[v] for v in sorted(set(s))]} is not a connected convex subset",
            stage=STAGE,
        )
    return ConvexModule(support=s)


@functools.lru_cache(maxsize=64)
def enumerate_sigma(
    p: Poset,
    vertex_cap: int = SIGMA_VERTEX_CAP,
    subset_cap: int = SIGMA_SUBSET_CAP,
) -> tuple[ConvexModule, ...]:
    """
    Σ_P（連結な凸部分集合全体）を列挙する。

    連結部分集合を隣接点の追加で幅優先に生成し、凸性で絞り込む。

    Raises:
        BruteForceCapError: 頂点数または生成数が上限を超えた場合
    """
    core = p.core
    if len(core) > vertex_cap:
        raise BruteForceCapError(
            f"Enumeration of convex supports is capped at {vertex_cap} vertices (got {len(core)})",
            stage=STAGE,
            cap=vertex_cap,
        )
    graph = hasse_graph(p).subgraph(core).to_undirected()
    seen: set[frozenset[Vertex]] = {frozenset([v]) for v in core}
    queue = deque(seen)
    while queue:
        current = queue.popleft()
        frontier = set().union(*(graph.neighbors(v) for v in current)) - current
        for v in frontier:
            grown = current | {v}
            if grown not in seen:
                seen.add(grown)
                if len(seen) > subset_cap:
                    raise BruteForceCapError(
                        f"Enumeration of connected subsets exceeded {subset_cap}",
                        stage=STAGE,
                        cap=subset_cap,
                    )
                queue.append(grown)
    convex = [s for s in seen if is_convex_support(p, s)]
    return tuple(ConvexModule(support=tuple(s)) for s in sorted(convex, key=lambda s: (len(s), sorted(s))))


def is_simple(module: ConvexModule) -> bool:
    return len(module.support) == 1


def minimum_of(p: Poset, module: ConvexModule) -> Optional[Vertex]:
    """台の最小元（一意な極小元）。なければ None"""
    minima = minimal_elements(p, within=module.support)
    return minima[0] if len(minima) == 1 else None


@functools.lru_cache(maxsize=65536)
def act(p: Poset, module: ConvexModule, t: Translation) -> Barcode:
    """
    平行移動の作用 MΛ。台は Λ^{-1}(Supp M) で、連結成分ごとに直和分解する。
    """
    pre = [x for x in p.core if t.images[x] in module.vertices]
    return Barcode.from_supports(components(p, pre))


def act_single(p: Poset, module: ConvexModule, t: Translation) -> Optional[ConvexModule]:
    """
    MΛ が 0 なら None、直既約ならその凸加群を返す。

    Raises:
        NveeError: MΛ が二つ以上の直和成分を持つ場合
    """
    result = act(p, module, t)
    if not result.bars:
        return None
    if len(result.bars) > 1:
        raise NveeError(
            f"Translate of {module.support} splits into {len(result.bars)} summands",
            stage=STAGE,
        )
    return result.bars[0]


def act_barcode(p: Poset, barcode: Barcode, t: Translation) -> Barcode:
    bars: list[ConvexModule] = []
    for m in barcode.bars:
        bars.extend(act(p, m, t).bars)
    return Barcode(bars=tuple(bars))


@functools.lru_cache(maxsize=65536)
def _hom_components(p: Poset, source: ConvexModule, target: ConvexModule) -> tuple[tuple[Vertex, ...], ...]:
    leq_m = order_matrix(p)
    src, tgt = source.vertices, target.vertices
    valid = []
    for comp in components(p, src & tgt):
        cset = set(comp)
        # (a) 共通部分の成分は source の中で下に閉じ、(b) target の中で上に閉じる
        down_closed = all(y in cset for y in src for x in comp if leq_m[y, x])
        up_closed = all(y in cset for y in tgt for x in comp if leq_m[x, y])
        if down_closed and up_closed:
            valid.append(comp)
    return tuple(valid)


def hom_dim(p: Poset, source: Optional[ConvexModule], target: Optional[ConvexModule]) -> int:
    """
    dim Hom(I_S, I_T)。S∩T の連結成分のうち、S で下に閉じ T で上に閉じるものの個数。
    一方が 0 加群（None）なら 0。
    """
    if source is None or target is None:
        return 0
    return len(_hom_components(p, source, target))


def hom_to_barcode(p: Poset, source: ConvexModule, target: Barcode) -> int:
    return sum(hom_dim(p, source, m) for m in target.bars)


def canonical_hom(p: Poset, source: Optional[ConvexModule], target: Optional[ConvexModule]) -> CanonicalHom:
    """標準射 Φ_{source,target}（Hom が 0 なら零射）"""
    if source is None or target is None:
        return CanonicalHom(source=source, target=target, nonzero=False)
    comps = _hom_components(p, source, target)
    support = tuple(sorted(v for c in comps for v in c))
    return CanonicalHom(source=source, target=target, nonzero=bool(comps), support=support)


def compose_canonical(p: Poset, f: CanonicalHom, g: CanonicalHom) -> tuple[CanonicalHom, int]:
    """
    g∘f = c·Φ_{A,C} となる c ∈ {0, 1} を求める（f: A → B, g: B → C）。

    Raises:
        NveeError: f の値域と g の定義域が一致しない場合
    """
    if f.target != g.source:
        raise NveeError("Canonical homs are not composable", stage=STAGE)
    result = canonical_hom(p, f.source, g.target)
    if not (f.nonzero and g.nonzero and result.nonzero):
        return result, 0
    overlap = set(f.support) & set(g.support)
    return result, int(bool(overlap))


def structure_map_nonzero(p: Poset, module: Optional[ConvexModule], t: Translation) -> bool:
    """標準射 M → MΘ（x ↦ Θx の構造写像）が 0 でないか"""
    if module is None:
        return False
    return any(t.images[x] in module.vertices for x in module.support)


def _per_bar(p: Poset, barcode: Barcode, t: Translation, trim) -> Barcode:
    bars: list[ConvexModule] = []
    for m in barcode.bars:
        bars.extend(trim(p, m, t).bars)
    return Barcode(bars=tuple(bars))


def trim_plus(p: Poset, module: ConvexModule | Barcode, t: Translation) -> Barcode:
    """
    M^{+Γ}: 極小元 a と極大元 b の組ごとの区間 [Γa, b] の和集合。
    バーコードを渡した場合は各バーに適用して直和を取る。
    """
    if isinstance(module, Barcode):
        return _per_bar(p, module, t, trim_plus)
    leq_m = order_matrix(p)
    s = module.vertices
    keep: set[Vertex] = set()
    for a in minimal_elements(p, within=s):
        for b in maximal_elements(p, within=s):
            if leq_m[a, b]:
                ga = t.images[a]
                keep |= {y for y in p.core if leq_m[ga, y] and leq_m[y, b]}
    return Barcode.from_supports(components(p, keep))


def trim_minus(p: Poset, module: ConvexModule | Barcode, t: Translation) -> Barcode:
    """
    M^{-Γ}（n-Vee 上）: 最小元 x と各極大元 X_i について
    X_i^N = max{y ≥ x : Γy ≤ X_i} を取り、区間 [x, X_i^N] の和集合を返す。
    """
    if isinstance(module, Barcode):
        return _per_bar(p, module, t, trim_minus)
    x = minimum_of(p, module)
    if x is None:
        raise NveeError("Trimming from below needs a support with a minimum", stage=STAGE)
    leq_m = order_matrix(p)
    keep: set[Vertex] = set()
    for top in maximal_elements(p, within=module.vertices):
        below = [y for y in module.support if leq_m[x, y] and leq_m[y, top] and leq_m[t.images[y], top]]
        if below:
            peak = max(below, key=lambda y: int(leq_m[:, y].sum()))
            keep |= {y for y in module.support if leq_m[x, y] and leq_m[y, peak]}
    return Barcode.from_supports(components(p, keep))


def _vanishes(p: Poset, module: ConvexModule, forward: Translation, backward: Translation) -> bool:
    return hom_to_barcode(p, module, act(p, module, compose(forward, backward))) == 0


@functools.lru_cache(maxsize=65536)
def width(p: Poset, module: ConvexModule) -> int:
    """
    W(σ): ある極大平行移動の組 (Λ, Γ) で Hom(σ, σΛΓ) = 0 となる最小の閾値。
    非対称な n-Vee では Λ = Γ = Λ_eps の場合に一致する。
    """
    for eps in candidate_thresholds(p):
        maxima = maximal_translations(p, eps)
        if any(_vanishes(p, module, f, g) for f in maxima for g in maxima):
            return eps
    raise NveeError(f"Width of {module.support} is undefined", stage=STAGE)


def width_forms(p: Poset, module: ConvexModule, cap: int = TRANSLATION_ENUM_CAP) -> tuple[int, int, int]:
    """
    幅の三通りの定義を全列挙で計算する。

    Returns:
        (W1, W2, W3): 組 (Λ, Γ) の最大高さの最小値、Λ² の高さの最小値、極大平行移動での最小閾値
    """
    x0 = minimum_of(p, module)
    if x0 is None:
        raise NveeError("Width forms need a support with a minimum", stage=STAGE)
    s = module.vertices
    everything = [(height(p, t), t) for t in enumerate_translations(p, cap)]
    levels = sorted({h for h, _ in everything})

    w1 = None
    for eps in levels:
        pool = [t for h, t in everything if h <= eps]
        reach = {g.images[x0] for g in pool}
        # Hom(σ, σΛΓ) ≠ 0 ⇔ ΛΓ(x0) ∈ Supp σ（x0 は台の最小元）
        if any(f.images[y] not in s for f in pool for y in reach):
            w1 = eps
            break
    w2 = min(h for h, t in everything if t.images[t.images[x0]] not in s)
    return w1, w2, width(p, module)


def branch_restrict(p: Poset, module: ConvexModule, j: int) -> Barcode:
    """I_S / I_j I_S: 台を [m, M_j] に制限する"""
    if p.shape is None:
        raise NveeError("Branch restriction needs an n-Vee", stage=STAGE)
    if not 0 <= j < len(p.shape.branches):
        raise NveeError(f"Branch index out of range: {j}", stage=STAGE)
    arm = {p.shape.minimum, *p.shape.branches[j]}
    return Barcode.from_supports(components(p, module.vertices & arm))

