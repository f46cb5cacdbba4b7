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
有限ポセットと重み付き懸垂の基本操作。

順序行列・Hasse 図・距離行列は Poset（frozen モデル）をキーにキャッシュする。
"""

import functools
import logging
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx
import numpy as np
from pydantic import ValidationError

from nvee.types import NVeeShape, Poset, Vertex, Weight
from nvee.types.constants import BRANCH_LETTERS, INFINITY_LABEL, MINIMUM_LABEL, TRANSLATION_ENUM_CAP

from ..exceptions import BruteForceCapError, NveeError

logger = logging.getLogger(__name__)

STAGE = "Poset"


def build_poset(
    size: int,
    covers: Iterable[tuple[Vertex, Vertex]],
    labels: Optional[Sequence[str]] = None,
) -> Poset:
    """
    被覆関係から（未懸垂の）有限ポセットを構築する。

    Args:
        size: 頂点数
        covers: 被覆関係 (下, 上) の組
        labels: 頂点ラベル（省略時は "1".."size"）

    Returns:
        Poset

    Raises:
        NveeError: 被覆に閉路・自己ループ・範囲外の頂点・推移的な辺がある場合
    """
    if size < 1:
        raise NveeError("Poset must have at least one element", stage=STAGE)
    edges = sorted(set((int(u), int(v)) for u, v in covers))
    for u, v in edges:
        if not (0 <= u < size and 0 <= v < size):
            raise NveeError(f"Cover ({u}, {v}) refers to a vertex outside 0..{size - 1}", stage=STAGE)
        if u == v:
            raise NveeError(f"Cover ({u}, {v}) is a self-loop", stage=STAGE)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(edges)
    if not nx.is_directed_acyclic_graph(graph):
        raise NveeError("Cover relation contains a cycle", stage=STAGE)
    reduced = set(nx.transitive_reduction(graph).edges())
    redundant = [e for e in edges if e not in reduced]
    if redundant:
        raise NveeError(f"Covers are not transitively reduced: {redundant}", stage=STAGE)

    if labels is None:
        labels = [str(i + 1) for i in range(size)]
    return Poset(size=size, covers=tuple(edges), labels=tuple(labels))


def make_weight(weight: Weight | tuple[int, int]) -> Weight:
    """(a, b) の組を Weight に変換する。正でない成分は NveeError。"""
    if isinstance(weight, Weight):
        return weight
    try:
        a, b = weight
        return Weight(a=int(a), b=int(b))
    except (TypeError, ValueError, ValidationError) as e:
        raise NveeError(f"Weights must be two positive integers, got {weight!r}", stage=STAGE) from e


def suspend(p: Poset, weight: Weight) -> Poset:
    """
    新しい最大元 ∞ を付け加え、重みを付ける。

    全ての極大元から ∞ への被覆辺を追加する。∞ への辺の重みは b、他は a。
    """
    if p.suspended:
        raise NveeError("Poset is already suspended", stage=STAGE)
    inf = p.size
    tops = maximal_elements(p)
    covers = tuple(p.covers) + tuple((t, inf) for t in tops)
    return Poset(
        size=p.size + 1,
        covers=covers,
        labels=tuple(p.labels) + (INFINITY_LABEL,),
        weight=weight,
        infinity=inf,
        shape=p.shape,
    )


def build_nvee(branch_lengths: Sequence[int], weight: Weight | tuple[int, int]) -> Poset:
    """
    枝長 (T_1, ..., T_n) の n-Vee を構築し懸垂する。

    頂点番号は m=0、枝 1 の頂点、枝 2 の頂点、…、最後に ∞。
    ラベルは m, x1.., y1.., z1.., w1..（5 本目以降は b5_1..）と inf。
    """
    if not branch_lengths or any(t < 1 for t in branch_lengths):
        raise NveeError(f"Branch lengths must be positive: {list(branch_lengths)}", stage=STAGE)
    weight = make_weight(weight)

    labels = [MINIMUM_LABEL]
    covers = []
    branches = []
    nxt = 1
    for i, length in enumerate(branch_lengths):
        letter = BRANCH_LETTERS[i] if i < len(BRANCH_LETTERS) else f"b{i + 1}_"
        branch = tuple(range(nxt, nxt + length))
        nxt += length
        below = 0
        for k, v in enumerate(branch):
            labels.append(f"{letter}{k + 1}")
            covers.append((below, v))
            below = v
        branches.append(branch)

    base = build_poset(nxt, covers, labels)
    shape = NVeeShape(minimum=0, branches=tuple(branches))
    return suspend(base.model_copy(update={"shape": shape}), weight)


def with_shape(p: Poset, shape: Optional[NVeeShape]) -> Poset:
    return p.model_copy(update={"shape": shape})


# --- 導出データ（キャッシュ） ---

@functools.lru_cache(maxsize=256)
def hasse_graph(p: Poset) -> nx.DiGraph:
    """重み付き Hasse 図。未懸垂なら全ての辺の重みは 1"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(p.size))
    for u, v in p.covers:
        if p.weight is None:
            w = 1
        else:
            w = p.weight.b if v == p.infinity else p.weight.a
        graph.add_edge(u, v, weight=w)
    return graph


@functools.lru_cache(maxsize=256)
def order_matrix(p: Poset) -> np.ndarray:
    """leq[x, y] = (x ≤ y)"""
    closure = nx.transitive_closure_dag(hasse_graph(p))
    leq = np.eye(p.size, dtype=bool)
    for u, v in closure.edges():
        leq[u, v] = True
    leq.setflags(write=False)
    return leq


@functools.lru_cache(maxsize=256)
def distance_matrix(p: Poset) -> np.ndarray:
    """
    Hasse 図を無向グラフとみなした重み付き最短路距離。
    最小元を経由する近道も含むため、必ず Dijkstra で求める。
    """
    undirected = hasse_graph(p).to_undirected()
    dist = np.full((p.size, p.size), -1, dtype=np.int64)
    for src, lengths in nx.all_pairs_dijkstra_path_length(undirected, weight="weight"):
        for dst, d in lengths.items():
            dist[src, dst] = d
    if (dist < 0).any():
        raise NveeError("Poset is not connected; distance is undefined", stage=STAGE)
    dist.setflags(write=False)
    return dist


def leq(p: Poset, x: Vertex, y: Vertex) -> bool:
    return bool(order_matrix(p)[x, y])


def distance(p: Poset, x: Vertex, y: Vertex) -> int:
    return int(distance_matrix(p)[x, y])


def up_set(p: Poset, x: Vertex) -> tuple[Vertex, ...]:
    return tuple(int(y) for y in np.flatnonzero(order_matrix(p)[x]))


def down_set(p: Poset, x: Vertex) -> tuple[Vertex, ...]:
    return tuple(int(y) for y in np.flatnonzero(order_matrix(p)[:, x]))


def interval(p: Poset, x: Vertex, y: Vertex) -> tuple[Vertex, ...]:
    """閉区間 [x, y]"""
    leq_m = order_matrix(p)
    return tuple(int(v) for v in np.flatnonzero(leq_m[x] & leq_m[:, y]))


def maximal_elements(p: Poset, within: Optional[Iterable[Vertex]] = None) -> tuple[Vertex, ...]:
    graph = hasse_graph(p)
    if within is None:
        return tuple(v for v in range(p.size) if graph.out_degree(v) == 0)
    subset = set(within)
    leq_m = order_matrix(p)
    return tuple(sorted(v for v in subset if not any(leq_m[v, w] and v != w for w in subset)))


def minimal_elements(p: Poset, within: Optional[Iterable[Vertex]] = None) -> tuple[Vertex, ...]:
    graph = hasse_graph(p)
    if within is None:
        return tuple(v for v in range(p.size) if graph.in_degree(v) == 0)
    subset = set(within)
    leq_m = order_matrix(p)
    return tuple(sorted(v for v in subset if not any(leq_m[w, v] and v != w for w in subset)))


def lower_covers(p: Poset, x: Vertex) -> tuple[Vertex, ...]:
    return tuple(sorted(hasse_graph(p).predecessors(x)))


def vertex_of(p: Poset, label: str) -> Vertex:
    try:
        return p.labels.index(label)
    except ValueError:
        raise NveeError(f"Unknown vertex label: '{label}'", stage=STAGE) from None


def label_of(p: Poset, v: Vertex) -> str:
    return p.labels[v]


# --- 膨張的単調写像の全列挙 ---

def inflationary_maps(p: Poset, cap: int = TRANSLATION_ENUM_CAP) -> Iterator[tuple[Vertex, ...]]:
    """
    単調かつ膨張的な自己写像を全て列挙する（懸垂点があれば固定する）。

    位相順に頂点の像を決め、下被覆の像以上であることだけを確かめる
    バックトラックで生成する。

    Raises:
        BruteForceCapError: 頂点数が cap を超える場合
    """
    if p.size > cap:
        raise BruteForceCapError(
            f"Enumeration of translations is capped at {cap} vertices (got {p.size})",
            stage="Translations",
            cap=cap,
        )
    order = list(nx.lexicographical_topological_sort(hasse_graph(p)))
    ups = [up_set(p, x) for x in range(p.size)]
    lows = [lower_covers(p, x) for x in range(p.size)]
    leq_m = order_matrix(p)
    images = [-1] * p.size

    def _extend(k: int) -> Iterator[tuple[Vertex, ...]]:
        if k == len(order):
            yield tuple(images)
            return
        x = order[k]
        candidates = (x,) if x == p.infinity else ups[x]
        for y in candidates:
            if all(leq_m[images[u], y] for u in lows[x]):
                images[x] = y
                yield from _extend(k + 1)
        images[x] = -1

    yield from _extend(0)


def fixed_points(p: Poset, cap: int = TRANSLATION_ENUM_CAP) -> frozenset[Vertex]:
    """全ての平行移動で動かない頂点（懸垂点を除く）"""
    fixed = set(p.core)
    for images in inflationary_maps(p, cap):
        fixed -= {x for x in list(fixed) if images[x] != x}
        if not fixed:
            break
    return frozenset(fixed)
