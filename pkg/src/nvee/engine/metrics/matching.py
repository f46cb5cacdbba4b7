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
バーコード間のマッチングとボトルネック距離、インターリーブから誘導されるマッチング。
"""

import itertools
import logging
from typing import Hashable, Mapping, Optional, Sequence

import networkx as nx
from networkx.algorithms import bipartite

from nvee.types import Barcode, Interleaving, Matching, MatchingVerdict, MatchMode, Poset, ScalarMorphism
from nvee.types.constants import HALF_MATCHING_SUBSET_CAP

from ..exceptions import HallViolation, NveeError
from ..structures import chain as ch
from ..structures.convex import width
from ..structures.translations import height, maximal_translation, maximal_translations
from .interleaving import check_interleaving, diagonalize, pair_scalar, pairwise_distance

logger = logging.getLogger(__name__)

STAGE = "Matching"


# --- ε-マッチングとボトルネック距離 ---

def epsilon_matching(p: Poset, source: Barcode, target: Barcode, eps: int) -> Optional[Matching]:
    """
    ε-マッチング（対応するバーの d_2 が eps 以下、幅が eps を超えるバーは全て対応済み）を探す。

    各バーに「対角」の複製を加えた二部グラフの完全マッチングに帰着し、
    Hopcroft–Karp で解く。幅が eps 以下のバーだけが自分の複製と組める。

    Returns:
        見つかれば Matching、なければ None
    """
    graph = nx.Graph()
    left = [("I", s) for s in range(len(source.bars))] + [("M*", t) for t in range(len(target.bars))]
    right = [("M", t) for t in range(len(target.bars))] + [("I*", s) for s in range(len(source.bars))]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from(right, bipartite=1)

    for s, a in enumerate(source.bars):
        for t, b in enumerate(target.bars):
            if pairwise_distance(p, a, b) <= eps:
                graph.add_edge(("I", s), ("M", t))
        if width(p, a) <= eps:
            graph.add_edge(("I", s), ("I*", s))
    for t, b in enumerate(target.bars):
        if width(p, b) <= eps:
            graph.add_edge(("M*", t), ("M", t))
    for t in range(len(target.bars)):
        for s in range(len(source.bars)):
            graph.add_edge(("M*", t), ("I*", s))

    matched = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    if sum(1 for node in left if node in matched) != len(left):
        return None
    pairs = sorted(
        (s, matched[("I", s)][1])
        for s in range(len(source.bars))
        if matched[("I", s)][0] == "M"
    )
    return Matching(pairs=tuple(pairs), eps=eps)


def bottleneck_candidates(p: Poset, source: Barcode, target: Barcode) -> list[int]:
    values = {0}
    values |= {width(p, m) for m in source.bars + target.bars}
    values |= {pairwise_distance(p, a, b) for a in source.bars for b in target.bars}
    return sorted(values)


def bottleneck_distance(p: Poset, source: Barcode, target: Barcode) -> tuple[int, Matching]:
    """
    ボトルネック距離 D_B と、それを与える ε-マッチング。
    候補値は幅と d_2 の値（と 0）に限られる。
    """
    for eps in bottleneck_candidates(p, source, target):
        matching = epsilon_matching(p, source, target, eps)
        if matching is not None:
            return eps, matching
    raise NveeError("No matching found at any candidate value", stage=STAGE)


def check_matching(p: Poset, source: Barcode, target: Barcode, matching: Matching) -> MatchingVerdict:
    """マッチングが eps に対して許容的（ε-マッチング）かを確かめる"""
    eps = matching.eps
    if eps is None:
        return MatchingVerdict(ok=False, reason="Matching carries no eps")
    lefts = [s for s, _ in matching.pairs]
    rights = [t for _, t in matching.pairs]
    if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
        return MatchingVerdict(ok=False, reason="Matching is not injective")
    for s, t in matching.pairs:
        if not (0 <= s < len(source.bars) and 0 <= t < len(target.bars)):
            return MatchingVerdict(ok=False, reason=f"Pair ({s}, {t}) is out of range")
        d = pairwise_distance(p, source.bars[s], target.bars[t])
        if d > eps:
            return MatchingVerdict(ok=False, reason=f"Pair ({s}, {t}) has d_2 = {d} > {eps}")
    for s, m in enumerate(source.bars):
        if s not in lefts and width(p, m) > eps:
            return MatchingVerdict(ok=False, reason=f"Source bar {s} has width {width(p, m)} > {eps} but is unmatched")
    for t, m in enumerate(target.bars):
        if t not in rights and width(p, m) > eps:
            return MatchingVerdict(ok=False, reason=f"Target bar {t} has width {width(p, m)} > {eps} but is unmatched")
    return MatchingVerdict(ok=True)


# --- Hall の条件と半マッチング ---

def hall_witness(
    sources: Sequence[Hashable], candidates: Mapping[Hashable, set]
) -> Optional[tuple]:
    """
    |x(S0)| < |S0| となる部分集合 S0 を返す（Hall の条件が成り立てば None）。
    最大マッチングで取り残された点から交互路で到達できる集合を使う。
    """
    graph = nx.Graph()
    tops = [("s", s) for s in sources]
    graph.add_nodes_from(tops, bipartite=0)
    for s in sources:
        for t in candidates.get(s, ()):
            graph.add_edge(("s", s), ("t", t))
    matched = bipartite.hopcroft_karp_matching(graph, top_nodes=tops)
    for s in sources:
        if ("s", s) in matched:
            continue
        reached = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for t in candidates.get(u, ()):
                    mate = matched.get(("t", t))
                    if mate is not None and mate[1] not in reached:
                        reached.add(mate[1])
                        nxt.append(mate[1])
            frontier = nxt
        return tuple(x for x in sources if x in reached)
    return None


def half_matching(
    sources: Sequence[Hashable],
    candidates: Mapping[Hashable, set],
    subset_cap: int = HALF_MATCHING_SUBSET_CAP,
) -> dict:
    """
    各 s に x(s) の中から相異なる相手を割り当てる。

    極小なタイト集合（|x(S0)| = |S0|）があればその中で先に割り当て、
    なければ先頭の s に最小の候補を与えて再帰する。
    |S| が subset_cap を超える場合は最大マッチングで代用する。

    Raises:
        HallViolation: Hall の条件が破れている場合（witness 付き）
    """
    sources = list(sources)
    witness = hall_witness(sources, candidates)
    if witness is not None:
        raise HallViolation(f"Hall's condition fails on {list(witness)}", witness=witness)
    if len(sources) > subset_cap:
        graph = nx.Graph()
        tops = [("s", s) for s in sources]
        graph.add_nodes_from(tops)
        for s in sources:
            for t in candidates.get(s, ()):
                graph.add_edge(("s", s), ("t", t))
        matched = bipartite.hopcroft_karp_matching(graph, top_nodes=tops)
        return {s: matched[("s", s)][1] for s in sources}
    return _assign(sources, {s: set(candidates.get(s, ())) for s in sources})


def _minimal_tight(sources: list, options: dict) -> Optional[list]:
    for size in range(1, len(sources) + 1):
        for subset in itertools.combinations(sources, size):
            if len(set().union(*(options[s] for s in subset))) == size:
                return list(subset)
    return None


def _assign(sources: list, options: dict) -> dict:
    if not sources:
        return {}
    tight = _minimal_tight(sources, options)
    if tight is None:
        first = sources[0]
        chosen = min(options[first])
        rest = {s: options[s] - {chosen} for s in sources[1:]}
        result = _assign(sources[1:], rest)
        result[first] = chosen
        return result
    first = tight[0]
    chosen = min(options[first])
    inside = _assign(tight[1:], {s: options[s] - {chosen} for s in tight[1:]})
    inside[first] = chosen
    used = set(inside.values())
    outside = [s for s in sources if s not in tight]
    inside.update(_assign(outside, {s: options[s] - used for s in outside}))
    return inside


# --- インターリーブから誘導されるマッチング ---

def _arm_matching(
    p: Poset,
    chain: tuple[int, ...],
    rows_s: list[int],
    rows_t: list[int],
    source: Barcode,
    target: Barcode,
    interleaving: Interleaving,
) -> list[tuple[int, int]]:
    """
    鎖の上で B(I) → B(im φ) → B(MΛ) → B(M) を合成したマッチング。
    φ の核側は全射 I ↠ im φ、余核側は単射 im φ ↪ MΛ の標準マッチングを使う。
    """
    if not rows_s or not rows_t:
        return []
    forward = interleaving.forward
    fp = interleaving.field
    src = [ch.to_interval(chain, source.bars[s].support) for s in rows_s]
    tgt = [ch.to_interval(chain, target.bars[t].support) for t in rows_t]
    moved = [
        ch.to_interval(chain, [v for v in chain if forward.images[v] in target.bars[t].vertices])
        for t in rows_t
    ]
    entries = [[interleaving.phi.entries[t][s] for s in rows_s] for t in rows_t]
    f = ch.morphism_from_scalars(chain, src, moved, entries, fp)
    _, image, _ = ch.kernel_image_cokernel(f)
    image_bars = ch.intervals_of_rep(image)

    # MΛ の同型なバーは、元の M_t の長い順に並べる
    moved_bars = sorted(
        ((k, itv) for k, itv in enumerate(moved) if itv is not None),
        key=lambda e: (e[1][0] - e[1][1], e[1], tgt[e[0]][0] - tgt[e[0]][1], e[0]),
    )
    to_image = ch.canonical_matching(src, image_bars, MatchMode.SURJECTION)
    to_moved = dict(ch.canonical_matching(image_bars, [itv for _, itv in moved_bars], MatchMode.INJECTION))
    pairs = []
    for k, r in to_image:
        if r in to_moved:
            pairs.append((rows_s[k], rows_t[moved_bars[to_moved[r]][0]]))
    return pairs


def induced_matching_from_interleaving(
    p: Poset, source: Barcode, target: Barcode, interleaving: Interleaving
) -> Matching:
    """
    (Λ, Λ)-インターリーブ（Λ は極大平行移動）から誘導される h(Λ)-マッチングを作る。

    Λm = m なら m を含むバーを半マッチングで、各枝のバーを鎖の上で対応させる。
    Λm ≠ m なら Λm を含む枝 [m, M_j] に制限して鎖の上で対応させる。

    Raises:
        NveeError: n-Vee でない、Λ ≠ Γ、Λ が極大でない、(φ, ψ) がインターリーブでない場合
    """
    if p.shape is None:
        raise NveeError("Induced matchings need an n-Vee", stage=STAGE)
    forward = interleaving.forward
    if interleaving.backward != forward:
        raise NveeError("Induced matchings need a (Λ, Λ)-interleaving", stage=STAGE)
    eps = height(p, forward)
    if forward not in maximal_translations(p, eps):
        raise NveeError("Translation is not maximal for its height", stage=STAGE)
    if not check_interleaving(p, source, target, interleaving):
        raise NveeError("Scalars do not form an interleaving", stage=STAGE)

    shape = p.shape
    m = shape.minimum
    image_of_min = forward.images[m]
    everyone_s = list(range(len(source.bars)))
    everyone_t = list(range(len(target.bars)))

    if len(shape.branches) == 1:
        pairs = _arm_matching(p, ch.chain_of(p, 0), everyone_s, everyone_t, source, target, interleaving)
        return Matching(pairs=tuple(sorted(pairs)), eps=eps)

    if image_of_min == p.infinity:
        return Matching(pairs=(), eps=eps)

    if image_of_min != m:
        j = shape.branch_of(image_of_min)
        arm = set(ch.chain_of(p, j))
        rows_s = [s for s in everyone_s if source.bars[s].vertices & arm]
        rows_t = [t for t in everyone_t if target.bars[t].vertices & arm]
        pairs = _arm_matching(p, ch.chain_of(p, j), rows_s, rows_t, source, target, interleaving)
        return Matching(pairs=tuple(sorted(pairs)), eps=eps)

    with_min_s = [s for s in everyone_s if m in source.bars[s].vertices]
    with_min_t = [t for t in everyone_t if m in target.bars[t].vertices]
    blocks = [(with_min_s, with_min_t)]
    for branch in shape.branches:
        blocks.append((
            [s for s in everyone_s if s not in with_min_s and source.bars[s].support[0] in branch],
            [t for t in everyone_t if t not in with_min_t and target.bars[t].support[0] in branch],
        ))
    split = diagonalize(p, source, target, interleaving, blocks)

    fp = split.field
    options = {
        s: {
            t for t in with_min_t
            if split.phi.entries[t][s] * split.psi.entries[s][t] % fp
        }
        for s in with_min_s
    }
    pairs = list(half_matching(with_min_s, options).items())
    for branch, (rows_s, rows_t) in zip(shape.branches, blocks[1:]):
        pairs += _arm_matching(p, tuple(branch), rows_s, rows_t, source, target, split)
    return Matching(pairs=tuple(sorted(pairs)), eps=eps)


def diagonal_interleaving_from_matching(
    p: Poset,
    source: Barcode,
    target: Barcode,
    matching: Matching,
    field: int = 2,
) -> Interleaving:
    """
    ε-マッチングから対角なインターリーブを作る（D ≤ D_B の証拠）。
    対応する組ごとに 1×1 のインターリーブの係数（1 か 0）を置く。

    Raises:
        NveeError: マッチングが許容的でない、または組がインターリーブできない場合
    """
    verdict = check_matching(p, source, target, matching)
    if not verdict.ok:
        raise NveeError(f"Matching is not admissible: {verdict.reason}", stage=STAGE)
    forward = maximal_translation(p, matching.eps)
    phi = [[0] * len(source.bars) for _ in target.bars]
    psi = [[0] * len(target.bars) for _ in source.bars]
    for s, t in matching.pairs:
        c = pair_scalar(p, source.bars[s], target.bars[t], forward, forward)
        if c is None:
            raise NveeError(f"Pair ({s}, {t}) is not interleaved at eps={matching.eps}", stage=STAGE)
        phi[t][s] = c
        psi[s][t] = c
    result = Interleaving(
        forward=forward,
        backward=forward,
        phi=ScalarMorphism(field=field, entries=tuple(tuple(r) for r in phi)),
        psi=ScalarMorphism(field=field, entries=tuple(tuple(r) for r in psi)),
        field=field,
    )
    if not check_interleaving(p, source, target, result):
        raise NveeError("Diagonal interleaving failed verification", stage=STAGE)
    return result
