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
鎖（全順序）上の線形表現。

1-Vee（と n-Vee の各枝）の上では、凸加群は区間 [lo, hi] であり、
射の核・像・余核とそのバーコードを F_p 上の行列計算で求める。
位置 0 が鎖の最下点。
"""

import logging
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from nvee.types import Barcode, ConvexModule, MatchMode, Poset, Vertex

from ..exceptions import NveeError
from . import field as ff

logger = logging.getLogger(__name__)

STAGE = "Chain"

Interval = tuple[int, int]


class ChainRep(BaseModel):
    """
    鎖の表現 V_0 → V_1 → … → V_{n-1}。maps[i] は dims[i+1] × dims[i] 行列。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    field: int
    chain: tuple[Vertex, ...]
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]


class ChainMorphism(BaseModel):
    """表現の射。components[v] は target.dims[v] × source.dims[v] 行列"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: ChainRep
    target: ChainRep
    components: tuple[np.ndarray, ...]


def chain_of(p: Poset, branch: int = 0) -> tuple[Vertex, ...]:
    """最小元と枝 branch からなる鎖 [m, M_branch]"""
    if p.shape is None:
        raise NveeError("Chain computations need an n-Vee", stage=STAGE)
    return (p.shape.minimum,) + p.shape.branches[branch]


def to_interval(chain: Sequence[Vertex], support) -> Optional[Interval]:
    """
    台を鎖の位置の区間に直す。鎖と交わらなければ None。

    Raises:
        NveeError: 鎖との共通部分が区間でない場合
    """
    vertices = set(support)
    positions = [i for i, v in enumerate(chain) if v in vertices]
    if not positions:
        return None
    lo, hi = positions[0], positions[-1]
    if hi - lo + 1 != len(positions):
        raise NveeError(f"Support {sorted(vertices)} is not an interval of the chain", stage=STAGE)
    return lo, hi


def interval_hom_nonzero(source: Optional[Interval], target: Optional[Interval]) -> bool:
    """Hom([x, X], [y, Y]) ≠ 0 ⇔ y ≤ x ≤ Y ≤ X"""
    if source is None or target is None:
        return False
    x, big_x = source
    y, big_y = target
    return y <= x <= big_y <= big_x


def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def _basis_rows(length: int, intervals: Sequence[Optional[Interval]]) -> list[dict[int, int]]:
    """位置ごとに、そこを含むバーの番号 → 基底の行番号"""
    rows: list[dict[int, int]] = [dict() for _ in range(length)]
    for j, itv in enumerate(intervals):
        if itv is None:
            continue
        for v in range(itv[0], itv[1] + 1):
            rows[v][j] = len(rows[v])
    return rows


def rep_from_intervals(
    chain: Sequence[Vertex], intervals: Sequence[Optional[Interval]], field: int
) -> ChainRep:
    """区間加群の直和（並び順を保つ）を表現に直す。None は 0 加群"""
    n = len(chain)
    rows = _basis_rows(n, intervals)
    maps = []
    for v in range(n - 1):
        m = _zeros(len(rows[v + 1]), len(rows[v]))
        for j, r in rows[v].items():
            if j in rows[v + 1]:
                m[rows[v + 1][j], r] = 1
        maps.append(m)
    return ChainRep(
        field=ff.check_prime(field),
        chain=tuple(chain),
        dims=tuple(len(r) for r in rows),
        maps=tuple(maps),
    )


def rep_from_barcode(chain: Sequence[Vertex], barcode: Barcode, field: int) -> ChainRep:
    return rep_from_intervals(chain, [to_interval(chain, m.support) for m in barcode.bars], field)


def commutes(f: ChainMorphism) -> bool:
    p = f.source.field
    for v in range(len(f.source.dims) - 1):
        left = np.mod(f.target.maps[v] @ f.components[v], p)
        right = np.mod(f.components[v + 1] @ f.source.maps[v], p)
        if not np.array_equal(left, right):
            return False
    return True


def morphism_from_scalars(
    chain: Sequence[Vertex],
    sources: Sequence[Optional[Interval]],
    targets: Sequence[Optional[Interval]],
    entries: Sequence[Sequence[int]],
    field: int,
) -> ChainMorphism:
    """
    スカラー行列 entries[t][s] から ⊕ I_s → ⊕ J_t を組み立てる。
    Hom(I_s, J_t) = 0 の成分は無視する。

    Raises:
        NveeError: 組み立てた射が可換でない場合
    """
    source = rep_from_intervals(chain, sources, field)
    target = rep_from_intervals(chain, targets, field)
    src_rows = _basis_rows(len(chain), sources)
    tgt_rows = _basis_rows(len(chain), targets)
    comps = []
    for v in range(len(chain)):
        m = _zeros(target.dims[v], source.dims[v])
        for s, c in src_rows[v].items():
            for t, r in tgt_rows[v].items():
                if interval_hom_nonzero(sources[s], targets[t]):
                    m[r, c] = entries[t][s] % field
        comps.append(m)
    f = ChainMorphism(source=source, target=target, components=tuple(comps))
    if not commutes(f):
        raise NveeError("Scalars do not define a morphism of chain representations", stage=STAGE)
    return f


def _rep(chain, field, dims, maps) -> ChainRep:
    return ChainRep(field=field, chain=tuple(chain), dims=tuple(dims), maps=tuple(maps))


def kernel_image_cokernel(f: ChainMorphism) -> tuple[ChainRep, ChainRep, ChainRep]:
    """
    核・像・余核の表現を頂点ごとの基底変換で求める。

    Raises:
        NveeError: 次元の整合性が崩れた場合
    """
    p = f.source.field
    n = len(f.source.dims)
    kernels = [ff.nullspace(c, p) for c in f.components]
    images = [ff.column_basis(c, p) for c in f.components]
    bases = [ff.extend_to_basis(im, p) for im in images]

    for v in range(n):
        if kernels[v].shape[1] + images[v].shape[1] != f.source.dims[v]:
            raise NveeError(f"Rank-nullity failed at position {v}", stage=STAGE)

    ker_maps, im_maps, coker_maps = [], [], []
    for v in range(n - 1):
        pushed = np.mod(f.source.maps[v] @ kernels[v], p)
        ker_maps.append(_express(kernels[v + 1], pushed, p))

        pushed = np.mod(f.target.maps[v] @ images[v], p)
        im_maps.append(_express(images[v + 1], pushed, p))

        r_now, r_next = images[v].shape[1], images[v + 1].shape[1]
        pushed = np.mod(f.target.maps[v] @ bases[v][:, r_now:], p)
        coker_maps.append(_express(bases[v + 1], pushed, p)[r_next:])

    chain = f.source.chain
    ker = _rep(chain, p, [k.shape[1] for k in kernels], ker_maps)
    im = _rep(chain, p, [i.shape[1] for i in images], im_maps)
    coker = _rep(chain, p, [f.target.dims[v] - images[v].shape[1] for v in range(n)], coker_maps)
    return ker, im, coker


def _express(basis: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    coords = ff.solve(basis, vectors, p)
    if coords is None:
        raise NveeError("Vector is not in the span of the given basis", stage=STAGE)
    return coords


def _rank_between(rep: ChainRep, i: int, j: int) -> int:
    n = len(rep.dims)
    if i < 0 or j >= n:
        return 0
    if i == j:
        return rep.dims[i]
    composite = np.eye(rep.dims[i], dtype=np.int64)
    for v in range(i, j):
        composite = np.mod(rep.maps[v] @ composite, rep.field)
    return ff.rank(composite, rep.field)


def intervals_of_rep(rep: ChainRep) -> list[Interval]:
    """
    階数不変量 r(i, j) から区間の重複度を読み取る。
    mult[i, j] = r(i, j) − r(i−1, j) − r(i, j+1) + r(i−1, j+1)
    """
    n = len(rep.dims)
    bars: list[Interval] = []
    for i in range(n):
        for j in range(i, n):
            mult = (
                _rank_between(rep, i, j)
                - _rank_between(rep, i - 1, j)
                - _rank_between(rep, i, j + 1)
                + _rank_between(rep, i - 1, j + 1)
            )
            bars.extend([(i, j)] * mult)
    return sorted(bars, key=lambda b: (b[0] - b[1], b))


def barcode_of_rep(rep: ChainRep) -> Barcode:
    return Barcode(
        bars=tuple(ConvexModule(support=rep.chain[lo:hi + 1]) for lo, hi in intervals_of_rep(rep))
    )


def canonical_matching(
    source: Sequence[Interval], target: Sequence[Interval], mode: MatchMode
) -> list[tuple[int, int]]:
    """
    単射なら右端点、全射なら左端点を共有するバー同士を、
    長い順（同じ長さなら並び順）に対応させる。

    Returns:
        (source の番号, target の番号) の組
    """
    def key(itv: Interval) -> int:
        return itv[1] if mode == MatchMode.INJECTION else itv[0]

    def order(indexed: tuple[int, Interval]) -> tuple[int, int]:
        j, itv = indexed
        return (itv[0] - itv[1], j)

    pairs = []
    for k in sorted({key(b) for b in source} | {key(b) for b in target}):
        left = sorted(((j, b) for j, b in enumerate(source) if key(b) == k), key=order)
        right = sorted(((j, b) for j, b in enumerate(target) if key(b) == k), key=order)
        pairs.extend((a[0], b[0]) for a, b in zip(left, right))
    return sorted(pairs)


def is_injective(f: ChainMorphism) -> bool:
    p = f.source.field
    return all(ff.rank(c, p) == c.shape[1] for c in f.components)


def is_surjective(f: ChainMorphism) -> bool:
    p = f.source.field
    return all(ff.rank(c, p) == c.shape[0] for c in f.components)


def induced_matching(
    f: ChainMorphism, mode: MatchMode
) -> tuple[list[Interval], list[Interval], list[tuple[int, int]]]:
    """
    単射・全射から誘導されるバーコードのマッチング。

    Returns:
        (source のバー, target のバー, 対応の組)

    Raises:
        NveeError: f が指定の種類の射でない場合
    """
    if mode == MatchMode.INJECTION and not is_injective(f):
        raise NveeError("Morphism is not injective", stage=STAGE)
    if mode == MatchMode.SURJECTION and not is_surjective(f):
        raise NveeError("Morphism is not surjective", stage=STAGE)
    source = intervals_of_rep(f.source)
    target = intervals_of_rep(f.target)
    return source, target, canonical_matching(source, target, mode)


def endpoint_counts(bars: Sequence[Interval], side: int) -> dict[int, int]:
    """端点（side=0 なら左、1 なら右）ごとのバー数"""
    counts: dict[int, int] = {}
    for b in bars:
        counts[b[side]] = counts.get(b[side], 0) + 1
    return counts
