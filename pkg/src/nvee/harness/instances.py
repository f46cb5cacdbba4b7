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
from typing import Sequence

import numpy as np

from nvee.types import Barcode, ConvexModule, Instance, ShapeBounds
from nvee.types.constants import DEFAULT_FIELDS
from nvee.engine.structures.convex import enumerate_sigma
from nvee.engine.structures.poset import build_nvee

logger = logging.getLogger(__name__)


def random_lengths(rng: np.random.Generator, bounds: ShapeBounds) -> list[int]:
    """枝長を選ぶ。asymmetric なら最長枝が一意になるよう調整する"""
    if bounds.lengths:
        return list(bounds.lengths)
    n = int(rng.integers(bounds.min_branches, bounds.max_branches + 1))
    lengths = sorted((int(t) for t in rng.integers(1, bounds.max_length + 1, size=n)), reverse=True)
    if bounds.asymmetric and n > 1 and lengths[0] == lengths[1]:
        if lengths[0] < bounds.max_length:
            lengths[0] += 1
        elif lengths[0] > 1:
            lengths = [lengths[0]] + [min(t, lengths[0] - 1) for t in lengths[1:]]
        else:
            lengths = [1]
    return lengths


def _sample(rng: np.random.Generator, sigma: Sequence[ConvexModule], k: int) -> list[ConvexModule]:
    return [sigma[int(i)] for i in rng.integers(0, len(sigma), size=k)]


def random_instance(
    seed: int,
    bounds: ShapeBounds | None = None,
    fields: tuple[int, ...] = DEFAULT_FIELDS,
) -> Instance:
    """
    シードから決定的にインスタンスを作る。

    半分のシードでは右側を左側の摂動（台の重なるバーへの置換・削除・追加）にして、
    小さな距離の例が十分に現れるようにする。
    """
    bounds = bounds or ShapeBounds()
    rng = np.random.default_rng(seed)
    lengths = random_lengths(rng, bounds)
    weight = bounds.weights[int(rng.integers(0, len(bounds.weights)))]
    p = build_nvee(lengths, weight)
    sigma = enumerate_sigma(p)

    left = _sample(rng, sigma, int(rng.integers(1, bounds.max_bars + 1)) if bounds.max_bars else 0)
    if rng.random() < 0.5:
        right = _sample(rng, sigma, int(rng.integers(1, bounds.max_bars + 1)) if bounds.max_bars else 0)
    else:
        right = []
        for bar in left:
            roll = rng.random()
            if roll < 0.4:
                right.append(bar)
            elif roll < 0.85:
                near = [s for s in sigma if s.vertices & bar.vertices]
                right.append(near[int(rng.integers(0, len(near)))])
        if rng.random() < 0.3:
            right.extend(_sample(rng, sigma, 1))
        right = right[: bounds.max_bars]

    return Instance(
        seed=seed,
        poset=p,
        left=Barcode(bars=tuple(left)),
        right=Barcode(bars=tuple(right)),
        fields=fields,
    )
