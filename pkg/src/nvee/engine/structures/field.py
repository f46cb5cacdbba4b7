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
素体 F_p 上の線形代数（numpy の整数配列を mod p で扱う）。
"""

from typing import Optional

import numpy as np

from ..exceptions import NveeError


def check_prime(p: int) -> int:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise NveeError(f"Field size must be prime: {p}", stage="Interleaving")
    return p


def inverse(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


def row_reduce(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """
    既約行階段形と主成分の列番号を返す（入力は変更しない）。
    """
    m = np.mod(np.array(a, dtype=np.int64, copy=True), p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(m[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = np.mod(m[r] * inverse(m[r, c], p), p)
        others = np.flatnonzero(m[:, c])
        for i in others:
            if i != r:
                m[i] = np.mod(m[i] - m[i, c] * m[r], p)
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """核の基底を列に並べた行列（cols × k）"""
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    reduced, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-reduced[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """像の基底（a の主成分列）"""
    rows, cols = a.shape
    if cols == 0 or rows == 0:
        return np.zeros((rows, 0), dtype=np.int64)
    _, pivots = row_reduce(a, p)
    return np.mod(a[:, pivots], p)


def extend_to_basis(a: np.ndarray, p: int) -> np.ndarray:
    """
    独立な列からなる a を標準基底の列で補って可逆行列にする。
    補った列は右側に並ぶ。
    """
    n = a.shape[0]
    current = a.copy()
    for i in range(n):
        if current.shape[1] == n:
            break
        candidate = np.concatenate([current, np.eye(n, dtype=np.int64)[:, [i]]], axis=1)
        if rank(candidate, p) == candidate.shape[1]:
            current = candidate
    return current


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """
    a x = b の解を一つ返す（b は列ベクトルまたは行列）。解がなければ None。
    """
    rows, cols = a.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if cols == 0:
        return np.zeros((0, b.shape[1]), dtype=np.int64) if not np.mod(b, p).any() else None
    augmented = np.concatenate([a, b], axis=1)
    reduced, pivots = row_reduce(augmented, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i, cols:]
    return x


def is_consistent(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    return solve(a, b, p) is not None
