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

from typing import Final

# Vertex Labels
# n-Vee の頂点ラベル。最小元は m、枝 i の k 番目の点は {letter}{k}、懸垂点は inf
MINIMUM_LABEL: Final[str] = "m"
INFINITY_LABEL: Final[str] = "inf"
BRANCH_LETTERS: Final[tuple[str, ...]] = ("x", "y", "z", "w")

# Brute-Force Caps
# 全列挙系の処理が受け付ける上限。超過時は BruteForceCapError を送出する
TRANSLATION_ENUM_CAP: Final[int] = 10       # |P⁺| の上限（平行移動の全列挙）
SIGMA_VERTEX_CAP: Final[int] = 16           # |P| の上限（凸台の列挙）
EXHAUSTIVE_LEMMA_SIZE: Final[int] = 9       # |P⁺| がこれ以下なら補題スイートは標本を取らず全件を調べる
SIGMA_SUBSET_CAP: Final[int] = 20000        # 列挙する連結部分集合数の上限
HALF_MATCHING_SUBSET_CAP: Final[int] = 12   # 極小タイト集合探索を行う |S| の上限

# Field Search
# 有限体上の解探索の設定値
SOLVER_EXHAUSTIVE_CAP: Final[int] = 12      # 成分ごとの全列挙変数数の上限
RANDOM_SEARCH_ATTEMPTS: Final[int] = 2000   # 上限超過時のランダム探索回数
DEFAULT_FIELDS: Final[tuple[int, ...]] = (2, 3)
ESCALATION_FIELD: Final[int] = 5            # 体依存が疑われた場合に追加で試す素数

# Random Instances
# ランダム検証に用いる既定の形状
DEFAULT_MAX_BRANCHES: Final[int] = 3
DEFAULT_MAX_LENGTH: Final[int] = 4
DEFAULT_MAX_BARS: Final[int] = 5
DEFAULT_WEIGHTS: Final[tuple[tuple[int, int], ...]] = ((1, 1), (1, 2), (2, 1), (2, 3))
