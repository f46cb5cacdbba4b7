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

from enum import StrEnum


class NVeeCondition(StrEnum):
    """
    n-Vee 判定で破れた条件の名前
    """
    UNIQUE_MINIMUM = "unique_minimum"        # 最小元がちょうど一つ
    TOTALLY_ORDERED = "totally_ordered"      # 各極大区間 [m, M_i] が全順序
    DISJOINT_BRANCHES = "disjoint_branches"  # 極大区間同士は最小元でのみ交わる


class VariableFamily(StrEnum):
    """
    インターリーブ方程式系の変数族
    """
    LAMBDA = "lam"  # φ 側のスカラー λ_{s,t}
    MU = "mu"       # ψ 側のスカラー μ_{t,s}


class Triangle(StrEnum):
    """
    方程式を生んだ三角形（可換図式）の識別子
    """
    SOURCE = "source"  # ψΛ∘φ = Φ(I → IΓΛ)
    TARGET = "target"  # φΓ∘ψ = Φ(M → MΛΓ)


class MatchMode(StrEnum):
    """
    誘導マッチングを作る射の種類
    """
    INJECTION = "injection"    # 右端点を共有するバー同士を対応させる
    SURJECTION = "surjection"  # 左端点を共有するバー同士を対応させる


class Verdict(StrEnum):
    """
    検証ハーネスの判定結果
    """
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    FIELD_SUSPECT = "field_sensitivity_suspect"


class ExampleName(StrEnum):
    """
    再現可能な既知の例題
    """
    EX4 = "ex4"
    EXNEW = "exnew"
    EX3 = "ex3"
