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

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator, model_validator

from .constants import (
    DEFAULT_FIELDS,
    DEFAULT_MAX_BARS,
    DEFAULT_MAX_BRANCHES,
    DEFAULT_MAX_LENGTH,
    DEFAULT_WEIGHTS,
    RANDOM_SEARCH_ATTEMPTS,
    SOLVER_EXHAUSTIVE_CAP,
)
from .enums import NVeeCondition, Triangle, VariableFamily, Verdict

Vertex = int


# --- Poset ---

class Weight(BaseModel):
    """
    懸垂ポセットの辺の重み (a, b)。∞ へ入る被覆辺は b、それ以外は a。
    """
    model_config = ConfigDict(frozen=True)

    a: PositiveInt = Field(1, description="通常の被覆辺の重み")
    b: PositiveInt = Field(1, description="懸垂点 ∞ へ入る被覆辺の重み")


class NVeeShape(BaseModel):
    """
    n-Vee の形状: 最小元と、下から上へ並べた枝の頂点列
    """
    model_config = ConfigDict(frozen=True)

    minimum: Vertex = Field(..., description="最小元 m の頂点番号")
    branches: tuple[tuple[Vertex, ...], ...] = Field(
        ..., description="各枝の頂点列（最小元の直上から極大元 M_i まで）"
    )

    @property
    def branch_lengths(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.branches)

    @property
    def long_branch(self) -> Optional[int]:
        """最長の枝が一意ならその添字、そうでなければ None"""
        lengths = self.branch_lengths
        longest = max(lengths)
        if lengths.count(longest) != 1:
            return None
        return lengths.index(longest)

    @property
    def asymmetric(self) -> bool:
        return self.long_branch is not None

    @property
    def short_length(self) -> int:
        """最長枝を除いた枝長の最大値 T（1-Vee では 0）"""
        lengths = sorted(self.branch_lengths, reverse=True)
        return lengths[1] if len(lengths) > 1 else 0

    def branch_of(self, v: Vertex) -> Optional[int]:
        for i, branch in enumerate(self.branches):
            if v in branch:
                return i
        return None


class Poset(BaseModel):
    """
    有限ポセット（被覆関係で与える）。懸垂済みなら infinity と weight を持つ。

    頂点は 0..size-1 の整数で、順序行列や距離は structures.poset の
    キャッシュ付き関数から導出する。
    """
    model_config = ConfigDict(frozen=True)

    size: PositiveInt = Field(..., description="頂点数（懸垂点を含む）")
    covers: tuple[tuple[Vertex, Vertex], ...] = Field(
        ..., description="被覆関係 (下, 上) の組。推移簡約済みであること"
    )
    labels: tuple[str, ...] = Field(..., description="頂点ラベル")
    weight: Optional[Weight] = Field(None, description="懸垂時の辺重み")
    infinity: Optional[Vertex] = Field(None, description="懸垂点 ∞ の頂点番号")
    shape: Optional[NVeeShape] = Field(None, description="n-Vee であればその形状")

    @model_validator(mode="after")
    def _check_labels(self) -> "Poset":
        if len(self.labels) != self.size:
            raise ValueError(f"labels has {len(self.labels)} entries for {self.size} vertices")
        if len(set(self.labels)) != self.size:
            raise ValueError("labels must be unique")
        return self

    @property
    def suspended(self) -> bool:
        return self.infinity is not None

    @property
    def core(self) -> tuple[Vertex, ...]:
        """懸垂点を除いた頂点（モジュールの台になり得る頂点）"""
        return tuple(v for v in range(self.size) if v != self.infinity)


class NVeeVerdict(BaseModel):
    """n-Vee 判定の結果"""
    ok: bool
    shape: Optional[NVeeShape] = None
    failed_condition: Optional[NVeeCondition] = None
    message: str = ""


class Translation(BaseModel):
    """
    平行移動 Λ（単調かつ膨張的な自己写像、∞ は固定）。images[x] = Λ(x)
    """
    model_config = ConfigDict(frozen=True)

    images: tuple[Vertex, ...]

    def __call__(self, x: Vertex) -> Vertex:
        return self.images[x]


# --- Modules ---

class ConvexModule(BaseModel):
    """
    凸加群 I_S。台 S（昇順に正規化）のみで定まる。
    """
    model_config = ConfigDict(frozen=True)

    support: tuple[Vertex, ...] = Field(..., min_length=1)

    @field_validator("support", mode="before")
    @classmethod
    def _normalize(cls, v):
        return tuple(sorted(set(v)))

    @property
    def vertices(self) -> frozenset[Vertex]:
        return frozenset(self.support)

    def __contains__(self, x: Vertex) -> bool:
        return x in self.vertices


class Barcode(BaseModel):
    """
    バーコード: 凸加群の多重集合。出現は (台の長さ降順, 台) で並べる。
    """
    model_config = ConfigDict(frozen=True)

    bars: tuple[ConvexModule, ...] = ()

    @field_validator("bars", mode="after")
    @classmethod
    def _canonical_order(cls, bars):
        return tuple(sorted(bars, key=lambda m: (-len(m.support), m.support)))

    @classmethod
    def from_supports(cls, supports) -> "Barcode":
        return cls(bars=tuple(ConvexModule(support=tuple(s)) for s in supports))

    @classmethod
    def from_pairs(cls, pairs: dict[tuple[Vertex, ...], int]) -> "Barcode":
        """(台, 重複度) の辞書から組み立てる"""
        bars = []
        for support, count in pairs.items():
            bars.extend(ConvexModule(support=support) for _ in range(count))
        return cls(bars=tuple(bars))

    def to_pairs(self) -> dict[tuple[Vertex, ...], int]:
        pairs: dict[tuple[Vertex, ...], int] = {}
        for m in self.bars:
            pairs[m.support] = pairs.get(m.support, 0) + 1
        return pairs

    def direct_sum(self, other: "Barcode") -> "Barcode":
        return Barcode(bars=self.bars + other.bars)


class CanonicalHom(BaseModel):
    """
    凸加群間の標準射 Φ。nonzero のとき support 上で恒等、それ以外で 0。
    """
    model_config = ConfigDict(frozen=True)

    source: Optional[ConvexModule]
    target: Optional[ConvexModule]
    nonzero: bool
    support: tuple[Vertex, ...] = ()


# --- Interleaving ---

class Variable(BaseModel):
    """方程式系の変数 lam[s,t] または mu[t,s]"""
    model_config = ConfigDict(frozen=True)

    family: VariableFamily
    source: int = Field(..., description="lam なら s、mu なら t")
    target: int = Field(..., description="lam なら t、mu なら s")

    @property
    def name(self) -> str:
        return f"{self.family.value}[{self.source},{self.target}]"


class Provenance(BaseModel):
    """方程式の出どころ（どの三角形の、どの頂点の、どの行列成分か）"""
    model_config = ConfigDict(frozen=True)

    triangle: Triangle
    vertex: Vertex
    row: int
    column: int


class Equation(BaseModel):
    """
    Σ lam·mu = constant。terms は (λ変数番号, μ変数番号) の組。
    """
    model_config = ConfigDict(frozen=True)

    terms: tuple[tuple[int, int], ...]
    constant: int = Field(..., ge=0, le=1)
    provenance: tuple[Provenance, ...] = ()


class InterleavingSystem(BaseModel):
    """
    固定した (I, M, Λ, Γ) に対するインターリーブ存在の多項式方程式系
    """
    model_config = ConfigDict(frozen=True)

    source_size: int
    target_size: int
    forward: Translation
    backward: Translation
    variables: tuple[Variable, ...]
    equations: tuple[Equation, ...]

    def render(self) -> list[str]:
        """方程式を "lam[s,t]*mu[t,s] + ... = c" 形式の文字列に整形する"""
        lines = []
        for eq in self.equations:
            if eq.terms:
                lhs = " + ".join(
                    f"{self.variables[i].name}*{self.variables[j].name}" for i, j in eq.terms
                )
            else:
                lhs = "0"
            lines.append(f"{lhs} = {eq.constant}")
        return lines


class SolverOptions(BaseModel):
    """有限体上の解探索の設定"""
    exhaustive_cap: int = Field(SOLVER_EXHAUSTIVE_CAP, description="成分ごとの全列挙変数数の上限")
    random_attempts: int = Field(RANDOM_SEARCH_ATTEMPTS, description="上限超過時のランダム試行回数")
    allow_random: bool = Field(True, description="False なら上限超過で BruteForceCapError")
    seed: int = 0


class FieldSolution(BaseModel):
    """方程式系の F_p 上の解探索結果"""
    field: int
    satisfiable: bool
    witness: Optional[dict[str, int]] = None
    count: Optional[int] = None
    exhaustive: bool = True


class ScalarMorphism(BaseModel):
    """
    バーコード間の射のスカラー表示。entries[t][s] が成分 (s → t) の係数。
    """
    model_config = ConfigDict(frozen=True)

    field: int
    entries: tuple[tuple[int, ...], ...]


class Interleaving(BaseModel):
    """(Λ, Γ)-インターリーブ (φ: I → MΛ, ψ: M → IΓ)"""
    forward: Translation
    backward: Translation
    phi: ScalarMorphism
    psi: ScalarMorphism
    field: int


class DistanceResult(BaseModel):
    """インターリーブ距離とその証拠"""
    distance: int
    field: Optional[int] = None
    forward: Optional[Translation] = None
    backward: Optional[Translation] = None
    interleaving: Optional[Interleaving] = Field(
        None, description="None の場合は零インターリーブが証拠"
    )
    exhaustive: bool = True


# --- Matching ---

class Matching(BaseModel):
    """バー同士の部分単射 (I の添字, M の添字)"""
    pairs: tuple[tuple[int, int], ...] = ()
    eps: Optional[int] = None

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


class MatchingVerdict(BaseModel):
    ok: bool
    reason: str = ""


# --- Harness ---

class ShapeBounds(BaseModel):
    """ランダムインスタンスの形状の上限"""
    min_branches: int = Field(1, ge=1)
    max_branches: int = Field(DEFAULT_MAX_BRANCHES, ge=1)
    max_length: int = Field(DEFAULT_MAX_LENGTH, ge=1)
    max_bars: int = Field(DEFAULT_MAX_BARS, ge=0)
    weights: tuple[tuple[int, int], ...] = DEFAULT_WEIGHTS
    lengths: Optional[tuple[int, ...]] = Field(None, description="指定時は枝長を固定")
    asymmetric: bool = Field(True, description="最長枝が一意な形状のみ生成する")


class Instance(BaseModel):
    """検証用インスタンス（ポセットと二つのバーコード）"""
    seed: int
    poset: Poset
    left: Barcode
    right: Barcode
    fields: tuple[int, ...] = DEFAULT_FIELDS


class InstanceReport(BaseModel):
    """一インスタンスの D / D_B 比較結果（JSONL の一行）"""
    seed: int
    shape: tuple[int, ...]
    weight: tuple[int, int]
    left: list[list[str]]
    right: list[list[str]]
    bottleneck_distance: int
    interleaving_distances: dict[int, int]
    matching: list[tuple[int, int]] = Field(default_factory=list)
    witness_field: Optional[int] = None
    induced_matching_ok: Optional[bool] = None
    verdict: Verdict
    notes: list[str] = Field(default_factory=list)
    elapsed: Optional[float] = None


class LemmaFinding(BaseModel):
    suite: str
    verdict: Verdict
    detail: str = ""


class LemmaReport(BaseModel):
    findings: list[LemmaFinding] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.verdict != Verdict.FAIL for f in self.findings)
