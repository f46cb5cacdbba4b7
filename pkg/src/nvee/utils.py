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

import yaml
from typing import Any, Dict, List, Union

from nvee.types import Barcode, ConvexModule, Poset, Weight

from .engine.exceptions import NveeError
from .engine.rules import vee
from .engine.structures.convex import make_module
from .engine.structures.poset import build_nvee, build_poset, make_weight, suspend, vertex_of, with_shape


def load_poset_from_spec(yaml_str: str) -> Poset:
    """
    YAML（または JSON）形式のポセット定義を Poset に変換します。

    n-Vee 形式 {"branches": [3, 6], "weight": [1, 2]} と、
    一般形式 {"elements": N, "covers": [[0, 1], ...], "weight": [a, b], "labels": [...]} に対応。
    一般形式で n-Vee であれば形状を付与します。

    Args:
        yaml_str (str): ポセット定義の文字列

    Returns:
        Poset: 構築されたポセット（weight があれば懸垂済み）
    """
    data = yaml.safe_load(yaml_str)
    if not data:
        raise ValueError("Empty YAML string provided")
    if not isinstance(data, dict):
        raise ValueError(f"Poset definition must be a mapping, got: {type(data).__name__}")

    weight = _parse_weight(data.get("weight"))
    if "branches" in data:
        if weight is None:
            raise ValueError("An n-Vee definition needs a weight [a, b]")
        return build_nvee([int(t) for t in data["branches"]], weight)

    if "elements" not in data or "covers" not in data:
        raise ValueError("Poset definition needs either 'branches' or both 'elements' and 'covers'")
    p = build_poset(int(data["elements"]), [tuple(c) for c in data["covers"]], data.get("labels"))
    verdict = vee.classify(p)
    if verdict.ok:
        p = with_shape(p, verdict.shape)
    if weight is not None:
        p = suspend(p, weight)
    return p


def _parse_weight(raw: Any) -> Weight | None:
    if raw is None:
        return None
    if isinstance(raw, dict):
        return make_weight((raw.get("a", 1), raw.get("b", 1)))
    return make_weight(raw)


def dump_poset_to_spec(p: Poset) -> str:
    """
    Poset を一般形式の YAML 文字列に変換します（懸垂点は含めません）。
    """
    core = p.core
    spec: Dict[str, Any] = {
        "elements": len(core),
        "covers": [[u, v] for u, v in p.covers if v != p.infinity],
        "labels": [p.labels[v] for v in core],
    }
    if p.weight is not None:
        spec["weight"] = [p.weight.a, p.weight.b]
    # sort_keys=False: elements, covers, labels の順を維持
    return yaml.dump(spec, allow_unicode=True, sort_keys=False, default_flow_style=None)


def parse_vertex(p: Poset, token: Union[str, int]) -> int:
    """ラベル（"x1"）または頂点番号（"3" / 3）を頂点番号に変換する"""
    if isinstance(token, int):
        return token
    token = token.strip()
    if token in p.labels:
        return vertex_of(p, token)
    if token.isdigit():
        return int(token)
    return vertex_of(p, token)


def parse_support(p: Poset, text: Union[str, List[Union[str, int]]]) -> ConvexModule:
    """
    "m,x1,x2" のようなカンマ区切り、またはリストから凸加群を作る。

    Raises:
        NveeError: 台が空、または凸でない場合
    """
    tokens = text.split(",") if isinstance(text, str) else list(text)
    vertices = [parse_vertex(p, t) for t in tokens if str(t).strip()]
    if not vertices:
        raise NveeError("Empty support", stage="InputGuard")
    return make_module(p, vertices)


def load_barcode_from_spec(yaml_str: str, p: Poset) -> Barcode:
    """
    バーのリストを Barcode に変換します。各バーは頂点のリストか、
    {support: [...], multiplicity: k} の辞書。空文字列は空のバーコード。
    """
    data = yaml.safe_load(yaml_str)
    if data is None:
        return Barcode()
    if not isinstance(data, list):
        raise ValueError("Barcode definition must be a list of bars")
    bars: List[ConvexModule] = []
    for entry in data:
        if isinstance(entry, dict):
            module = parse_support(p, entry["support"])
            count = int(entry.get("multiplicity", 1))
            if count < 1:
                raise NveeError(
                    f"Multiplicity of {entry['support']} must be positive, got {count}",
                    stage="InputGuard",
                )
            bars.extend([module] * count)
        else:
            bars.append(parse_support(p, entry))
    return Barcode(bars=tuple(bars))


def dump_barcode_to_spec(p: Poset, barcode: Barcode) -> str:
    spec = [
        {"support": support_labels(p, ConvexModule(support=support)), "multiplicity": k}
        for support, k in barcode.to_pairs().items()
    ]
    return yaml.dump(spec, allow_unicode=True, sort_keys=False, default_flow_style=None)


def support_labels(p: Poset, module: ConvexModule) -> List[str]:
    return [p.labels[v] for v in module.support]


def barcode_labels(p: Poset, barcode: Barcode) -> List[List[str]]:
    return [support_labels(p, m) for m in barcode.bars]
