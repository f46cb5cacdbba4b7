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

from nvee.types import Barcode, Poset

from ..exceptions import NveeError
from ..structures.convex import is_convex_support


def validate_barcode(p: Poset, barcode: Barcode, name: str = "barcode") -> None:
    """
    バーコードの全ての台が P の連結凸部分集合であることを検証する（静的検査）。

    Args:
        p: 台を取るポセット
        barcode: 検証対象
        name: エラーメッセージに使う名前

    Raises:
        NveeError: 凸でない台、または懸垂点を含む台がある場合
    """
    for k, m in enumerate(barcode.bars):
        if not is_convex_support(p, m.support):
            labels = [p.labels[v] if 0 <= v < p.size else str(v) for v in m.support]
            raise NveeError(
                f"Bar {k} of {name} has a support {labels} that is not connected and convex",
                stage="InputGuard",
            )


def validate_fields(fields) -> tuple[int, ...]:
    """
    Raises:
        NveeError: 空、または素数でない値を含む場合
    """
    fields = tuple(int(f) for f in fields)
    if not fields:
        raise NveeError("At least one field is required", stage="InputGuard")
    for f in fields:
        if f < 2 or any(f % d == 0 for d in range(2, int(f ** 0.5) + 1)):
            raise NveeError(f"Field size must be prime: {f}", stage="InputGuard")
    return fields
