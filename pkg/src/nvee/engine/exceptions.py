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

from typing import Any, Optional


class NveeError(Exception):
    """
    nvee の処理全体における基底例外クラス。
    ポセット構築から距離計算、検証ハーネスまで全工程のエラーをラップして表現する。
    """
    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.stage = stage


class BruteForceCapError(NveeError):
    """
    全列挙系の処理が上限を超えたことを示す。
    ハーネスはこれを捕捉して SKIPPED として扱う。
    """
    def __init__(self, message: str, stage: str | None = None, cap: Optional[int] = None):
        super().__init__(message, stage=stage)
        self.cap = cap


class HallViolation(NveeError):
    """
    Hall の条件が破れている。witness は |x(S0)| < |S0| となる部分集合 S0。
    """
    def __init__(self, message: str, witness: tuple[Any, ...]):
        super().__init__(message, stage="Matching")
        self.witness = witness
