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
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from nvee.types import Instance, InstanceReport, ShapeBounds, SolverOptions, Verdict
from nvee.types.constants import DEFAULT_FIELDS
from nvee.engine import core
from nvee.engine.exceptions import BruteForceCapError

from .instances import random_instance

logger = logging.getLogger(__name__)


def verify_isometry(
    instance: Instance,
    options: Optional[SolverOptions] = None,
    timing: bool = False,
) -> InstanceReport:
    """
    D と D_B を比較する。全数探索の上限に当たった場合は SKIPPED として報告する。
    """
    try:
        return core.analyze_instance(instance, options=options, timing=timing)
    except BruteForceCapError as e:
        p = instance.poset
        return InstanceReport(
            seed=instance.seed,
            shape=p.shape.branch_lengths if p.shape else (),
            weight=(p.weight.a, p.weight.b) if p.weight else (0, 0),
            left=[], right=[],
            bottleneck_distance=-1,
            interleaving_distances={},
            verdict=Verdict.SKIPPED,
            notes=[str(e)],
        )


def _run_seed(args: tuple) -> InstanceReport:
    seed, bounds, fields, options, timing = args
    instance = random_instance(seed, bounds, fields)
    return verify_isometry(instance, options, timing)


def run_isometry_batch(
    seeds: Iterable[int],
    bounds: Optional[ShapeBounds] = None,
    fields: tuple[int, ...] = DEFAULT_FIELDS,
    workers: Optional[int] = None,
    options: Optional[SolverOptions] = None,
    timing: bool = False,
) -> list[InstanceReport]:
    """
    シードごとにランダムインスタンスを作って検証し、シード順に並べて返す。
    workers を省略すると CPU 数だけのプロセスで並列に実行する。1 なら逐次。
    """
    bounds = bounds or ShapeBounds()
    jobs = [(seed, bounds, fields, options, timing) for seed in seeds]
    workers = min(workers or os.cpu_count() or 1, max(len(jobs), 1))
    started = time.perf_counter()
    if workers > 1:
        chunk = max(1, len(jobs) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_seed, jobs, chunksize=chunk))
    else:
        reports = [_run_seed(job) for job in jobs]
    reports.sort(key=lambda r: r.seed)
    failed = sum(1 for r in reports if r.verdict == Verdict.FAIL)
    logger.info(
        f"Isometry batch finished: {len(reports)} instances, {failed} failed, "
        f"{workers} worker(s), {time.perf_counter() - started:.2f}s"
    )
    return reports
