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
nvee コマンド。

  nvee validate POSET
  nvee sigma POSET
  nvee width POSET SUPPORT
  nvee dist POSET BARCODE_A BARCODE_B [--fields 2,3,5]
  nvee bottleneck POSET BARCODE_A BARCODE_B
  nvee variety POSET BARCODE_A BARCODE_B --eps E [--export PATH] [--count --field P]
  nvee isometry --seed S --trials N [--shape B:L:K] [--lengths 1,2,3] [--workers W]
  nvee reproduce ex4|exnew|ex3
  nvee lemmas POSET [--suite NAME ...]

終了コード: 0 成功, 1 検証の失敗, 2 引数・入力ファイルの誤り
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

import yaml

from nvee import utils
from nvee.types import (
    Barcode,
    ExampleName,
    Poset,
    ShapeBounds,
    SolverOptions,
    Verdict,
)
from nvee.types.constants import DEFAULT_FIELDS
from nvee.engine.exceptions import BruteForceCapError, NveeError
from nvee.engine.metrics import interleaving, matching
from nvee.engine.rules import vee
from nvee.engine.structures.convex import enumerate_sigma, width
from nvee.engine.structures.translations import maximal_translation
from nvee.harness import fixtures, isometry, lemmas

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """入力ファイルや引数の値が解釈できない"""


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _shape(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected BRANCHES:LENGTH:BARS, got {text!r}")
    try:
        return tuple(int(x) for x in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected BRANCHES:LENGTH:BARS, got {text!r}") from e


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"Cannot read {path}: {e.strerror}") from e


def _load_poset(path: str) -> Poset:
    try:
        return utils.load_poset_from_spec(_read(path))
    except (ValueError, yaml.YAMLError) as e:
        raise UsageError(f"{path}: {e}") from e
    except NveeError as e:
        raise UsageError(f"{path}: {e} (stage: {e.stage})") from e


def _load_barcode(path: str, p: Poset) -> Barcode:
    try:
        return utils.load_barcode_from_spec(_read(path), p)
    except (ValueError, yaml.YAMLError) as e:
        raise UsageError(f"{path}: {e}") from e
    except NveeError as e:
        raise UsageError(f"{path}: {e} (stage: {e.stage})") from e


def _load_pair(args: argparse.Namespace) -> tuple[Poset, Barcode, Barcode]:
    p = _load_poset(args.poset)
    return p, _load_barcode(args.barcode_a, p), _load_barcode(args.barcode_b, p)


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


# --- サブコマンド ---

def _validate_command(args: argparse.Namespace) -> int:
    p = _load_poset(args.poset)
    verdict = vee.classify(p)
    if verdict.ok:
        text = f"n-Vee with branch lengths {list(verdict.shape.branch_lengths)}"
        if p.weight is not None:
            text += f", weight ({p.weight.a}, {p.weight.b})"
    else:
        text = f"not an n-Vee: {verdict.failed_condition.value}: {verdict.message}"
    _emit(args, verdict.model_dump(mode="json"), text)
    return EXIT_OK if verdict.ok else EXIT_FAILURE


def _sigma_command(args: argparse.Namespace) -> int:
    p = _load_poset(args.poset)
    supports = [utils.support_labels(p, m) for m in enumerate_sigma(p)]
    _emit(
        args,
        {"count": len(supports), "supports": supports},
        "\n".join(",".join(s) for s in supports) + f"\n# {len(supports)} convex supports",
    )
    return EXIT_OK


def _width_command(args: argparse.Namespace) -> int:
    p = _load_poset(args.poset)
    try:
        module = utils.parse_support(p, args.support)
    except (ValueError, NveeError) as e:
        raise UsageError(str(e)) from e
    w = width(p, module)
    _emit(args, {"support": utils.support_labels(p, module), "width": w}, f"W = {w}")
    return EXIT_OK


def _dist_command(args: argparse.Namespace) -> int:
    p, a, b = _load_pair(args)
    options = SolverOptions(seed=args.seed)
    results = interleaving.interleaving_distance(p, a, b, args.fields, options)
    lines = []
    for field, result in results.items():
        kind = "zero" if result.interleaving is None else "scalar"
        suffix = "" if result.exhaustive else " (random search)"
        lines.append(f"D over F_{field} = {result.distance} [{kind} witness]{suffix}")
    _emit(
        args,
        {str(f): r.model_dump(mode="json") for f, r in results.items()},
        "\n".join(lines),
    )
    return EXIT_OK


def _bottleneck_command(args: argparse.Namespace) -> int:
    p, a, b = _load_pair(args)
    eps, match = matching.bottleneck_distance(p, a, b)
    verdict = matching.check_matching(p, a, b, match)
    pairs = "; ".join(
        f"{','.join(utils.support_labels(p, a.bars[s]))} -> {','.join(utils.support_labels(p, b.bars[t]))}"
        for s, t in match.pairs
    )
    text = f"D_B = {eps}\nmatching: {pairs or '(empty)'}"
    if not verdict.ok:
        text += f"\nmatching rejected: {verdict.reason}"
    _emit(
        args,
        {"distance": eps, "matching": match.model_dump(mode="json"), "verified": verdict.ok},
        text,
    )
    return EXIT_OK if verdict.ok else EXIT_FAILURE


def _variety_command(args: argparse.Namespace) -> int:
    p, a, b = _load_pair(args)
    shift = maximal_translation(p, args.eps)
    system = interleaving.build_system(p, a, b, shift, shift)

    if args.export:
        target = Path(args.export)
        if target.suffix == ".json":
            target.write_text(interleaving.export_variety_json(system), encoding="utf-8")
        else:
            target.write_text(interleaving.export_variety_text(p, system), encoding="utf-8")
        logger.info(f"Variety written to {target}")

    payload: dict = {
        "eps": args.eps,
        "variables": [v.name for v in system.variables],
        "equations": system.render(),
    }
    lines = list(system.render())
    if args.count:
        solution = interleaving.solve_over_field(
            system, args.field, count=True, options=SolverOptions(allow_random=False)
        )
        payload["field"] = args.field
        payload["points"] = solution.count
        lines.append(f"# points over F_{args.field}: {solution.count}")
    _emit(args, payload, "\n".join(lines) if lines else "# no equations")
    return EXIT_OK


def _isometry_command(args: argparse.Namespace) -> int:
    branches, length, bars = args.shape
    bounds = ShapeBounds(
        max_branches=branches,
        max_length=length,
        max_bars=bars,
        lengths=args.lengths,
    )
    seeds = range(args.seed, args.seed + args.trials)
    reports = isometry.run_isometry_batch(
        seeds, bounds, args.fields, workers=args.workers, timing=args.timing
    )
    for report in reports:
        if args.json:
            print(report.model_dump_json())
        else:
            distances = " ".join(f"F_{f}:{d}" for f, d in sorted(report.interleaving_distances.items()))
            print(
                f"seed={report.seed} shape={list(report.shape)} weight={report.weight} "
                f"D_B={report.bottleneck_distance} D=[{distances}] {report.verdict.value}"
            )
    counts = {v: sum(1 for r in reports if r.verdict == v) for v in Verdict}
    summary = ", ".join(f"{v.value}={n}" for v, n in counts.items() if n)
    print(f"# {len(reports)} instances: {summary}", file=sys.stderr)
    return EXIT_FAILURE if counts[Verdict.FAIL] else EXIT_OK


def _reproduce_command(args: argparse.Namespace) -> int:
    result = fixtures.reproduce(args.example)
    if args.json:
        print(json.dumps(result, ensure_ascii=False, sort_keys=True))
    elif result["skipped"]:
        print(f"{result['example']}: skipped ({result['reason']})")
    else:
        for check in result["checks"]:
            mark = "ok" if check["ok"] else "MISMATCH"
            print(f"{check['check']}: {check['actual']} [{mark}]")
    return EXIT_OK if result["ok"] else EXIT_FAILURE


def _lemmas_command(args: argparse.Namespace) -> int:
    p = _load_poset(args.poset)
    report = lemmas.run_lemma_suites(p, seed=args.seed, only=args.suite)
    if args.json:
        print(report.model_dump_json())
    else:
        for finding in report.findings:
            print(f"{finding.suite}: {finding.verdict.value} {finding.detail}")
    return EXIT_OK if report.ok else EXIT_FAILURE


# --- 引数定義 ---

def _add_pair_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("poset", help="poset file (YAML or JSON)")
    parser.add_argument("barcode_a", help="left barcode file")
    parser.add_argument("barcode_b", help="right barcode file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nvee", description="Interleaving and bottleneck distances over n-Vee posets")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--timing", action="store_true", help="include wall-clock timing in reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check the n-Vee conditions")
    p_validate.add_argument("poset")
    p_validate.set_defaults(handler=_validate_command)

    p_sigma = sub.add_parser("sigma", help="list the convex supports")
    p_sigma.add_argument("poset")
    p_sigma.set_defaults(handler=_sigma_command)

    p_width = sub.add_parser("width", help="width of one convex module")
    p_width.add_argument("poset")
    p_width.add_argument("support", help="comma-separated labels or indices, e.g. m,x1")
    p_width.set_defaults(handler=_width_command)

    p_dist = sub.add_parser("dist", help="interleaving distance per field")
    _add_pair_args(p_dist)
    p_dist.add_argument("--fields", type=_int_list, default=DEFAULT_FIELDS)
    p_dist.add_argument("--seed", type=int, default=0, help="seed of the random fallback search")
    p_dist.set_defaults(handler=_dist_command)

    p_bottleneck = sub.add_parser("bottleneck", help="bottleneck distance and an optimal matching")
    _add_pair_args(p_bottleneck)
    p_bottleneck.set_defaults(handler=_bottleneck_command)

    p_variety = sub.add_parser("variety", help="interleaving equations at one threshold")
    _add_pair_args(p_variety)
    p_variety.add_argument("--eps", type=int, required=True)
    p_variety.add_argument("--export", help="write the system (.json for JSON, text otherwise)")
    p_variety.add_argument("--count", action="store_true", help="count the points over F_p")
    p_variety.add_argument("--field", type=int, default=2)
    p_variety.set_defaults(handler=_variety_command)

    p_iso = sub.add_parser("isometry", help="compare D and D_B on random instances")
    p_iso.add_argument("--seed", type=int, default=0)
    p_iso.add_argument("--trials", type=int, default=1)
    p_iso.add_argument("--shape", type=_shape, default=_shape("3:4:5"), help="BRANCHES:LENGTH:BARS")
    p_iso.add_argument("--lengths", type=_int_list, default=None, help="fixed branch lengths")
    p_iso.add_argument("--fields", type=_int_list, default=DEFAULT_FIELDS)
    p_iso.add_argument("--workers", type=int, default=None, help="worker processes (default: all CPUs)")
    p_iso.set_defaults(handler=_isometry_command)

    p_repro = sub.add_parser("reproduce", help="recompute a worked example")
    p_repro.add_argument("example", choices=[e.value for e in ExampleName])
    p_repro.set_defaults(handler=_reproduce_command)

    p_lemmas = sub.add_parser("lemmas", help="run the structural lemma suites")
    p_lemmas.add_argument("poset")
    p_lemmas.add_argument("--suite", action="append", choices=sorted(lemmas.SUITES))
    p_lemmas.add_argument("--seed", type=int, default=0)
    p_lemmas.set_defaults(handler=_lemmas_command)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    started = time.perf_counter()
    try:
        code = handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except BruteForceCapError as e:
        print(f"skipped: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except NveeError as e:
        print(f"error ({e.stage}): {e}", file=sys.stderr)
        return EXIT_FAILURE
    if args.timing:
        print(f"# elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
