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
構造的な補題を有限の例で検算するスイート群。

各スイートは LemmaFinding を一つ返す。全列挙の上限に当たったものは SKIPPED。
"""

import logging
from typing import Callable

import numpy as np

from nvee.types import Barcode, ConvexModule, LemmaFinding, LemmaReport, Poset, Translation, Verdict
from nvee.types.constants import EXHAUSTIVE_LEMMA_SIZE
from nvee.engine.exceptions import BruteForceCapError, NveeError
from nvee.engine.metrics.interleaving import decide_interleaving, diagonalize, distance_over_field, pairwise_distance
from nvee.engine.metrics.matching import half_matching
from nvee.engine.structures import translations as tr
from nvee.engine.structures import field as ff
from nvee.engine.structures.chain import (
    ChainMorphism,
    barcode_of_rep,
    chain_of,
    endpoint_counts,
    intervals_of_rep,
    kernel_image_cokernel,
    morphism_from_scalars,
    to_interval,
)
from nvee.engine.structures.poset import maximal_elements
from nvee.engine.structures.convex import (
    act,
    act_single,
    enumerate_sigma,
    minimum_of,
    trim_minus,
    trim_plus,
    width,
    width_forms,
)

logger = logging.getLogger(__name__)

SAMPLE_SIZE = 24


def _finding(suite: str, problems: list[str], checked: int) -> LemmaFinding:
    if problems:
        return LemmaFinding(suite=suite, verdict=Verdict.FAIL, detail="; ".join(problems[:5]))
    return LemmaFinding(suite=suite, verdict=Verdict.PASS, detail=f"{checked} cases")


def _sample(rng: np.random.Generator, items, k: int = SAMPLE_SIZE):
    items = list(items)
    if len(items) <= k:
        return items
    return [items[int(i)] for i in rng.choice(len(items), size=k, replace=False)]


def _pick(p: Poset, rng: np.random.Generator, items, k: int = SAMPLE_SIZE):
    """小さいポセットでは全件、それ以外は k 件の標本"""
    if p.size <= EXHAUSTIVE_LEMMA_SIZE:
        return list(items)
    return _sample(rng, items, k)


def translations_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """極大元の一致、支配、閾値に対する単調性、合成の高さ、有向性、冪等性"""
    problems = []
    everything = tr.enumerate_translations(p)
    heights = {t.images: tr.height(p, t) for t in everything}
    thresholds = tr.candidate_thresholds(p)
    for eps in thresholds:
        maxima = tr.maximal_translations(p, eps)
        brute = tr._keep_maxima(p, [img for img, h in heights.items() if h <= eps])
        if set(maxima) != set(brute):
            problems.append(f"maxima differ from enumeration at eps={eps}")
        for img, h in heights.items():
            if h <= eps and not any(tr.dominates(p, m, Translation(images=img)) for m in maxima):
                problems.append(f"{img} is not dominated at eps={eps}")
                break
    if p.shape is not None and (p.shape.asymmetric or len(p.shape.branches) == 1):
        for eps in thresholds:
            if len(tr.maximal_translations(p, eps)) != 1:
                problems.append(f"maximal translation is not unique at eps={eps}")
        chain = [tr.maximal_translation(p, eps) for eps in thresholds]
        for lo, hi in zip(chain, chain[1:]):
            if not tr.dominates(p, hi, lo):
                problems.append("maximal translations are not monotone in eps")
        for e1 in thresholds:
            for e2 in thresholds:
                joint = tr.compose(tr.maximal_translation(p, e1), tr.maximal_translation(p, e2))
                if tr.height(p, joint) > e1 + e2:
                    problems.append(f"composition height exceeds {e1}+{e2}")
        for top in chain:
            if tr.maximal_translation(p, tr.height(p, top)) != top:
                problems.append(f"maximal translation {top.images} is not idempotent")
        for s, t in _sample(rng, [(s, t) for s in everything for t in everything]):
            bound = tr.maximal_translation(p, max(heights[s.images], heights[t.images]))
            if not (tr.dominates(p, bound, s) and tr.dominates(p, bound, t)):
                problems.append(f"{s.images} and {t.images} are not directed")
    if tr.height_spectrum(p) != tr.brute_force_spectrum(p):
        problems.append("height spectrum differs from enumeration")
    return _finding("translations", problems, len(everything))


def width_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """幅の三定義の一致（非対称時）、単純加群・極大元を含む加群の幅、m での単純加群の幅"""
    problems = []
    sigma = enumerate_sigma(p)
    top = tr.candidate_thresholds(p)[-1]
    forms_apply = p.shape is not None and (p.shape.asymmetric or len(p.shape.branches) == 1)
    maxima = set(maximal_elements(p, within=p.core))
    for module in _pick(p, rng, sigma):
        w = width(p, module)
        if w > top:
            problems.append(f"width of {module.support} exceeds the largest threshold")
        if forms_apply:
            forms = width_forms(p, module)
            if len(set(forms)) != 1:
                problems.append(f"width forms of {module.support} disagree: {forms}")
        if p.weight is not None and module.vertices & maxima and w < p.weight.b:
            problems.append(f"{module.support} contains a maximal element but has width {w}")
        if p.weight is not None and len(module.support) == 1 and not module.vertices & maxima:
            x = module.support[0]
            interior = p.shape is None or x != p.shape.minimum or len(p.shape.branches) == 1
            if interior and w != p.weight.a:
                problems.append(f"interior singleton {module.support} has width {w}")
    if p.shape is not None:
        m = p.shape.minimum
        moving = next(
            eps for eps in tr.candidate_thresholds(p)
            if any(t.images[m] != m for t in tr.maximal_translations(p, eps))
        )
        if width(p, ConvexModule(support=(m,))) != moving:
            problems.append(f"width of the simple module at m differs from the first moving threshold {moving}")
    return _finding("width", problems, len(sigma))


def action_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """(MΛ)Γ = M(ΛΓ)"""
    problems = []
    sigma = enumerate_sigma(p)
    pool = [t for eps in tr.candidate_thresholds(p) for t in tr.maximal_translations(p, eps)]
    checked = 0
    for module in _pick(p, rng, sigma, 8):
        for s in _pick(p, rng, pool, 4):
            for t in _pick(p, rng, pool, 4):
                once = Barcode(bars=tuple(b for m in act(p, module, s).bars for b in act(p, m, t).bars))
                joint = act(p, module, tr.compose(s, t))
                checked += 1
                if once != joint:
                    problems.append(f"action is not contravariant on {module.support}")
    return _finding("action", problems, checked)


def trim_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """トリミングは元の台の部分区間で、下側は最小元を、上側は極大元を保つ"""
    problems = []
    sigma = enumerate_sigma(p)
    checked = 0
    for eps in tr.candidate_thresholds(p):
        for shift in tr.maximal_translations(p, eps):
            square = tr.compose(shift, shift)
            for module in _pick(p, rng, sigma, 6):
                checked += 1
                low = minimum_of(p, module)
                if low is not None:
                    for piece in trim_minus(p, module, square).bars:
                        if not piece.vertices <= module.vertices or low not in piece.vertices:
                            problems.append(f"quotient trim of {module.support} is not a lower piece")
                for piece in trim_plus(p, module, square).bars:
                    if not piece.vertices <= module.vertices:
                        problems.append(f"submodule trim of {module.support} leaves the support")
    return _finding("trim", problems, checked)


def compatibility_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    |W(I) − W(J)| ≤ d_2(I, J)。標本の組では d_2 が F_2, F_3 上の D と一致することも見る。
    """
    problems = []
    sigma = enumerate_sigma(p)
    pairs = [(a, b) for a in _pick(p, rng, sigma, 8) for b in _pick(p, rng, sigma, 8)]
    for a, b in pairs:
        if abs(width(p, a) - width(p, b)) > pairwise_distance(p, a, b):
            problems.append(f"width gap exceeds distance for {a.support}, {b.support}")
    for a, b in _sample(rng, pairs, 6):
        expected = pairwise_distance(p, a, b)
        for fp in (2, 3):
            found = distance_over_field(p, Barcode(bars=(a,)), Barcode(bars=(b,)), fp).distance
            if found != expected:
                problems.append(f"d_2({a.support}, {b.support}) = {expected} but D = {found} over F_{fp}")
    return _finding("compatibility", problems, len(pairs))


def _one_vee_only(p: Poset, suite: str) -> LemmaFinding | None:
    if p.shape is None or len(p.shape.branches) != 1:
        return LemmaFinding(suite=suite, verdict=Verdict.SKIPPED, detail="1-Vees only")
    return None


def prematching_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    1-Vee [m, n] 上で幅 > h(Λ) のバーの集合 Σ_0 について
    F(σ) = σ^{-Λ²} は非零かつ単射、G(σ) = σ^{+Λ²}Λ は非零で Σ_0 − Σ̄ 上単射、
    Σ̄（Λ²x = n となるバー）の上では σ_n Λ に等しい。
    """
    skipped = _one_vee_only(p, "prematching")
    if skipped:
        return skipped
    problems = []
    sigma = enumerate_sigma(p)
    top = p.shape.branches[0][-1]
    simple_top = ConvexModule(support=(top,))
    checked = 0
    for eps in tr.candidate_thresholds(p):
        shift = tr.maximal_translation(p, eps)
        square = tr.compose(shift, shift)
        h = tr.height(p, shift)
        wide = [m for m in sigma if width(p, m) > h]
        images = []
        for module in wide:
            trimmed = trim_minus(p, module, square)
            if not trimmed.bars:
                problems.append(f"trim of {module.support} vanishes at eps={eps}")
            images.append(trimmed)
        if len(set(images)) != len(images):
            problems.append(f"trim is not one-to-one at eps={eps}")

        lifted = {}
        for module in wide:
            upper = trim_plus(p, module, square).bars
            moved = act_single(p, upper[0], shift) if upper else None
            if moved is None:
                problems.append(f"upper trim of {module.support} vanishes at eps={eps}")
            lifted[module] = moved
        hits_top = {m for m in wide if square.images[minimum_of(p, m)] == top}
        expected = act_single(p, simple_top, shift)
        for module in hits_top:
            if lifted[module] != expected:
                problems.append(f"G({module.support}) is not the translate of [{top}] at eps={eps}")
        rest = [lifted[m] for m in wide if m not in hits_top]
        if len(set(rest)) != len(rest):
            problems.append(f"G is not one-to-one off the top at eps={eps}")
        checked += len(wide)
    return _finding("prematching", problems, checked)


def _moved(chain, module: ConvexModule, t: Translation):
    """MΘ の台を鎖の区間で表す"""
    return to_interval(chain, [v for v in chain if t.images[v] in module.vertices])


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _interleaved_barcodes(p: Poset, rng: np.random.Generator, tries: int = 3):
    """
    各閾値の極大平行移動 Λ で (Λ, Λ)-インターリーブされたバーコードの組を作る。
    一組目は常に I 自身と構造写像。
    """
    sigma = enumerate_sigma(p)
    for eps in tr.candidate_thresholds(p):
        shift = tr.maximal_translation(p, eps)
        for k in range(tries):
            left = Barcode(bars=tuple(_sample(rng, sigma, 3)))
            right = left if k == 0 else Barcode(bars=tuple(_sample(rng, sigma, 3)))
            found = decide_interleaving(p, left, right, shift, shift, 2)
            if found is not None:
                yield left, right, found


def _contains_columns(outer: np.ndarray, inner: np.ndarray, fp: int) -> bool:
    return ff.rank(np.hstack([outer, inner]), fp) == ff.rank(outer, fp)


def _contains_kernel(small: np.ndarray, large: np.ndarray, fp: int) -> bool:
    """ker small ⊆ ker large"""
    return ff.rank(np.vstack([small, large]), fp) == ff.rank(small, fp)


def injsurj_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    インターリーブの射 φ: I → MΛ（と ψ）について、核と余核のバーの幅は h(Λ) 以下。
    全射 I ↠ im φ は左端点ごとのバー数を、単射 im φ ↪ MΛ は右端点ごとのバー数を増やさない。
    """
    skipped = _one_vee_only(p, "injsurj")
    if skipped:
        return skipped
    problems = []
    chain = chain_of(p)
    checked = 0
    for left, right, found in _interleaved_barcodes(p, rng):
        sides = (
            (left, right, found.phi.entries, found.forward, "phi"),
            (right, left, found.psi.entries, found.backward, "psi"),
        )
        for source, target, entries, shift, name in sides:
            checked += 1
            h = tr.height(p, shift)
            src = [to_interval(chain, b.support) for b in source.bars]
            moved = [_moved(chain, b, shift) for b in target.bars]
            f = morphism_from_scalars(chain, src, moved, entries, found.field)
            ker, im, coker = kernel_image_cokernel(f)
            for bar in barcode_of_rep(ker).bars + barcode_of_rep(coker).bars:
                if width(p, bar) > h:
                    problems.append(f"{name} leaves {bar.support} of width {width(p, bar)} > {h}")
            image = intervals_of_rep(im)
            starts = endpoint_counts([i for i in src if i is not None], 0)
            for x, n in endpoint_counts(image, 0).items():
                if n > starts.get(x, 0):
                    problems.append(f"image of {name} has more bars starting at {chain[x]} than its source")
            ends = endpoint_counts([i for i in moved if i is not None], 1)
            for x, n in endpoint_counts(image, 1).items():
                if n > ends.get(x, 0):
                    problems.append(f"image of {name} has more bars ending at {chain[x]} than its target")
    return _finding("injsurj", problems, checked)


def trim_image_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    (Λ, Λ)-インターリーブ (φ, ψ) について
    I^{-Λ²} = im(ψΛ∘φ) は im φ の商（ker φ ⊆ ker ψΛφ）で、
    構造写像 M → MΛ² の像は φΛ の像に含まれる。
    """
    skipped = _one_vee_only(p, "trim_image")
    if skipped:
        return skipped
    problems = []
    chain = chain_of(p)
    checked = 0
    for left, right, found in _interleaved_barcodes(p, rng):
        checked += 1
        fp = found.field
        shift = found.forward
        square = tr.compose(shift, shift)
        src = [to_interval(chain, b.support) for b in left.bars]
        tgt = [to_interval(chain, b.support) for b in right.bars]
        src_once = [_moved(chain, b, shift) for b in left.bars]
        tgt_once = [_moved(chain, b, shift) for b in right.bars]
        src_twice = [_moved(chain, b, square) for b in left.bars]
        tgt_twice = [_moved(chain, b, square) for b in right.bars]

        phi = morphism_from_scalars(chain, src, tgt_once, found.phi.entries, fp)
        psi_moved = morphism_from_scalars(chain, tgt_once, src_twice, found.psi.entries, fp)
        round_trip = ChainMorphism(
            source=phi.source,
            target=psi_moved.target,
            components=tuple(np.mod(b @ a, fp) for a, b in zip(phi.components, psi_moved.components)),
        )
        _, image, _ = kernel_image_cokernel(round_trip)
        if barcode_of_rep(image).to_pairs() != trim_minus(p, left, square).to_pairs():
            problems.append(f"image of the round trip on {left.to_pairs()} is not the lower trim")
        for v in range(len(chain)):
            if not _contains_kernel(phi.components[v], round_trip.components[v], fp):
                problems.append(f"kernel of phi is not inside the round-trip kernel at {chain[v]}")

        phi_moved = morphism_from_scalars(chain, src_once, tgt_twice, found.phi.entries, fp)
        structure = morphism_from_scalars(chain, tgt, tgt_twice, _identity(len(right.bars)), fp)
        for v in range(len(chain)):
            if not _contains_columns(phi_moved.components[v], structure.components[v], fp):
                problems.append(f"structure map of {right.to_pairs()} leaves the image of phi at {chain[v]}")
    return _finding("trim_image", problems, checked)


def _fixing_witnesses(p: Poset, rng: np.random.Generator, tries: int = 4):
    """Λm = m となる極大平行移動での (Λ, Λ)-インターリーブをランダムなバーコードで作る"""
    sigma = enumerate_sigma(p)
    m = p.shape.minimum
    for eps in tr.candidate_thresholds(p):
        shift = tr.maximal_translation(p, eps)
        if shift.images[m] != m:
            continue
        for _ in range(tries):
            left = Barcode(bars=tuple(_sample(rng, sigma, 3)))
            right = Barcode(bars=tuple(_sample(rng, sigma, 3)))
            found = decide_interleaving(p, left, right, shift, shift, 2)
            if found is not None:
                yield left, right, found


def _split_at_minimum(p: Poset, left: Barcode, right: Barcode):
    m = p.shape.minimum
    rows_s = [s for s, b in enumerate(left.bars) if m in b.vertices]
    rows_t = [t for t, b in enumerate(right.bars) if m in b.vertices]
    rest_s = [s for s in range(len(left.bars)) if s not in rows_s]
    rest_t = [t for t in range(len(right.bars)) if t not in rows_t]
    return [(rows_s, rows_t), (rest_s, rest_t)]


def _needs_unique_maxima(p: Poset, suite: str) -> LemmaFinding | None:
    if p.shape is None or (len(p.shape.branches) > 1 and not p.shape.asymmetric):
        return LemmaFinding(suite=suite, verdict=Verdict.SKIPPED, detail="asymmetric n-Vees only")
    return None


def diagonalize_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    m を固定する Λ での証拠は、m を含むバーとそれ以外に分けても証拠のまま。
    """
    skipped = _needs_unique_maxima(p, "diagonalize")
    if skipped:
        return skipped
    problems = []
    checked = 0
    for left, right, found in _fixing_witnesses(p, rng):
        checked += 1
        try:
            diagonalize(p, left, right, found, _split_at_minimum(p, left, right))
        except NveeError as e:
            problems.append(str(e))
    return _finding("diagonalize", problems, checked)


def propfix_suite(p: Poset, rng: np.random.Generator) -> LemmaFinding:
    """
    m を含むバーの数は両側で等しく、ψΛφ が非零な組から全単射が取れる。
    """
    skipped = _needs_unique_maxima(p, "propfix")
    if skipped:
        return skipped
    problems = []
    checked = 0
    for left, right, found in _fixing_witnesses(p, rng):
        checked += 1
        blocks = _split_at_minimum(p, left, right)
        rows_s, rows_t = blocks[0]
        if len(rows_s) != len(rows_t):
            problems.append(f"bars through m differ in number: {len(rows_s)} vs {len(rows_t)}")
            continue
        try:
            split = diagonalize(p, left, right, found, blocks)
            options = {
                s: {t for t in rows_t if split.phi.entries[t][s] * split.psi.entries[s][t] % 2}
                for s in rows_s
            }
            half_matching(rows_s, options)
        except NveeError as e:
            problems.append(str(e))
    return _finding("propfix", problems, checked)


SUITES: dict[str, Callable[[Poset, np.random.Generator], LemmaFinding]] = {
    "translations": translations_suite,
    "width": width_suite,
    "action": action_suite,
    "trim": trim_suite,
    "compatibility": compatibility_suite,
    "prematching": prematching_suite,
    "injsurj": injsurj_suite,
    "trim_image": trim_image_suite,
    "diagonalize": diagonalize_suite,
    "propfix": propfix_suite,
}


def run_lemma_suites(p: Poset, seed: int = 0, only: list[str] | None = None) -> LemmaReport:
    """
    指定（省略時は全て）のスイートを実行する。上限超過は SKIPPED、想定外の例外は FAIL。
    """
    report = LemmaReport()
    for name, suite in SUITES.items():
        if only and name not in only:
            continue
        rng = np.random.default_rng(seed)
        try:
            finding = suite(p, rng)
        except BruteForceCapError as e:
            finding = LemmaFinding(suite=name, verdict=Verdict.SKIPPED, detail=str(e))
        except NveeError as e:
            finding = LemmaFinding(suite=name, verdict=Verdict.FAIL, detail=str(e))
        logger.debug(f"Lemma suite {name}: {finding.verdict}")
        report.findings.append(finding)
    return report
