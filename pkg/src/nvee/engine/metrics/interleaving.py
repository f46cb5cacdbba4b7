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
インターリーブの存在判定とインターリーブ距離。

固定した (Λ, Γ) について、φ と ψ のスカラーを未知数とする二次の方程式系を作り、
有限体 F_p 上で解を探す。距離は候補閾値を昇順に走査して最初に解が見つかる値。
"""

import functools
import logging
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from nvee.types import (
    Barcode,
    ConvexModule,
    DistanceResult,
    Equation,
    FieldSolution,
    Interleaving,
    InterleavingSystem,
    Poset,
    Provenance,
    ScalarMorphism,
    SolverOptions,
    Translation,
    Triangle,
    Variable,
    VariableFamily,
)

from nvee.types.constants import DEFAULT_FIELDS

from ..exceptions import BruteForceCapError, NveeError
from ..structures import field as ff
from ..structures.convex import act_single, canonical_hom, compose_canonical, structure_map_nonzero
from ..structures.translations import (
    candidate_thresholds,
    compose,
    dominates,
    maximal_translation,
    maximal_translations,
)

logger = logging.getLogger(__name__)

STAGE = "Interleaving"


# --- 方程式系の構築 ---

class _Pattern:
    """
    (I, M, Λ, Γ) から決まる φ・ψ の零パターン。

    phi[s][t] は Φ(I_s → M_tΛ) の台（0 なら None）、
    psi[t][s] は Φ(M_t → I_sΓ) の台。
    """

    def __init__(
        self,
        p: Poset,
        source: Sequence[ConvexModule],
        target: Sequence[ConvexModule],
        forward: Translation,
        backward: Translation,
    ):
        self.source = list(source)
        self.target = list(target)
        target_moved = [act_single(p, m, forward) for m in self.target]
        source_moved = [act_single(p, m, backward) for m in self.source]
        self.phi = [
            [self._support(p, i, mt) for mt in target_moved] for i in self.source
        ]
        self.psi = [
            [self._support(p, m, isg) for isg in source_moved] for m in self.target
        ]

    @staticmethod
    def _support(p: Poset, a: ConvexModule, b: Optional[ConvexModule]) -> Optional[frozenset]:
        hom = canonical_hom(p, a, b)
        return frozenset(hom.support) if hom.nonzero else None


def _build(
    p: Poset,
    source: Sequence[ConvexModule],
    target: Sequence[ConvexModule],
    forward: Translation,
    backward: Translation,
) -> InterleavingSystem:
    pattern = _Pattern(p, source, target, forward, backward)
    n_s, n_t = len(source), len(target)

    variables: list[Variable] = []
    lam: dict[tuple[int, int], int] = {}
    mu: dict[tuple[int, int], int] = {}
    for s in range(n_s):
        for t in range(n_t):
            if pattern.phi[s][t] is not None:
                lam[s, t] = len(variables)
                variables.append(Variable(family=VariableFamily.LAMBDA, source=s, target=t))
    for t in range(n_t):
        for s in range(n_s):
            if pattern.psi[t][s] is not None:
                mu[t, s] = len(variables)
                variables.append(Variable(family=VariableFamily.MU, source=t, target=s))

    collected: dict[tuple, list[Provenance]] = {}

    def _add(terms, constant, prov):
        if not terms and not constant:
            return
        key = (tuple(sorted(terms)), constant)
        collected.setdefault(key, []).append(prov)

    source_sets = [m.vertices for m in source]
    target_sets = [m.vertices for m in target]

    # ψΛ∘φ = Φ(I → IΓΛ)
    for x in p.core:
        lx = forward.images[x]
        glx = backward.images[lx]
        for s in range(n_s):
            if x not in source_sets[s]:
                continue
            for s2 in range(n_s):
                terms = [
                    (lam[s, t], mu[t, s2])
                    for t in range(n_t)
                    if (s, t) in lam and (t, s2) in mu
                    and x in pattern.phi[s][t] and lx in pattern.psi[t][s2]
                ]
                constant = int(s == s2 and glx in source_sets[s])
                _add(terms, constant, Provenance(triangle=Triangle.SOURCE, vertex=x, row=s2, column=s))

    # φΓ∘ψ = Φ(M → MΛΓ)
    for x in p.core:
        gx = backward.images[x]
        lgx = forward.images[gx]
        for t in range(n_t):
            if x not in target_sets[t]:
                continue
            for t2 in range(n_t):
                terms = [
                    (lam[s, t2], mu[t, s])
                    for s in range(n_s)
                    if (t, s) in mu and (s, t2) in lam
                    and x in pattern.psi[t][s] and gx in pattern.phi[s][t2]
                ]
                constant = int(t == t2 and lgx in target_sets[t])
                _add(terms, constant, Provenance(triangle=Triangle.TARGET, vertex=x, row=t2, column=t))

    equations = tuple(
        Equation(terms=terms, constant=constant, provenance=tuple(provs))
        for (terms, constant), provs in collected.items()
    )
    return InterleavingSystem(
        source_size=n_s,
        target_size=n_t,
        forward=forward,
        backward=backward,
        variables=tuple(variables),
        equations=equations,
    )


def build_system(
    p: Poset, source: Barcode, target: Barcode, forward: Translation, backward: Translation
) -> InterleavingSystem:
    """
    (Λ, Γ)-インターリーブが存在するための方程式系を組み立てる。

    変数 lam[s,t] は Hom(I_s, M_tΛ) ≠ 0 のとき、mu[t,s] は Hom(M_t, I_sΓ) ≠ 0 のときだけ作る。
    0 = 0 の式は捨て、同じ式は出どころをまとめて一つにする。

    Raises:
        NveeError: 平行移動した加群が直既約でない場合
    """
    return _build(p, source.bars, target.bars, forward, backward)


# --- 有限体上の解探索 ---

def _component_order(system: InterleavingSystem, comp: set[int], eqs: list[Equation]):
    lams = sorted(v for v in comp if system.variables[v].family == VariableFamily.LAMBDA)
    mus = sorted(v for v in comp if system.variables[v].family == VariableFamily.MU)
    # 少ない方の族を列挙し、もう一方は線形に解く
    enum_lam = len(lams) <= len(mus)
    enumerated, linear = (lams, mus) if enum_lam else (mus, lams)
    order: list[int] = []
    for eq in eqs:
        for term in eq.terms:
            v = term[0] if enum_lam else term[1]
            if v not in order:
                order.append(v)
    order += [v for v in enumerated if v not in order]
    return enum_lam, order, linear


def _linear_rows(eqs, enum_lam, values, linear_index, p):
    a = np.zeros((len(eqs), len(linear_index)), dtype=np.int64)
    b = np.zeros((len(eqs), 1), dtype=np.int64)
    for r, eq in enumerate(eqs):
        for lv, mv in eq.terms:
            e, f = (lv, mv) if enum_lam else (mv, lv)
            a[r, linear_index[f]] = (a[r, linear_index[f]] + values[e]) % p
        b[r, 0] = eq.constant
    return a, b


def _solve_component(system, comp, eqs, p, count, options):
    """
    Returns:
        (割り当て or None, 解の個数 or None, 全探索したか)
    """
    enum_lam, order, linear = _component_order(system, comp, eqs)
    linear_index = {v: i for i, v in enumerate(linear)}
    position = {v: i for i, v in enumerate(order)}
    ready: list[list[Equation]] = [[] for _ in order]
    for eq in eqs:
        deepest = max(position[lv if enum_lam else mv] for lv, mv in eq.terms)
        ready[deepest].append(eq)

    if len(order) > options.exhaustive_cap:
        if not options.allow_random:
            raise BruteForceCapError(
                f"Component with {len(order)} enumerated variables exceeds cap {options.exhaustive_cap}",
                stage=STAGE,
                cap=options.exhaustive_cap,
            )
        logger.info(f"Falling back to random search over {len(order)} variables (F_{p})")
        rng = np.random.default_rng(options.seed)
        for _ in range(options.random_attempts):
            values = {v: int(x) for v, x in zip(order, rng.integers(0, p, size=len(order)))}
            a, b = _linear_rows(eqs, enum_lam, values, linear_index, p)
            x = ff.solve(a, b, p)
            if x is not None:
                values.update({v: int(x[linear_index[v], 0]) for v in linear})
                return values, None, False
        return None, None, False

    values: dict[int, int] = {}
    found: dict[str, object] = {"witness": None, "count": 0}

    def _descend(k: int, active: list[Equation]) -> bool:
        if k == len(order):
            a, b = _linear_rows(active, enum_lam, values, linear_index, p)
            x = ff.solve(a, b, p)
            if x is None:
                return False
            if found["witness"] is None:
                w = dict(values)
                w.update({v: int(x[linear_index[v], 0]) for v in linear})
                found["witness"] = w
            found["count"] += p ** (len(linear) - ff.rank(a, p))
            return not count
        v = order[k]
        now = active + ready[k]
        for value in range(p):
            values[v] = value
            if ready[k]:
                a, b = _linear_rows(now, enum_lam, values, linear_index, p)
                if not ff.is_consistent(a, b, p):
                    continue
            if _descend(k + 1, now):
                return True
        del values[v]
        return False

    _descend(0, [])
    if found["witness"] is None:
        return None, 0, True
    return found["witness"], (found["count"] if count else None), True


def solve_over_field(
    system: InterleavingSystem,
    field: int,
    count: bool = False,
    options: Optional[SolverOptions] = None,
) -> FieldSolution:
    """
    方程式系を F_p 上で解く。

    変数の共起グラフの連結成分ごとに、λ と μ のうち少ない方の族を列挙し、
    残りを線形方程式として解く。count=True なら F_p 上の点の個数も数える。

    Args:
        system: build_system が返した方程式系
        field: 素数 p
        count: 解の個数を数えるか
        options: 探索上限など

    Returns:
        FieldSolution: 解の有無、証拠、（要求時は）個数

    Raises:
        BruteForceCapError: ランダム探索が許されず、上限を超えた成分がある場合
    """
    p = ff.check_prime(field)
    options = options or SolverOptions()
    if any(not eq.terms and eq.constant for eq in system.equations):
        return FieldSolution(field=p, satisfiable=False, count=0 if count else None)

    graph = nx.Graph()
    graph.add_nodes_from(range(len(system.variables)))
    for eq in system.equations:
        flat = [v for term in eq.terms for v in term]
        graph.add_edges_from(zip(flat, flat[1:]))

    witness = {v.name: 0 for v in system.variables}
    total: Optional[int] = 1
    exhaustive = True
    for comp in sorted((set(c) for c in nx.connected_components(graph)), key=min):
        eqs = [eq for eq in system.equations if eq.terms and eq.terms[0][0] in comp]
        if not eqs:
            if total is not None:
                total *= p ** len(comp)
            continue
        assignment, n_points, complete = _solve_component(system, comp, eqs, p, count, options)
        exhaustive = exhaustive and complete
        if assignment is None:
            return FieldSolution(
                field=p,
                satisfiable=False,
                count=0 if (count and complete) else None,
                exhaustive=exhaustive,
            )
        witness.update({system.variables[v].name: x for v, x in assignment.items()})
        total = total * n_points if (total is not None and n_points is not None) else None

    return FieldSolution(
        field=p,
        satisfiable=True,
        witness=witness,
        count=total if count else None,
        exhaustive=exhaustive,
    )


# --- インターリーブの検証・構成 ---

def _check_shapes(source: Barcode, target: Barcode, phi: ScalarMorphism, psi: ScalarMorphism) -> None:
    n_s, n_t = len(source.bars), len(target.bars)
    if len(phi.entries) != n_t or any(len(row) != n_s for row in phi.entries):
        raise NveeError(f"phi must be a {n_t}x{n_s} matrix", stage=STAGE)
    if len(psi.entries) != n_s or any(len(row) != n_t for row in psi.entries):
        raise NveeError(f"psi must be a {n_s}x{n_t} matrix", stage=STAGE)


def check_interleaving(p: Poset, source: Barcode, target: Barcode, interleaving: Interleaving) -> bool:
    """
    与えられたスカラー (φ, ψ) が (Λ, Γ)-インターリーブかを確かめる。

    Raises:
        NveeError: 行列の形が合わない、または Hom が 0 の成分に非零の係数がある場合
    """
    phi, psi = interleaving.phi, interleaving.psi
    _check_shapes(source, target, phi, psi)
    fp = ff.check_prime(interleaving.field)
    pattern = _Pattern(p, source.bars, target.bars, interleaving.forward, interleaving.backward)
    for s in range(len(source.bars)):
        for t in range(len(target.bars)):
            if pattern.phi[s][t] is None and phi.entries[t][s] % fp:
                raise NveeError(f"phi[{t}][{s}] is nonzero but Hom(I_{s}, M_{t}Λ) = 0", stage=STAGE)
            if pattern.psi[t][s] is None and psi.entries[s][t] % fp:
                raise NveeError(f"psi[{s}][{t}] is nonzero but Hom(M_{t}, I_{s}Γ) = 0", stage=STAGE)

    system = build_system(p, source, target, interleaving.forward, interleaving.backward)
    values = {}
    for v in system.variables:
        if v.family == VariableFamily.LAMBDA:
            values[v.name] = phi.entries[v.target][v.source]
        else:
            values[v.name] = psi.entries[v.target][v.source]
    return satisfies(system, values, fp)


def satisfies(system: InterleavingSystem, values: dict[str, int], field: int) -> bool:
    names = [v.name for v in system.variables]
    for eq in system.equations:
        total = sum(values[names[i]] * values[names[j]] for i, j in eq.terms)
        if total % field != eq.constant % field:
            return False
    return True


def interleaving_from_witness(
    system: InterleavingSystem, witness: dict[str, int], field: int
) -> Interleaving:
    phi = [[0] * system.source_size for _ in range(system.target_size)]
    psi = [[0] * system.target_size for _ in range(system.source_size)]
    for v in system.variables:
        value = witness.get(v.name, 0) % field
        if v.family == VariableFamily.LAMBDA:
            phi[v.target][v.source] = value
        else:
            psi[v.target][v.source] = value
    return Interleaving(
        forward=system.forward,
        backward=system.backward,
        phi=ScalarMorphism(field=field, entries=tuple(tuple(r) for r in phi)),
        psi=ScalarMorphism(field=field, entries=tuple(tuple(r) for r in psi)),
        field=field,
    )


def zero_interleaving_valid(
    p: Poset, source: Barcode, target: Barcode, forward: Translation, backward: Translation
) -> bool:
    """零射の組がインターリーブになる（全ての構造写像 I → IΓΛ, M → MΛΓ が 0）か"""
    source_loop = compose(backward, forward)
    target_loop = compose(forward, backward)
    return not any(structure_map_nonzero(p, m, source_loop) for m in source.bars) and not any(
        structure_map_nonzero(p, m, target_loop) for m in target.bars
    )


def interleaving_blocks(
    p: Poset, source: Barcode, target: Barcode, forward: Translation, backward: Translation
) -> list[tuple[list[int], list[int]]]:
    """
    s → t（lam が存在）, t → s（mu が存在）の有向グラフの強連結成分。
    成分ごとに独立にインターリーブを判定してよい。
    """
    pattern = _Pattern(p, source.bars, target.bars, forward, backward)
    graph = nx.DiGraph()
    graph.add_nodes_from(("I", s) for s in range(len(source.bars)))
    graph.add_nodes_from(("M", t) for t in range(len(target.bars)))
    for s in range(len(source.bars)):
        for t in range(len(target.bars)):
            if pattern.phi[s][t] is not None:
                graph.add_edge(("I", s), ("M", t))
            if pattern.psi[t][s] is not None:
                graph.add_edge(("M", t), ("I", s))
    blocks = []
    for comp in nx.strongly_connected_components(graph):
        blocks.append((
            sorted(i for side, i in comp if side == "I"),
            sorted(i for side, i in comp if side == "M"),
        ))
    return sorted(blocks, key=lambda b: (b[0][:1] or [len(source.bars)], b[1][:1] or [len(target.bars)]))


def decide_interleaving(
    p: Poset,
    source: Barcode,
    target: Barcode,
    forward: Translation,
    backward: Translation,
    field: int,
    options: Optional[SolverOptions] = None,
) -> Optional[Interleaving]:
    """
    (Λ, Γ)-インターリーブを探し、見つかればブロック対角な証拠を返す。
    """
    fp = ff.check_prime(field)
    phi = np.zeros((len(target.bars), len(source.bars)), dtype=np.int64)
    psi = np.zeros((len(source.bars), len(target.bars)), dtype=np.int64)
    for rows_s, rows_t in interleaving_blocks(p, source, target, forward, backward):
        system = _build(
            p, [source.bars[s] for s in rows_s], [target.bars[t] for t in rows_t], forward, backward
        )
        solution = solve_over_field(system, fp, options=options)
        if not solution.satisfiable:
            return None
        local = interleaving_from_witness(system, solution.witness, fp)
        for i, s in enumerate(rows_s):
            for j, t in enumerate(rows_t):
                phi[t, s] = local.phi.entries[j][i]
                psi[s, t] = local.psi.entries[i][j]
    result = Interleaving(
        forward=forward,
        backward=backward,
        phi=ScalarMorphism(field=fp, entries=tuple(tuple(int(x) for x in r) for r in phi)),
        psi=ScalarMorphism(field=fp, entries=tuple(tuple(int(x) for x in r) for r in psi)),
        field=fp,
    )
    if not check_interleaving(p, source, target, result):
        raise NveeError("Block-diagonal witness failed re-verification", stage=STAGE)
    return result


def interleaving_distance(
    p: Poset,
    source: Barcode,
    target: Barcode,
    fields: Sequence[int] = DEFAULT_FIELDS,
    options: Optional[SolverOptions] = None,
) -> dict[int, DistanceResult]:
    """
    体ごとのインターリーブ距離。キーは指定順の素数 p。

    Raises:
        NveeError: 体が空、または素数でない場合
    """
    if not fields:
        raise NveeError("At least one field is required", stage=STAGE)
    return {fp: distance_over_field(p, source, target, fp, options) for fp in fields}


def distance_over_field(
    p: Poset,
    source: Barcode,
    target: Barcode,
    field: int = 2,
    options: Optional[SolverOptions] = None,
) -> DistanceResult:
    """
    F_p 上のインターリーブ距離 D(I, M) と、それを与える証拠。

    候補閾値を昇順に走り、極大平行移動の組 (Λ, Γ) ごとにまず零インターリーブ、
    次に方程式系の解を試す。極大平行移動の集合が前の閾値と同じなら飛ばす。
    """
    fp = ff.check_prime(field)
    previous: Optional[tuple[Translation, ...]] = None
    for eps in candidate_thresholds(p):
        maxima = maximal_translations(p, eps)
        if maxima == previous:
            continue
        previous = maxima
        for forward in maxima:
            for backward in maxima:
                if zero_interleaving_valid(p, source, target, forward, backward):
                    logger.debug(f"Zero interleaving at eps={eps}")
                    return DistanceResult(distance=eps, field=fp, forward=forward, backward=backward)
                found = decide_interleaving(p, source, target, forward, backward, fp, options)
                if found is not None:
                    logger.debug(f"Interleaving found at eps={eps} over F_{fp}")
                    return DistanceResult(
                        distance=eps, field=fp, forward=forward, backward=backward, interleaving=found
                    )
    raise NveeError("No interleaving found at any threshold", stage=STAGE)


def _pair_interleaved(
    p: Poset, a: ConvexModule, b: ConvexModule, forward: Translation, backward: Translation
) -> bool:
    if zero_interleaving_valid(p, Barcode(bars=(a,)), Barcode(bars=(b,)), forward, backward):
        return True
    system = _build(p, [a], [b], forward, backward)
    if len(system.variables) < 2:
        return False
    # 1×1 では全ての式が lam*mu = c の形なので、c が揃えば解がある
    if any(not eq.terms for eq in system.equations):
        return False
    return len({eq.constant for eq in system.equations}) <= 1


@functools.lru_cache(maxsize=65536)
def pairwise_distance(p: Poset, a: ConvexModule, b: ConvexModule) -> int:
    """
    凸加群二つの間の距離 d_2。1×1 の方程式系の形だけから判定する。
    """
    for eps in candidate_thresholds(p):
        maxima = maximal_translations(p, eps)
        if any(_pair_interleaved(p, a, b, f, g) for f in maxima for g in maxima):
            return eps
    raise NveeError(f"No interleaving between {a.support} and {b.support}", stage=STAGE)


def pair_scalar(p: Poset, a: ConvexModule, b: ConvexModule, forward: Translation, backward: Translation) -> Optional[int]:
    """
    (Λ, Γ) で a と b をインターリーブする lam = mu の値（1 または 0）。不可能なら None。
    """
    system = _build(p, [a], [b], forward, backward)
    if len(system.variables) == 2 and system.equations and all(
        eq.terms and eq.constant == 1 for eq in system.equations
    ):
        return 1
    if zero_interleaving_valid(p, Barcode(bars=(a,)), Barcode(bars=(b,)), forward, backward):
        return 0
    return None


def lift_witness(
    p: Poset,
    source: Barcode,
    target: Barcode,
    interleaving: Interleaving,
    forward: Translation,
    backward: Translation,
) -> Interleaving:
    """
    (Λ, Γ)-インターリーブを、より大きな (Λ', Γ') のインターリーブに持ち上げる。
    各成分に構造写像 MΛ → MΛ' を合成し、合成係数（0 か 1）を掛ける。

    Raises:
        NveeError: Λ' ≥ Λ, Γ' ≥ Γ でない、または持ち上げが検証に失敗した場合
    """
    if not (dominates(p, forward, interleaving.forward) and dominates(p, backward, interleaving.backward)):
        raise NveeError("Lifting needs larger translations", stage=STAGE)
    fp = interleaving.field
    phi = [list(r) for r in interleaving.phi.entries]
    psi = [list(r) for r in interleaving.psi.entries]
    for s, i in enumerate(source.bars):
        for t, m in enumerate(target.bars):
            old_t = act_single(p, m, interleaving.forward)
            new_t = act_single(p, m, forward)
            _, c = compose_canonical(p, canonical_hom(p, i, old_t), canonical_hom(p, old_t, new_t))
            phi[t][s] = phi[t][s] * c % fp
            old_s = act_single(p, i, interleaving.backward)
            new_s = act_single(p, i, backward)
            _, c = compose_canonical(p, canonical_hom(p, m, old_s), canonical_hom(p, old_s, new_s))
            psi[s][t] = psi[s][t] * c % fp
    lifted = Interleaving(
        forward=forward,
        backward=backward,
        phi=ScalarMorphism(field=fp, entries=tuple(tuple(r) for r in phi)),
        psi=ScalarMorphism(field=fp, entries=tuple(tuple(r) for r in psi)),
        field=fp,
    )
    if not check_interleaving(p, source, target, lifted):
        raise NveeError("Lifted witness is not an interleaving", stage=STAGE)
    return lifted


def diagonalize(
    p: Poset,
    source: Barcode,
    target: Barcode,
    interleaving: Interleaving,
    blocks: Sequence[tuple[Sequence[int], Sequence[int]]],
) -> Interleaving:
    """
    ブロック外の成分を 0 にした証拠を返す。
    ブロック間の Hom が消えていれば結果もインターリーブになる。

    Raises:
        NveeError: ブロックで分けた結果がインターリーブでない場合
    """
    owner_s, owner_t = {}, {}
    for k, (rows_s, rows_t) in enumerate(blocks):
        owner_s.update({s: k for s in rows_s})
        owner_t.update({t: k for t in rows_t})
    phi = tuple(
        tuple(x if owner_s.get(s) == owner_t.get(t) else 0 for s, x in enumerate(row))
        for t, row in enumerate(interleaving.phi.entries)
    )
    psi = tuple(
        tuple(x if owner_s.get(s) == owner_t.get(t) else 0 for t, x in enumerate(row))
        for s, row in enumerate(interleaving.psi.entries)
    )
    result = interleaving.model_copy(update={
        "phi": ScalarMorphism(field=interleaving.field, entries=phi),
        "psi": ScalarMorphism(field=interleaving.field, entries=psi),
    })
    if not check_interleaving(p, source, target, result):
        raise NveeError("Block-diagonal part is not an interleaving", stage=STAGE)
    return result


def variety_staircase(
    p: Poset, source: Barcode, target: Barcode, field: int
) -> list[dict]:
    """
    閾値ごと（極大平行移動が変わるところ）の方程式系の大きさと F_p 上の点の個数。
    """
    rows = []
    previous = None
    for eps in candidate_thresholds(p):
        forward = maximal_translation(p, eps)
        if forward == previous:
            continue
        previous = forward
        system = build_system(p, source, target, forward, forward)
        solution = solve_over_field(system, field, count=True, options=SolverOptions(allow_random=False))
        rows.append({
            "eps": eps,
            "translation": [p.labels[y] for y in forward.images],
            "variables": len(system.variables),
            "equations": len(system.equations),
            "points": solution.count,
        })
    return rows


def export_variety_text(p: Poset, system: InterleavingSystem) -> str:
    """方程式系をコメント付きのテキストに書き出す"""
    lines = [
        "# forward: " + " ".join(f"{p.labels[x]}->{p.labels[y]}" for x, y in enumerate(system.forward.images)),
        "# backward: " + " ".join(f"{p.labels[x]}->{p.labels[y]}" for x, y in enumerate(system.backward.images)),
        f"# source bars: {system.source_size}, target bars: {system.target_size}",
    ]
    for eq, text in zip(system.equations, system.render()):
        origin = ", ".join(
            f"{pr.triangle.value}@{p.labels[pr.vertex]}[{pr.row},{pr.column}]" for pr in eq.provenance
        )
        lines.append(f"# from {origin}")
        lines.append(text)
    return "\n".join(lines) + "\n"


def export_variety_json(system: InterleavingSystem) -> str:
    return system.model_dump_json(indent=2)
