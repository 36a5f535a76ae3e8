"""Acceptance suites: exhaustive sweeps over the group catalog.

Each suite is a list of picklable work items (catalog names only) mapped in
order over a worker function, so a run with ``parallelism > 1`` produces the
same output as a sequential one.  Workers rebuild groups from names through
the cached catalog.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import codec
from .bouc import GroupTriple, covered_pairs, exhaustive_pairs, star_coset_independence, verify_bouc
from .catalog import named_group
from .config import AppConfig, CapsConfig
from .explorer import Explorer, dual_report, mirrors
from .fusion import FusionSystem, alperin_check, inner_criterion, saturation_check, strongly_closed, weakly_closed
from .gact import (
    coset_space,
    deflate_commutes_with_induction,
    deflate_commutes_with_restriction,
    deflate_coset_check,
    deflate_transitivity_check,
    isomorphism_check,
    mackey_check,
    random_gset,
)
from .goursat import decompose, reconstruct, subgroups_with_surjective_projections
from .permgroup import (
    all_subgroups,
    automorphisms,
    conjugate,
    direct_product,
    is_subgroup_of,
    normal_subgroups,
)
from .quotient import (
    normal_in_system,
    quotient_alperin_check,
    quotient_chain_check,
    quotient_coincidence_check,
    quotient_saturation_check,
)

logger = logging.getLogger(__name__)

# ── Catalog sweeps ─────────────────────────────────────────────────

SMALL_GROUPS: Tuple[str, ...] = ("C2", "C3", "C4", "C2 x C2", "S3", "C6", "D8", "Q8", "C8", "A4", "D12", "S4")

BOUC_GROUPS: Tuple[str, ...] = ("C2", "C4", "C2 x C2", "D8", "Q8", "C8")

P_GROUPS: Tuple[str, ...] = (
    "C2", "C4", "C2 x C2", "C8", "C4 x C2", "D8", "Q8", "E8",
    "C16", "C8 x C2", "C4 x C4", "D16", "Q16", "D8 x C2", "Q8 x C2",
    "C32", "D32", "Q32", "C64",
)

SYSTEMS: Tuple[Tuple[str, int], ...] = (
    ("S3", 3), ("S3", 2), ("A4", 2), ("A4", 3), ("S4", 2), ("S4", 3),
    ("D8", 2), ("Q8", 2), ("D12", 2), ("SL(2,3)", 2), ("C4 x C2", 2), ("A4 x C2", 2),
)

# Pairs of systems on groups of the same order, beyond the self-pairs.
EXPLORER_PAIRS: Tuple[Tuple[Tuple[str, int], Tuple[str, int]], ...] = (
    (("S3", 3), ("C3", 3)),
    (("A4", 2), ("C2 x C2", 2)),
    (("S4", 2), ("D8", 2)),
    (("C4", 2), ("C2 x C2", 2)),
)

SUITES: Tuple[str, ...] = ("goursat", "bouc", "mackey", "quotient", "inner", "saturation", "explorer", "determinism")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: Tuple[Dict[str, Any], ...] = ()
    covered: Optional[int] = None  # cases stood for when only class representatives are checked


COVERAGE_NOTE = (
    "one subgroup pair per pair of conjugacy classes is checked; conjugate subgroups "
    "give isomorphic bisets, so subgroup_pairs_covered counts all subgroup pairs"
)


@codec.encode.register(SuiteResult)
def _(obj: SuiteResult) -> Dict[str, Any]:
    data = {"suite": obj.name, "passed": obj.passed, "checked": obj.checked, "failures": codec.encode(obj.failures)}
    if obj.covered is not None:
        data["subgroup_pairs_covered"] = obj.covered
        data["coverage"] = COVERAGE_NOTE
    return data


@dataclass(frozen=True)
class ItemResult:
    label: str
    checked: int
    failures: Tuple[Dict[str, Any], ...] = ()
    covered: Optional[int] = None


def _fail(check: str, **data: Any) -> Dict[str, Any]:
    logger.warning("failed %s: %s", check, data)
    return {"check": check, **data}


def _order(name: str) -> int:
    return named_group(name).order


# ── Work items ─────────────────────────────────────────────────────


def goursat_item(item: Tuple[str, str, CapsConfig]) -> ItemResult:
    left, right, caps = item
    product = direct_product(named_group(left), named_group(right))
    fails = []
    subs = all_subgroups(product.group, cap=caps.subgroup_cap)
    for i, X in enumerate(subs):
        d = decompose(product, X)
        if reconstruct(d).elements != X.elements:
            fails.append(_fail("round_trip", groups=[left, right], index=i))
        if X.order != d.p1X.order * d.X2.order:
            fails.append(_fail("order", groups=[left, right], index=i))
    brute = {X.elements for X in subs
             if product.project_left(X).order == product.left.order
             and product.project_right(X).order == product.right.order}
    direct = {R.elements for R in subgroups_with_surjective_projections(product)}
    if brute != direct:
        fails.append(_fail("surjective_enumeration", groups=[left, right]))
    return ItemResult(f"{left} x {right}", len(subs) + 1, tuple(fails))


def bouc_item(item: Tuple[str, str, str, int]) -> ItemResult:
    G, H, K, seed = item
    triple = GroupTriple.build(named_group(G), named_group(H), named_group(K))
    rng = random.Random(f"{seed}:{G}:{H}:{K}")
    fails = []
    checked = 0
    for X, Y in exhaustive_pairs(triple):
        checked += 1
        verdict = verify_bouc(triple, X, Y)
        if not verdict.holds:
            fails.append(_fail("bouc", groups=[G, H, K], X=codec.encode(X.elements), Y=codec.encode(Y.elements)))
            continue
        t = rng.choice(triple.middle_cosets(triple.image_right(X), triple.image_left(Y)))
        if not star_coset_independence(triple, X, Y, t):
            fails.append(_fail("star_coset", groups=[G, H, K], X=codec.encode(X.elements), t=codec.encode(t)))
    return ItemResult(f"{G}, {H}, {K}", checked, tuple(fails), covered_pairs(triple))


GSET_TRIALS = 8


def mackey_item(item: Tuple[str, CapsConfig, int]) -> ItemResult:
    name, caps, seed = item
    G = named_group(name)
    subs = all_subgroups(G, cap=caps.subgroup_cap)
    normals = normal_subgroups(G, cap=caps.subgroup_cap)
    fails = []
    checked = 0
    for H in subs:
        for K in subs:
            checked += 1
            if not mackey_check(G, H, K).holds:
                fails.append(_fail("mackey", group=name, H=H.order, K=K.order))
    for N in normals:
        for H in subs:
            checked += 1
            if not deflate_coset_check(G, N, H).holds:
                fails.append(_fail("deflate_coset", group=name, N=N.order, H=H.order))
            if not is_subgroup_of(N, H):
                continue
            for K in subs:
                checked += 1
                if not deflate_commutes_with_restriction(G, N, H, coset_space(G, K)).holds:
                    fails.append(_fail("deflate_restriction", group=name, N=N.order, H=H.order, K=K.order))
                if is_subgroup_of(K, H):
                    checked += 1
                    U = coset_space(H, K)
                    if not deflate_commutes_with_induction(G, N, H, U).holds:
                        fails.append(_fail("deflate_induction", group=name, N=N.order, H=H.order, K=K.order))
        for M in normals:
            if not is_subgroup_of(N, M):
                continue
            for K in subs:
                checked += 1
                if not deflate_transitivity_check(G, N, M, coset_space(G, K)).holds:
                    fails.append(_fail("deflate_transitivity", group=name, N=N.order, M=M.order, K=K.order))
    rng = random.Random(f"{seed}:{name}")
    for _ in range(GSET_TRIALS):
        checked += 1
        hs = [rng.choice(subs) for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            ks = [conjugate(H, rng.choice(G.elements)) for H in hs]
        else:
            ks = [rng.choice(subs) for _ in hs]
        if not isomorphism_check(random_gset(G, hs, rng), random_gset(G, ks, rng)):
            fails.append(_fail("gset_isomorphism", group=name, H=[H.order for H in hs], K=[K.order for K in ks]))
    return ItemResult(name, checked, tuple(fails))


def _system(name: str, p: int, caps: CapsConfig) -> FusionSystem:
    return FusionSystem.from_group(named_group(name), p, caps=caps, label=f"{name}:{p}")


def quotient_item(item: Tuple[str, int, CapsConfig]) -> ItemResult:
    name, p, caps = item
    F = _system(name, p, caps)
    fails = []
    checked = 0
    for R in normal_subgroups(F.P, cap=caps.subgroup_cap):
        checked += 1
        where = {"system": f"{name}:{p}", "R": codec.encode(R.elements)}
        if not quotient_chain_check(F, R).holds:
            fails.append(_fail("quotient_chain", **where))
        closed = strongly_closed(F, R)
        if closed and not quotient_coincidence_check(F, R).holds:
            fails.append(_fail("quotient_coincidence", **where))
        if weakly_closed(F, R):
            if not quotient_saturation_check(F, R).holds:
                fails.append(_fail("quotient_saturation", **where))
            if not quotient_alperin_check(F, R).holds:
                fails.append(_fail("quotient_alperin", **where))
        if normal_in_system(F, R) and not closed:
            fails.append(_fail("normal_implies_strongly_closed", **where))
    return ItemResult(f"{name}:{p}", checked, tuple(fails))


def inner_item(item: Tuple[str, CapsConfig]) -> ItemResult:
    name, caps = item
    P = named_group(name)
    fails = []
    auts = automorphisms(P, cap=caps.automorphism_cap)
    for phi in auts:
        v = inner_criterion(P, phi)
        if not v.holds:
            fails.append(_fail("inner", group=name, biset=v.biset, direct=v.direct))
    return ItemResult(name, len(auts), tuple(fails))


def saturation_item(item: Tuple[str, int, CapsConfig]) -> ItemResult:
    name, p, caps = item
    F = _system(name, p, caps)
    fails = []
    verdict = saturation_check(F)
    if not verdict.saturated:
        fails.append(_fail("saturation", system=f"{name}:{p}", axiom=verdict.axiom))
    if not alperin_check(F).holds:
        fails.append(_fail("alperin", system=f"{name}:{p}"))
    return ItemResult(f"{name}:{p}", 2, tuple(fails))


def explorer_item(item: Tuple[str, int, str, int, CapsConfig]) -> ItemResult:
    n1, p1, n2, p2, caps = item
    F1 = _system(n1, p1, caps)
    F2 = _system(n2, p2, caps)
    ex = Explorer(F1, F2)
    label = f"{n1}:{p1} ~ {n2}:{p2}"
    fails = []
    reports = ex.run()
    if (n1, p1) == (n2, p2):
        delta = ex.report(ex.product.diagonal())
        if not (delta.theorem_consistent and delta.quotient_iso and delta.diagonal_iso and delta.identity_shadow):
            fails.append(_fail("diagonal_passes", pair=label))
    for r in reports:
        if r.goursat is not None and r.goursat.is_diagonal and r.quotient_iso != r.diagonal_iso:
            fails.append(_fail("diagonal_quotient_iso", pair=label, R=codec.encode(r.R.elements)))
        if not mirrors(r, dual_report(F1, F2, r)):
            fails.append(_fail("dual_mirror", pair=label, R=codec.encode(r.R.elements)))
    return ItemResult(label, len(reports) + 1, tuple(fails))


# ── Suite plans ────────────────────────────────────────────────────


def _plan(name: str, cfg: AppConfig) -> Tuple[Callable[[Any], ItemResult], List[Any]]:
    bound = cfg.suite.max_order
    caps = cfg.caps
    if name == "goursat":
        items = [(a, b, caps) for i, a in enumerate(SMALL_GROUPS) for b in SMALL_GROUPS[i:]
                 if _order(a) * _order(b) <= bound["goursat"]]
        return goursat_item, items
    if name == "bouc":
        names = [g for g in BOUC_GROUPS if _order(g) <= bound["bouc"]]
        return bouc_item, [(G, H, K, cfg.suite.seed) for G in names for H in names for K in names]
    if name == "mackey":
        return mackey_item, [(g, caps, cfg.suite.seed) for g in SMALL_GROUPS if _order(g) <= bound["mackey"]]
    if name == "quotient":
        return quotient_item, [(g, p, caps) for g, p in SYSTEMS if _sylow_order(g, p) <= bound["quotient"]]
    if name == "inner":
        return inner_item, [(g, caps) for g in P_GROUPS if _order(g) <= bound["inner"]]
    if name == "saturation":
        return saturation_item, [(g, p, caps) for g, p in SYSTEMS if _sylow_order(g, p) <= bound["saturation"]]
    if name == "explorer":
        pairs = [((g, p), (g, p)) for g, p in SYSTEMS] + list(EXPLORER_PAIRS)
        return explorer_item, [(a[0], a[1], b[0], b[1], caps) for a, b in pairs
                               if _sylow_order(*a) <= bound["explorer"]]
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")


def _sylow_order(name: str, p: int) -> int:
    order = _order(name)
    q = 1
    while order % p == 0:
        order //= p
        q *= p
    return q


def _map(worker: Callable[[Any], ItemResult], items: Sequence[Any], executor: Optional[Executor]) -> Iterable[ItemResult]:
    if executor is None:
        return map(worker, items)
    return executor.map(worker, items)


def run_suite(name: str, cfg: AppConfig, executor: Optional[Executor] = None) -> SuiteResult:
    """Run one named suite; ``determinism`` re-runs two suites and diffs their JSON.

    Suites that check one subgroup pair per pair of conjugacy classes report
    how many subgroup pairs those representatives cover.
    """
    if name == "determinism":
        return _determinism(cfg, executor)
    worker, items = _plan(name, cfg)
    checked = 0
    covered: Optional[int] = None
    failures: List[Dict[str, Any]] = []
    for i, result in enumerate(_map(worker, items, executor), 1):
        logger.info("[%s %d/%d] %s: %d checked, %d failed",
                    name, i, len(items), result.label, result.checked, len(result.failures))
        checked += result.checked
        if result.covered is not None:
            covered = (covered or 0) + result.covered
        failures.extend(result.failures)
    if covered is not None:
        logger.info("%s: %d representative cases cover %d subgroup pairs", name, checked, covered)
    limit = cfg.suite.failure_limit
    return SuiteResult(name, not failures, checked, tuple(failures[:limit]), covered)


def _determinism(cfg: AppConfig, executor: Optional[Executor]) -> SuiteResult:
    fails = []
    for name in ("goursat", "saturation"):
        first = codec.dumps(run_suite(name, cfg, executor))
        second = codec.dumps(run_suite(name, cfg, executor))
        if first != second:
            fails.append(_fail("byte_identical", suite=name))
    return SuiteResult("determinism", not fails, 2, tuple(fails))


def run_suites(names: Sequence[str], cfg: AppConfig) -> List[SuiteResult]:
    """Run suites in order, owning a process pool when ``parallelism > 1``."""
    if "all" in names:
        names = SUITES
    if cfg.suite.parallelism == 1:
        return [run_suite(n, cfg) for n in names]
    with ProcessPoolExecutor(max_workers=cfg.suite.parallelism) as pool:
        return [run_suite(n, cfg, pool) for n in names]
