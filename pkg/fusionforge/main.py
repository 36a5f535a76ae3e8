"""Command-line entry point: group, goursat, bouc, fusion, explore and suite."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import codec
from .bouc import GroupTriple, covered_pairs, exhaustive_pairs, verify_bouc
from .catalog import parse_group, parse_group_prime, parse_product, parse_subgroup
from .config import AppConfig, load_config
from .exceptions import CatalogError, CodecError, FusionForgeError
from .explorer import Explorer, filter_theorem_consistent, summarize
from .fusion import (
    FusionSystem,
    alperin_check,
    inner_criterion,
    iso_check,
    saturation_check,
    strongly_closed,
    weakly_closed,
)
from .goursat import check_R_structure, decompose, reconstruct
from .permgroup import (
    all_subgroups,
    automorphisms,
    center,
    inner_automorphisms,
    normal_subgroups,
    sylow,
)
from .quotient import (
    FLAVORS,
    QuotientSystem,
    quotient_alperin_check,
    quotient_chain_check,
    quotient_coincidence_check,
    quotient_saturation_check,
)
from .suite import SUITES, run_suites

logger = logging.getLogger("fusionforge")


class Outcome:
    """What a subcommand prints, and whether its verdict passed."""

    def __init__(self, data: Any, passed: bool = True) -> None:
        self.data = data
        self.passed = passed


# ── group ──────────────────────────────────────────────────────────


def _group(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    G = parse_group(args.group)
    if args.action == "info":
        return Outcome({
            "group": codec.encode(G),
            "abelian": G.is_abelian(),
            "center_order": center(G).order,
            "subgroups": len(all_subgroups(G, cap=cfg.caps.subgroup_cap)),
            "normal_subgroups": len(normal_subgroups(G, cap=cfg.caps.subgroup_cap)),
        })
    if args.action == "subgroups":
        subs = all_subgroups(G, cap=cfg.caps.subgroup_cap)
        return Outcome([{"index": i, **codec.encode(S)} for i, S in enumerate(subs)])
    if args.action == "sylow":
        if args.p is None:
            raise CatalogError("sylow needs --p")
        try:
            return Outcome(codec.encode(sylow(G, args.p)))
        except ValueError as exc:
            raise CatalogError(str(exc)) from exc
    auts = automorphisms(G, cap=cfg.caps.automorphism_cap)
    return Outcome({
        "order": len(auts),
        "inner_order": len(inner_automorphisms(G)),
        "automorphisms": [codec.encode(phi)["generators"] for phi in auts],
    })


# ── goursat ────────────────────────────────────────────────────────


def _goursat(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    product = parse_product(args.group)
    X = parse_subgroup(product.group, args.subgroup, product)
    if args.action == "decompose":
        return Outcome(decompose(product, X))
    if args.action == "reconstruct":
        back = reconstruct(decompose(product, X))
        same = back.elements == X.elements
        return Outcome({"subgroup": codec.encode(back), "round_trip": same}, same)
    report = check_R_structure(product, X)
    return Outcome(report, report.holds)


# ── bouc ───────────────────────────────────────────────────────────


def _bouc(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    triple = GroupTriple.build(parse_group(args.G), parse_group(args.H), parse_group(args.K))
    if args.exhaustive:
        failures = []
        checked = 0
        for X, Y in exhaustive_pairs(triple):
            checked += 1
            verdict = verify_bouc(triple, X, Y)
            if not verdict.holds and len(failures) < cfg.suite.failure_limit:
                failures.append(verdict)
        data = {"checked": checked, "subgroup_pairs_covered": covered_pairs(triple), "failures": codec.encode(failures)}
        return Outcome(data, not failures)
    if args.X is None or args.Y is None:
        raise CatalogError("bouc verify needs --X and --Y, or --exhaustive")
    X = parse_subgroup(triple.GH.group, args.X, triple.GH)
    Y = parse_subgroup(triple.HK.group, args.Y, triple.HK)
    verdict = verify_bouc(triple, X, Y)
    return Outcome(verdict, verdict.holds)


# ── fusion ─────────────────────────────────────────────────────────


def _system(args: argparse.Namespace, cfg: AppConfig) -> FusionSystem:
    if args.p is None:
        raise CatalogError("fusion commands need --p")
    return FusionSystem.from_group(parse_group(args.group), args.p, caps=cfg.caps, label=f"{args.group}:{args.p}")


def _need(value: Optional[str], flag: str) -> str:
    if value is None:
        raise CatalogError(f"this command needs {flag}")
    return value


def _fusion(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    if args.action == "inner":
        return _inner(args, cfg)
    F = _system(args, cfg)
    if args.action == "homs":
        Q = parse_subgroup(F.P, _need(args.subgroup, "--subgroup"))
        T = parse_subgroup(F.P, args.target) if args.target else F.P
        return Outcome([codec.encode(m) for m in F.homs(Q, T)])
    if args.action == "closed":
        R = parse_subgroup(F.P, _need(args.subgroup, "--subgroup"))
        return Outcome(weakly_closed(F, R) if args.weak else strongly_closed(F, R))
    if args.action == "saturate":
        verdict = saturation_check(F)
        return Outcome(verdict, verdict.saturated)
    if args.action == "alperin":
        cmp = alperin_check(F)
        return Outcome(cmp, cmp.holds)
    if args.action == "quotient":
        R = parse_subgroup(F.P, _need(args.subgroup, "--subgroup"))
        return _quotient(F, R, args)
    # iso
    F2 = FusionSystem.from_group(parse_group(_need(args.other, "--other")), args.p, caps=cfg.caps)
    theta = codec.decode_morphism(F.P, F2.P, codec.loads(_need(args.theta, "--theta")))
    cmp = iso_check(F, F2, theta)
    return Outcome(cmp, cmp.holds)


def _quotient(F: FusionSystem, R: Any, args: argparse.Namespace) -> Outcome:
    if args.check == "chain":
        verdict = quotient_chain_check(F, R)
    elif args.check == "coincidence":
        verdict = quotient_coincidence_check(F, R)
    elif args.check == "saturation":
        verdict = quotient_saturation_check(F, R)
    elif args.check == "alperin":
        cmp = quotient_alperin_check(F, R)
        return Outcome(cmp, cmp.holds)
    else:
        Q = QuotientSystem(F, R, args.flavor)
        homs = {len(Q.homs_to_P(S)) for S in Q.subgroups}
        return Outcome({
            "flavor": Q.flavor,
            "P": codec.encode(Q.P),
            "subgroups": len(Q.subgroups),
            "morphisms": sum(len(Q.homs_to_P(S)) for S in Q.subgroups),
            "largest_hom_set": max(homs),
        })
    return Outcome(verdict, verdict.holds)


def _inner(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    P = parse_group(args.group)
    if args.theta:
        phis = [codec.decode_morphism(P, P, codec.loads(args.theta))]
    else:
        phis = automorphisms(P, cap=cfg.caps.automorphism_cap)
    verdicts = [inner_criterion(P, phi) for phi in phis]
    ok = all(v.holds for v in verdicts)
    if args.theta:
        return Outcome(verdicts[0], ok)
    return Outcome({
        "automorphisms": len(verdicts),
        "inner": sum(v.inner for v in verdicts),
        "agree": ok,
    }, ok)


# ── explore / suite ────────────────────────────────────────────────


def _explore(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    G1, p1 = parse_group_prime(args.left)
    G2, p2 = parse_group_prime(args.right)
    F1 = FusionSystem.from_group(G1, p1, caps=cfg.caps, label=args.left)
    F2 = FusionSystem.from_group(G2, p2, caps=cfg.caps, label=args.right)
    reports = Explorer(F1, F2).run(include_all=args.all)
    if args.json:
        Path(args.json).write_text(codec.dumps(reports) + "\n", encoding="utf-8")
        logger.info("wrote %d reports to %s", len(reports), args.json)
    return Outcome({
        "summary": summarize(reports),
        "theorem_consistent": [codec.encode(r.R.elements) for r in filter_theorem_consistent(reports)],
    })


def _suite(args: argparse.Namespace, cfg: AppConfig) -> Outcome:
    names = SUITES if args.name == "all" else (args.name,)
    if args.max_order is not None:
        for name in names:
            cfg.suite.max_order[name] = args.max_order
    results = run_suites(names, cfg)
    return Outcome(results if len(results) > 1 else results[0], all(r.passed for r in results))


# ── Argument parsing ───────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fusionforge",
        description="FusionForge: fusion systems, Goursat data and biset verification on small groups",
    )
    ap.add_argument("-c", "--config", default=None,
                    help="Path to config.yaml (default: $FUSIONFORGE_CONFIG or built-in defaults)")
    ap.add_argument("--log-level", default=None, help="Override log level (DEBUG, INFO, WARNING, ERROR)")
    ap.add_argument("--parallelism", type=int, default=None, help="Worker processes for suites")
    ap.add_argument("--seed", type=int, default=None, help="Seed for sampled checks")
    ap.add_argument("--human", action="store_true", help="Indented table output instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="Inspect a catalog group")
    g.add_argument("action", choices=("info", "subgroups", "sylow", "automorphisms"))
    g.add_argument("--group", required=True)
    g.add_argument("--p", type=int, default=None)
    g.set_defaults(run=_group)

    gs = sub.add_parser("goursat", help="Goursat data of a subgroup of G1 x G2")
    gs.add_argument("action", choices=("decompose", "reconstruct", "structure"))
    gs.add_argument("--group", required=True, help='Two-factor product such as "C2 x C4"')
    gs.add_argument("--subgroup", required=True)
    gs.set_defaults(run=_goursat)

    b = sub.add_parser("bouc", help="Check the composition formula for transitive bisets")
    b.add_argument("action", choices=("verify",))
    b.add_argument("--G", required=True)
    b.add_argument("--H", required=True)
    b.add_argument("--K", required=True)
    b.add_argument("--exhaustive", action="store_true")
    b.add_argument("--X", default=None, help="Subgroup of G x H")
    b.add_argument("--Y", default=None, help="Subgroup of H x K")
    b.set_defaults(run=_bouc)

    f = sub.add_parser("fusion", help="Fusion systems of groups at a prime")
    f.add_argument("action", choices=("homs", "closed", "saturate", "quotient", "alperin", "iso", "inner"))
    f.add_argument("--group", required=True)
    f.add_argument("--p", type=int, default=None)
    f.add_argument("--subgroup", default=None, help="Subgroup of the Sylow p-subgroup")
    f.add_argument("--target", default=None, help="Target subgroup for homs (default: P)")
    closed = f.add_mutually_exclusive_group()
    closed.add_argument("--strong", action="store_true", help="Strong closure (default)")
    closed.add_argument("--weak", action="store_true", help="Weak closure")
    f.add_argument("--flavor", choices=FLAVORS, default="F_mod_R")
    f.add_argument("--check", choices=("chain", "coincidence", "saturation", "alperin"), default=None)
    f.add_argument("--other", default=None, help="Second group for iso")
    f.add_argument("--theta", default=None, help='Morphism JSON {"generators": [[x, y], ...]}')
    f.set_defaults(run=_fusion)

    e = sub.add_parser("explore", help="Compatibility reports for R <= P1 x P2")
    e.add_argument("--left", required=True, help="G:p")
    e.add_argument("--right", required=True, help="G:p")
    e.add_argument("--json", default=None, help="Write every report to this file")
    e.add_argument("--all", action="store_true", help="Include non-surjective candidates")
    e.set_defaults(run=_explore)

    s = sub.add_parser("suite", help="Run acceptance suites")
    s.add_argument("name", choices=SUITES + ("all",))
    s.add_argument("--max-order", type=int, default=None)
    s.set_defaults(run=_suite)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the exit code."""
    args = build_parser().parse_args(argv)

    try:
        cfg = load_config(args.config)
        if args.log_level:
            cfg.log_level = args.log_level
        if args.parallelism is not None:
            cfg.suite.parallelism = args.parallelism
            cfg.suite.__post_init__()
        if args.seed is not None:
            cfg.suite.seed = args.seed
        if args.human:
            cfg.human = True
    except (TypeError, ValueError) as exc:
        print(f"fusionforge: invalid configuration: {exc}", file=sys.stderr)
        return 2

    logging.basicConfig(
        level=getattr(logging, cfg.log_level.upper(), logging.INFO),
        format="%(asctime)s  %(levelname)-8s  %(name)s  %(message)s",
        stream=sys.stderr,
    )

    try:
        outcome = args.run(args, cfg)
    except (CatalogError, CodecError) as exc:
        print(f"fusionforge: {exc}", file=sys.stderr)
        return 2
    except FusionForgeError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, cfg)
        return 2

    _emit(outcome.data, cfg)
    if not outcome.passed:
        logger.warning("%s: verification failed", args.command)
        return 1
    return 0


def _emit(data: Any, cfg: AppConfig) -> None:
    if cfg.human:
        print(codec.render_human(codec.encode(data)))
    else:
        print(codec.dumps(data))


def cli() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
