"""Compatibility explorer for subgroups ``R ≤ P₁ × P₂``.

For a pair of fusion systems on groups of equal order, every ``R`` with
both projections surjective is a candidate vertex of a stable equivalence
between the two systems' blocks.  Each candidate gets a report on the
necessary conditions such an ``R`` satisfies: equal kernel orders, the
closedness equivalence for ``R₁`` and ``R₂``, and the quotient systems
being isomorphic through ``θ``.  Reports are "theorem-consistent" at best,
never a claim that a stable equivalence exists.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .bouc import GroupTriple, star_product
from .exceptions import UnequalOrders
from .fusion import FusionSystem, iso_check, strongly_closed
from .goursat import GoursatData, check_R_structure, flip, subgroups_with_surjective_projections
from .permgroup import (
    DirectProduct,
    GroupLike,
    GroupMorphism,
    Subgroup,
    all_subgroups,
    direct_product,
    subgroup_class_representatives,
)
from .quotient import QuotientSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CompatibilityReport:
    R: Subgroup
    projections_surjective: Tuple[bool, bool]
    goursat: Optional[GoursatData] = None
    orders_equal: Optional[bool] = None
    R1_strongly_closed: Optional[bool] = None
    R2_strongly_closed: Optional[bool] = None
    equivalence_holds: Optional[bool] = None
    quotient_iso: Optional[bool] = None
    diagonal_iso: Optional[bool] = None
    identity_shadow: Optional[bool] = None

    @property
    def surjective(self) -> bool:
        return all(self.projections_surjective)

    @property
    def theorem_consistent(self) -> bool:
        if not self.surjective or not self.orders_equal or not self.equivalence_holds:
            return False
        if self.R1_strongly_closed and self.quotient_iso is not True:
            return False
        return self.diagonal_iso is not False


class Explorer:
    """Builds reports for candidates ``R`` in ``P₁ × P₂``."""

    def __init__(self, F1: FusionSystem, F2: FusionSystem) -> None:
        if F1.P.order != F2.P.order:
            raise UnequalOrders(f"|P1| = {F1.P.order} but |P2| = {F2.P.order}")
        self.F1 = F1
        self.F2 = F2
        self.product: DirectProduct = direct_product(F1.P, F2.P)
        self._left_triple = GroupTriple.build(F2.P, F1.P, F1.P)
        self._right_triple = GroupTriple.build(F2.P, F1.P, F2.P)
        self._closed: Dict[Tuple[int, tuple], bool] = {}

    def candidates(self, *, include_all: bool = False) -> List[Subgroup]:
        """Conjugacy representatives in ``P₁ × P₂``, surjective ones unless *include_all*."""
        if include_all:
            raw = all_subgroups(self.product.group, cap=self.F1.caps.subgroup_cap)
        else:
            raw = subgroups_with_surjective_projections(self.product)
        return subgroup_class_representatives(self.product.group, raw)

    def _strongly_closed(self, side: int, S: Subgroup) -> bool:
        key = (side, S.elements)
        if key not in self._closed:
            F = self.F1 if side == 1 else self.F2
            self._closed[key] = strongly_closed(F, S)
        return self._closed[key]

    def report(self, R: GroupLike) -> CompatibilityReport:
        structure = check_R_structure(self.product, R)
        R = structure.R
        if not all(structure.surjective):
            return CompatibilityReport(R, structure.surjective)
        d = structure.goursat
        sc1 = self._strongly_closed(1, d.X1)
        sc2 = self._strongly_closed(2, d.X2)

        quotient_iso = None
        if sc1 and sc2:
            Q1 = QuotientSystem(self.F1, d.X1, "F_mod_R")
            Q2 = QuotientSystem(self.F2, d.X2, "F_mod_R")
            quotient_iso = iso_check(Q1, Q2, d.theta).holds

        diagonal_iso = None
        if d.is_diagonal:
            diagonal_iso = iso_check(self.F1, self.F2, lift_theta(d, self.F1, self.F2)).holds

        return CompatibilityReport(
            R,
            structure.surjective,
            d,
            orders_equal=structure.orders_equal,
            R1_strongly_closed=sc1,
            R2_strongly_closed=sc2,
            equivalence_holds=sc1 == sc2,
            quotient_iso=quotient_iso,
            diagonal_iso=diagonal_iso,
            identity_shadow=self.identity_shadow(R),
        )

    def identity_shadow(self, R: GroupLike) -> bool:
        """Is ``Δ(P₂)`` conjugate into ``R^♯ ∗ (P₁×P₁) ∗ R``?"""
        sharp = flip(self.product, R)
        full = self._left_triple.HK.group
        left = star_product(self._left_triple, sharp, full)
        through = star_product(self._right_triple, left, R)
        outer = self._right_triple.GK
        delta = outer.diagonal()
        inside = through.element_set
        gens = delta.generating_set
        for g in outer.group.elements:
            ginv = g.inverse
            if all(g * x * ginv in inside for x in gens):
                return True
        return False

    def run(self, *, include_all: bool = False) -> List[CompatibilityReport]:
        reports = [self.report(R) for R in self.candidates(include_all=include_all)]
        logger.info("explored %d candidates for %r x %r", len(reports), self.F1, self.F2)
        return reports


def lift_theta(d: GoursatData, F1: FusionSystem, F2: FusionSystem) -> GroupMorphism:
    """For ``R₁ = R₂ = 1``, ``θ`` as an isomorphism ``P₁ → P₂``."""
    table = tuple(d.q2.lift(d.theta(d.q1.projection(x))) for x in F1.P.elements)
    return GroupMorphism(F1.P, F2.P, table)


def explore(F1: FusionSystem, F2: FusionSystem, *, include_all: bool = False) -> List[CompatibilityReport]:
    return Explorer(F1, F2).run(include_all=include_all)


def filter_theorem_consistent(reports: Sequence[CompatibilityReport]) -> List[CompatibilityReport]:
    return [r for r in reports if r.theorem_consistent]


def dual_report(F1: FusionSystem, F2: FusionSystem, report: CompatibilityReport) -> CompatibilityReport:
    """The report of ``R^♯`` for the swapped pair ``(F₂, F₁)``."""
    swapped = Explorer(F2, F1)
    sharp = flip(direct_product(F1.P, F2.P), report.R)
    return swapped.report(sharp)


def mirrors(report: CompatibilityReport, dual: CompatibilityReport) -> bool:
    """Verdicts of a report and its dual agree with sides exchanged."""
    return (
        dual.projections_surjective == report.projections_surjective[::-1]
        and dual.orders_equal == report.orders_equal
        and dual.R1_strongly_closed == report.R2_strongly_closed
        and dual.R2_strongly_closed == report.R1_strongly_closed
        and dual.equivalence_holds == report.equivalence_holds
        and dual.quotient_iso == report.quotient_iso
        and dual.diagonal_iso == report.diagonal_iso
    )


def summarize(reports: Sequence[CompatibilityReport]) -> Dict[str, int]:
    return {
        "candidates": len(reports),
        "surjective": sum(r.surjective for r in reports),
        "theorem_consistent": sum(r.theorem_consistent for r in reports),
        "equivalence_failures": sum(r.equivalence_holds is False for r in reports),
        "quotient_iso_failures": sum(r.quotient_iso is False for r in reports),
    }
