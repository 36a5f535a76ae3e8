"""Quotient fusion systems on ``P/R``.

Three flavors:

``F_mod_R``
    maps ``S/R → T/R`` induced by ``φ ∈ Hom_F(S, T)`` with ``R ≤ S`` and
    ``φ(R) = R``.  Defined for any ``R ⊴ P``.
``Fbar_R``
    maps ``AR/R → φ(A)R/R`` induced by every ``φ ∈ Hom_F(A, P)``; needs
    ``R`` strongly closed to be well defined.
``generated``
    the fusion system on ``P/R`` generated by ``Fbar_R``.

They satisfy ``F_mod_R ⊆ Fbar_R ⊆ generated``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exceptions import NotNormal, NotStronglyClosed, NotWeaklyClosed
from .fusion import (
    FusionSystem,
    SaturationVerdict,
    SystemComparison,
    Table,
    automizer,
    compare_systems,
    fully_centralized,
    is_subsystem,
    saturation_check,
    strongly_closed,
    weakly_closed,
)
from .permgroup import (
    GroupLike,
    GroupMorphism,
    Perm,
    Subgroup,
    is_normal,
    is_subgroup_of,
    make_subgroup,
    product_set,
    quotient_group,
)

logger = logging.getLogger(__name__)

FLAVORS = ("F_mod_R", "Fbar_R", "generated")


class QuotientSystem(FusionSystem):
    """A fusion system on ``P/R`` derived from ``base``."""

    def __init__(self, base: FusionSystem, R: GroupLike, flavor: str) -> None:
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}; expected one of {', '.join(FLAVORS)}")
        if not is_normal(base.P, R):
            raise NotNormal("R must be normal in P")
        if flavor != "F_mod_R" and not strongly_closed(base, R):
            raise NotStronglyClosed(f"flavor {flavor} needs R strongly closed")
        self.base = base
        self.R = make_subgroup(base.P, R.elements)
        self.flavor = flavor
        self.quotient_P = quotient_group(base.P, self.R)
        super().__init__(self.quotient_P.group, base.p, caps=base.caps, label=f"{base.label}/R[{flavor}]")
        self._inner: Optional[FusionSystem] = None
        logger.debug("Quotient %s by R of order %d: |P/R|=%d", flavor, self.R.order, self.P.order)

    def __repr__(self) -> str:
        return f"QuotientSystem({self.flavor}, |P/R|={self.P.order})"

    def _bar(self, x: Perm) -> Perm:
        return self.quotient_P.projection(x)

    def _compute_homs_to_P(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        if self.flavor == "F_mod_R":
            return self._mod_R(Q)
        if self.flavor == "Fbar_R":
            return self._bar_R(Q)
        if self._inner is None:
            gens = []
            bar = QuotientSystem(self.base, self.R, "Fbar_R")
            for S in bar.subgroups:
                gens.extend(m.underlying for m in bar.homs_to_P(S))
            self._inner = FusionSystem.generated(
                self.P, self.p, gens, closed_under_restriction=True, caps=self.caps,
            )
            logger.debug("Generated quotient system from %d morphisms", len(gens))
        return {m.table: None for m in self._inner.homs_to_P(Q)}

    def _mod_R(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        S = self.quotient_P.preimage(Q)
        R = self.R.element_set
        lifts = [self.quotient_P.lift(q) for q in Q.elements]
        found: Dict[Table, Optional[Perm]] = {}
        for phi in self.base.homs_to_P(S):
            if not all(phi(r) in R for r in self.R.elements):
                continue
            found.setdefault(tuple(self._bar(phi(x)) for x in lifts), phi.witness)
        return found

    def _bar_R(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        found: Dict[Table, Optional[Perm]] = {}
        for A in self.base.subgroups:
            img = {self._bar(a): a for a in A.elements}
            if len(img) != Q.order or not all(q in img for q in Q.elements):
                continue
            reps = [img[q] for q in Q.elements]
            for phi in self.base.homs_to_P(A):
                found.setdefault(tuple(self._bar(phi(a)) for a in reps), phi.witness)
        return found


def quotient(F: FusionSystem, R: GroupLike, flavor: str = "F_mod_R") -> QuotientSystem:
    return QuotientSystem(F, R, flavor)


# ── Checks ─────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class QuotientVerdict:
    name: str
    holds: bool
    details: Tuple[Tuple[str, bool], ...] = ()
    saturation: Optional[SaturationVerdict] = None


def normal_in_system(F: FusionSystem, R: GroupLike) -> bool:
    """``R ⊴ F``: each ``φ ∈ Hom_F(Q, P)`` extends to ``QR`` fixing ``R`` setwise."""
    if not is_normal(F.P, R):
        return False
    inside = R.element_set
    for Q in F.subgroups:
        QR = product_set(Q, R)
        exts = [psi for psi in F.homs_to_P(QR) if all(psi(r) in inside for r in R.elements)]
        for phi in F.homs_to_P(Q):
            if not any(all(psi(x) == phi(x) for x in Q.elements) for psi in exts):
                return False
    return True


def quotient_chain_check(F: FusionSystem, R: GroupLike) -> QuotientVerdict:
    """``F/R ⊆ F̄_R ⊆ ⟨F̄_R⟩`` wherever the flavors are defined."""
    mod = QuotientSystem(F, R, "F_mod_R")
    if not strongly_closed(F, R):
        return QuotientVerdict("chain", True, (("strongly_closed", False),))
    bar = QuotientSystem(F, R, "Fbar_R")
    gen = QuotientSystem(F, R, "generated")
    first = is_subsystem(mod, bar)
    second = is_subsystem(bar, gen)
    return QuotientVerdict("chain", first and second,
                           (("strongly_closed", True), ("mod_in_bar", first), ("bar_in_generated", second)))


def quotient_coincidence_check(F: FusionSystem, R: GroupLike) -> QuotientVerdict:
    """For ``R`` strongly closed the three flavors agree and are saturated."""
    if not strongly_closed(F, R):
        raise NotStronglyClosed("coincidence needs R strongly closed")
    mod = QuotientSystem(F, R, "F_mod_R")
    bar = QuotientSystem(F, R, "Fbar_R")
    gen = QuotientSystem(F, R, "generated")
    a = compare_systems(mod, bar, "mod_vs_bar").holds
    b = compare_systems(bar, gen, "bar_vs_generated").holds
    sat = saturation_check(mod)
    return QuotientVerdict("coincidence", a and b and sat.saturated,
                           (("mod_eq_bar", a), ("bar_eq_generated", b), ("saturated", sat.saturated)), sat)


def quotient_saturation_check(F: FusionSystem, R: GroupLike) -> QuotientVerdict:
    """``F/R`` is saturated for weakly closed ``R``."""
    if not weakly_closed(F, R):
        raise NotWeaklyClosed("quotient saturation needs R weakly closed")
    sat = saturation_check(QuotientSystem(F, R, "F_mod_R"))
    return QuotientVerdict("quotient_saturation", sat.saturated, (("saturated", sat.saturated),), sat)


def quotient_alperin_check(F: FusionSystem, R: GroupLike) -> SystemComparison:
    """``F/R`` against the system generated by ``Aut_{F/R}(T/R)``, ``T ⊇ R`` fully centralized."""
    if not weakly_closed(F, R):
        raise NotWeaklyClosed("quotient Alperin generation needs R weakly closed")
    mod = QuotientSystem(F, R, "F_mod_R")
    gens: List[GroupMorphism] = []
    for T in F.subgroups:
        if is_subgroup_of(R, T) and fully_centralized(F, T):
            Tbar = mod.quotient_P.image(T)
            gens.extend(m.underlying for m in automizer(mod, Tbar))
    gen = FusionSystem.generated(mod.P, mod.p, gens, caps=F.caps, label="alperin(F/R)")
    return compare_systems(mod, gen, "quotient_alperin")
