"""Fusion systems on a finite p-group.

A :class:`FusionSystem` is realized either by conjugation inside an ambient
group (``F_P(G)``) or as the system generated by a list of injective
morphisms together with the inner ones.  Every morphism factors as an
isomorphism followed by an inclusion, so the system is stored as the sets
``Hom_F(Q, P)``; ``Hom_F(Q, T)`` is the part landing in ``T``.

Saturation is checked in the formulation: every fully normalized subgroup
is fully centralized and fully automized, and every fully centralized
subgroup is receptive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime, multiplicity

from .config import CapsConfig
from .exceptions import CapExceeded, NotInjective, NotIsomorphism
from .permgroup import (
    GroupLike,
    GroupMorphism,
    Perm,
    Subgroup,
    all_subgroups,
    as_subgroup,
    centralizer,
    closure,
    conjugate_test,
    cyclic_subgroup,
    direct_product,
    is_p_group,
    is_subgroup_of,
    make_subgroup,
    normalizer,
    sylow,
)

logger = logging.getLogger(__name__)

Table = Tuple[Perm, ...]


@dataclass(frozen=True, eq=False)
class FusionMorphism:
    """An injective map between subgroups of ``P``, with an optional conjugating witness."""

    underlying: GroupMorphism
    witness: Optional[Perm] = None

    @property
    def source(self) -> GroupLike:
        return self.underlying.source

    @property
    def table(self) -> Table:
        return self.underlying.table

    @property
    def key(self) -> tuple:
        return self.underlying.key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionMorphism):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __call__(self, x: Perm) -> Perm:
        return self.underlying(x)

    def image(self) -> Subgroup:
        return self.underlying.image()


class FusionSystem:
    """A fusion system on ``P`` with memoized ``Hom_F(Q, P)`` per subgroup ``Q``."""

    def __init__(
        self,
        P: GroupLike,
        p: int,
        *,
        ambient: Optional[GroupLike] = None,
        generators: Sequence[GroupMorphism] = (),
        closed_under_restriction: bool = False,
        caps: Optional[CapsConfig] = None,
        label: str = "",
    ) -> None:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if not is_p_group(P, p):
            raise ValueError(f"|P| = {P.order} is not a power of {p}")
        if ambient is not None and not is_subgroup_of(P, ambient):
            raise ValueError("P is not a subgroup of the ambient group")
        self.P = as_subgroup(P)
        self.p = p
        self.ambient = ambient
        self.caps = caps or CapsConfig()
        self.label = label
        self._closed = closed_under_restriction
        gens = []
        for phi in generators:
            if not phi.is_injective():
                raise NotInjective("fusion system generators must be injective")
            if not (phi.source.element_set <= self.P.element_set and set(phi.table) <= self.P.element_set):
                raise ValueError("generator does not map subgroups of P into P")
            gens.append(phi)
        self.generators: Tuple[GroupMorphism, ...] = tuple(gens)
        self._to_P: Dict[Table, Tuple[FusionMorphism, ...]] = {}

    # -- constructors --------------------------------------------------

    @classmethod
    def from_group(cls, G: GroupLike, p: int, *, caps: Optional[CapsConfig] = None, label: str = "") -> "FusionSystem":
        """``F_P(G)`` with ``P`` the Sylow ``p``-subgroup of *G*."""
        return cls(sylow(G, p), p, ambient=G, caps=caps, label=label)

    @classmethod
    def inner(cls, P: GroupLike, p: int, *, caps: Optional[CapsConfig] = None, label: str = "") -> "FusionSystem":
        """``F_P(P)``."""
        return cls(P, p, ambient=P, caps=caps, label=label)

    @classmethod
    def generated(
        cls,
        P: GroupLike,
        p: int,
        morphisms: Iterable[GroupMorphism],
        *,
        closed_under_restriction: bool = False,
        caps: Optional[CapsConfig] = None,
        label: str = "",
    ) -> "FusionSystem":
        """Smallest fusion system on ``P`` containing *morphisms*."""
        unique = {m.key: m for m in morphisms}
        gens = [unique[k] for k in sorted(unique)]
        return cls(P, p, generators=gens, closed_under_restriction=closed_under_restriction, caps=caps, label=label)

    def __repr__(self) -> str:
        kind = "ambient" if self.ambient is not None else "generated"
        return f"FusionSystem({self.label or kind}, p={self.p}, |P|={self.P.order})"

    # -- morphisms -----------------------------------------------------

    @cached_property
    def subgroups(self) -> List[Subgroup]:
        return all_subgroups(self.P, cap=self.caps.subgroup_cap)

    def homs_to_P(self, Q: GroupLike) -> Tuple[FusionMorphism, ...]:
        """``Hom_F(Q, P)``, ordered by table."""
        hit = self._to_P.get(Q.elements)
        if hit is None:
            Q = make_subgroup(self.P, Q.elements)
            raw = self._compute_homs_to_P(Q)
            hit = tuple(
                FusionMorphism(GroupMorphism(Q, self.P, table), witness)
                for table, witness in sorted(raw.items(), key=lambda kv: kv[0])
            )
            self._to_P[Q.elements] = hit
            logger.debug("%r: |Hom(Q, P)| = %d for |Q| = %d", self, len(hit), Q.order)
        return hit

    def homs(self, Q: GroupLike, T: GroupLike) -> List[FusionMorphism]:
        return [m for m in self.homs_to_P(Q) if all(y in T.element_set for y in m.table)]

    def isos(self, Q: GroupLike, T: GroupLike) -> List[FusionMorphism]:
        if Q.order != T.order:
            return []
        return self.homs(Q, T)

    def contains(self, phi: GroupMorphism) -> bool:
        return any(m.table == phi.table for m in self.homs_to_P(phi.source))

    def _compute_homs_to_P(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        if self.ambient is not None:
            return self._ambient_homs(Q)
        return self._groupoid_homs(Q)

    def _ambient_homs(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        found: Dict[Table, Optional[Perm]] = {}
        gens = Q.generating_set
        target = self.P.element_set
        for g in self.ambient.elements:
            ginv = g.inverse
            if all(g * q * ginv in target for q in gens):
                table = tuple(g * x * ginv for x in Q.elements)
                found.setdefault(table, g)
        return found

    # -- generated systems ----------------------------------------------

    @cached_property
    def _groupoid(self) -> Tuple[Dict[Table, Tuple[Subgroup, Table]], Dict[Table, List[Subgroup]], Dict[Table, Tuple[Perm, ...]]]:
        """Isomorphism groupoid of a generated system.

        For each connected component: a base object, a spanning-tree map
        ``τ_A: base → A`` per member, and ``Aut(base)`` as permutations of
        the base's element indices, generated by ``τ_B⁻¹ e τ_A`` over edges.
        """
        subs = self.subgroups
        by_key = {S.elements: S for S in subs}
        edges: Dict[Table, List[Tuple[Table, Dict[Perm, Perm]]]] = {S.elements: [] for S in subs}

        def add(src: Table, mapping: Dict[Perm, Perm]) -> None:
            dst = tuple(sorted(mapping.values()))
            edges[src].append((dst, mapping))
            edges[dst].append((src, {v: k for k, v in mapping.items()}))

        for phi in self.generators:
            if self._closed:
                add(phi.source.elements, phi.mapping)
                continue
            for S in subs:
                if S.element_set <= phi.source.element_set:
                    add(S.elements, {x: phi(x) for x in S.elements})
        for u in self.P.generating_set:
            uinv = u.inverse
            for S in subs:
                add(S.elements, {x: u * x * uinv for x in S.elements})

        tau: Dict[Table, Tuple[Subgroup, Table]] = {}
        members: Dict[Table, List[Subgroup]] = {}
        auts: Dict[Table, Tuple[Perm, ...]] = {}
        for S in subs:
            if S.elements in tau:
                continue
            base = S
            tau[base.elements] = (base, base.elements)
            comp = [base]
            queue = [base.elements]
            while queue:
                a = queue.pop()
                ta = tau[a][1]
                for b, e in edges[a]:
                    if b not in tau:
                        tau[b] = (base, tuple(e[y] for y in ta))
                        comp.append(by_key[b])
                        queue.append(b)
            back = {A.elements: {y: i for i, y in enumerate(tau[A.elements][1])} for A in comp}
            loops = set()
            for A in comp:
                ta = tau[A.elements][1]
                for b, e in edges[A.elements]:
                    loops.add(Perm(tuple(back[b][e[y]] for y in ta)))
            aut = closure(sorted(loops), base.order, cap=self.caps.closure_cap)
            members[base.elements] = sorted(comp, key=lambda T: (T.order, T.elements))
            auts[base.elements] = aut.elements
        return tau, members, auts

    def _groupoid_homs(self, Q: Subgroup) -> Dict[Table, Optional[Perm]]:
        tau, members, auts = self._groupoid
        base, tq = tau[Q.elements]
        # position in Q.elements of tau_Q(base[i])
        pos = [Q.index[y] for y in tq]
        found: Dict[Table, Optional[Perm]] = {}
        for A in members[base.elements]:
            ta = tau[A.elements][1]
            for alpha in auts[base.elements]:
                table: List[Optional[Perm]] = [None] * Q.order
                for i, j in enumerate(alpha.images):
                    table[pos[i]] = ta[j]
                found.setdefault(tuple(table), None)
        return found


# ── Queries ────────────────────────────────────────────────────────


def hom_set(F: FusionSystem, Q: GroupLike, T: GroupLike) -> List[FusionMorphism]:
    return F.homs(Q, T)


def f_class(F: FusionSystem, Q: GroupLike) -> List[Subgroup]:
    """Subgroups ``F``-isomorphic to ``Q``."""
    seen = {tuple(sorted(m.table)) for m in F.homs_to_P(Q)}
    return [make_subgroup(F.P, key) for key in sorted(seen)]


def automizer(F: FusionSystem, Q: GroupLike) -> List[FusionMorphism]:
    """``Aut_F(Q)``."""
    return F.homs(Q, Q)


def aut_p(F: FusionSystem, Q: GroupLike) -> FrozenSet[Table]:
    """``Aut_P(Q)`` as a set of tables."""
    N = normalizer(F.P, Q)
    return frozenset(tuple(n * x * n.inverse for x in Q.elements) for n in N.elements)


def fully_centralized(F: FusionSystem, Q: GroupLike) -> bool:
    c = centralizer(F.P, Q).order
    return all(c >= centralizer(F.P, Q2).order for Q2 in f_class(F, Q))


def fully_normalized(F: FusionSystem, Q: GroupLike) -> bool:
    n = normalizer(F.P, Q).order
    return all(n >= normalizer(F.P, Q2).order for Q2 in f_class(F, Q))


def is_fully_automized(F: FusionSystem, Q: GroupLike) -> bool:
    """``Aut_P(Q)`` is a Sylow ``p``-subgroup of ``Aut_F(Q)``."""
    order = len(automizer(F, Q))
    return len(aut_p(F, Q)) == F.p ** multiplicity(F.p, order)


def receptive_violation(F: FusionSystem, Q: GroupLike) -> Optional[FusionMorphism]:
    """An ``F``-isomorphism ``φ: Q' → Q`` with no extension to ``N_φ``, if any."""
    autp = aut_p(F, Q)
    for Q2 in f_class(F, Q):
        N2 = normalizer(F.P, Q2)
        for phi in F.isos(Q2, Q):
            fwd = phi.underlying.mapping
            back = {v: k for k, v in fwd.items()}
            n_phi = []
            for g in N2.elements:
                ginv = g.inverse
                if tuple(fwd[g * back[y] * ginv] for y in Q.elements) in autp:
                    n_phi.append(g)
            N_phi = make_subgroup(F.P, n_phi)
            if not any(all(psi(x) == fwd[x] for x in Q2.elements) for psi in F.homs_to_P(N_phi)):
                return phi
    return None


def is_receptive(F: FusionSystem, Q: GroupLike) -> bool:
    return receptive_violation(F, Q) is None


def strongly_closed(F: FusionSystem, R: GroupLike) -> bool:
    """No morphism sends an element of ``R`` outside ``R``; cyclic subgroups suffice."""
    if not is_subgroup_of(R, F.P):
        raise ValueError("R is not a subgroup of P")
    inside = R.element_set
    for x in R.elements:
        for m in F.homs_to_P(cyclic_subgroup(F.P, x)):
            if not all(y in inside for y in m.table):
                return False
    return True


def weakly_closed(F: FusionSystem, R: GroupLike) -> bool:
    if not is_subgroup_of(R, F.P):
        raise ValueError("R is not a subgroup of P")
    return all(frozenset(m.table) == R.element_set for m in F.homs_to_P(R))


# ── Saturation ─────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class SaturationVerdict:
    saturated: bool
    axiom: Optional[str] = None  # "fully_centralized" | "fully_automized" | "receptive"
    subgroup: Optional[Subgroup] = None
    morphism: Optional[FusionMorphism] = None

    @property
    def holds(self) -> bool:
        return self.saturated


def saturation_check(F: FusionSystem) -> SaturationVerdict:
    """First axiom violation in canonical subgroup order, or saturated."""
    if F.P.order > F.caps.saturation_cap:
        raise CapExceeded(f"saturation check on |P| = {F.P.order}", F.caps.saturation_cap)
    for Q in F.subgroups:
        if fully_normalized(F, Q):
            if not fully_centralized(F, Q):
                return SaturationVerdict(False, "fully_centralized", Q)
            if not is_fully_automized(F, Q):
                return SaturationVerdict(False, "fully_automized", Q)
        if fully_centralized(F, Q):
            bad = receptive_violation(F, Q)
            if bad is not None:
                return SaturationVerdict(False, "receptive", Q, bad)
    return SaturationVerdict(True)


# ── Comparisons ────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class SystemComparison:
    """Hom-set comparison between two systems; lists the subgroups that differ."""

    name: str
    mismatches: Tuple[Subgroup, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.mismatches


def hom_signature(F: FusionSystem) -> Dict[Table, FrozenSet[Table]]:
    return {Q.elements: frozenset(m.table for m in F.homs_to_P(Q)) for Q in F.subgroups}


def compare_systems(F1: FusionSystem, F2: FusionSystem, name: str = "systems") -> SystemComparison:
    if F1.P.elements != F2.P.elements:
        raise ValueError("systems live on different groups")
    bad = [Q for Q in F1.subgroups
           if frozenset(m.table for m in F1.homs_to_P(Q)) != frozenset(m.table for m in F2.homs_to_P(Q))]
    return SystemComparison(name, tuple(bad))


def is_subsystem(F1: FusionSystem, F2: FusionSystem) -> bool:
    """Every morphism of *F1* lies in *F2* (same ``P``)."""
    return all(
        frozenset(m.table for m in F1.homs_to_P(Q)) <= frozenset(m.table for m in F2.homs_to_P(Q))
        for Q in F1.subgroups
    )


def alperin_generate(F: FusionSystem) -> FusionSystem:
    """The system generated by ``Aut_F(T)`` over fully centralized ``T``."""
    gens = [m.underlying for T in F.subgroups if fully_centralized(F, T) for m in automizer(F, T)]
    return FusionSystem.generated(F.P, F.p, gens, caps=F.caps, label=f"alperin({F.label})")


def alperin_check(F: FusionSystem) -> SystemComparison:
    return compare_systems(F, alperin_generate(F), "alperin")


def iso_check(F1: FusionSystem, F2: FusionSystem, theta: GroupMorphism) -> SystemComparison:
    """Does ``θ: P₁ → P₂`` carry every ``Hom_{F₁}(Q, P₁)`` onto ``Hom_{F₂}(θQ, P₂)``?"""
    if theta.source.elements != F1.P.elements or theta.target.elements != F2.P.elements:
        raise NotIsomorphism("theta must map P1 onto P2")
    if not (theta.is_bijective() and theta.is_homomorphism()):
        raise NotIsomorphism("theta is not a group isomorphism")
    fwd = theta.mapping
    back = {v: k for k, v in fwd.items()}
    bad = []
    for Q in F1.subgroups:
        Q2 = make_subgroup(F2.P, (fwd[x] for x in Q.elements))
        moved = frozenset(
            tuple(fwd[m(back[y])] for y in Q2.elements) for m in F1.homs_to_P(Q)
        )
        if moved != frozenset(m.table for m in F2.homs_to_P(Q2)):
            bad.append(Q)
    return SystemComparison("iso", tuple(bad))


# ── Inner automorphisms through bisets ─────────────────────────────


@dataclass(frozen=True, eq=False)
class InnerVerdict:
    phi: GroupMorphism
    biset: bool  # Δ_φP conjugate to ΔP in P×P
    direct: bool  # φ = c_u for some u in P

    @property
    def inner(self) -> bool:
        return self.biset

    @property
    def holds(self) -> bool:
        return self.biset == self.direct


def inner_criterion(P: GroupLike, phi: GroupMorphism) -> InnerVerdict:
    product = direct_product(P, P)
    twisted = product.subgroup(zip(phi.source.elements, phi.table))
    biset = conjugate_test(product.group, twisted, product.diagonal()) is not None
    direct = any(tuple(u * x * u.inverse for x in P.elements) == phi.table for u in P.elements)
    return InnerVerdict(phi, biset, direct)
