"""Subgroups of direct products through their Goursat data.

A subgroup ``X ≤ G₁ × G₂`` is determined by ``π₁(X)``, ``π₂(X)``, the
kernels ``X₁ = {a | (a, 1) ∈ X}`` and ``X₂ = {b | (1, b) ∈ X}``, and an
isomorphism ``θ: π₁(X)/X₁ → π₂(X)/X₂``; ``θ`` is stored as a table between
two :func:`~fusionforge.permgroup.quotient_group` realizations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exceptions import InvalidData, NotInjective, NotNormal
from .permgroup import (
    DirectProduct,
    GroupLike,
    GroupMorphism,
    Perm,
    QuotientGroup,
    Subgroup,
    as_subgroup,
    direct_product,
    is_normal,
    isomorphisms,
    make_subgroup,
    normal_subgroups,
    quotient_group,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GoursatData:
    product: DirectProduct
    p1X: Subgroup
    p2X: Subgroup
    X1: Subgroup
    X2: Subgroup
    q1: QuotientGroup  # p1X / X1
    q2: QuotientGroup  # p2X / X2
    theta: GroupMorphism  # q1.group -> q2.group

    @property
    def key(self) -> tuple:
        return (self.p1X.key, self.p2X.key, self.X1.key, self.X2.key, self.coset_map())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GoursatData):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def coset_map(self) -> Tuple[Tuple[Tuple[Perm, ...], Tuple[Perm, ...]], ...]:
        """θ as pairs of cosets (element tuples), independent of realization."""
        out = []
        for q, t in zip(self.q1.group.elements, self.theta.table):
            out.append((_coset(self.q1, q), _coset(self.q2, t)))
        out.sort()
        return tuple(out)

    @property
    def is_diagonal(self) -> bool:
        """``X₁ = X₂ = 1``: ``X`` is the graph of an isomorphism."""
        return self.X1.order == 1 and self.X2.order == 1

    def flip(self) -> "GoursatData":
        """Data of ``X^♯`` in ``G₂ × G₁``: swap sides and invert θ."""
        back = {t: q for q, t in zip(self.q1.group.elements, self.theta.table)}
        inverse = GroupMorphism(self.q2.group, self.q1.group, tuple(back[t] for t in self.q2.group.elements))
        return GoursatData(self.product.swap(), self.p2X, self.p1X, self.X2, self.X1, self.q2, self.q1, inverse)


def _coset(Q: QuotientGroup, q: Perm) -> Tuple[Perm, ...]:
    src = Q.projection.source
    return tuple(x for x, y in zip(src.elements, Q.projection.table) if y == q)


def decompose(product: DirectProduct, X: GroupLike) -> GoursatData:
    """Goursat data of ``X ≤ product``."""
    p1X = product.project_left(X)
    p2X = product.project_right(X)
    X1 = product.kernel_left(X)
    X2 = product.kernel_right(X)
    q1 = quotient_group(p1X, X1)
    q2 = quotient_group(p2X, X2)
    mapping: Dict[Perm, Perm] = {}
    for x in X.elements:
        a, b = product.split(x)
        mapping[q1.projection(a)] = q2.projection(b)
    theta = GroupMorphism.from_mapping(q1.group, q2.group, mapping)
    return GoursatData(product, p1X, p2X, X1, X2, q1, q2, theta)


def build_data(
    product: DirectProduct,
    p1X: GroupLike,
    p2X: GroupLike,
    X1: GroupLike,
    X2: GroupLike,
    representatives: Dict[Perm, Perm],
) -> GoursatData:
    """Assemble data from subgroups and θ given on coset representatives.

    *representatives* maps elements of ``p1X`` to elements of ``p2X``;
    every coset of ``X1`` must be covered.
    """
    try:
        q1 = quotient_group(p1X, X1)
        q2 = quotient_group(p2X, X2)
    except NotNormal as exc:
        raise InvalidData(str(exc)) from exc
    mapping: Dict[Perm, Perm] = {}
    for a, b in representatives.items():
        if a not in p1X or b not in p2X:
            raise InvalidData("theta representative outside the projections")
        qa, qb = q1.projection(a), q2.projection(b)
        if mapping.setdefault(qa, qb) != qb:
            raise InvalidData("theta is not well defined on cosets")
    if len(mapping) != q1.group.order:
        raise InvalidData("theta does not cover every coset")
    theta = GroupMorphism.from_mapping(q1.group, q2.group, mapping)
    return GoursatData(product, as_subgroup(p1X), as_subgroup(p2X),
                       as_subgroup(X1), as_subgroup(X2), q1, q2, theta)


def validate(d: GoursatData) -> None:
    if not is_normal(d.p1X, d.X1) or not is_normal(d.p2X, d.X2):
        raise InvalidData("kernels must be normal in the projections")
    if not d.theta.is_bijective():
        raise InvalidData("theta is not a bijection")
    if not d.theta.is_homomorphism():
        raise InvalidData("theta is not a homomorphism")


def reconstruct(d: GoursatData) -> Subgroup:
    """``{(a, b) ∈ π₁ × π₂ | b X₂ = θ(a X₁)}``."""
    validate(d)
    pairs = []
    for a in d.p1X.elements:
        want = d.theta(d.q1.projection(a))
        for b in d.p2X.elements:
            if d.q2.projection(b) == want:
                pairs.append((a, b))
    return d.product.subgroup(pairs)


def flip(product: DirectProduct, X: GroupLike) -> Subgroup:
    """``X^♯ = {(h, g) | (g, h) ∈ X}`` inside ``product.swap()``."""
    swapped = product.swap()
    return make_subgroup(swapped.group, (product.flip_element(x) for x in X.elements))


def diagonal(phi: GroupMorphism, product: DirectProduct) -> Subgroup:
    """``Δ_φ A = {(a, φ(a))}`` for an injective ``φ: A → B``."""
    if not phi.is_injective():
        raise NotInjective("diagonal subgroups need an injective map")
    if not phi.source.element_set <= product.left.element_set:
        raise ValueError("source of phi is not inside the left factor")
    if not set(phi.table) <= product.right.element_set:
        raise ValueError("image of phi is not inside the right factor")
    return product.subgroup(zip(phi.source.elements, phi.table))


@dataclass(frozen=True, eq=False)
class RStructureReport:
    """Structure of ``R ≤ P₁ × P₂``: surjectivity, kernels and θ."""

    R: Subgroup
    surjective: Tuple[bool, bool]
    goursat: Optional[GoursatData] = None
    orders_equal: Optional[bool] = None  # |R1| == |R2|
    theta_verified: Optional[bool] = None  # R rebuilt from θ elementwise
    quotient_iso: Optional[GroupMorphism] = None  # R/(R1 R2) -> Δ_θ(P1/R1)
    quotient_iso_verified: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return all(self.surjective) and bool(self.orders_equal) and bool(self.theta_verified) \
            and bool(self.quotient_iso_verified)


def check_R_structure(product: DirectProduct, R: GroupLike) -> RStructureReport:
    R = make_subgroup(product.group, R.elements)
    surjective = (
        product.project_left(R).order == product.left.order,
        product.project_right(R).order == product.right.order,
    )
    if not all(surjective):
        return RStructureReport(R, surjective)

    d = decompose(product, R)
    theta_ok = reconstruct(d) == R

    R1R2 = product.product_of(d.X1, d.X2)
    QR = quotient_group(R, R1R2)
    small = direct_product(d.q1.group, d.q2.group)
    delta = diagonal(d.theta, small)
    table = []
    for q in QR.group.elements:
        a, b = product.split(QR.lift(q))
        table.append(small.pair(d.q1.projection(a), d.q2.projection(b)))
    iso = GroupMorphism(QR.group, delta, tuple(table))
    iso_ok = iso.is_bijective() and iso.is_homomorphism()

    return RStructureReport(
        R, surjective, d,
        orders_equal=d.X1.order == d.X2.order,
        theta_verified=theta_ok,
        quotient_iso=iso,
        quotient_iso_verified=iso_ok,
    )


def subgroups_with_surjective_projections(product: DirectProduct) -> List[Subgroup]:
    """Every ``R`` with both projections onto, built from Goursat data.

    Runs over normal pairs ``R₁ ⊴ P₁``, ``R₂ ⊴ P₂`` of equal index and every
    isomorphism ``P₁/R₁ → P₂/R₂``.
    """
    P1, P2 = product.left, product.right
    n2 = normal_subgroups(P2)
    found: Dict[tuple, Subgroup] = {}
    for N1 in normal_subgroups(P1):
        q1 = quotient_group(P1, N1)
        for N2 in n2:
            if P2.order // N2.order != q1.group.order:
                continue
            q2 = quotient_group(P2, N2)
            for theta in isomorphisms(q1.group, q2.group):
                d = GoursatData(product, as_subgroup(P1), as_subgroup(P2),
                                N1, N2, q1, q2, theta)
                R = reconstruct(d)
                found.setdefault(R.key, R)
    out = sorted(found.values(), key=lambda S: (S.order, S.elements))
    logger.debug("surjective-projection subgroups of %r: %d", product, len(out))
    return out
