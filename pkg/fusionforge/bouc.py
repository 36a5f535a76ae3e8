"""Bouc's decomposition of a composed pair of transitive bisets.

For ``X ≤ G × H`` and ``Y ≤ H × K``::

    (G×H)/X  ×_H  (H×K)/Y   ≅   ⊔_t  (G×K)/(X ∗ (t,1)Y)

with ``t`` running over ``π₂(X)\\H/π₁(Y)`` and
``X ∗ (t,1)Y = {(g, k) | ∃h: (g, h) ∈ X, (t⁻¹ht, k) ∈ Y}``.  The left side
is computed independently by :func:`fusionforge.gact.compose`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from .gact import (
    Biset,
    Comparison,
    GSet,
    TransitiveDecomposition,
    biset_from_subgroup,
    compose,
    double_cosets,
    dualize,
    orbits,
)
from .permgroup import (
    DirectProduct,
    GroupLike,
    Perm,
    Subgroup,
    all_subgroups,
    canonical_conjugate,
    conjugate,
    direct_product,
    intersection,
    make_subgroup,
    subgroup_class_representatives,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _product(G: GroupLike, H: GroupLike) -> DirectProduct:
    # one product object per pair of groups, so its conjugacy cache is shared
    return direct_product(G, H)


@lru_cache(maxsize=64)
def _subgroups(G: GroupLike) -> Tuple[Subgroup, ...]:
    return tuple(all_subgroups(G))


@lru_cache(maxsize=64)
def _class_representatives(G: GroupLike) -> Tuple[Subgroup, ...]:
    return tuple(subgroup_class_representatives(G, _subgroups(G)))


@dataclass(frozen=True, eq=False)
class GroupTriple:
    """The three products ``G×H``, ``H×K`` and ``G×K`` built once.

    Data derived from a single ``X`` or ``Y`` (its biset, projections and
    split elements) is memoized per subgroup, since sweeps pair each ``X``
    with many ``Y``.
    """

    G: GroupLike
    H: GroupLike
    K: GroupLike
    GH: DirectProduct
    HK: DirectProduct
    GK: DirectProduct
    _memo: Dict[Tuple[Any, ...], Any] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, G: GroupLike, H: GroupLike, K: GroupLike) -> "GroupTriple":
        return cls(G, H, K, _product(G, H), _product(H, K), _product(G, K))

    def _cached(self, key: Tuple[Any, ...], make: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = make()
        return self._memo[key]

    def left_biset(self, X: GroupLike) -> Biset:
        return self._cached(("GH/X", X.elements), lambda: biset_from_subgroup(self.GH, X))

    def right_biset(self, Y: GroupLike) -> Biset:
        return self._cached(("HK/Y", Y.elements), lambda: biset_from_subgroup(self.HK, Y))

    def image_right(self, X: GroupLike) -> Subgroup:
        """``π₂(X) ≤ H``."""
        return self._cached(("p2", X.elements), lambda: self.GH.project_right(X))

    def image_left(self, Y: GroupLike) -> Subgroup:
        """``π₁(Y) ≤ H``."""
        return self._cached(("p1", Y.elements), lambda: self.HK.project_left(Y))

    def kernel_right(self, X: GroupLike) -> Subgroup:
        """``X₂`` with ``X ∩ (1 × H) = 1 × X₂``."""
        return self._cached(("X2", X.elements), lambda: self.GH.kernel_right(X))

    def kernel_left(self, Y: GroupLike) -> Subgroup:
        return self._cached(("Y1", Y.elements), lambda: self.HK.kernel_left(Y))

    def middle_cosets(self, A: GroupLike, B: GroupLike) -> List[Perm]:
        """Representatives of ``A\\H/B``."""
        return self._cached(("AHB", A.elements, B.elements), lambda: double_cosets(A, self.H, B))

    def double_coset(self, A: GroupLike, t: Perm, B: GroupLike) -> FrozenSet[Perm]:
        return self._cached(("AtB", A.elements, t, B.elements),
                            lambda: frozenset(a * t * b for a in A.elements for b in B.elements))

    def _left_pairs(self, X: GroupLike) -> Tuple[Tuple[int, Perm], ...]:
        """``(index of g in G, h)`` for each ``(g, h) ∈ X``."""
        def make() -> Tuple[Tuple[int, Perm], ...]:
            gi = self.G.index
            return tuple((gi[g], h) for g, h in map(self.GH.split, X.elements))
        return self._cached(("Xpairs", X.elements), make)

    def _fibres(self, Y: GroupLike) -> Dict[Perm, Tuple[int, ...]]:
        """``h ↦ indices of k in K`` with ``(h, k) ∈ Y``."""
        def make() -> Dict[Perm, Tuple[int, ...]]:
            ki = self.K.index
            out: Dict[Perm, List[int]] = {}
            for h, k in map(self.HK.split, Y.elements):
                out.setdefault(h, []).append(ki[k])
            return {h: tuple(ks) for h, ks in out.items()}
        return self._cached(("Yfibres", Y.elements), make)

    def _twist(self, t: Perm) -> Dict[Perm, Perm]:
        """``h ↦ t⁻¹ h t`` on ``H``."""
        tinv = t.inverse
        return self._cached(("twist", t), lambda: {h: tinv * h * t for h in self.H.elements})


@dataclass(frozen=True, eq=False)
class BoucTerm:
    rep: Perm  # double coset representative t in H
    star: Subgroup  # X ∗ (t,1)Y in G×K
    inner: Subgroup  # X2 ∩ tY1t⁻¹ in H


@dataclass(frozen=True, eq=False)
class BoucDecomposition:
    X: Subgroup
    Y: Subgroup
    terms: Tuple[BoucTerm, ...]

    def stabilizers(self) -> List[Subgroup]:
        return [term.star for term in self.terms]


@dataclass(frozen=True, eq=False)
class BoucVerdict:
    decomposition: BoucDecomposition
    comparison: Comparison

    @property
    def holds(self) -> bool:
        return self.comparison.holds


def star_product(triple: GroupTriple, X: GroupLike, Y: GroupLike, t: Optional[Perm] = None) -> Subgroup:
    """``X ∗ (t,1)Y``; ``t`` defaults to the identity of ``H``."""
    twist = triple._twist(triple.H.identity if t is None else t)
    fibres = triple._fibres(Y)
    GK = triple.GK
    found = {GK.position(g, k) for g, h in triple._left_pairs(X) for k in fibres.get(twist[h], ())}
    els = GK.group.elements
    return make_subgroup(GK.group, (els[n] for n in found))


def bouc_rhs(triple: GroupTriple, X: GroupLike, Y: GroupLike) -> BoucDecomposition:
    """One term per double coset ``π₂(X) t π₁(Y)`` in ``H``."""
    X2 = triple.kernel_right(X)
    Y1 = triple.kernel_left(Y)
    terms = []
    for t in triple.middle_cosets(triple.image_right(X), triple.image_left(Y)):
        terms.append(BoucTerm(t, star_product(triple, X, Y, t), intersection(X2, conjugate(Y1, t))))
    return BoucDecomposition(_sub(triple.GH, X), _sub(triple.HK, Y), tuple(terms))


def _sub(product: DirectProduct, S: GroupLike) -> Subgroup:
    return Subgroup(product.group, S.elements)


def bouc_lhs_oracle(triple: GroupTriple, X: GroupLike, Y: GroupLike) -> GSet:
    """``(G×H)/X ×_H (H×K)/Y`` as a ``G×K``-set, by direct composition."""
    return compose(triple.left_biset(X), triple.right_biset(Y), outer=triple.GK).underlying


def verify_bouc(triple: GroupTriple, X: GroupLike, Y: GroupLike) -> BoucVerdict:
    lhs = orbits(bouc_lhs_oracle(triple, X, Y))
    dec = bouc_rhs(triple, X, Y)
    rhs = TransitiveDecomposition.from_stabilizers(triple.GK.group, dec.stabilizers())
    verdict = BoucVerdict(dec, Comparison("bouc", lhs, rhs))
    if not verdict.holds:
        logger.warning("bouc formula failed for |X|=%d |Y|=%d", X.order, Y.order)
    return verdict


def exhaustive_pairs(
    triple: GroupTriple, *, representatives: bool = True
) -> Iterator[Tuple[Subgroup, Subgroup]]:
    """Subgroup pairs ``(X, Y)``; by default one per conjugacy class on each side.

    Conjugating ``X`` in ``G×H`` or ``Y`` in ``H×K`` replaces each side of
    the formula by an isomorphic biset, so the representative pairs cover
    all subgroup pairs (see :func:`covered_pairs`).
    """
    if representatives:
        xs = _class_representatives(triple.GH.group)
        ys = _class_representatives(triple.HK.group)
    else:
        xs = _subgroups(triple.GH.group)
        ys = _subgroups(triple.HK.group)
    for X in xs:
        for Y in ys:
            yield X, Y


def covered_pairs(triple: GroupTriple) -> int:
    """Number of subgroup pairs ``(X, Y)`` the representative pairs stand for."""
    return len(_subgroups(triple.GH.group)) * len(_subgroups(triple.HK.group))


def star_coset_independence(triple: GroupTriple, X: GroupLike, Y: GroupLike, t: Perm) -> bool:
    """Every ``t'`` in ``π₂(X) t π₁(Y)`` gives a ``G×K``-conjugate star product."""
    coset = triple.double_coset(triple.image_right(X), t, triple.image_left(Y))
    GK = triple.GK.group
    want = canonical_conjugate(GK, star_product(triple, X, Y, t))
    return all(canonical_conjugate(GK, star_product(triple, X, Y, s)) == want for s in sorted(coset))


def associativity_check(B1: Biset, B2: Biset, B3: Biset) -> Comparison:
    """``(B1 ×_H B2) ×_K B3 ≅ B1 ×_H (B2 ×_K B3)``."""
    left = compose(compose(B1, B2), B3)
    right = compose(B1, compose(B2, B3), outer=left.product)
    return Comparison("associativity", left.decomposition(), right.decomposition())


def duality_check(B1: Biset, B2: Biset) -> Comparison:
    """``(B1 ×_H B2)^op ≅ B2^op ×_H B1^op``."""
    left = dualize(compose(B1, B2))
    right = compose(dualize(B2), dualize(B1), outer=left.product)
    return Comparison("duality", left.decomposition(), right.decomposition())
