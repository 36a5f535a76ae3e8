"""G-sets, permutation-module shadows and bisets.

A :class:`GSet` stores its action as an ``int32`` table with one row per
group element (in the group's canonical element order): ``table[i, x]`` is
the image of point ``x`` under ``group.elements[i]``.  Statements about
permutation modules are checked on their G-sets via
:class:`TransitiveDecomposition`, a complete isomorphism invariant.

Bisets follow the usual identification of a ``(G, H)``-biset with a
``G × H``-set, ``(g, h)·x = g x h⁻¹``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import NotNormal
from .permgroup import (
    DirectProduct,
    GroupLike,
    GroupMorphism,
    Perm,
    QuotientGroup,
    Subgroup,
    canonical_conjugate,
    conjugate,
    direct_product,
    intersection,
    is_normal,
    is_subgroup_of,
    make_subgroup,
    quotient_group,
    trivial_subgroup,
)

logger = logging.getLogger(__name__)


# ── G-sets ─────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class GSet:
    """A finite left ``group``-set on points ``0..size-1``."""

    group: GroupLike
    table: np.ndarray

    def __post_init__(self) -> None:
        if self.table.ndim != 2 or self.table.shape[0] != self.group.order:
            raise ValueError(f"action table shape {self.table.shape} does not match group order {self.group.order}")
        self.table.setflags(write=False)

    @classmethod
    def from_rows(cls, group: GroupLike, rows: Iterable[Sequence[int]]) -> "GSet":
        table = np.asarray(list(rows), dtype=np.int32)
        if table.size == 0:
            table = table.reshape(group.order, 0)
        return cls(group, table)

    @property
    def size(self) -> int:
        return int(self.table.shape[1])

    def act(self, g: Perm, x: int) -> int:
        return int(self.table[self.group.index[g], x])

    def row(self, g: Perm) -> np.ndarray:
        return self.table[self.group.index[g]]

    def orbit(self, x: int) -> List[int]:
        return [int(y) for y in np.unique(self.table[:, x])]

    def stabilizer(self, x: int) -> Subgroup:
        rows = np.flatnonzero(self.table[:, x] == x)
        els = self.group.elements
        return make_subgroup(self.group, (els[i] for i in rows))

    def orbit_labels(self) -> np.ndarray:
        """The least point of each point's orbit (column x of the table is the orbit of x)."""
        return self.table.min(axis=0)

    def orbit_partition(self) -> List[List[int]]:
        """Orbits, each sorted, listed by least point."""
        labels = self.orbit_labels()
        return [np.flatnonzero(labels == r).tolist() for r in np.unique(labels)]

    def is_action(self) -> bool:
        """Identity fixes every point and the table respects products."""
        G = self.group
        if not np.array_equal(self.table[G.index[G.identity]], np.arange(self.size)):
            return False
        for g in G.generating_set:
            rg = self.row(g)
            for i, h in enumerate(G.elements):
                if not np.array_equal(self.table[G.index[g * h]], rg[self.table[i]]):
                    return False
        return True


def coset_space(G: GroupLike, H: GroupLike) -> GSet:
    """``G/H`` with cosets ordered by their least element."""
    if not is_subgroup_of(H, G):
        raise ValueError("coset space needs H <= G")
    coset_of: Dict[Perm, int] = {}
    reps: List[Perm] = []
    for g in G.elements:
        if g not in coset_of:
            idx = len(reps)
            reps.append(g)
            for h in H.elements:
                coset_of[g * h] = idx
    return GSet.from_rows(G, ([coset_of[g * r] for r in reps] for g in G.elements))


def regular(G: GroupLike) -> GSet:
    return coset_space(G, trivial_subgroup(G))


def trivial(G: GroupLike) -> GSet:
    return GSet(G, np.zeros((G.order, 1), dtype=np.int32))


def natural(G: GroupLike) -> GSet:
    """The defining action on the group's points."""
    return GSet.from_rows(G, (g.images for g in G.elements))


def disjoint_union(S: GSet, T: GSet) -> GSet:
    if S.group.elements != T.group.elements:
        raise ValueError("disjoint union needs a common group")
    return GSet(S.group, np.hstack([S.table, T.table + S.size]).astype(np.int32))


def restrict(S: GSet, H: GroupLike) -> GSet:
    if not is_subgroup_of(H, S.group):
        raise ValueError("restriction needs H <= G")
    rows = [S.group.index[h] for h in H.elements]
    return GSet(H, S.table[rows])


def induce(S: GSet, G: GroupLike) -> GSet:
    """``G ×_H S`` for an ``H``-set *S*, ``H ≤ G``.

    Points are ``(i, s)`` flattened as ``i * |S| + s`` with ``t_i`` the least
    element of its coset ``t_i H``; ``g t_i = t_j h`` sends ``(i, s)`` to
    ``(j, h·s)``.
    """
    H = S.group
    if not is_subgroup_of(H, G):
        raise ValueError("induction needs H <= G")
    coset_of: Dict[Perm, int] = {}
    reps: List[Perm] = []
    for g in G.elements:
        if g not in coset_of:
            idx = len(reps)
            reps.append(g)
            for h in H.elements:
                coset_of[g * h] = idx
    n = S.size
    table = np.empty((G.order, len(reps) * n), dtype=np.int32)
    for gi, g in enumerate(G.elements):
        for i, t in enumerate(reps):
            gt = g * t
            j = coset_of[gt]
            h = reps[j].inverse * gt
            table[gi, i * n:(i + 1) * n] = j * n + S.table[H.index[h]]
    return GSet(G, table)


def transport(S: GSet, phi: GroupMorphism) -> GSet:
    """The same points acted on through an isomorphism ``phi: S.group → B``."""
    B = phi.target
    rows = np.empty(B.order, dtype=np.int64)
    for i, b in enumerate(phi.table):
        rows[B.index[b]] = i
    return GSet(B, S.table[rows])


# ── Decompositions ─────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class TransitiveDecomposition:
    """Multiset of stabilizer classes: ``((representative, multiplicity), …)``.

    Representatives are canonical conjugates, so equality of two
    decompositions over the same group is equality of ``key``.
    """

    group: GroupLike
    parts: Tuple[Tuple[Subgroup, int], ...]

    @classmethod
    def from_stabilizers(cls, group: GroupLike, stabilizers: Iterable[GroupLike]) -> "TransitiveDecomposition":
        counts: Dict[Tuple[Perm, ...], List] = {}
        for S in stabilizers:
            rep = canonical_conjugate(group, S)
            slot = counts.setdefault(rep.elements, [rep, 0])
            slot[1] += 1
        parts = sorted(((rep, m) for rep, m in counts.values()), key=lambda p: (p[0].order, p[0].elements))
        return cls(group, tuple(parts))

    @property
    def key(self) -> Tuple[Tuple[Tuple[Perm, ...], int], ...]:
        return tuple((S.elements, m) for S, m in self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitiveDecomposition):
            return NotImplemented
        return self.group.elements == other.group.elements and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def size(self) -> int:
        """Number of points of any G-set with this decomposition."""
        return sum(m * (self.group.order // S.order) for S, m in self.parts)

    @property
    def orbit_count(self) -> int:
        return sum(m for _, m in self.parts)


def orbits(S: GSet) -> TransitiveDecomposition:
    """Decompose *S* into transitive parts, one stabilizer class per orbit."""
    reps = np.unique(S.orbit_labels())
    return TransitiveDecomposition.from_stabilizers(S.group, (S.stabilizer(int(x)) for x in reps))


def equivariant_bijection(S: GSet, T: GSet) -> Optional[Dict[int, int]]:
    """An explicit isomorphism of G-sets ``S → T``, or ``None``.

    Each orbit of *S* is matched to an unused orbit of *T* holding a point
    with exactly the same stabilizer; the map then sends ``g·x`` to ``g·y``.
    """
    if S.group.elements != T.group.elements or S.size != T.size:
        return None
    t_orbits = T.orbit_partition()
    t_stabs = [{T.stabilizer(y).elements: y for y in orb} for orb in t_orbits]
    used = [False] * len(t_orbits)
    mapping: Dict[int, int] = {}
    for orb in S.orbit_partition():
        x = orb[0]
        key = S.stabilizer(x).elements
        for k, stabs in enumerate(t_stabs):
            if not used[k] and key in stabs:
                used[k] = True
                y = stabs[key]
                for i in range(S.group.order):
                    mapping[int(S.table[i, x])] = int(T.table[i, y])
                break
        else:
            return None
    return mapping


def is_equivariant(S: GSet, T: GSet, mapping: Dict[int, int]) -> bool:
    """*mapping* is a bijection ``S → T`` commuting with every group element."""
    if S.group.elements != T.group.elements or S.size != T.size:
        return False
    if sorted(mapping) != list(range(S.size)) or sorted(mapping.values()) != list(range(T.size)):
        return False
    f = np.asarray([mapping[x] for x in range(S.size)], dtype=np.int64)
    return bool(np.array_equal(f[S.table], T.table[:, f]))


def isomorphism_check(S: GSet, T: GSet) -> bool:
    """Equal decompositions exactly when a verified equivariant bijection exists."""
    f = equivariant_bijection(S, T)
    found = f is not None and is_equivariant(S, T, f)
    return found == (orbits(S) == orbits(T))


def relabel(S: GSet, order: Sequence[int]) -> GSet:
    """The same action with point ``x`` renamed ``order[x]``."""
    if sorted(order) != list(range(S.size)):
        raise ValueError("relabelling must permute the points")
    sigma = np.asarray(order, dtype=np.int64)
    table = np.empty_like(S.table)
    table[:, sigma] = sigma[S.table]
    return GSet(S.group, table)


def random_gset(G: GroupLike, stabilizers: Sequence[GroupLike], rng: random.Random) -> GSet:
    """``⊔ G/H`` over *stabilizers*, parts in random order and points shuffled."""
    parts = list(stabilizers)
    if not parts:
        raise ValueError("need at least one stabilizer")
    rng.shuffle(parts)
    S = coset_space(G, parts[0])
    for H in parts[1:]:
        S = disjoint_union(S, coset_space(G, H))
    order = list(range(S.size))
    rng.shuffle(order)
    return relabel(S, order)


@dataclass(frozen=True, eq=False)
class Comparison:
    """Two decompositions that a check expects to be equal."""

    name: str
    lhs: TransitiveDecomposition
    rhs: TransitiveDecomposition

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


# ── Double cosets and Mackey ───────────────────────────────────────


def double_cosets(H: GroupLike, G: GroupLike, K: GroupLike) -> List[Perm]:
    """One representative per ``H t K``, each the least element of its double coset."""
    seen = set()
    reps: List[Perm] = []
    for t in G.elements:
        if t in seen:
            continue
        reps.append(t)
        for h in H.elements:
            ht = h * t
            for k in K.elements:
                seen.add(ht * k)
    return reps


def mackey_check(G: GroupLike, H: GroupLike, K: GroupLike) -> Comparison:
    """``Res_K Ind_H^G 1`` against ``⊕_t Ind_{K ∩ tHt⁻¹}^K 1`` over ``K\\G/H``."""
    lhs = orbits(restrict(coset_space(G, H), K))
    stabs = [intersection(K, conjugate(H, t)) for t in double_cosets(K, G, H)]
    rhs = TransitiveDecomposition.from_stabilizers(K, stabs)
    return Comparison("mackey", lhs, rhs)


# ── Deflation ──────────────────────────────────────────────────────


def _require_normal(G: GroupLike, N: GroupLike) -> None:
    if not is_normal(G, N):
        raise NotNormal("deflation needs N normal in G")


def deflate(S: GSet, N: GroupLike, quotient: Optional[QuotientGroup] = None) -> GSet:
    """The ``G/N``-set of ``N``-orbits of *S*, orbits ordered by least point."""
    G = S.group
    _require_normal(G, N)
    Q = quotient_group(G, N) if quotient is None else quotient
    n_rows = [G.index[x] for x in N.elements]
    label = np.full(S.size, -1, dtype=np.int64)
    reps: List[int] = []
    for x in range(S.size):
        if label[x] < 0:
            label[np.unique(S.table[n_rows, x])] = len(reps)
            reps.append(x)
    rep_arr = np.asarray(reps, dtype=np.int64)
    rows = [label[S.table[G.index[Q.lift(q)], rep_arr]] for q in Q.group.elements]
    return GSet.from_rows(Q.group, rows)


def quotient_inclusion(G: GroupLike, N: GroupLike, H: GroupLike, Q: Optional[QuotientGroup] = None) -> GroupMorphism:
    """``H/N`` realized directly, mapped isomorphically onto ``HN/N ≤ G/N``."""
    Q = quotient_group(G, N) if Q is None else Q
    QH = quotient_group(H, N)
    image = Q.image(H)
    return GroupMorphism(QH.group, image, tuple(Q.projection(QH.lift(q)) for q in QH.group.elements))


def deflate_coset_check(G: GroupLike, N: GroupLike, H: GroupLike) -> Comparison:
    """``deflate(G/H, N) ≅ (G/N)/(HN/N)``."""
    _require_normal(G, N)
    Q = quotient_group(G, N)
    lhs = orbits(deflate(coset_space(G, H), N, Q))
    rhs = orbits(coset_space(Q.group, Q.image(H)))
    return Comparison("deflate_coset", lhs, rhs)


def deflate_commutes_with_restriction(G: GroupLike, N: GroupLike, H: GroupLike, S: GSet) -> Comparison:
    """``Res_{H/N} deflate(S, N) ≅ deflate(Res_H S, N)`` for ``N ≤ H ≤ G``."""
    _require_normal(G, N)
    if not is_subgroup_of(N, H):
        raise ValueError("needs N <= H")
    Q = quotient_group(G, N)
    lhs = orbits(restrict(deflate(S, N, Q), Q.image(H)))
    rhs_direct = deflate(restrict(S, H), N)
    rhs = orbits(transport(rhs_direct, quotient_inclusion(G, N, H, Q)))
    return Comparison("deflate_restriction", lhs, rhs)


def deflate_commutes_with_induction(G: GroupLike, N: GroupLike, H: GroupLike, U: GSet) -> Comparison:
    """``Ind_{H/N}^{G/N} deflate(U, N) ≅ deflate(Ind_H^G U, N)`` for an ``H``-set *U*."""
    _require_normal(G, N)
    if U.group.elements != H.elements:
        raise ValueError("U must be an H-set")
    if not is_subgroup_of(N, H):
        raise ValueError("needs N <= H")
    Q = quotient_group(G, N)
    inner = transport(deflate(U, N), quotient_inclusion(G, N, H, Q))
    lhs = orbits(induce(inner, Q.group))
    rhs = orbits(deflate(induce(U, G), N, Q))
    return Comparison("deflate_induction", lhs, rhs)


def deflate_transitivity_check(G: GroupLike, N: GroupLike, M: GroupLike, S: GSet) -> Comparison:
    """Deflation in stages: ``deflate(deflate(S, N), M/N) ≅ deflate(S, M)``."""
    _require_normal(G, N)
    _require_normal(G, M)
    if not is_subgroup_of(N, M):
        raise ValueError("needs N <= M")
    QN = quotient_group(G, N)
    QM = quotient_group(G, M)
    MN = QN.image(M)
    QQ = quotient_group(QN.group, MN)
    staged = deflate(deflate(S, N, QN), MN, QQ)
    # (G/N)/(M/N) -> G/M through lifts to G
    iso = GroupMorphism(
        QQ.group, QM.group,
        tuple(QM.projection(QN.lift(QQ.lift(q))) for q in QQ.group.elements),
    )
    lhs = orbits(transport(staged, iso))
    rhs = orbits(deflate(S, M, QM))
    return Comparison("deflate_transitivity", lhs, rhs)


# ── Bisets ─────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class Biset:
    """A ``(left, right)``-biset as a set for ``left × right``."""

    product: DirectProduct
    underlying: GSet

    def __post_init__(self) -> None:
        if self.underlying.group.elements != self.product.group.elements:
            raise ValueError("biset must act through its product group")

    @property
    def left_group(self) -> GroupLike:
        return self.product.left

    @property
    def right_group(self) -> GroupLike:
        return self.product.right

    @property
    def size(self) -> int:
        return self.underlying.size

    def decomposition(self) -> TransitiveDecomposition:
        return orbits(self.underlying)


def biset_from_subgroup(product: DirectProduct, X: GroupLike) -> Biset:
    """The transitive biset ``(G × H)/X``."""
    return Biset(product, coset_space(product.group, X))


def identity_biset(G: GroupLike) -> Biset:
    product = direct_product(G, G)
    return biset_from_subgroup(product, product.diagonal())


def dualize(B: Biset) -> Biset:
    """The opposite ``(H, G)``-biset; stabilizers ``X`` become ``X^♯``."""
    swapped = B.product.swap()
    idx = B.product.group.index
    rows = []
    for y in swapped.group.elements:
        h, g = swapped.split(y)
        rows.append(idx[B.product.pair(g, h)])
    return Biset(swapped, GSet(swapped.group, B.underlying.table[rows]))


def compose(B1: Biset, B2: Biset, outer: Optional[DirectProduct] = None) -> Biset:
    """``B1 ×_H B2`` for a ``(G, H)``-biset and an ``(H, K)``-biset.

    Pairs ``(x, y)`` are identified along the middle action
    ``h·(x, y) = ((1, h)·x, (h, 1)·y)``; ``G × K`` acts on the classes by
    ``(g, k)·[x, y] = [(g, 1)·x, (1, k)·y]``.  Classes are numbered by their
    least pair ``x * |B2| + y``.
    """
    if B1.right_group.elements != B2.left_group.elements:
        raise ValueError("middle groups differ")
    P1, P2 = B1.product, B2.product
    if outer is None:
        outer = direct_product(P1.left, P2.right)
    elif outer.left.elements != P1.left.elements or outer.right.elements != P2.right.elements:
        raise ValueError("outer product does not match the bisets")
    t1, t2 = B1.underlying.table, B2.underlying.table
    n1, n2 = B1.size, B2.size

    # column a of `moved` is the middle orbit of pair a
    h = np.arange(P1.right.order)
    xs = np.repeat(np.arange(n1), n2)
    ys = np.tile(np.arange(n2), n1)
    moved = t1[P1.position(0, h)][:, xs].astype(np.int64) * n2 + t2[P2.position(h, 0)][:, ys]
    reps, label = np.unique(moved.min(axis=0), return_inverse=True)
    label = label.reshape(-1)

    g, k = np.divmod(np.arange(outer.group.order), outer.right.order)
    gx = t1[P1.position(g, 0)][:, reps // n2].astype(np.int64)
    ky = t2[P2.position(0, k)][:, reps % n2]
    table = label[gx * n2 + ky].astype(np.int32)
    logger.debug("compose: %d x %d pairs -> %d points", n1, n2, len(reps))
    return Biset(outer, GSet(outer.group, table))
