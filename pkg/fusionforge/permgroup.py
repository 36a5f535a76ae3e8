"""Exact finite permutation groups.

Elements are :class:`Perm` values on explicit points; a group carries its full
sorted element list, which doubles as the canonical identity of every
subgroup.  Everything here is immutable once built and is sized for
exhaustive, desk-scale computation: inputs past the configured caps are
rejected with :class:`~fusionforge.exceptions.CapExceeded`.

Products compose right to left, ``(a * b)(i) == a(b(i))``, so a permutation
group acts on its points from the left.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import isprime, multiplicity

from .config import CapsConfig
from .exceptions import CapExceeded, NotInjective, NotNormal

logger = logging.getLogger(__name__)

_CAPS = CapsConfig()


# ── Elements ───────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class Perm:
    """A bijection of ``{0, …, degree-1}`` given by its image list."""

    images: Tuple[int, ...]

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """Validated constructor for untrusted input."""
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        img = self.images
        return Perm(tuple(img[j] for j in other.images))

    def __pow__(self, exp: int) -> "Perm":
        base = self if exp >= 0 else self.inverse
        result = Perm.identity(self.degree)
        for _ in range(abs(exp)):
            result = result * base
        return result

    @cached_property
    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = set()
        out: List[Tuple[int, ...]] = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    @cached_property
    def order(self) -> int:
        lengths = [len(c) for c in self.cycles()]
        return math.lcm(*lengths) if lengths else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"


def conjugate_element(x: Perm, g: Perm) -> Perm:
    """``g x g⁻¹``."""
    return g * x * g.inverse


# ── Groups and subgroups ───────────────────────────────────────────


class _ElementSet:
    """Shared behaviour of groups and subgroups: a sorted element tuple.

    Equality and hashing go through the element tuple only, so a subgroup
    equals any other group-like object with the same elements.
    """

    elements: Tuple[Perm, ...]

    @cached_property
    def index(self) -> Dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        # the identity image list is lexicographically least
        return self.elements[0]

    @property
    def key(self) -> Tuple[Perm, ...]:
        return self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.element_set

    @cached_property
    def _hash(self) -> int:
        return hash(self.elements)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _ElementSet):
            return NotImplemented
        return self.elements == other.elements

    @cached_property
    def generating_set(self) -> Tuple[Perm, ...]:
        """A small generating set, chosen greedily in canonical order."""
        gens: List[Perm] = []
        span = {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = _close(gens, self.identity, cap=None)
                if len(span) == len(self.elements):
                    break
        return tuple(gens)

    def is_abelian(self) -> bool:
        gens = self.generating_set
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def conjugacy_cache(self) -> Dict[Tuple[Perm, ...], "Subgroup"]:
        # canonical conjugate per subgroup key; filled by canonical_conjugate
        return {}


@dataclass(frozen=True, eq=False, repr=False)
class PermGroup(_ElementSet):
    """A permutation group with its full element list materialized."""

    degree: int
    generators: Tuple[Perm, ...]
    elements: Tuple[Perm, ...]

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


@dataclass(frozen=True, eq=False, repr=False)
class Subgroup(_ElementSet):
    """A subgroup of ``parent``, identified by its sorted element list."""

    parent: PermGroup
    elements: Tuple[Perm, ...]

    @property
    def degree(self) -> int:
        return self.parent.degree

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generating_set) or "()"
        return f"Subgroup(order={self.order}, gens=<{gens}>)"


GroupLike = Union[PermGroup, Subgroup]


def root(G: GroupLike) -> PermGroup:
    """The ambient :class:`PermGroup` of a group-like value."""
    return G if isinstance(G, PermGroup) else G.parent


def as_group(G: GroupLike) -> PermGroup:
    """View a group-like value as a standalone :class:`PermGroup`."""
    if isinstance(G, PermGroup):
        return G
    return PermGroup(G.degree, G.generating_set, G.elements)


def as_subgroup(G: GroupLike) -> Subgroup:
    if isinstance(G, Subgroup):
        return G
    return Subgroup(G, G.elements)


def make_subgroup(G: GroupLike, elements: Iterable[Perm]) -> Subgroup:
    """Wrap an element collection (assumed closed) as a subgroup of *G*'s root."""
    return Subgroup(root(G), tuple(sorted(set(elements))))


# ── Closure ────────────────────────────────────────────────────────


def _close(generators: Sequence[Perm], identity: Perm, cap: Optional[int]) -> set:
    """Breadth-first multiplicative closure of *generators*."""
    els = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in generators:
            for b in frontier:
                c = a * b
                if c not in els:
                    els.add(c)
                    nxt.append(c)
                    if cap is not None and len(els) > cap:
                        raise CapExceeded("group closure", cap)
        frontier = nxt
    return els


def closure(generators: Sequence[Perm], degree: int, *, cap: Optional[int] = None) -> PermGroup:
    """The group generated by *generators* on ``degree`` points."""
    cap = _CAPS.closure_cap if cap is None else cap
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    els = _close(list(generators), Perm.identity(degree), cap)
    logger.debug("closure: %d generators on %d points -> order %d", len(generators), degree, len(els))
    return PermGroup(degree, tuple(generators), tuple(sorted(els)))


def generated_subgroup(G: GroupLike, generators: Iterable[Perm]) -> Subgroup:
    """The subgroup of *G* generated by *generators* (which must lie in *G*)."""
    gens = list(generators)
    for g in gens:
        if g not in G:
            raise ValueError(f"{g} is not an element of the group")
    return make_subgroup(G, _close(gens, G.identity, cap=G.order))


def trivial_subgroup(G: GroupLike) -> Subgroup:
    return Subgroup(root(G), (G.identity,))


def cyclic_subgroup(G: GroupLike, g: Perm) -> Subgroup:
    return generated_subgroup(G, [g])


# ── Subgroup machinery ─────────────────────────────────────────────


def is_subgroup_of(A: GroupLike, B: GroupLike) -> bool:
    return A.element_set <= B.element_set


def conjugate(S: GroupLike, g: Perm) -> Subgroup:
    """``g S g⁻¹``."""
    ginv = g.inverse
    return make_subgroup(S, (g * s * ginv for s in S.elements))


def _normalizes(g: Perm, S: GroupLike) -> bool:
    ginv = g.inverse
    return all(g * s * ginv in S.element_set for s in S.generating_set)


def normalizer(G: GroupLike, S: GroupLike) -> Subgroup:
    return make_subgroup(G, (g for g in G.elements if _normalizes(g, S)))


def centralizer(G: GroupLike, S: GroupLike) -> Subgroup:
    gens = S.generating_set
    return make_subgroup(G, (g for g in G.elements if all(g * s == s * g for s in gens)))


def center(G: GroupLike) -> Subgroup:
    return centralizer(G, G)


def is_normal(G: GroupLike, S: GroupLike) -> bool:
    if not is_subgroup_of(S, G):
        return False
    return all(_normalizes(g, S) for g in G.generating_set)


def intersection(A: GroupLike, B: GroupLike) -> Subgroup:
    return make_subgroup(A, (a for a in A.elements if a in B.element_set))


def join(A: GroupLike, B: GroupLike) -> Subgroup:
    """The subgroup generated by ``A ∪ B`` inside the root of *A*."""
    gens = list(A.generating_set) + list(B.generating_set)
    return make_subgroup(A, _close(gens, A.identity, cap=None))


def product_set(A: GroupLike, B: GroupLike) -> Subgroup:
    """``AB`` for subgroups with ``AB`` a subgroup (e.g. one normalizes the other)."""
    return make_subgroup(A, (a * b for a in A.elements for b in B.elements))


def is_p_group(G: GroupLike, p: int) -> bool:
    n = G.order
    while n % p == 0:
        n //= p
    return n == 1


def all_subgroups(G: GroupLike, *, cap: Optional[int] = None) -> List[Subgroup]:
    """Every subgroup of *G* exactly once, ordered by (order, element list).

    Bottom-up: start from the cyclic subgroups, then repeatedly join each
    newly found subgroup with each cyclic subgroup it does not contain.
    """
    cap = _CAPS.subgroup_cap if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration of a group of order {G.order}", cap)

    ident = G.identity
    cyclic: Dict[Tuple[Perm, ...], Perm] = {}
    for g in G.elements:
        els = tuple(sorted(_close([g], ident, cap=None)))
        cyclic.setdefault(els, g)

    found: Dict[Tuple[Perm, ...], Tuple[Perm, ...]] = {}  # key -> generators
    for key, g in cyclic.items():
        found[key] = () if key == (ident,) else (g,)

    frontier = list(found)
    while frontier:
        nxt = []
        for key in frontier:
            members = set(key)
            gens = found[key]
            for c in cyclic.values():
                if c in members:
                    continue
                new_gens = gens + (c,)
                joined = tuple(sorted(_close(list(new_gens), ident, cap=G.order)))
                if joined not in found:
                    found[joined] = new_gens
                    nxt.append(joined)
        frontier = nxt

    parent = root(G)
    subs = [Subgroup(parent, key) for key in found]
    subs.sort(key=lambda S: (S.order, S.elements))
    logger.debug("all_subgroups: order %d -> %d subgroups", G.order, len(subs))
    return subs


def normal_subgroups(G: GroupLike, *, cap: Optional[int] = None) -> List[Subgroup]:
    return [S for S in all_subgroups(G, cap=cap) if is_normal(G, S)]


def conjugacy_class(G: GroupLike, S: GroupLike) -> List[Subgroup]:
    """All ``G``-conjugates of *S*, sorted canonically."""
    seen = {S.elements: as_subgroup(S)}
    frontier = [as_subgroup(S)]
    gens = G.generating_set
    while frontier:
        nxt = []
        for T in frontier:
            for g in gens:
                C = conjugate(T, g)
                if C.elements not in seen:
                    seen[C.elements] = C
                    nxt.append(C)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def canonical_conjugate(G: GroupLike, S: GroupLike) -> Subgroup:
    """The least ``G``-conjugate of *S* in sorted-element-list order."""
    cache = G.conjugacy_cache
    hit = cache.get(S.elements)
    if hit is not None:
        return hit
    cls = conjugacy_class(G, S)
    rep = cls[0]
    for C in cls:
        cache[C.elements] = rep
    return rep


def subgroup_class_representatives(G: GroupLike, subgroups: Iterable[GroupLike]) -> List[Subgroup]:
    """Canonical representatives of the conjugacy classes met by *subgroups*."""
    reps = {canonical_conjugate(G, S).elements: canonical_conjugate(G, S) for S in subgroups}
    out = list(reps.values())
    out.sort(key=lambda S: (S.order, S.elements))
    return out


def conjugacy_classes_of_subgroups(G: GroupLike, *, cap: Optional[int] = None) -> List[Subgroup]:
    return subgroup_class_representatives(G, all_subgroups(G, cap=cap))


def conjugate_test(G: GroupLike, A: GroupLike, B: GroupLike) -> Optional[Perm]:
    """Least ``g`` in *G* with ``g A g⁻¹ = B``, or ``None``."""
    if A.order != B.order:
        return None
    gens = A.generating_set
    for g in G.elements:
        ginv = g.inverse
        if all(g * a * ginv in B.element_set for a in gens):
            return g
    return None


def sylow(G: GroupLike, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown one factor ``p`` at a time inside normalizers."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    target = p ** multiplicity(p, G.order)
    P = trivial_subgroup(G)
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x not in P and x ** p in P:
                P = product_set(P, cyclic_subgroup(G, x))
                break
        else:  # pragma: no cover - impossible by Cauchy's theorem in N/P
            raise RuntimeError("no element of order p in N(P)/P")
    return P


# ── Morphisms ──────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False, repr=False)
class GroupMorphism:
    """A map ``source → target`` stored as the image of each source element.

    ``table[i]`` is the image of ``source.elements[i]``.  Two morphisms are
    equal when they have the same source and the same table.
    """

    source: GroupLike
    target: GroupLike
    table: Tuple[Perm, ...]

    @classmethod
    def from_mapping(cls, source: GroupLike, target: GroupLike, mapping: Dict[Perm, Perm]) -> "GroupMorphism":
        return cls(source, target, tuple(mapping[x] for x in source.elements))

    @classmethod
    def identity(cls, G: GroupLike) -> "GroupMorphism":
        return cls(G, G, G.elements)

    @classmethod
    def conjugation(cls, source: GroupLike, target: GroupLike, g: Perm) -> "GroupMorphism":
        """``c_g : x ↦ g x g⁻¹`` restricted to *source*."""
        ginv = g.inverse
        return cls(source, target, tuple(g * x * ginv for x in source.elements))

    def __call__(self, x: Perm) -> Perm:
        return self.table[self.source.index[x]]

    @property
    def key(self) -> Tuple[Tuple[Perm, ...], Tuple[Perm, ...]]:
        return (self.source.elements, self.table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupMorphism):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{g}->{self(g)}" for g in self.source.generating_set)
        return f"GroupMorphism(|source|={self.source.order}, {pairs})"

    @cached_property
    def mapping(self) -> Dict[Perm, Perm]:
        return dict(zip(self.source.elements, self.table))

    def image(self, S: Optional[GroupLike] = None) -> Subgroup:
        """``φ(S)`` (default ``φ(source)``) as a subgroup of the target's root."""
        if S is None:
            return make_subgroup(self.target, self.table)
        return make_subgroup(self.target, (self(x) for x in S.elements))

    def preimage(self, S: GroupLike) -> Subgroup:
        return make_subgroup(self.source, (x for x, y in zip(self.source.elements, self.table) if y in S))

    def kernel(self) -> Subgroup:
        one = self.target.identity
        return make_subgroup(self.source, (x for x, y in zip(self.source.elements, self.table) if y == one))

    def compose(self, other: "GroupMorphism") -> "GroupMorphism":
        """``self ∘ other`` (apply *other* first)."""
        return GroupMorphism(other.source, self.target, tuple(self(y) for y in other.table))

    def restrict(self, S: GroupLike, target: Optional[GroupLike] = None) -> "GroupMorphism":
        return GroupMorphism(S, self.target if target is None else target, tuple(self(x) for x in S.elements))

    def corestrict(self) -> "GroupMorphism":
        """The same map with target shrunk to its image."""
        return GroupMorphism(self.source, self.image(), self.table)

    def inverse(self) -> "GroupMorphism":
        if not self.is_injective():
            raise NotInjective("only injective morphisms invert onto their image")
        img = self.image()
        back = {y: x for x, y in zip(self.source.elements, self.table)}
        return GroupMorphism(img, self.source, tuple(back[y] for y in img.elements))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_bijective(self) -> bool:
        return self.is_injective() and set(self.table) == self.target.element_set

    def is_homomorphism(self) -> bool:
        """Full double loop over source pairs."""
        els = self.source.elements
        for a, fa in zip(els, self.table):
            for b, fb in zip(els, self.table):
                if self(a * b) != fa * fb:
                    return False
        return True


def extend_homomorphism(
    generators: Sequence[Perm], images: Sequence[Perm], identity: Perm, target_identity: Perm
) -> Optional[Dict[Perm, Perm]]:
    """Extend ``generators[i] ↦ images[i]`` along the Cayley graph.

    Returns the map on the generated subgroup, or ``None`` if two paths to
    the same element disagree (no homomorphism extends the assignment).
    """
    hom = {identity: target_identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = hom[x]
            for s, t in zip(generators, images):
                y = s * x
                fy = t * fx
                seen = hom.get(y)
                if seen is None:
                    hom[y] = fy
                    nxt.append(y)
                elif seen != fy:
                    return None
        frontier = nxt
    return hom


def isomorphisms(A: GroupLike, B: GroupLike, *, cap: Optional[int] = None) -> List[GroupMorphism]:
    """Every isomorphism ``A → B`` by backtracking over generator images."""
    cap = _CAPS.automorphism_cap if cap is None else cap
    if A.order > cap:
        raise CapExceeded(f"isomorphism search on a group of order {A.order}", cap)
    if A.order != B.order:
        return []

    gens = A.generating_set
    by_order: Dict[int, List[Perm]] = {}
    for b in B.elements:
        by_order.setdefault(b.order, []).append(b)

    found: List[GroupMorphism] = []

    def _search(images: List[Perm]) -> None:
        k = len(images)
        if k == len(gens):
            hom = extend_homomorphism(gens, images, A.identity, B.identity)
            found.append(GroupMorphism.from_mapping(A, B, hom))
            return
        for b in by_order.get(gens[k].order, []):
            trial = images + [b]
            hom = extend_homomorphism(gens[: k + 1], trial, A.identity, B.identity)
            if hom is None or len(set(hom.values())) != len(hom):
                continue
            _search(trial)

    _search([])
    found.sort(key=lambda m: m.table)
    logger.debug("isomorphisms: order %d -> %d maps", A.order, len(found))
    return found


def automorphisms(P: GroupLike, *, cap: Optional[int] = None) -> List[GroupMorphism]:
    return isomorphisms(P, P, cap=cap)


def inner_automorphisms(P: GroupLike) -> List[GroupMorphism]:
    maps = {GroupMorphism.conjugation(P, P, u) for u in P.elements}
    return sorted(maps, key=lambda m: m.table)


# ── Quotients and products ─────────────────────────────────────────


class QuotientGroup(NamedTuple):
    """``G/N`` acting on the left cosets of ``N``, with its projection."""

    group: PermGroup
    projection: GroupMorphism
    lifts: Dict[Perm, Perm]  # least preimage of each quotient element

    def lift(self, q: Perm) -> Perm:
        return self.lifts[q]

    def image(self, S: GroupLike) -> Subgroup:
        return self.projection.image(S)

    def preimage(self, S: GroupLike) -> Subgroup:
        return self.projection.preimage(S)


def quotient_group(G: GroupLike, N: GroupLike) -> QuotientGroup:
    """Realize ``G/N`` as the permutation action of *G* on ``G/N``'s cosets."""
    if not is_normal(G, N):
        raise NotNormal("quotient by a subgroup that is not normal")

    coset_of: Dict[Perm, int] = {}
    reps: List[Perm] = []
    for g in G.elements:  # sorted, so each coset's first element is its least
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[g * n] = idx

    perm_of_coset: List[Perm] = []
    for r in reps:
        perm_of_coset.append(Perm(tuple(coset_of[r * s] for s in reps)))

    degree = len(reps)
    gens = tuple(dict.fromkeys(perm_of_coset[coset_of[g]] for g in G.generating_set))
    Q = PermGroup(degree, gens, tuple(sorted(perm_of_coset)))
    projection = GroupMorphism(G, Q, tuple(perm_of_coset[coset_of[g]] for g in G.elements))
    lifts = {q: r for q, r in zip(perm_of_coset, reps)}
    return QuotientGroup(Q, projection, lifts)


@dataclass(frozen=True, eq=False, repr=False)
class DirectProduct:
    """``left × right`` on the disjoint union of the factors' points."""

    left: GroupLike
    right: GroupLike
    group: PermGroup

    def __repr__(self) -> str:
        return f"DirectProduct({self.left.order} x {self.right.order})"

    @property
    def split_point(self) -> int:
        return self.left.degree

    def position(self, i, j):
        """Index in ``group.elements`` of ``(left[i], right[j])``; works on int arrays too."""
        return i * self.right.order + j

    def pair(self, a: Perm, b: Perm) -> Perm:
        d = self.left.degree
        return Perm(a.images + tuple(d + x for x in b.images))

    def split(self, x: Perm) -> Tuple[Perm, Perm]:
        d = self.left.degree
        return Perm(x.images[:d]), Perm(tuple(y - d for y in x.images[d:]))

    def swap(self) -> "DirectProduct":
        return direct_product(self.right, self.left)

    def flip_element(self, x: Perm) -> Perm:
        """``(a, b) ↦ (b, a)`` into ``self.swap()``."""
        a, b = self.split(x)
        d = self.right.degree
        return Perm(b.images + tuple(d + y for y in a.images))

    def subgroup(self, pairs: Iterable[Tuple[Perm, Perm]]) -> Subgroup:
        return make_subgroup(self.group, (self.pair(a, b) for a, b in pairs))

    def embed_left(self, S: GroupLike) -> Subgroup:
        """``S × 1``."""
        one = self.right.identity
        return self.subgroup((s, one) for s in S.elements)

    def embed_right(self, S: GroupLike) -> Subgroup:
        """``1 × S``."""
        one = self.left.identity
        return self.subgroup((one, s) for s in S.elements)

    def product_of(self, A: GroupLike, B: GroupLike) -> Subgroup:
        return self.subgroup((a, b) for a in A.elements for b in B.elements)

    def project_left(self, X: GroupLike) -> Subgroup:
        return make_subgroup(self.left, (self.split(x)[0] for x in X.elements))

    def project_right(self, X: GroupLike) -> Subgroup:
        return make_subgroup(self.right, (self.split(x)[1] for x in X.elements))

    def kernel_left(self, X: GroupLike) -> Subgroup:
        """``X₁`` with ``X ∩ (G₁ × 1) = X₁ × 1``."""
        one = self.right.identity
        out = []
        for x in X.elements:
            a, b = self.split(x)
            if b == one:
                out.append(a)
        return make_subgroup(self.left, out)

    def kernel_right(self, X: GroupLike) -> Subgroup:
        one = self.left.identity
        out = []
        for x in X.elements:
            a, b = self.split(x)
            if a == one:
                out.append(b)
        return make_subgroup(self.right, out)

    def diagonal(self) -> Subgroup:
        """``ΔG`` for equal factors."""
        if self.left.elements != self.right.elements:
            raise ValueError("diagonal needs equal factors")
        return self.subgroup((g, g) for g in self.left.elements)

    @cached_property
    def pi1(self) -> GroupMorphism:
        return GroupMorphism(self.group, self.left, tuple(self.split(x)[0] for x in self.group.elements))

    @cached_property
    def pi2(self) -> GroupMorphism:
        return GroupMorphism(self.group, self.right, tuple(self.split(x)[1] for x in self.group.elements))

    @cached_property
    def iota1(self) -> GroupMorphism:
        one = self.right.identity
        return GroupMorphism(self.left, self.group, tuple(self.pair(a, one) for a in self.left.elements))

    @cached_property
    def iota2(self) -> GroupMorphism:
        one = self.left.identity
        return GroupMorphism(self.right, self.group, tuple(self.pair(one, b) for b in self.right.elements))


def direct_product(G1: GroupLike, G2: GroupLike, *, cap: Optional[int] = None) -> DirectProduct:
    cap = _CAPS.closure_cap if cap is None else cap
    if G1.order * G2.order > cap:
        raise CapExceeded(f"direct product of order {G1.order * G2.order}", cap)
    d1 = G1.degree

    def _pair(a: Perm, b: Perm) -> Perm:
        return Perm(a.images + tuple(d1 + x for x in b.images))

    one1, one2 = G1.identity, G2.identity
    gens = tuple(_pair(a, one2) for a in G1.generating_set) + tuple(_pair(one1, b) for b in G2.generating_set)
    # left coordinates dominate the image tuple, so this is already sorted
    elements = tuple(_pair(a, b) for a in G1.elements for b in G2.elements)
    group = PermGroup(d1 + G2.degree, gens, elements)
    return DirectProduct(G1, G2, group)
