"""Group catalog and textual group / subgroup inputs.

Names understood by :func:`parse_group`::

    C<n>      cyclic of order n
    D<2n>     dihedral of order 2n (D4 is the Klein four group)
    Q<2^k>    generalized quaternion, k >= 3 (regular representation)
    S<n>      symmetric, A<n> alternating
    E<p^k>    elementary abelian
    SL(2,3)   on the eight non-zero vectors of F_3^2
    Trivial
    X x Y     direct products, parenthesised as needed

plus inline JSON ``{"degree": d, "generators": [[...], ...]}``, a path to such
a JSON file, or ``perm:<degree>:<cycles>,<cycles>``.
"""

from __future__ import annotations

import json
import logging
import re
from functools import lru_cache, reduce
from itertools import product as iproduct
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from sympy import factorint
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from . import codec
from .exceptions import CatalogError, CodecError
from .permgroup import (
    DirectProduct,
    GroupLike,
    Perm,
    PermGroup,
    Subgroup,
    all_subgroups,
    as_subgroup,
    center,
    closure,
    direct_product,
    generated_subgroup,
    make_subgroup,
    sylow,
    trivial_subgroup,
)

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"^([CDQSAE])(\d+)$")
_SL23_RE = re.compile(r"^SL\(\s*2\s*,\s*3\s*\)$", re.IGNORECASE)
_PRODUCT_SEP = re.compile(r"\s+x\s+")


# ── Cycle notation ─────────────────────────────────────────────────


def parse_cycles(text: str, degree: int) -> Perm:
    """``"(0 1 2)(3 4)"`` → :class:`Perm` on ``degree`` points."""
    cycles: List[List[int]] = []
    for body in re.findall(r"\(([^()]*)\)", text):
        points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if any(p < 0 or p >= degree for p in points):
            raise CatalogError(f"cycle {body!r} leaves 0..{degree - 1}")
        if len(set(points)) != len(points):
            raise CatalogError(f"cycle {body!r} repeats a point")
        if points:
            cycles.append(points)
    if not cycles and not re.fullmatch(r"\s*(\(\s*\))?\s*", text):
        raise CatalogError(f"not cycle notation: {text!r}")
    if not cycles:
        return Perm.identity(degree)
    return Perm(tuple(Permutation(cycles, size=degree).array_form))


def split_generators(text: str) -> List[str]:
    """Split ``"(0 1),(2 3)(4 5)"`` on the commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


# ── Named groups ───────────────────────────────────────────────────


def _from_sympy(G) -> PermGroup:
    n = G.degree
    gens = []
    for g in G.generators:
        img = list(g.array_form)
        img += range(len(img), n)
        gens.append(Perm(tuple(img)))
    return closure(gens, n)


def _quaternion(order: int) -> PermGroup:
    k = order.bit_length() - 1
    if order != 1 << k or k < 3:
        raise CatalogError(f"Q{order}: generalized quaternion needs order 2^k with k >= 3")
    m = order // 2

    def mul(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
        (i, l), (j, r) = a, b
        if l == 0:
            return ((i + j) % m, r)
        if r == 0:
            return ((i - j) % m, 1)
        return ((i - j + m // 2) % m, 0)

    def idx(e: Tuple[int, int]) -> int:
        return e[0] + m * e[1]

    elems = [(i, l) for l in (0, 1) for i in range(m)]

    def regular(g: Tuple[int, int]) -> Perm:
        return Perm(tuple(idx(mul(g, h)) for h in elems))

    return closure([regular((1, 0)), regular((0, 1))], order)


def _sl23() -> PermGroup:
    vectors = [v for v in iproduct(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(M: Sequence[Sequence[int]]) -> Perm:
        return Perm(tuple(
            index[((M[0][0] * x + M[0][1] * y) % 3, (M[1][0] * x + M[1][1] * y) % 3)]
            for x, y in vectors
        ))

    return closure([act([[1, 1], [0, 1]]), act([[0, -1], [1, 0]])], len(vectors))


def _elementary(order: int) -> PermGroup:
    fac = factorint(order)
    if len(fac) != 1:
        raise CatalogError(f"E{order}: order must be a prime power")
    (p, k), = fac.items()
    return _from_sympy(AbelianGroup(*([p] * k)))


def _named(kind: str, n: int) -> PermGroup:
    if n < 1:
        raise CatalogError(f"{kind}{n}: order must be positive")
    if kind == "C":
        return _from_sympy(CyclicGroup(n))
    if kind == "D":
        if n % 2:
            raise CatalogError(f"D{n}: dihedral groups have even order")
        if n == 2:
            return _from_sympy(CyclicGroup(2))
        return _from_sympy(DihedralGroup(n // 2))
    if kind == "Q":
        return _quaternion(n)
    if kind == "S":
        return _from_sympy(SymmetricGroup(n))
    if kind == "A":
        if n < 3:
            return closure([], max(n, 1))
        return _from_sympy(AlternatingGroup(n))
    if kind == "E":
        if n == 1:
            raise CatalogError("E1: use Trivial")
        return _elementary(n)
    raise CatalogError(f"unknown group family {kind!r}")  # pragma: no cover


def _split_factors(text: str) -> List[str]:
    """Top-level ``x`` separated factors, respecting parentheses."""
    factors, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0:
            m = _PRODUCT_SEP.match(text, i)
            if m and m.start() == i:
                factors.append(text[start:i])
                start = i = m.end()
                continue
        i += 1
    factors.append(text[start:])
    return [f.strip() for f in factors]


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    return text


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


@lru_cache(maxsize=None)
def named_group(name: str) -> PermGroup:
    """A catalog group by name (cached; groups are immutable)."""
    text = _strip_parens(name)
    factors = _split_factors(text)
    if len(factors) > 1:
        groups = [named_group(f) for f in factors]
        return reduce(lambda a, b: direct_product(a, b).group, groups)
    if text.lower() in ("trivial", "1"):
        return closure([], 1)
    if _SL23_RE.match(text):
        return _sl23()
    m = _NAME_RE.match(text)
    if not m:
        raise CatalogError(f"unknown group name {name!r}")
    G = _named(m.group(1), int(m.group(2)))
    logger.debug("Catalog %s: order %d on %d points", text, G.order, G.degree)
    return G


# ── Inputs ─────────────────────────────────────────────────────────


def parse_group(text: str) -> PermGroup:
    """Catalog name, inline JSON, JSON file path or ``perm:`` spec."""
    text = text.strip()
    if text.startswith("{"):
        return codec.decode_group(codec.loads(text))
    if text.startswith("perm:"):
        try:
            _, deg, body = text.split(":", 2)
            degree = int(deg)
        except ValueError as exc:
            raise CatalogError(f"malformed perm spec {text!r}") from exc
        return closure([parse_cycles(g, degree) for g in split_generators(body)], degree)
    path = Path(text)
    if text.endswith(".json") or (path.suffix and path.is_file()):
        if not path.is_file():
            raise CatalogError(f"no such group file: {text}")
        return codec.decode_group(codec.loads(path.read_text(encoding="utf-8")))
    return named_group(text)


def parse_product(text: str) -> DirectProduct:
    """Exactly two top-level factors, e.g. ``"C2 x C4"`` or ``"(C2 x C2) x D8"``."""
    factors = _split_factors(_strip_parens(text))
    if len(factors) != 2:
        raise CatalogError(f"expected two factors, got {len(factors)} in {text!r}; use parentheses")
    return direct_product(parse_group(factors[0]), parse_group(factors[1]))


def parse_group_prime(text: str) -> Tuple[PermGroup, int]:
    """``"S4:2"`` → (S4, 2)."""
    name, sep, p = text.rpartition(":")
    if not sep or not p.strip().isdigit():
        raise CatalogError(f"expected <group>:<prime>, got {text!r}")
    return parse_group(name), int(p)


def parse_subgroup(G: GroupLike, spec: str, product: Optional[DirectProduct] = None) -> Subgroup:
    """Resolve a subgroup specifier relative to *G*.

    ``full``, ``trivial``, ``center``, ``diag`` (needs *product* with equal
    factors), ``sylow:<p>``, ``gens:<cycles>``, ``index:<i>`` into the
    canonical subgroup list, or JSON ``{"elements"|"generators": [[...]]}``.
    """
    spec = spec.strip()
    if spec == "full":
        return as_subgroup(G)
    if spec == "trivial":
        return trivial_subgroup(G)
    if spec == "center":
        return center(G)
    if spec == "diag":
        if product is None:
            raise CatalogError("diag needs a product of two equal factors")
        try:
            return product.diagonal()
        except ValueError as exc:
            raise CatalogError(str(exc)) from exc
    if spec.startswith("sylow:"):
        try:
            return sylow(G, int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise CatalogError(f"bad sylow specifier {spec!r}: {exc}") from exc
    if spec.startswith("gens:"):
        gens = [parse_cycles(g, G.degree) for g in split_generators(spec[5:])]
        return _checked(G, gens)
    if spec.startswith("index:"):
        subs = all_subgroups(G)
        try:
            i = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise CatalogError(f"bad index specifier {spec!r}") from exc
        if not 0 <= i < len(subs):
            raise CatalogError(f"index {i} out of range (0..{len(subs) - 1})")
        return subs[i]
    if spec.startswith("{") or spec.startswith("["):
        obj = codec.loads(spec)
        if isinstance(obj, list):
            obj = {"generators": obj}
        try:
            if "elements" in obj:
                els = [codec.decode_perm(e) for e in obj["elements"]]
                S = make_subgroup(G, els)
                if not all(a * b in S for a in S for b in S.generating_set):
                    raise CatalogError("element list is not closed")
                if not S.element_set <= G.element_set:
                    raise CatalogError("elements outside the group")
                return S
            return _checked(G, [codec.decode_perm(g) for g in obj["generators"]])
        except (KeyError, TypeError, CodecError) as exc:
            raise CatalogError(f"malformed subgroup JSON: {exc}") from exc
    raise CatalogError(f"unknown subgroup specifier {spec!r}")


def _checked(G: GroupLike, gens: List[Perm]) -> Subgroup:
    try:
        return generated_subgroup(G, gens)
    except ValueError as exc:
        raise CatalogError(str(exc)) from exc
