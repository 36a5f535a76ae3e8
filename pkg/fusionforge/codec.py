"""Canonical JSON encoding for every domain type, plus input decoding.

``encode`` turns domain objects into plain JSON data; ``dumps`` is the one
serialization path (sorted keys, fixed indentation) so that equal results
are byte-identical.  Decoders raise :class:`CodecError` on malformed input.
"""

from __future__ import annotations

import json
from functools import singledispatch
from typing import Any, Dict, List, Sequence

import numpy as np

from .bouc import BoucDecomposition, BoucTerm, BoucVerdict
from .exceptions import CodecError
from .explorer import CompatibilityReport
from .fusion import FusionMorphism, FusionSystem, InnerVerdict, SaturationVerdict, SystemComparison
from .gact import Comparison, GSet, TransitiveDecomposition
from .goursat import GoursatData, RStructureReport
from .permgroup import (
    GroupLike,
    GroupMorphism,
    Perm,
    PermGroup,
    Subgroup,
    closure,
    extend_homomorphism,
)
from .quotient import QuotientVerdict


# ── Decoding ───────────────────────────────────────────────────────


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc


def decode_perm(obj: Any) -> Perm:
    if not isinstance(obj, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in obj):
        raise CodecError(f"a permutation is a list of point images, got {obj!r}")
    try:
        return Perm.from_images(obj)
    except ValueError as exc:
        raise CodecError(str(exc)) from exc


def decode_group(obj: Any) -> PermGroup:
    """``{"degree": d, "generators": [[images], ...]}``."""
    if not isinstance(obj, dict) or "generators" not in obj:
        raise CodecError("a group is an object with 'degree' and 'generators'")
    gens = [decode_perm(g) for g in obj["generators"]]
    degree = obj.get("degree")
    if degree is None:
        if not gens:
            raise CodecError("'degree' is required when there are no generators")
        degree = gens[0].degree
    if not isinstance(degree, int) or degree < 1:
        raise CodecError(f"degree must be a positive integer, got {degree!r}")
    if any(g.degree != degree for g in gens):
        raise CodecError("every generator must have the group's degree")
    return closure(gens, degree)


def decode_morphism(source: GroupLike, target: GroupLike, obj: Any) -> GroupMorphism:
    """``{"images": [...]}`` over all source elements, or ``{"generators": [[x, y], ...]}``."""
    if not isinstance(obj, dict):
        raise CodecError("a morphism is an object with 'images' or 'generators'")
    if "images" in obj:
        table = tuple(decode_perm(y) for y in obj["images"])
        if len(table) != source.order:
            raise CodecError("'images' must list one image per source element")
        return GroupMorphism(source, target, table)
    pairs = [(decode_perm(x), decode_perm(y)) for x, y in obj.get("generators", [])]
    hom = extend_homomorphism([x for x, _ in pairs], [y for _, y in pairs], source.identity, target.identity)
    if hom is None or set(hom) != source.element_set:
        raise CodecError("generator images do not define a homomorphism on the whole source")
    return GroupMorphism.from_mapping(source, target, hom)


# ── Encoding ───────────────────────────────────────────────────────


@singledispatch
def encode(obj: Any) -> Any:
    raise TypeError(f"cannot encode {type(obj).__name__}")


@encode.register(type(None))
@encode.register(bool)
@encode.register(int)
@encode.register(str)
def _(obj: Any) -> Any:
    return obj


@encode.register(np.integer)
def _(obj: np.integer) -> int:
    return int(obj)


@encode.register(list)
@encode.register(tuple)
def _(obj: Sequence) -> List[Any]:
    return [encode(x) for x in obj]


@encode.register(dict)
def _(obj: Dict) -> Dict[str, Any]:
    return {str(k): encode(v) for k, v in obj.items()}


@encode.register(Perm)
def _(obj: Perm) -> List[int]:
    return list(obj.images)


@encode.register(PermGroup)
def _(obj: PermGroup) -> Dict[str, Any]:
    return {"degree": obj.degree, "order": obj.order, "generators": encode(obj.generating_set)}


@encode.register(Subgroup)
def _(obj: Subgroup) -> Dict[str, Any]:
    return {"order": obj.order, "generators": encode(obj.generating_set), "elements": encode(obj.elements)}


@encode.register(GroupMorphism)
def _(obj: GroupMorphism) -> Dict[str, Any]:
    return {
        "source_order": obj.source.order,
        "generators": [[encode(g), encode(obj(g))] for g in obj.source.generating_set],
        "images": encode(obj.table),
    }


@encode.register(FusionMorphism)
def _(obj: FusionMorphism) -> Dict[str, Any]:
    out = encode(obj.underlying)
    out["witness"] = encode(obj.witness)
    return out


@encode.register(FusionSystem)
def _(obj: FusionSystem) -> Dict[str, Any]:
    return {"label": obj.label, "p": obj.p, "P": encode(obj.P)}


@encode.register(GSet)
def _(obj: GSet) -> Dict[str, Any]:
    return {"group": encode(obj.group), "points": obj.size, "action": obj.table.tolist()}


@encode.register(TransitiveDecomposition)
def _(obj: TransitiveDecomposition) -> List[Dict[str, Any]]:
    return [{"stabilizer": encode(S.elements), "order": S.order, "multiplicity": m} for S, m in obj.parts]


@encode.register(Comparison)
def _(obj: Comparison) -> Dict[str, Any]:
    return {"check": obj.name, "holds": obj.holds, "lhs": encode(obj.lhs), "rhs": encode(obj.rhs)}


@encode.register(GoursatData)
def _(obj: GoursatData) -> Dict[str, Any]:
    theta = [[encode(obj.q1.lift(q)), encode(obj.q2.lift(t))] for q, t in zip(obj.q1.group.elements, obj.theta.table)]
    return {
        "p1X": encode(obj.p1X.elements),
        "p2X": encode(obj.p2X.elements),
        "X1": encode(obj.X1.elements),
        "X2": encode(obj.X2.elements),
        "theta": theta,
    }


@encode.register(RStructureReport)
def _(obj: RStructureReport) -> Dict[str, Any]:
    return {
        "R_order": obj.R.order,
        "surjective": list(obj.surjective),
        "goursat": encode(obj.goursat),
        "orders_equal": obj.orders_equal,
        "theta_verified": obj.theta_verified,
        "quotient_iso_verified": obj.quotient_iso_verified,
        "holds": obj.holds,
    }


@encode.register(BoucTerm)
def _(obj: BoucTerm) -> Dict[str, Any]:
    return {"t": encode(obj.rep), "star": encode(obj.star.elements), "inner": encode(obj.inner.elements)}


@encode.register(BoucDecomposition)
def _(obj: BoucDecomposition) -> Dict[str, Any]:
    return {"X": encode(obj.X.elements), "Y": encode(obj.Y.elements), "terms": encode(obj.terms)}


@encode.register(BoucVerdict)
def _(obj: BoucVerdict) -> Dict[str, Any]:
    out = encode(obj.comparison)
    out["decomposition"] = encode(obj.decomposition)
    return out


@encode.register(SaturationVerdict)
def _(obj: SaturationVerdict) -> Dict[str, Any]:
    certificate = None
    if not obj.saturated:
        certificate = {
            "axiom": obj.axiom,
            "subgroup": encode(obj.subgroup.elements),
            "morphism": encode(obj.morphism),
        }
    return {"saturated": obj.saturated, "certificate": certificate}


@encode.register(SystemComparison)
def _(obj: SystemComparison) -> Dict[str, Any]:
    return {"check": obj.name, "holds": obj.holds, "mismatches": [encode(S.elements) for S in obj.mismatches]}


@encode.register(QuotientVerdict)
def _(obj: QuotientVerdict) -> Dict[str, Any]:
    return {
        "check": obj.name,
        "holds": obj.holds,
        "details": {k: v for k, v in obj.details},
        "saturation": encode(obj.saturation),
    }


@encode.register(InnerVerdict)
def _(obj: InnerVerdict) -> Dict[str, Any]:
    return {
        "generators": [[encode(g), encode(obj.phi(g))] for g in obj.phi.source.generating_set],
        "biset": obj.biset,
        "direct": obj.direct,
        "holds": obj.holds,
    }


@encode.register(CompatibilityReport)
def _(obj: CompatibilityReport) -> Dict[str, Any]:
    return {
        "R": encode(obj.R),
        "projections_surjective": list(obj.projections_surjective),
        "goursat": encode(obj.goursat),
        "orders_equal": obj.orders_equal,
        "R1_strongly_closed": obj.R1_strongly_closed,
        "R2_strongly_closed": obj.R2_strongly_closed,
        "equivalence_holds": obj.equivalence_holds,
        "quotient_iso": obj.quotient_iso,
        "diagonal_iso": obj.diagonal_iso,
        "identity_shadow": obj.identity_shadow,
        "theorem_consistent": obj.theorem_consistent,
    }


def dumps(obj: Any) -> str:
    """The canonical text form: sorted keys, two-space indent."""
    return json.dumps(encode(obj), sort_keys=True, indent=2)


def render_human(data: Any, indent: int = 0) -> str:
    """Indented ``key: value`` rendering of encoded data; short lists stay inline."""
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_human(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
        return "\n".join(lines)
    if isinstance(data, list) and not _is_flat(data):
        return "\n".join(
            f"{pad}- \n{render_human(item, indent + 1)}" if isinstance(item, (dict, list)) else f"{pad}- {json.dumps(item)}"
            for item in data
        )
    return f"{pad}{json.dumps(data)}"


def _is_flat(value: Any) -> bool:
    if isinstance(value, dict):
        return not value
    return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and all(isinstance(x, int) for x in v))
               for v in value) and len(value) <= 16
