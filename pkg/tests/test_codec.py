"""Tests for JSON encoding and decoding."""

from __future__ import annotations

import json

import numpy as np
import pytest

from fusionforge.catalog import named_group
from fusionforge.codec import (
    decode_group,
    decode_morphism,
    decode_perm,
    dumps,
    encode,
    loads,
    render_human,
)
from fusionforge.exceptions import CodecError
from fusionforge.fusion import FusionSystem, SaturationVerdict, saturation_check
from fusionforge.gact import mackey_check, regular
from fusionforge.goursat import decompose
from fusionforge.permgroup import GroupMorphism, Perm, all_subgroups, center, direct_product


# ── Tests ──────────────────────────────────────────────────────────


class TestDecode:
    def test_loads_rejects_garbage(self) -> None:
        with pytest.raises(CodecError):
            loads("{")

    def test_perm(self) -> None:
        assert decode_perm([1, 2, 0]) == Perm((1, 2, 0))

    @pytest.mark.parametrize("bad", [[0, 0], "012", [True, False], [0, 1.0], None])
    def test_bad_perm(self, bad: object) -> None:
        with pytest.raises(CodecError):
            decode_perm(bad)

    def test_group(self) -> None:
        G = decode_group({"generators": [[1, 2, 0]]})
        assert (G.degree, G.order) == (3, 3)
        assert decode_group({"degree": 2, "generators": []}).order == 1

    @pytest.mark.parametrize(
        "bad",
        [
            [],
            {"degree": 3},
            {"generators": []},
            {"degree": 0, "generators": []},
            {"degree": 4, "generators": [[1, 0, 2]]},
        ],
    )
    def test_bad_group(self, bad: object) -> None:
        with pytest.raises(CodecError):
            decode_group(bad)

    def test_morphism_from_generators(self) -> None:
        G = named_group("S3")
        gens = [[list(g.images), list(g.images)] for g in G.generating_set]
        assert decode_morphism(G, G, {"generators": gens}) == GroupMorphism.identity(G)

    def test_morphism_from_images(self) -> None:
        G = named_group("C3")
        phi = decode_morphism(G, G, {"images": [list(g.inverse.images) for g in G.elements]})
        assert phi.is_bijective() and phi.is_homomorphism()

    def test_morphism_not_homomorphism(self) -> None:
        C3, S3 = named_group("C3"), named_group("S3")
        g = C3.generating_set[0]
        with pytest.raises(CodecError):
            decode_morphism(C3, S3, {"generators": [[list(g.images), [1, 0, 2]]]})

    def test_morphism_partial(self) -> None:
        G = named_group("C2 x C2")
        g = G.generating_set[0]
        with pytest.raises(CodecError):
            decode_morphism(G, G, {"generators": [[list(g.images), list(g.images)]]})

    def test_morphism_wrong_image_count(self) -> None:
        G = named_group("C3")
        with pytest.raises(CodecError):
            decode_morphism(G, G, {"images": [[0, 1, 2]]})


class TestEncode:
    def test_scalars(self) -> None:
        assert encode(np.int64(3)) == 3
        assert encode((1, "a", None, True)) == [1, "a", None, True]

    def test_unknown_type(self) -> None:
        with pytest.raises(TypeError):
            encode(object())

    def test_group(self) -> None:
        data = encode(named_group("S3"))
        assert data["order"] == 6
        assert data["degree"] == 3

    def test_gset(self) -> None:
        data = encode(regular(named_group("C3")))
        assert data["group"]["order"] == 3
        assert "group_order" not in data
        assert data["points"] == 3
        assert np.array(data["action"]).shape == (3, 3)

    def test_goursat_of_diagonal(self) -> None:
        G = named_group("C2")
        product = direct_product(G, G)
        data = encode(decompose(product, product.diagonal()))
        assert data["X1"] == data["X2"] == [[0, 1]]
        assert len(data["theta"]) == 2

    def test_comparison(self) -> None:
        G = named_group("S3")
        H = all_subgroups(G)[1]
        data = encode(mackey_check(G, H, H))
        assert data["check"] == "mackey"
        assert data["holds"] is True
        assert data["lhs"] == data["rhs"]

    def test_saturation_certificate(self) -> None:
        P = named_group("D8")
        Z = center(P)
        s = next(g for g in P.elements if g.order == 2 and g not in Z)
        F = FusionSystem.generated(P, 2, [GroupMorphism(Z, P, (P.identity, s))])
        data = encode(saturation_check(F))
        assert data["saturated"] is False
        assert data["certificate"]["axiom"] == "receptive"
        assert data["certificate"]["subgroup"] == encode(Z.elements)
        assert encode(SaturationVerdict(True)) == {"saturated": True, "certificate": None}


class TestDumps:
    def test_sorted_and_stable(self) -> None:
        F = FusionSystem.from_group(named_group("S4"), 2, label="S4")
        text = dumps(saturation_check(F))
        assert text == dumps(saturation_check(FusionSystem.from_group(named_group("S4"), 2, label="S4")))
        assert list(json.loads(text)) == ["certificate", "saturated"]

    def test_indentation(self) -> None:
        assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}'


class TestRenderHuman:
    def test_nested(self) -> None:
        assert render_human({"b": 1, "a": {"c": [1, 2]}}) == "a:\n  c: [1, 2]\nb: 1"

    def test_list_of_objects(self) -> None:
        assert render_human([{"x": 1}]) == "- \n  x: 1"

    def test_scalar(self) -> None:
        assert render_human(True) == "true"
