"""Tests for fusion systems, saturation and Alperin generation."""

from __future__ import annotations

import pytest

from fusionforge.catalog import named_group, parse_subgroup
from fusionforge import exceptions
from fusionforge.exceptions import CapExceeded, NotInjective, NotIsomorphism
from fusionforge.fusion import (
    FusionSystem,
    alperin_check,
    aut_p,
    automizer,
    compare_systems,
    f_class,
    fully_centralized,
    fully_normalized,
    hom_set,
    inner_criterion,
    is_fully_automized,
    is_receptive,
    is_subsystem,
    iso_check,
    saturation_check,
    strongly_closed,
    weakly_closed,
)
from fusionforge.config import CapsConfig
from fusionforge.permgroup import (
    GroupMorphism,
    automorphisms,
    center,
    cyclic_subgroup,
    isomorphisms,
    trivial_subgroup,
)


# ── Helpers ────────────────────────────────────────────────────────

V4_GENS = "gens:(0 1)(2 3),(0 2)(1 3)"


def _s4() -> FusionSystem:
    return FusionSystem.from_group(named_group("S4"), 2, label="S4")


def _unsaturated() -> FusionSystem:
    """``D8`` with its center fused to a non-central involution and nothing else."""
    P = named_group("D8")
    Z = center(P)
    s = next(g for g in P.elements if g.order == 2 and g not in Z)
    return FusionSystem.generated(P, 2, [GroupMorphism(Z, P, (P.identity, s))], label="bad")


# ── Tests ──────────────────────────────────────────────────────────


class TestConstruction:
    def test_from_group_uses_sylow(self) -> None:
        F = _s4()
        assert F.P.order == 8
        assert F.p == 2

    def test_not_prime(self) -> None:
        with pytest.raises(ValueError):
            FusionSystem.inner(named_group("C4"), 4)

    def test_not_p_group(self) -> None:
        with pytest.raises(ValueError):
            FusionSystem.inner(named_group("S3"), 2)

    def test_generator_must_be_injective(self) -> None:
        P = named_group("C4")
        collapse = GroupMorphism(P, P, (P.identity,) * 4)
        with pytest.raises(NotInjective):
            FusionSystem.generated(P, 2, [collapse])

    def test_repr_names_label(self) -> None:
        assert "S4" in repr(_s4())


class TestHoms:
    def test_trivial_subgroup_has_one_hom(self) -> None:
        F = _s4()
        assert len(F.homs_to_P(trivial_subgroup(F.P))) == 1

    def test_automizers(self) -> None:
        F = _s4()
        V = parse_subgroup(F.P, V4_GENS)
        assert len(automizer(F, F.P)) == 4
        assert len(automizer(F, V)) == 6
        assert len(aut_p(F, V)) == 2

    def test_c3_in_s3(self) -> None:
        F = FusionSystem.from_group(named_group("S3"), 3)
        assert len(automizer(F, F.P)) == 2
        assert all(m.witness is not None for m in automizer(F, F.P))

    def test_hom_set_respects_target(self) -> None:
        F = _s4()
        Z = center(F.P)
        V = parse_subgroup(F.P, V4_GENS)
        assert len(hom_set(F, Z, V)) == 3
        assert len(hom_set(F, Z, Z)) == 1

    def test_f_class(self) -> None:
        F = _s4()
        Z = center(F.P)
        assert len(f_class(F, Z)) == 3
        assert f_class(FusionSystem.inner(F.P, 2), Z) == [Z]

    def test_fully_centralized_and_normalized(self) -> None:
        F = _s4()
        Z = center(F.P)
        V = parse_subgroup(F.P, V4_GENS)
        other = cyclic_subgroup(F.P, next(x for x in V.elements if x != F.P.identity and x not in Z))
        assert fully_centralized(F, Z) and fully_normalized(F, Z)
        assert not fully_centralized(F, other)
        assert not fully_normalized(F, other)
        assert is_fully_automized(F, V)
        assert is_receptive(F, Z)

    def test_generated_matches_ambient(self) -> None:
        F = _s4()
        gens = [m.underlying for Q in F.subgroups for m in automizer(F, Q)]
        G = FusionSystem.generated(F.P, 2, gens)
        assert compare_systems(F, G).holds

    def test_inner_is_subsystem(self) -> None:
        F = _s4()
        inner = FusionSystem.inner(F.P, 2)
        assert is_subsystem(inner, F)
        assert not is_subsystem(F, inner)
        assert not compare_systems(inner, F).holds


class TestClosedness:
    def test_normal_four_group(self) -> None:
        F = _s4()
        V = parse_subgroup(F.P, V4_GENS)
        assert strongly_closed(F, V)
        assert weakly_closed(F, V)

    def test_center_not_closed(self) -> None:
        F = _s4()
        Z = center(F.P)
        assert not strongly_closed(F, Z)
        assert not weakly_closed(F, Z)
        assert strongly_closed(FusionSystem.inner(F.P, 2), Z)

    def test_outside_p(self) -> None:
        F = _s4()
        with pytest.raises(ValueError):
            strongly_closed(F, named_group("C3"))


class TestSaturation:
    @pytest.mark.parametrize("name, p", [("S4", 2), ("S3", 3), ("A4", 2), ("S3", 2), ("SL(2,3)", 2)])
    def test_group_systems_saturated(self, name: str, p: int) -> None:
        assert saturation_check(FusionSystem.from_group(named_group(name), p)).saturated

    @pytest.mark.parametrize("name", ["D8", "Q8", "C2 x C2", "C8"])
    def test_inner_saturated(self, name: str) -> None:
        assert saturation_check(FusionSystem.inner(named_group(name), 2)).holds

    def test_unsaturated_certificate(self) -> None:
        F = _unsaturated()
        verdict = saturation_check(F)
        assert not verdict.saturated
        assert verdict.axiom == "receptive"
        assert verdict.subgroup == center(F.P)
        assert verdict.morphism is not None

    def test_unsaturated_is_a_verdict(self) -> None:
        # failure to be saturated is reported by certificate, never raised
        verdict = saturation_check(_unsaturated())
        assert not verdict.holds
        assert not hasattr(exceptions, "NotSaturated")

    def test_cap(self) -> None:
        P = named_group("D8")
        F = FusionSystem.inner(P, 2, caps=CapsConfig(saturation_cap=4))
        with pytest.raises(CapExceeded):
            saturation_check(F)


class TestAlperin:
    @pytest.mark.parametrize("name, p", [("S4", 2), ("A4", 2), ("S3", 3)])
    def test_saturated_systems(self, name: str, p: int) -> None:
        assert alperin_check(FusionSystem.from_group(named_group(name), p)).holds


class TestIso:
    def test_identity(self) -> None:
        F = _s4()
        P = F.P
        assert iso_check(F, F, GroupMorphism.identity(P)).holds

    def test_outer_automorphism_moves_fusion(self) -> None:
        F = _s4()
        outer = next(phi for phi in automorphisms(F.P) if not inner_criterion(F.P, phi).direct)
        result = iso_check(F, F, outer)
        assert not result.holds
        assert result.mismatches

    def test_a4_differs_from_inner_four_group(self) -> None:
        F1 = FusionSystem.from_group(named_group("A4"), 2)
        F2 = FusionSystem.inner(named_group("C2 x C2"), 2)
        theta = isomorphisms(F1.P, F2.P)[0]
        assert not iso_check(F1, F2, theta).holds

    def test_s3_matches_c2(self) -> None:
        F1 = FusionSystem.from_group(named_group("S3"), 2)
        F2 = FusionSystem.from_group(named_group("C2"), 2)
        theta = isomorphisms(F1.P, F2.P)[0]
        assert iso_check(F1, F2, theta).holds

    def test_not_bijective(self) -> None:
        F = _s4()
        P = F.P
        with pytest.raises(NotIsomorphism):
            iso_check(F, F, GroupMorphism(P, P, (P.identity,) * P.order))


class TestInnerCriterion:
    @pytest.mark.parametrize("name, inner", [("D8", 4), ("Q8", 4), ("C2 x C2", 1), ("S3", 6)])
    def test_biset_agrees_with_conjugation(self, name: str, inner: int) -> None:
        P = named_group(name)
        verdicts = [inner_criterion(P, phi) for phi in automorphisms(P)]
        assert all(v.holds for v in verdicts)
        assert sum(v.inner for v in verdicts) == inner
