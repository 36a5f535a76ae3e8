"""Tests for the star product and the composition formula."""

from __future__ import annotations

import pytest

from fusionforge.bouc import (
    GroupTriple,
    associativity_check,
    bouc_rhs,
    covered_pairs,
    duality_check,
    exhaustive_pairs,
    star_coset_independence,
    star_product,
    verify_bouc,
)
from fusionforge.catalog import named_group
from fusionforge.gact import biset_from_subgroup, double_cosets
from fusionforge.goursat import diagonal, flip
from fusionforge.permgroup import all_subgroups, automorphisms, direct_product, intersection


# ── Helpers ────────────────────────────────────────────────────────


def _triple(g: str, h: str, k: str) -> GroupTriple:
    return GroupTriple.build(named_group(g), named_group(h), named_group(k))


# ── Tests ──────────────────────────────────────────────────────────


@pytest.mark.parametrize("g, h, k", [("C2", "C2", "C2"), ("C2", "C4", "C2"), ("C2 x C2", "C2", "C2")])
def test_formula_exhaustive(g: str, h: str, k: str) -> None:
    triple = _triple(g, h, k)
    for X, Y in exhaustive_pairs(triple):
        verdict = verify_bouc(triple, X, Y)
        assert verdict.holds, (X, Y)


def test_formula_on_s3() -> None:
    triple = _triple("C2", "S3", "C2")
    for X, Y in exhaustive_pairs(triple):
        assert verify_bouc(triple, X, Y).holds


def test_exhaustive_pairs_without_representatives() -> None:
    triple = _triple("C2", "C2", "C2")
    assert sum(1 for _ in exhaustive_pairs(triple, representatives=False)) == 25
    assert covered_pairs(triple) == 25


def test_representatives_cover_all_pairs() -> None:
    # conjugate subgroups give isomorphic bisets, so every pair agrees with its representative
    triple = _triple("C2", "S3", "C2")
    pairs = list(exhaustive_pairs(triple, representatives=False))
    assert len(pairs) == covered_pairs(triple)
    assert sum(1 for _ in exhaustive_pairs(triple)) < len(pairs)
    assert all(verify_bouc(triple, X, Y).holds for X, Y in pairs)


def test_triple_memoizes_per_subgroup() -> None:
    triple = _triple("C2", "C4", "C2")
    X = triple.GH.embed_right(triple.H)
    assert triple.left_biset(X) is triple.left_biset(X)
    assert triple.image_right(X) == triple.H
    assert _triple("C2", "C4", "C2").GK is triple.GK


def test_term_count_is_double_coset_count() -> None:
    triple = _triple("C2", "S3", "C2")
    X = triple.GH.embed_right(all_subgroups(triple.H)[1])
    Y = triple.HK.embed_left(all_subgroups(triple.H)[1])
    dec = bouc_rhs(triple, X, Y)
    p2X = triple.GH.project_right(X)
    p1Y = triple.HK.project_left(Y)
    assert len(dec.terms) == len(double_cosets(p2X, triple.H, p1Y)) == 2


def test_verdict_carries_both_sides() -> None:
    triple = _triple("C2", "C2", "C2")
    X = triple.GH.diagonal()
    verdict = verify_bouc(triple, X, triple.HK.diagonal())
    assert verdict.comparison.lhs == verdict.comparison.rhs
    assert verdict.comparison.lhs.orbit_count == 1
    assert verdict.decomposition.terms[0].star == triple.GK.diagonal()


class TestStarProduct:
    def test_sharp_times_full(self) -> None:
        # R^♯ ∗ (P₁×P₁) = π₂(R) × P₁
        P1, P2 = named_group("D8"), named_group("D8")
        product = direct_product(P1, P2)
        triple = GroupTriple.build(P2, P1, P1)
        for R in all_subgroups(product.group)[::7]:
            left = star_product(triple, flip(product, R), triple.HK.group)
            assert left == triple.GK.product_of(product.project_right(R), P1)

    def test_product_then_surjective(self) -> None:
        # (π₂(R)×P₁) ∗ R = π₂(R) × π₂(R) when π₁(R) = P₁
        P = named_group("C2 x C2")
        product = direct_product(P, P)
        triple = GroupTriple.build(P, P, P)
        for R in all_subgroups(product.group):
            if product.project_left(R).order != P.order:
                continue
            p2 = product.project_right(R)
            assert star_product(triple, triple.GH.product_of(p2, P), R) == triple.GK.product_of(p2, p2)

    def test_twisted_diagonal(self) -> None:
        # (S₂×R₁) ∗ Δ_φQ₁ = S₂ × φ(Q₁∩R₁)
        P = named_group("D8")
        triple = GroupTriple.build(P, P, P)
        subs = all_subgroups(P)
        phi = automorphisms(P)[3]
        for S2 in subs[::4]:
            for R1 in subs[::3]:
                for Q1 in subs[::5]:
                    twisted = diagonal(phi.restrict(Q1), triple.HK)
                    got = star_product(triple, triple.GH.product_of(S2, R1), twisted)
                    assert got == triple.GK.product_of(S2, phi.image(intersection(Q1, R1)))

    def test_coset_independence(self) -> None:
        triple = _triple("C2", "S3", "C2")
        X = triple.GH.embed_right(all_subgroups(triple.H)[1])
        Y = triple.HK.embed_left(all_subgroups(triple.H)[2])
        p2X = triple.GH.project_right(X)
        p1Y = triple.HK.project_left(Y)
        for t in double_cosets(p2X, triple.H, p1Y):
            assert star_coset_independence(triple, X, Y, t)


class TestBisetLaws:
    def test_associativity(self) -> None:
        G = named_group("C2")
        prod = direct_product(G, G)
        subs = all_subgroups(prod.group)
        for a in subs[::2]:
            for b in subs[1::2]:
                B1 = biset_from_subgroup(prod, a)
                B2 = biset_from_subgroup(prod, b)
                assert associativity_check(B1, B2, B1).holds

    def test_duality(self) -> None:
        G, H = named_group("S3"), named_group("C2")
        gh = direct_product(G, H)
        hg = direct_product(H, G)
        for X in all_subgroups(gh.group)[::3]:
            for Y in all_subgroups(hg.group)[::3]:
                assert duality_check(biset_from_subgroup(gh, X), biset_from_subgroup(hg, Y)).holds
