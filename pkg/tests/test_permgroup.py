"""Tests for permutations, groups, morphisms, quotients and products."""

from __future__ import annotations

import pytest
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup

from fusionforge.catalog import named_group
from fusionforge.exceptions import CapExceeded, NotInjective, NotNormal
from fusionforge.permgroup import (
    GroupMorphism,
    Perm,
    all_subgroups,
    automorphisms,
    center,
    closure,
    conjugacy_class,
    conjugacy_classes_of_subgroups,
    conjugate,
    conjugate_test,
    direct_product,
    extend_homomorphism,
    generated_subgroup,
    inner_automorphisms,
    is_normal,
    isomorphisms,
    join,
    normal_subgroups,
    normalizer,
    quotient_group,
    sylow,
    trivial_subgroup,
)


# ── Helpers ────────────────────────────────────────────────────────


def _p(*images: int) -> Perm:
    return Perm(tuple(images))


def _involutions(G) -> int:
    return sum(1 for g in G.elements if g.order == 2)


# ── Tests ──────────────────────────────────────────────────────────


class TestPerm:
    def test_composition_is_right_to_left(self) -> None:
        a = _p(1, 0, 2)  # (0 1)
        b = _p(0, 2, 1)  # (1 2)
        assert (a * b)(0) == a(b(0))
        assert (a * b).images == (1, 2, 0)

    def test_inverse_and_order(self) -> None:
        c = _p(1, 2, 0)
        assert c * c.inverse == Perm.identity(3)
        assert c.order == 3
        assert (c ** 3).is_identity()
        assert c ** -1 == c.inverse

    def test_cycle_notation(self) -> None:
        assert str(_p(1, 2, 0, 4, 3)) == "(0 1 2)(3 4)"
        assert str(Perm.identity(4)) == "()"

    def test_from_images_rejects_non_permutations(self) -> None:
        with pytest.raises(ValueError):
            Perm.from_images([0, 0, 1])

    def test_identity_is_least(self) -> None:
        G = named_group("S3")
        assert G.identity == Perm.identity(3)
        assert G.elements == tuple(sorted(G.elements))


class TestClosure:
    def test_symmetric_group_order(self) -> None:
        G = closure([_p(1, 0, 2, 3), _p(1, 2, 3, 0)], 4)
        assert G.order == SymmetricGroup(4).order()

    def test_cap_exceeded(self) -> None:
        with pytest.raises(CapExceeded):
            closure([_p(1, 0, 2, 3), _p(1, 2, 3, 0)], 4, cap=10)

    def test_degree_mismatch(self) -> None:
        with pytest.raises(ValueError):
            closure([_p(1, 0)], 3)

    def test_generated_subgroup_outside_group(self) -> None:
        C3 = named_group("C3")
        with pytest.raises(ValueError):
            generated_subgroup(C3, [_p(1, 0, 2)])

    def test_generating_set_generates(self) -> None:
        G = named_group("S4")
        assert closure(list(G.generating_set), G.degree).elements == G.elements


@pytest.mark.parametrize(
    "name, subgroups, normal",
    [
        ("C2 x C2", 5, 5),
        ("S3", 6, 3),
        ("D8", 10, 6),
        ("Q8", 6, 6),
        ("A4", 10, 3),
        ("S4", 30, 4),
    ],
)
def test_subgroup_counts(name: str, subgroups: int, normal: int) -> None:
    G = named_group(name)
    subs = all_subgroups(G)
    assert len(subs) == subgroups
    assert len(normal_subgroups(G)) == normal
    assert len({S.elements for S in subs}) == len(subs)
    assert subs == sorted(subs, key=lambda S: (S.order, S.elements))


@pytest.mark.parametrize("name, classes", [("D8", 8), ("S4", 11), ("Q8", 6), ("S3", 4)])
def test_conjugacy_classes_of_subgroups(name: str, classes: int) -> None:
    assert len(conjugacy_classes_of_subgroups(named_group(name))) == classes


class TestSubgroupMachinery:
    def test_center(self) -> None:
        assert center(named_group("D8")).order == 2
        assert center(named_group("Q8")).order == 2
        assert center(named_group("S3")).order == 1

    def test_normality_matches_sympy(self) -> None:
        G = named_group("D8")
        oracle = DihedralGroup(4)
        assert G.order == oracle.order()
        assert sum(1 for S in all_subgroups(G) if is_normal(G, S)) == 6

    def test_conjugacy_class_of_transposition_subgroup(self) -> None:
        G = named_group("S4")
        T = generated_subgroup(G, [_p(1, 0, 2, 3)])
        cls = conjugacy_class(G, T)
        assert len(cls) == 6
        assert normalizer(G, T).order == 4

    def test_conjugate_test_returns_witness(self) -> None:
        G = named_group("S3")
        A = generated_subgroup(G, [_p(1, 0, 2)])
        B = generated_subgroup(G, [_p(0, 2, 1)])
        g = conjugate_test(G, A, B)
        assert g is not None
        assert conjugate(A, g) == B

    def test_join(self) -> None:
        G = named_group("S3")
        A = generated_subgroup(G, [_p(1, 0, 2)])
        B = generated_subgroup(G, [_p(0, 2, 1)])
        assert join(A, B).order == 6

    @pytest.mark.parametrize("name, p, order", [("S4", 2, 8), ("S4", 3, 3), ("A4", 2, 4), ("SL(2,3)", 2, 8)])
    def test_sylow_orders(self, name: str, p: int, order: int) -> None:
        P = sylow(named_group(name), p)
        assert P.order == order

    def test_sylow_of_sl23_is_quaternion(self) -> None:
        P = sylow(named_group("SL(2,3)"), 2)
        assert _involutions(P) == 1

    def test_sylow_rejects_non_prime(self) -> None:
        with pytest.raises(ValueError):
            sylow(named_group("S4"), 4)


class TestMorphisms:
    @pytest.mark.parametrize("name, count", [("C2 x C2", 6), ("D8", 8), ("Q8", 24), ("C8", 4), ("S3", 6)])
    def test_automorphism_counts(self, name: str, count: int) -> None:
        auts = automorphisms(named_group(name))
        assert len(auts) == count
        assert all(phi.is_bijective() and phi.is_homomorphism() for phi in auts)

    def test_inner_automorphisms(self) -> None:
        assert len(inner_automorphisms(named_group("D8"))) == 4
        assert len(inner_automorphisms(named_group("C4"))) == 1

    def test_no_isomorphisms_between_d8_and_q8(self) -> None:
        assert isomorphisms(named_group("D8"), named_group("Q8")) == []

    def test_isomorphism_cap(self) -> None:
        with pytest.raises(CapExceeded):
            automorphisms(named_group("S4"), cap=10)

    def test_subgroup_cap_bounds_group_order(self) -> None:
        # S4 has 30 subgroups; the cap is compared with |G| = 24
        S4 = named_group("S4")
        assert len(all_subgroups(S4, cap=24)) == 30
        with pytest.raises(CapExceeded, match="order 24"):
            all_subgroups(S4, cap=23)

    def test_extend_homomorphism_detects_inconsistency(self) -> None:
        C4 = named_group("C4")
        C3 = named_group("C3")
        g = C4.generating_set[0]
        c = C3.generating_set[0]
        assert extend_homomorphism([g], [c], C4.identity, C3.identity) is None

    def test_compose_restrict_kernel(self) -> None:
        G = named_group("S3")
        phi = automorphisms(G)[-1]
        assert phi.compose(phi.inverse()).table == G.elements
        A = generated_subgroup(G, [_p(1, 0, 2)])
        assert phi.restrict(A).source == A
        assert phi.kernel().order == 1

    def test_inverse_needs_injective(self) -> None:
        C2 = named_group("C2")
        T = closure([], 1)
        collapse = GroupMorphism(C2, T, (T.identity, T.identity))
        assert collapse.kernel().order == 2
        with pytest.raises(NotInjective):
            collapse.inverse()


class TestQuotients:
    def test_quotient_by_center(self) -> None:
        G = named_group("D8")
        Q = quotient_group(G, center(G))
        assert Q.group.order == 4
        assert Q.projection.is_homomorphism()
        for q in Q.group.elements:
            assert Q.projection(Q.lift(q)) == q

    def test_quotient_is_deterministic(self) -> None:
        G = named_group("S4")
        V = normal_subgroups(G)[1]
        assert quotient_group(G, V).group.elements == quotient_group(G, V).group.elements

    def test_non_normal_rejected(self) -> None:
        G = named_group("S3")
        with pytest.raises(NotNormal):
            quotient_group(G, generated_subgroup(G, [_p(1, 0, 2)]))


class TestDirectProduct:
    def test_split_and_pair(self) -> None:
        prod = direct_product(named_group("C2"), named_group("S3"))
        assert prod.group.order == 12
        for x in prod.group.elements:
            assert prod.pair(*prod.split(x)) == x

    def test_projections_and_kernels(self) -> None:
        G = named_group("C3")
        prod = direct_product(G, G)
        delta = prod.diagonal()
        assert delta.order == 3
        assert prod.project_left(delta).order == 3
        assert prod.kernel_left(delta).order == 1
        assert prod.product_of(G, trivial_subgroup(G)).order == 3

    def test_diagonal_needs_equal_factors(self) -> None:
        with pytest.raises(ValueError):
            direct_product(named_group("C2"), named_group("C3")).diagonal()

    def test_swap_flips(self) -> None:
        prod = direct_product(named_group("C2"), named_group("C3"))
        swapped = prod.swap()
        for x in prod.group.elements:
            a, b = prod.split(x)
            assert swapped.split(prod.flip_element(x)) == (b, a)
