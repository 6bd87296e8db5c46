import sys
from math import factorial
from pathlib import Path

import pytest

root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from src.brauer.algebra import (
    AlgebraElement,
    augmentation,
    basis_count_check,
    elem_arith,
    embed,
    ideal_basis,
    ideal_structure_check,
    iota,
    multiply,
    pi,
    reduce_mod_ideal,
    relations_check,
)
from src.brauer.diagrams import CompositionResult, diagram_compose, enumerate_diagrams, generator_s, generator_u, identity
from src.brauer.errors import SemanticError


def element(ring, *terms):
    """element(ring, (diagram, coeff), ...)"""
    n = terms[0][0].n
    out = AlgebraElement.zero(n, ring)
    for d, c in terms:
        out = out + AlgebraElement.basis(d, ring).scale(c)
    return out


class TestArithmetic:
    def test_u_squared_is_delta_u(self, z2):
        u = AlgebraElement.basis(generator_u(2, 1), z2)
        assert u * u == u.scale(2)

    def test_u_squared_vanishes_at_delta_zero(self, z0):
        u = AlgebraElement.basis(generator_u(2, 1), z0)
        assert (u * u).is_zero()

    def test_unit(self, z0):
        one = AlgebraElement.one(3, z0)
        for d in enumerate_diagrams(3):
            x = AlgebraElement.basis(d, z0)
            assert one * x == x
            assert x * one == x

    def test_bilinear(self, ring_factory):
        ring = ring_factory("Q", "1/3")
        s = AlgebraElement.basis(generator_s(3, 1), ring)
        u = AlgebraElement.basis(generator_u(3, 2), ring)
        a = s + u.scale(2)
        b = u - s.scale(5)
        assert a * b == s * u - s * s.scale(5) + (u * u).scale(2) - (u * s).scale(10)

    def test_elem_arith_dispatch(self, z1):
        s = AlgebraElement.basis(generator_s(2, 1), z1)
        assert elem_arith(s, s, "mul") == AlgebraElement.one(2, z1)
        assert elem_arith(s, s, "add") == s.scale(2)
        assert elem_arith(s, 3, "scale") == s.scale(3)
        with pytest.raises(SemanticError):
            elem_arith(s, s, "pow")

    def test_mismatches_raise(self, z0, z1):
        with pytest.raises(SemanticError):
            AlgebraElement.one(2, z0) * AlgebraElement.one(3, z0)
        with pytest.raises(SemanticError):
            AlgebraElement.one(2, z0) + AlgebraElement.one(2, z1)

    def test_zero_coefficients_dropped(self, z0):
        s = AlgebraElement.basis(generator_s(2, 1), z0)
        assert (s - s).is_zero()
        assert len(s - s) == 0


class TestAugmentationAndMaps:
    def test_augmentation_ignores_non_permutations(self, z0):
        a = element(z0, (generator_s(2, 1), 1), (generator_u(2, 1), 2))
        assert augmentation(a) == 1

    def test_augmentation_is_multiplicative_on_basis(self, z2):
        diagrams = enumerate_diagrams(3)
        for d1 in diagrams:
            for d2 in diagrams:
                a, b = AlgebraElement.basis(d1, z2), AlgebraElement.basis(d2, z2)
                assert augmentation(a * b) == augmentation(a) * augmentation(b)

    def test_pi_after_iota(self, z0):
        x = element(z0, (generator_s(3, 1), 4), (identity(3), -1))
        assert pi(iota(x)) == x

    def test_iota_rejects_non_permutations(self, z0):
        with pytest.raises(SemanticError):
            iota(AlgebraElement.basis(generator_u(2, 1), z0))

    def test_embed_is_multiplicative(self, z2):
        diagrams = enumerate_diagrams(2)
        for d1 in diagrams:
            for d2 in diagrams:
                a, b = AlgebraElement.basis(d1, z2), AlgebraElement.basis(d2, z2)
                assert embed(a * b, 4) == embed(a, 4) * embed(b, 4)


class TestRelations:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_relations_hold(self, n, z0):
        report = relations_check(n, z0)
        assert report.passed, report.failures

    def test_relations_hold_for_nonzero_delta(self, ring_factory):
        assert relations_check(3, ring_factory("Zmod:6", "4")).passed

    def test_corrupted_product_is_detected(self, z0):
        # 1. Setup: a product that forgets closed loops
        def forgetful(d1, d2):
            return CompositionResult(diagram_compose(d1, d2).diagram, 0)

        # 2. Action
        report = relations_check(5, z0, compose=forgetful)

        # 3. Assert
        failed = {row.check for row in report.failures}
        assert "U_i^2 = delta U_i" in failed
        assert not report.passed

    def test_small_n_has_no_rows(self, z0):
        report = relations_check(1, z0)
        assert report.rows == []
        assert report.notes

    def test_bound(self, z0):
        with pytest.raises(SemanticError):
            relations_check(7, z0)


class TestBasisCounts:
    def test_worked_product_and_dimensions(self):
        report = basis_count_check(5)
        assert report.passed, report.failures
        worked = report.rows[0]
        assert worked.check == "worked product"
        assert worked.computed == "{{-5,-3},{-4,-2},{-1,1},{2,5},{3,4}}, loops=1"
        assert [r.computed for r in report.rows[1:]] == [1, 1, 3, 15, 105, 945]

    def test_bound(self):
        with pytest.raises(SemanticError):
            basis_count_check(7)


class TestIdeals:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_ideal_of_everything(self, n):
        double_factorial = 1
        for k in range(2 * n - 1, 0, -2):
            double_factorial *= k
        J = ideal_basis(n, range(1, n + 1))
        assert len(J) == double_factorial - factorial(n)

    def test_empty_and_singleton_subsets(self):
        assert len(ideal_basis(3, [])) == 0
        assert len(ideal_basis(3, [2])) == 0

    def test_two_element_subset(self):
        # diagrams of Br_3 pairing right nodes 1 and 2
        J = ideal_basis(3, [1, 2])
        assert len(J) == 3
        assert generator_u(3, 1) in J
        assert generator_u(3, 2) not in J

    def test_bad_subset(self):
        with pytest.raises(SemanticError):
            ideal_basis(3, [0, 1])

    def test_reduce_mod_ideal(self, z0):
        a = element(z0, (generator_u(3, 1), 2), (generator_u(3, 2), 3))
        reduced = reduce_mod_ideal(a, [1, 2])
        assert reduced == element(z0, (generator_u(3, 2), 3))

    def test_ideal_is_a_left_ideal(self, z1):
        J = ideal_basis(3, [1, 3])
        for d in enumerate_diagrams(3):
            for j in J.basis:
                assert diagram_compose(d, j).diagram in J

    @pytest.mark.parametrize("n", [2, 3])
    def test_structure_report(self, n, z0):
        report = ideal_structure_check(n, z0)
        assert report.passed, report.failures
        assert report.rows
