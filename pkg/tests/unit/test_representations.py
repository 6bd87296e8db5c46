import sys
from math import comb
from pathlib import Path

import pytest

root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from src.brauer.algebra import AlgebraElement
from src.brauer.diagrams import embed_diagram, generator_s, generator_u, identity
from src.brauer.errors import SemanticError
from src.brauer.representations import (
    ModuleElement,
    box_diagram_make,
    box_project,
    induced_act,
    induced_basis,
    lift,
    project_diagram,
    quotient_act,
    quotient_basis,
    sm_freeness_check,
    symmetric_induced_basis,
    tensor_iso_check,
)


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def unit_vector(n, m, ring):
    return box_project(identity(n), m, ring)


class TestInducedBasis:
    @pytest.mark.parametrize("n, m", [(1, 0), (2, 1), (3, 0), (3, 1), (3, 2), (3, 3), (4, 2)])
    def test_sizes(self, n, m):
        expected = comb(2 * n - m, m) * double_factorial(2 * n - 2 * m - 1)
        assert len(induced_basis(n, m)) == expected

    @pytest.mark.parametrize("n, m, size", [(3, 2, 3), (3, 1, 6), (3, 0, 6), (4, 2, 12)])
    def test_symmetric_sizes(self, n, m, size):
        assert len(symmetric_induced_basis(n, m)) == size

    def test_lift_projects_back(self):
        for b in induced_basis(3, 1):
            assert project_diagram(lift(b), 1) == b

    def test_bad_box_size(self):
        with pytest.raises(SemanticError):
            induced_basis(2, 3)


class TestBoxDiagramMake:
    def test_valid(self):
        b = box_diagram_make(3, 1, [(1, -1), (-3, 2)], [-2])
        assert b.pairs == ((-3, 2), (-1, 1))
        assert b.box == (-2,)
        assert b.free == 2

    @pytest.mark.parametrize(
        "pairs, box",
        [
            ([(1, -1), (-3, 2)], []),          # box too small
            ([(1, -1), (-3, 3)], [-2]),        # free label out of range
            ([(1, -1), (-2, 2)], [-2]),        # -2 used twice
        ],
    )
    def test_invalid(self, pairs, box):
        with pytest.raises(SemanticError):
            box_diagram_make(3, 1, pairs, box)


class TestInducedAction:
    def test_permutations_in_the_box_fix_the_unit(self, z0):
        v = unit_vector(3, 2, z0)
        s = AlgebraElement.basis(generator_s(3, 1), z0)
        assert induced_act(s, v) == v

    def test_cap_in_the_box_kills_the_unit(self, z2):
        v = unit_vector(3, 2, z2)
        u = AlgebraElement.basis(embed_diagram(generator_u(2, 1), 3), z2)
        assert induced_act(u, v).is_zero()

    def test_identity_acts_trivially(self, z2):
        one = AlgebraElement.one(3, z2)
        for b in induced_basis(3, 1):
            v = ModuleElement.basis(b, z2)
            assert induced_act(one, v) == v

    def test_action_is_associative(self, z2):
        gens = [generator_s(3, 1), generator_s(3, 2), generator_u(3, 1), generator_u(3, 2)]
        elements = [AlgebraElement.basis(g, z2) for g in gens]
        for b in induced_basis(3, 1):
            v = ModuleElement.basis(b, z2)
            for a in elements:
                for c in elements:
                    assert induced_act(a * c, v) == induced_act(a, induced_act(c, v))

    def test_strand_mismatch(self, z0):
        with pytest.raises(SemanticError):
            induced_act(AlgebraElement.one(2, z0), unit_vector(3, 1, z0))


class TestQuotients:
    def test_basis_is_complement_of_ideal(self):
        assert len(quotient_basis(3, [1, 2])) == 15 - 3

    def test_cap_on_the_subset_vanishes(self, z1):
        u = AlgebraElement.basis(generator_u(2, 1), z1)
        assert quotient_act(u, AlgebraElement.one(2, z1), [1, 2]).is_zero()

    def test_cap_elsewhere_survives(self, z1):
        u = AlgebraElement.basis(generator_u(3, 2), z1)
        image = quotient_act(u, AlgebraElement.one(3, z1), [1, 2])
        assert image == u


class TestOrbitStructure:
    @pytest.mark.parametrize("n, m", [(2, 1), (3, 1), (3, 2), (4, 2)])
    def test_free_orbits(self, n, m):
        report = sm_freeness_check(n, m)
        assert report.passed, report.failures

    @pytest.mark.parametrize("n, m, delta", [(3, 1, "0"), (3, 2, "0"), (3, 2, "2")])
    def test_tensor_iso(self, n, m, delta, ring_factory):
        report = tensor_iso_check(n, m, ring_factory("Z", delta))
        assert report.passed, report.failures
