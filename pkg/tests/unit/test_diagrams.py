import sys
from pathlib import Path
from unittest.mock import patch

import pytest

root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from src.brauer.diagrams import (
    diagram_compose,
    diagram_make,
    diagram_stats,
    embed_diagram,
    enumerate_diagrams,
    enumerate_permutations,
    flip,
    generator,
    generator_s,
    generator_u,
    generator_uab,
    identity,
)
from src.brauer.errors import BudgetExceeded, SemanticError

D1 = [(-1, 3), (-2, -4), (-3, -5), (1, 5), (2, 4)]
D2 = [(-1, -4), (-2, -5), (-3, 1), (2, 5), (3, 4)]


def count_loops(d1, d2):
    """Independent loop count: middle components where every node has two middle arcs."""
    parent = {k: k for k in range(1, d1.n + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    degree = {k: 0 for k in parent}
    for a, b in d1.pairs:
        if a > 0:
            parent[find(a)] = find(b)
            degree[a] += 1
            degree[b] += 1
    for a, b in d2.pairs:
        if b < 0:
            parent[find(-a)] = find(-b)
            degree[-a] += 1
            degree[-b] += 1
    components = {}
    for k in parent:
        components.setdefault(find(k), []).append(k)
    return sum(1 for nodes in components.values() if all(degree[k] == 2 for k in nodes))


class TestDiagramMake:
    def test_canonical_form(self):
        d = diagram_make(2, [(2, -1), (1, -2)])
        assert d.pairs == ((-2, 1), (-1, 2))

    @pytest.mark.parametrize(
        "n, pairs",
        [
            (2, [(-1, 1), (-1, 2)]),   # repeated label
            (2, [(-1, 1)]),            # wrong count
            (2, [(-1, 3), (-2, 2)]),   # out of range
            (2, [(0, 1), (-2, 2)]),    # zero label
            (-1, []),
        ],
    )
    def test_rejects_bad_input(self, n, pairs):
        with pytest.raises(SemanticError):
            diagram_make(n, pairs)

    def test_empty_diagram(self):
        d = diagram_make(0, [])
        assert d.pairs == ()
        assert d.is_identity


class TestCompose:
    def test_worked_product(self):
        # 1. Setup
        d1, d2 = diagram_make(5, D1), diagram_make(5, D2)

        # 2. Action
        result = diagram_compose(d1, d2)

        # 3. Assert
        assert result.diagram == diagram_make(5, [(-1, 1), (-2, -4), (-3, -5), (2, 5), (3, 4)])
        assert result.loops == 1

    def test_u_squared_closes_one_loop(self):
        u = generator_u(2, 1)
        result = diagram_compose(u, u)
        assert result.diagram == u
        assert result.loops == 1

    def test_strand_mismatch(self):
        with pytest.raises(SemanticError):
            diagram_compose(identity(2), identity(3))

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_identity_is_neutral(self, n):
        e = identity(n)
        for d in enumerate_diagrams(n):
            assert diagram_compose(e, d).diagram == d
            assert diagram_compose(d, e).diagram == d
            assert diagram_compose(d, e).loops == 0

    def test_associative_with_loops(self):
        diagrams = enumerate_diagrams(3)
        for a in diagrams:
            for b in diagrams:
                ab = diagram_compose(a, b)
                for c in diagrams:
                    bc = diagram_compose(b, c)
                    left = diagram_compose(ab.diagram, c)
                    right = diagram_compose(a, bc.diagram)
                    assert left.diagram == right.diagram
                    assert ab.loops + left.loops == bc.loops + right.loops

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_loop_count_matches_union_find(self, n):
        diagrams = enumerate_diagrams(n)
        for a in diagrams:
            for b in diagrams:
                assert diagram_compose(a, b).loops == count_loops(a, b), f"{a} * {b}"

    def test_flip_reverses_products(self):
        diagrams = enumerate_diagrams(3)
        for a in diagrams:
            for b in diagrams:
                ab = diagram_compose(a, b)
                ba = diagram_compose(flip(b), flip(a))
                assert ba.diagram == flip(ab.diagram)
                assert ba.loops == ab.loops


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105), (5, 945)])
    def test_double_factorial_counts(self, n, count):
        assert len(enumerate_diagrams(n)) == count

    def test_distinct_and_sorted(self):
        diagrams = enumerate_diagrams(4)
        assert len(set(diagrams)) == len(diagrams)
        assert [d.pairs for d in diagrams] == sorted(d.pairs for d in diagrams)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_arc_balance(self, n):
        for d in enumerate_diagrams(n):
            assert d.left_left == d.right_right

    def test_permutations(self):
        perms = enumerate_permutations(4)
        assert len(perms) == 24
        assert all(d.is_permutation for d in perms)

    def test_strand_bound(self):
        with patch("src.brauer.diagrams.get_max_strands", return_value=3):
            with pytest.raises(BudgetExceeded):
                enumerate_diagrams(4)


class TestGenerators:
    def test_swap_in_br2(self):
        assert generator_s(2, 1).pairs == ((-2, 1), (-1, 2))

    def test_u_is_uab_of_neighbours(self):
        assert generator_uab(3, 2, 3) == generator_u(3, 2)

    def test_dispatch(self):
        assert generator(3, "perm", [2, 1, 3]) == generator_s(3, 1)
        with pytest.raises(SemanticError):
            generator(3, "T", 1)

    @pytest.mark.parametrize("i", [0, 3])
    def test_index_range(self, i):
        with pytest.raises(SemanticError):
            generator_u(3, i)

    def test_embed_adds_straight_strands(self):
        d = embed_diagram(generator_u(2, 1), 4)
        assert d == generator_u(4, 1)
        with pytest.raises(SemanticError):
            embed_diagram(identity(3), 2)


class TestStats:
    def test_worked_matching(self):
        d = diagram_make(5, [(-1, -3), (-2, -4), (-5, 3), (1, 5), (2, 4)])
        stats = diagram_stats(d, X=[2, 4])
        assert stats.left_left == 2
        assert stats.right_right == 2
        assert not stats.is_permutation
        assert stats.right_arc_within_X is True

    def test_without_subset(self):
        assert diagram_stats(identity(3)).right_arc_within_X is None
