import random
import sys
from itertools import combinations
from math import gcd
from pathlib import Path
from unittest.mock import patch

import pytest
from sympy import Matrix

root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from src.complexes.chain_complex import SparseMatrix
from src.homology.snf import divisibility_chain, kernel_basis, matrix_rank, snf


def determinantal_factors(rows):
    """Invariant factors as ratios of gcds of k x k minors (sympy determinants)."""
    M = Matrix(rows)
    out = []
    previous = 1
    for k in range(1, min(M.shape) + 1):
        g = 0
        for r in combinations(range(M.rows), k):
            for c in combinations(range(M.cols), k):
                g = gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        out.append(g // previous)
        previous = g
    return tuple(out)


def random_rows(rng, nrows, ncols, density=0.5, spread=3):
    return [
        [rng.randint(-spread, spread) if rng.random() < density else 0 for _ in range(ncols)]
        for _ in range(nrows)
    ]


class TestDivisibilityChain:
    def test_gcd_lcm(self):
        assert divisibility_chain([2, 3]) == (1, 6)
        assert divisibility_chain([4, 6, 1]) == (1, 2, 12)

    def test_already_chain(self):
        assert divisibility_chain([2, 4, 8]) == (2, 4, 8)

    def test_signs_ignored(self):
        assert divisibility_chain([-2, 2]) == (2, 2)


class TestSNF:
    def test_identity(self):
        assert snf(SparseMatrix.from_dense([[1, 0], [0, 1]])).invariant_factors == (1, 1)

    def test_zero_matrix(self):
        res = snf(SparseMatrix.zero(3, 2))
        assert res.rank == 0
        assert res.torsion == ()

    def test_torsion(self):
        res = snf(SparseMatrix.from_dense([[2, 0], [0, 3]]))
        assert res.invariant_factors == (1, 6)
        assert res.torsion == (6,)
        assert res.determinant_part == 6

    def test_modulus(self):
        res = snf(SparseMatrix.from_dense([[2, 0], [0, 3]]), modulus=6)
        assert res.invariant_factors == (1,)

    def test_against_minors(self):
        rng = random.Random(2024)
        for _ in range(40):
            rows = random_rows(rng, rng.randint(1, 4), rng.randint(1, 5))
            expected = determinantal_factors(rows)
            assert snf(SparseMatrix.from_dense(rows)).invariant_factors == expected, rows

    def test_sparse_path_agrees_with_dense_path(self):
        rng = random.Random(11)
        for _ in range(25):
            rows = random_rows(rng, 6, 7, density=0.4, spread=6)
            dense = snf(SparseMatrix.from_dense(rows))
            with patch("src.homology.snf.DENSE_CELL_LIMIT", 0):
                sparse = snf(SparseMatrix.from_dense(rows))
            assert sparse == dense, rows

    def test_permutation_invariance(self):
        rng = random.Random(5)
        rows = random_rows(rng, 5, 6, spread=4)
        expected = snf(SparseMatrix.from_dense(rows)).invariant_factors
        for _ in range(20):
            perm_rows = rows[:]
            rng.shuffle(perm_rows)
            cols = list(range(6))
            rng.shuffle(cols)
            shuffled = [[r[c] for c in cols] for r in perm_rows]
            assert snf(SparseMatrix.from_dense(shuffled)).invariant_factors == expected


class TestRankAndKernel:
    def test_rank_mod_two(self, ring_factory):
        ring = ring_factory("Fp:2", "0")
        assert matrix_rank(SparseMatrix.from_dense([[1, 1], [1, 1]]), ring) == 1

    def test_rank_depends_on_characteristic(self, ring_factory, z0):
        m = SparseMatrix.from_dense([[2, 0], [0, 1]])
        assert matrix_rank(m, z0) == 2
        assert matrix_rank(m, ring_factory("Fp:2", "0")) == 1

    def test_rank_over_q(self, q1):
        m = SparseMatrix.from_dense([[1, 2], [2, 4]])
        assert matrix_rank(m, q1) == 1

    @pytest.mark.parametrize("ring_text", ["Z", "Q"])
    def test_kernel_vectors_are_killed(self, ring_text, ring_factory):
        ring = ring_factory(ring_text, "0")
        rng = random.Random(3)
        for _ in range(15):
            rows = random_rows(rng, 3, 5)
            A = SparseMatrix.from_dense(rows)
            kernel = kernel_basis(A, ring)
            assert len(kernel) == 5 - matrix_rank(A, ring)
            for v in kernel:
                assert A.apply(v, ring) == {}

    def test_integral_kernel_is_saturated(self, z0):
        A = SparseMatrix.from_dense([[2, 4]])
        (v,) = kernel_basis(A, z0)
        assert sorted(abs(x) for x in v.values()) == [1, 2]
