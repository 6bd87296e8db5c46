"""
Sparse exact elimination: Smith normal form over Z, ranks over fields,
kernel bases. Unit pivots are eliminated first (cheapest fill-in first);
whatever survives is diagonalised with extended-gcd moves, densely on
numpy object arrays when small and sparsely otherwise.
"""
import sys
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from tqdm import tqdm

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingKind, RingSpec, ring_make, xgcd
from src.brauer.errors import SemanticError
from src.complexes.chain_complex import Column, SparseMatrix

# --- CONFIGURATION ---
DENSE_CELL_LIMIT = 250_000   # remainder size handed to the dense diagonaliser
PROGRESS_MIN_COLUMNS = 2_000

INTEGERS = ring_make(RingSpec(RingKind.INTEGERS, 0))


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d_1 | d_2 | ... | d_r, all positive."""

    invariant_factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def determinant_part(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def divisibility_chain(values: Sequence[int]) -> Tuple[int, ...]:
    """diag(a, b) ~ diag(gcd, lcm); repeated until each entry divides the next."""
    ones = sum(1 for v in values if abs(v) == 1)
    rest = sorted(abs(v) for v in values if abs(v) > 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    rest = sorted(rest)
    return (1,) * (ones + sum(1 for v in rest if v == 1)) + tuple(v for v in rest if v > 1)


class _SparseReducer:
    """Column-major sparse matrix under unimodular row and column moves."""

    def __init__(self, matrix: SparseMatrix, ring: Ring, progress: bool = False, label: str = "SNF"):
        self.ring = ring
        if ring.is_modular:
            reduced = ({r: ring.canon(v) for r, v in col.items() if ring.canon(v) != 0} for col in matrix.columns)
            self.cols: Dict[int, Column] = {c: col for c, col in enumerate(reduced) if col}
        else:
            self.cols = {c: dict(col) for c, col in enumerate(matrix.columns) if col}
        self.rows: Dict[int, Set[int]] = defaultdict(set)
        for c, col in self.cols.items():
            for r in col:
                self.rows[r].add(c)
        self.diagonal: List = []
        self.progress = progress and len(self.cols) >= PROGRESS_MIN_COLUMNS
        self.label = label

    # col[target] += factor * col[source]
    def _axpy(self, target: int, factor, source: int) -> None:
        ring = self.ring
        tv = self.cols[target]
        for r, v in self.cols[source].items():
            new = ring.add(tv.get(r, ring.zero), ring.mul(factor, v))
            if new == 0:
                if r in tv:
                    del tv[r]
                    self.rows[r].discard(target)
            else:
                if r not in tv:
                    self.rows[r].add(target)
                tv[r] = new

    def _set(self, c: int, r: int, value) -> None:
        col = self.cols[c]
        if value == 0:
            if r in col:
                del col[r]
                self.rows[r].discard(c)
        else:
            if r not in col:
                self.rows[r].add(c)
            col[r] = value

    def _drop(self, c: int, p: int) -> None:
        for r in self.cols.pop(c):
            self.rows[r].discard(c)
        self.rows.pop(p, None)

    def _prune(self) -> None:
        for c in [c for c, col in self.cols.items() if not col]:
            del self.cols[c]

    def _pivot_unit(self, c: int, p: int) -> None:
        ring = self.ring
        inv = ring.inverse(self.cols[c][p])
        for k in list(self.rows[p]):
            if k == c:
                continue
            self._axpy(k, ring.neg(ring.mul(self.cols[k][p], inv)), c)
        self.diagonal.append(self.cols[c][p])
        self._drop(c, p)

    def unit_pass(self) -> None:
        """Pivot on units, shortest columns first, least-populated rows first."""
        bar = tqdm(total=len(self.cols), desc=f"{self.label}:units", ascii=True,
                   dynamic_ncols=True, disable=not self.progress)
        progress = True
        while progress:
            progress = False
            self._prune()
            for c in sorted(self.cols, key=lambda c: len(self.cols[c])):
                col = self.cols.get(c)
                if not col:
                    continue
                best = None
                for r, v in col.items():
                    if self.ring.is_unit(v):
                        cnt = len(self.rows[r])
                        if best is None or cnt < best[0]:
                            best = (cnt, r)
                if best is None:
                    continue
                self._pivot_unit(c, best[1])
                bar.update(1)
                progress = True
        self._prune()
        bar.close()

    # --- general pivots over Z ---
    def _combine_cols(self, c: int, k: int, x: int, y: int, u: int, v: int) -> None:
        """(col_c, col_k) <- (x col_c + y col_k, u col_c + v col_k)."""
        cc, ck = self.cols[c], self.cols[k]
        rows = set(cc) | set(ck)
        new_c = {r: x * cc.get(r, 0) + y * ck.get(r, 0) for r in rows}
        new_k = {r: u * cc.get(r, 0) + v * ck.get(r, 0) for r in rows}
        for r in rows:
            self._set(c, r, new_c[r])
            self._set(k, r, new_k[r])

    def _combine_rows(self, p: int, q: int, x: int, y: int, u: int, v: int) -> None:
        """(row_p, row_q) <- (x row_p + y row_q, u row_p + v row_q)."""
        for k in list(self.rows[p] | self.rows[q]):
            col = self.cols[k]
            a, b = col.get(p, 0), col.get(q, 0)
            self._set(k, p, x * a + y * b)
            self._set(k, q, u * a + v * b)

    def _pivot_general(self, c: int, p: int) -> None:
        while True:
            for k in list(self.rows[p]):
                if k == c or k not in self.cols:
                    continue
                a, b = self.cols[c][p], self.cols[k].get(p, 0)
                if b == 0:
                    continue
                if b % a == 0:
                    self._axpy(k, -(b // a), c)
                else:
                    g, x, y = xgcd(a, b)
                    self._combine_cols(c, k, x, y, -b // g, a // g)
            a = self.cols[c][p]
            bad = [q for q, v in self.cols[c].items() if q != p and v % a != 0]
            if not bad:
                break
            q = bad[0]
            b = self.cols[c][q]
            g, x, y = xgcd(a, b)
            self._combine_rows(p, q, x, y, -b // g, a // g)
        self.diagonal.append(self.cols[c][p])
        self._drop(c, p)

    def general_pass(self) -> None:
        bar = tqdm(total=len(self.cols), desc=f"{self.label}:gcd", ascii=True,
                   dynamic_ncols=True, disable=not self.progress)
        self._prune()
        while self.cols:
            c, p = min(
                ((c, r) for c, col in self.cols.items() for r in col),
                key=lambda cr: (abs(self.cols[cr[0]][cr[1]]), len(self.cols[cr[0]]), len(self.rows[cr[1]])),
            )
            self._pivot_general(c, p)
            self._prune()
            bar.update(1)
        bar.close()

    def remainder_shape(self) -> Tuple[List[int], List[int]]:
        rows = sorted({r for col in self.cols.values() for r in col})
        return rows, sorted(self.cols)


def exgcd_matrix(a: int, b: int) -> np.ndarray:
    """Determinant-one M with M @ [a, b] = [gcd(a, b), 0]."""
    g, x, y = xgcd(a, b)
    if g == 0:
        return np.array([[1, 0], [0, 1]], dtype=object)
    return np.array([[x, y], [-b // g, a // g]], dtype=object)


def dense_diagonal(D: np.ndarray) -> List[int]:
    """Diagonalise an object-dtype integer matrix with 2x2 unimodular moves."""
    D = D.copy()
    m, n = D.shape
    out: List[int] = []
    k = 0
    while k < min(m, n):
        block = D[k:, k:]
        nz = np.argwhere(block != 0)
        if nz.size == 0:
            break
        i, j = min(nz, key=lambda ij: abs(block[ij[0], ij[1]]))
        D[[k, k + i]] = D[[k + i, k]]
        D[:, [k, k + j]] = D[:, [k + j, k]]
        while True:
            for i in range(k + 1, m):
                if D[i, k] != 0:
                    M = exgcd_matrix(D[k, k], D[i, k])
                    D[[k, i], k:] = M.dot(D[[k, i], k:])
            for j in range(k + 1, n):
                if D[k, j] != 0:
                    M = exgcd_matrix(D[k, k], D[k, j])
                    D[k:, [k, j]] = D[k:, [k, j]].dot(M.T)
            if all(D[i, k] == 0 for i in range(k + 1, m)):
                break
        out.append(abs(D[k, k]))
        k += 1
    return out


def snf(matrix: SparseMatrix, modulus: Optional[int] = None, progress: bool = False) -> SNFResult:
    """
    Invariant factors of an integer matrix. With `modulus` m the matrix is
    read over Z/m: factors become gcd(d, m) and those equal to m vanish.
    """
    reducer = _SparseReducer(matrix, INTEGERS, progress=progress)
    reducer.unit_pass()
    rows, cols = reducer.remainder_shape()
    if rows and len(rows) * len(cols) <= DENSE_CELL_LIMIT:
        index = {r: i for i, r in enumerate(rows)}
        D = np.zeros((len(rows), len(cols)), dtype=object)
        for j, c in enumerate(cols):
            for r, v in reducer.cols[c].items():
                D[index[r], j] = v
        reducer.diagonal.extend(dense_diagonal(D))
    elif rows:
        reducer.general_pass()
    factors = divisibility_chain([int(v) for v in reducer.diagonal])
    if modulus is not None:
        reduced = [gcd(d, modulus) for d in factors]
        factors = divisibility_chain([d for d in reduced if d != modulus])
    return SNFResult(factors)


def matrix_rank(matrix: SparseMatrix, ring: Ring, progress: bool = False) -> int:
    """Rank over Z (via snf) or over a field (all nonzero entries are pivots)."""
    if ring.kind is RingKind.INTEGERS:
        return snf(matrix, progress=progress).rank
    if not ring.is_field:
        raise SemanticError(f"rank over {ring.name} is not defined here")
    reducer = _SparseReducer(matrix, ring, progress=progress, label="rank")
    reducer.unit_pass()
    return len(reducer.diagonal)


def kernel_basis(matrix: SparseMatrix, ring: Ring) -> List[Column]:
    """
    Basis of {v : A v = 0} (a Z-basis over Z) by column echelon reduction
    with every move recorded on the identity.
    """
    integral = ring.kind is RingKind.INTEGERS
    if not integral and not ring.is_field:
        raise SemanticError(f"kernel over {ring.name} is not supported")
    pivots: Dict[int, Tuple[Column, Column]] = {}
    kernel: List[Column] = []

    def axpy(target: Column, factor, source: Column) -> Column:
        out = dict(target)
        for r, v in source.items():
            s = ring.add(out.get(r, ring.zero), ring.mul(factor, v))
            if s == 0:
                out.pop(r, None)
            else:
                out[r] = s
        return out

    def combine(x, y, u, v, p: Column, q: Column) -> Tuple[Column, Column]:
        rows = set(p) | set(q)
        first = {r: x * p.get(r, 0) + y * q.get(r, 0) for r in rows}
        second = {r: u * p.get(r, 0) + v * q.get(r, 0) for r in rows}
        return {r: e for r, e in first.items() if e}, {r: e for r, e in second.items() if e}

    for c, col in enumerate(matrix.columns):
        vec, combo = dict(col), {c: ring.one}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                pivots[lead] = (vec, combo)
                break
            pv, pc = pivots[lead]
            a, b = pv[lead], vec[lead]
            if not integral:
                f = ring.neg(ring.div(b, a))
                vec, combo = axpy(vec, f, pv), axpy(combo, f, pc)
            elif b % a == 0:
                vec, combo = axpy(vec, -(b // a), pv), axpy(combo, -(b // a), pc)
            else:
                g, x, y = xgcd(a, b)
                new_pv, vec = combine(x, y, -b // g, a // g, pv, vec)
                new_pc, combo = combine(x, y, -b // g, a // g, pc, combo)
                pivots[lead] = (new_pv, new_pc)
        else:
            kernel.append(combo)
    return kernel
