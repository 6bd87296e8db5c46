"""
The complex C_n with (C_n)_p = Br_n (x)_{Br_{n-p-1}} t, its splitting by
left-to-left count and the filtration by box-free right arcs.
"""
import sys
from functools import lru_cache
from math import comb, prod
from pathlib import Path
from typing import List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring
from src.brauer.diagrams import BrauerDiagram, _check_bound, diagram_compose, generator_s, identity
from src.brauer.errors import ComplexError, SemanticError
from src.brauer.representations import BoxDiagram, induced_basis, lift, project_diagram
from src.complexes.chain_complex import ChainComplex, SparseMatrix


@lru_cache(maxsize=None)
def _face_permutation(n: int, m: int, i: int) -> BrauerDiagram:
    # S_{m+i} S_{m+i-1} ... S_{m+1}: free node i (0-based) lands on node m+1
    w = identity(n)
    for k in range(m + i, m, -1):
        w = diagram_compose(w, generator_s(n, k)).diagram
    return w


def _face_images(n: int, p: int, i: int) -> List[Optional[BoxDiagram]]:
    m = n - p - 1
    w = _face_permutation(n, m, i)
    return [project_diagram(diagram_compose(lift(b), w).diagram, m + 1) for b in induced_basis(n, m)]


def face_map(n: int, p: int, i: int, ring: Ring) -> SparseMatrix:
    """d_i^p : Br_n (x)_{Br_{n-p-1}} t -> Br_n (x)_{Br_{n-p}} t."""
    if not (0 <= i <= p <= n - 1):
        raise SemanticError(f"face d_{i}^{p} needs 0 <= i <= p <= {n - 1}")
    target = {b: r for r, b in enumerate(induced_basis(n, n - p))}
    one = ring.assembly.one
    images = _face_images(n, p, i)
    cols = [{target[b]: one} if b is not None else {} for b in images]
    return SparseMatrix(len(target), len(images), cols)


def _boundary(n: int, p: int, ring: Ring) -> SparseMatrix:
    arith = ring.assembly
    target = {b: r for r, b in enumerate(induced_basis(n, n - p))}
    source = induced_basis(n, n - p - 1)
    cols = [dict() for _ in source]
    for i in range(p + 1):
        sign = arith.one if i % 2 == 0 else arith.neg(arith.one)
        for c, b in enumerate(_face_images(n, p, i)):
            if b is None:
                continue
            r = target[b]
            s = arith.add(cols[c].get(r, arith.zero), sign)
            if s == 0:
                cols[c].pop(r, None)
            else:
                cols[c][r] = s
    return SparseMatrix(len(target), len(source), cols)


def cn_rank(n: int, p: int) -> int:
    """C(2n-m, m) (2n-2m-1)!! with m = n-p-1."""
    m = n - p - 1
    if not 0 <= m <= n:
        return 0
    return comb(2 * n - m, m) * prod(range(2 * n - 2 * m - 1, 0, -2))


def build_cn(n: int, ring: Ring, top: Optional[int] = None) -> ChainComplex:
    """
    C_n in degrees -1..n-1. With `top`, only degrees up to `top` are built
    and homology is exact through top - 1.
    """
    if n < 1:
        raise SemanticError(f"C_n needs n >= 1, got {n}")
    _check_bound(n)
    hi = n - 1 if top is None else min(top, n - 1)
    if hi < -1:
        raise SemanticError(f"top degree {top} below -1")
    exact = n - 1 if hi == n - 1 else hi - 1
    ranks = {p: len(induced_basis(n, n - p - 1)) for p in range(-1, hi + 1)}
    boundaries = {p: _boundary(n, p, ring) for p in range(0, hi + 1)}
    labels = {p: induced_basis(n, n - p - 1) for p in range(-1, hi + 1)}
    return ChainComplex(ring, -1, hi, ranks, boundaries, labels, exact, name=f"C_{n}")


def _column_labels(C: ChainComplex, p: int):
    mat = C.boundary(p)
    for c, col in enumerate(mat.columns):
        yield C.labels[p][c], [C.labels[p - 1][r] for r in col]


def split_cn(C: ChainComplex) -> List[ChainComplex]:
    """C_n = C_n^(0) + ... + C_n^(floor(n/2)) by left-to-left count."""
    if C.labels is None:
        raise ComplexError("split_cn needs a labelled C_n")
    for p in range(C.lo + 1, C.hi + 1):
        for src, rows in _column_labels(C, p):
            if any(r.left_left != src.left_left for r in rows):
                raise ComplexError(f"boundary mixes left-to-left counts at {src}")
    n = C.labels[C.lo][0].n
    return [
        C.restrict(lambda p, b, k=k: b.left_left == k, name=f"{C.name}^({k})")
        for k in range(n // 2 + 1)
    ]


def filter_cnk(Ck: ChainComplex, j: int) -> Tuple[ChainComplex, ChainComplex]:
    """(F_j, F_j / F_{j-1}) for the filtration by right arcs avoiding the box."""
    if Ck.labels is None:
        raise ComplexError("filter_cnk needs a labelled complex")
    ks = {b.left_left for p in Ck.degrees for b in Ck.labels[p]}
    k = max(ks) if ks else 0
    if len(ks) > 1:
        raise ComplexError(f"{Ck.name} mixes left-to-left counts {sorted(ks)}")
    if not 0 <= j <= k:
        raise SemanticError(f"filtration index j={j} outside 0..{k}")
    for p in range(Ck.lo + 1, Ck.hi + 1):
        for src, rows in _column_labels(Ck, p):
            if any(r.free_free > src.free_free for r in rows):
                raise ComplexError(f"boundary raises the box-free right arc count at {src}")
    sub = Ck.restrict(lambda p, b: b.free_free <= j, name=f"F_{j}{Ck.name}")
    quo = Ck.restrict(lambda p, b: b.free_free == j, name=f"F_{j}/F_{j - 1}{Ck.name}")
    return sub, quo
