"""
Truncations of the complexes C(X, x) and D(X, x, y): direct sums of quotient
modules Br_n / J_Y joined by right multiplications.
"""
import sys
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.algebra import AlgebraElement, _validate_subset, augmentation, multiply, reduce_mod_ideal
from src.brauer.coefficients import Ring, RingKind
from src.brauer.diagrams import generator_uab
from src.brauer.errors import SemanticError
from src.brauer.representations import quotient_basis
from src.complexes.chain_complex import ChainComplex, SparseMatrix

Summand = Tuple[Optional[int], FrozenSet[int]]


def _summands(X: FrozenSet[int], x: int, p: int) -> List[Summand]:
    if p == -1:
        return [(None, X)]
    if p == 0:
        return [(None, X - {x})]
    return [(w, X - {x, w}) for w in sorted(X - {x})]


def _multiplier(variant: str, p: int, n: int, x: int, w: Optional[int], y: Optional[int], arith: Ring) -> AlgebraElement:
    """Right multiplier of the map from degree p to degree p - 1."""
    one = AlgebraElement.one(n, arith)
    if p == 0:
        return one
    u_xw = AlgebraElement.basis(generator_uab(n, x, w), arith)
    if variant == "C":
        base = u_xw.scale(arith.inverse(arith.delta))
    else:
        base = multiply(u_xw, AlgebraElement.basis(generator_uab(n, x, y), arith))
    if p == 1 and variant == "D":
        return u_xw
    if p % 2 == 0:
        return one - base
    return base


def build_inductive(
    n: int,
    X,
    x: int,
    ring: Ring,
    y: Optional[int] = None,
    D: int = 4,
    tensor_trivial: bool = False,
) -> ChainComplex:
    """
    C(X, x) when y is None, else D(X, x, y), in degrees -1..D. With
    `tensor_trivial` every summand is replaced by t (x) Br_n / J_Y = R and
    every multiplier by its augmentation.
    """
    xs = _validate_subset(n, X)
    if x not in xs:
        raise SemanticError(f"x={x} is not in X={sorted(xs)}")
    if D < 2:
        raise SemanticError(f"truncation degree must be >= 2, got {D}")
    variant = "C" if y is None else "D"
    if variant == "C":
        if not ring.is_unit(ring.delta):
            raise SemanticError(f"C(X, x) needs delta invertible; delta={ring.delta} in {ring.name}")
        if ring.kind is RingKind.INTEGERS_MOD and ring.assembly.delta not in (1, -1):
            raise SemanticError("C(X, x) over Z/m has no integral lift; use Q, Fp or delta = 1")
    else:
        if not 1 <= y <= n or y in xs:
            raise SemanticError(f"y={y} must lie in [1, {n}] outside X={sorted(xs)}")
    arith = ring.assembly

    summands = {p: _summands(xs, x, p) for p in range(-1, D + 1)}
    labels: Dict[int, list] = {}
    offsets: Dict[int, Dict[Optional[int], int]] = {}
    for p, parts in summands.items():
        labels[p] = []
        offsets[p] = {}
        for w, Y in parts:
            offsets[p][w] = len(labels[p])
            if tensor_trivial:
                labels[p].append((w, tuple(sorted(Y))))
            else:
                labels[p].extend((w, d) for d in quotient_basis(n, Y).basis)

    boundaries = {}
    for p in range(0, D + 1):
        cols = []
        for w, Y in summands[p]:
            c = _multiplier(variant, p, n, x, w, y, arith)
            # degree 1 -> 0 lands in the single degree-0 summand; higher maps are diagonal
            tw = None if p <= 1 else w
            target_Y = dict(summands[p - 1])[tw]
            base = offsets[p - 1][tw]
            if tensor_trivial:
                eps = augmentation(c)
                cols.append({base: eps} if eps != 0 else {})
                continue
            target_index = quotient_basis(n, target_Y).index
            for d in quotient_basis(n, Y).basis:
                image = reduce_mod_ideal(multiply(AlgebraElement.basis(d, arith), c), target_Y)
                cols.append({base + target_index[e]: v for e, v in image.items()})
        boundaries[p] = SparseMatrix(len(labels[p - 1]), len(labels[p]), cols)

    ranks = {p: len(labs) for p, labs in labels.items()}
    name = f"{variant}({sorted(xs)},{x}{'' if y is None else ',' + str(y)})"
    if tensor_trivial:
        name = "t(x)" + name
    return ChainComplex(ring, -1, D, ranks, boundaries, labels, D - 1, name=name)
