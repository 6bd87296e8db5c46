import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import prod
from pathlib import Path
from typing import Callable, FrozenSet, Iterable, List, Mapping, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingElem
from src.brauer.diagrams import (
    BrauerDiagram,
    CompositionResult,
    diagram_compose,
    diagram_make,
    embed_diagram,
    enumerate_diagrams,
    generator_s,
    generator_u,
    generator_uab,
    identity,
)
from src.brauer.errors import SemanticError
from src.brauer.linear import FreeElement
from src.brauer.reports import Report

Composer = Callable[[BrauerDiagram, BrauerDiagram], CompositionResult]


class AlgebraElement(FreeElement):
    """Element of Br_n(R, delta); RS_n elements are those supported on permutations."""

    __slots__ = ("n",)

    def __init__(self, n: int, ring: Ring, terms: Mapping[BrauerDiagram, RingElem] = ()):
        super().__init__(ring, terms)
        self.n = n
        for d in self._terms:
            if d.n != n:
                raise SemanticError(f"diagram on {d.n} strands inside an element of Br_{n}")

    def _shape(self) -> Tuple:
        return (self.n,)

    def _like(self, terms) -> "AlgebraElement":
        return AlgebraElement(self.n, self.ring, terms)

    @classmethod
    def basis(cls, d: BrauerDiagram, ring: Ring) -> "AlgebraElement":
        return cls(d.n, ring, {d: ring.one})

    @classmethod
    def one(cls, n: int, ring: Ring) -> "AlgebraElement":
        return cls.basis(identity(n), ring)

    @classmethod
    def zero(cls, n: int, ring: Ring) -> "AlgebraElement":
        return cls(n, ring)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def is_symmetric(self) -> bool:
        return all(d.is_permutation for d in self._terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ring": self.ring.name,
            "delta": str(self.ring.delta),
            "terms": [{"pairs": [list(p) for p in d.pairs], "coeff": str(c)} for d, c in self.items()],
        }


def multiply(a: AlgebraElement, b: AlgebraElement, compose: Composer = diagram_compose) -> AlgebraElement:
    """Bilinear extension of d1 * d2 = delta^loops (d1 o d2)."""
    a._check(b)
    ring = a.ring
    out = {}
    for d1, c1 in a._terms.items():
        for d2, c2 in b._terms.items():
            res = compose(d1, d2)
            coeff = ring.mul(ring.mul(c1, c2), ring.delta_power(res.loops))
            out[res.diagram] = ring.add(out.get(res.diagram, ring.zero), coeff)
    return AlgebraElement(a.n, ring, out)


def elem_arith(a: AlgebraElement, b, op: str) -> AlgebraElement:
    """op in {add, scale, mul}; for scale, b is a ring element."""
    if op == "add":
        return a + b
    if op == "scale":
        return a.scale(b)
    if op == "mul":
        return a * b
    raise SemanticError(f"unknown operation {op!r}")


def augmentation(a: AlgebraElement) -> RingElem:
    """Sum of the coefficients of permutation diagrams."""
    ring = a.ring
    total = ring.zero
    for d, c in a._terms.items():
        if d.is_permutation:
            total = ring.add(total, c)
    return total


def iota(a: AlgebraElement) -> AlgebraElement:
    """RS_n -> Br_n: permutations go to permutation diagrams."""
    if not a.is_symmetric():
        raise SemanticError("iota expects an element supported on permutation diagrams")
    return a


def pi(a: AlgebraElement) -> AlgebraElement:
    """Br_n -> RS_n: keep permutation diagrams, drop the rest."""
    return AlgebraElement(a.n, a.ring, {d: c for d, c in a._terms.items() if d.is_permutation})


def embed(a: AlgebraElement, N: int) -> AlgebraElement:
    if a.n > N:
        raise SemanticError(f"cannot embed Br_{a.n} into Br_{N}")
    return AlgebraElement(N, a.ring, {embed_diagram(d, N): c for d, c in a._terms.items()})


@dataclass(frozen=True)
class IdealBasis:
    n: int
    X: FrozenSet[int]
    basis: Tuple[BrauerDiagram, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, d: BrauerDiagram) -> bool:
        return d.has_right_arc_within(self.X)


def _validate_subset(n: int, X: Iterable[int]) -> FrozenSet[int]:
    xs = frozenset(int(x) for x in X)
    if any(not 1 <= x <= n for x in xs):
        raise SemanticError(f"{sorted(xs)} is not a subset of [1, {n}]")
    return xs


@lru_cache(maxsize=None)
def _ideal_cached(n: int, X: FrozenSet[int]) -> IdealBasis:
    return IdealBasis(n, X, tuple(d for d in enumerate_diagrams(n) if d.has_right_arc_within(X)))


def ideal_basis(n: int, X: Iterable[int]) -> IdealBasis:
    """Basis of J_X: diagrams with a right arc inside X."""
    return _ideal_cached(n, _validate_subset(n, X))


def reduce_mod_ideal(a: AlgebraElement, X: Iterable[int]) -> AlgebraElement:
    """Image of `a` in Br_n / J_X, written on the complementary basis."""
    xs = _validate_subset(a.n, X)
    return AlgebraElement(a.n, a.ring, {d: c for d, c in a._terms.items() if not d.has_right_arc_within(xs)})


# --- relation families ---
RELATION_FAMILIES = (
    "S_i^2 = 1",
    "S_i S_j S_i = S_j S_i S_j (|i-j|=1)",
    "S_i S_j = S_j S_i (|i-j|>=2)",
    "U_i^2 = delta U_i",
    "U_i U_j U_i = U_i (|i-j|=1)",
    "U_i U_j = U_j U_i (|i-j|>=2)",
    "U_i S_i = S_i U_i = U_i",
    "U_i S_j U_i = U_i (|i-j|=1)",
    "S_i S_j U_i = U_j U_i (|i-j|=1)",
    "U_i S_j S_i = U_i U_j (|i-j|=1)",
    "U_i S_j = S_j U_i (|i-j|>=2)",
)


def _relation_instances(n: int) -> List[Tuple[str, int, int]]:
    idx = range(1, n)
    out: List[Tuple[str, int, int]] = []
    for i in idx:
        out += [(RELATION_FAMILIES[0], i, i), (RELATION_FAMILIES[3], i, i), (RELATION_FAMILIES[6], i, i)]
    for i in idx:
        for j in idx:
            if abs(i - j) == 1:
                out += [(RELATION_FAMILIES[k], i, j) for k in (1, 4, 7, 8, 9)]
            elif abs(i - j) >= 2:
                out += [(RELATION_FAMILIES[k], i, j) for k in (2, 5, 10)]
    return out


def relations_check(n: int, ring: Ring, compose: Composer = diagram_compose) -> Report:
    """
    Evaluates every relation family for every admissible (i, j). `compose`
    is injectable so a corrupted product can be shown to fail.
    """
    if n > 6:
        raise SemanticError(f"relations_check supports n <= 6, got {n}")
    report = Report(f"relations(n={n}, {ring})")
    if n < 2:
        report.notes.append("no generators for n < 2")
        return report

    one = AlgebraElement.one(n, ring)

    def S(i):
        return AlgebraElement.basis(generator_s(n, i), ring)

    def U(i):
        return AlgebraElement.basis(generator_u(n, i), ring)

    def mul(*factors):
        acc = factors[0]
        for f in factors[1:]:
            acc = multiply(acc, f, compose)
        return acc

    def sides(family: str, i: int, j: int):
        if family == RELATION_FAMILIES[0]:
            return [(mul(S(i), S(i)), one)]
        if family == RELATION_FAMILIES[1]:
            return [(mul(S(i), S(j), S(i)), mul(S(j), S(i), S(j)))]
        if family == RELATION_FAMILIES[2]:
            return [(mul(S(i), S(j)), mul(S(j), S(i)))]
        if family == RELATION_FAMILIES[3]:
            return [(mul(U(i), U(i)), U(i).scale(ring.delta))]
        if family == RELATION_FAMILIES[4]:
            return [(mul(U(i), U(j), U(i)), U(i))]
        if family == RELATION_FAMILIES[5]:
            return [(mul(U(i), U(j)), mul(U(j), U(i)))]
        if family == RELATION_FAMILIES[6]:
            return [(mul(U(i), S(i)), U(i)), (mul(S(i), U(i)), U(i))]
        if family == RELATION_FAMILIES[7]:
            return [(mul(U(i), S(j), U(i)), U(i))]
        if family == RELATION_FAMILIES[8]:
            return [(mul(S(i), S(j), U(i)), mul(U(j), U(i)))]
        if family == RELATION_FAMILIES[9]:
            return [(mul(U(i), S(j), S(i)), mul(U(i), U(j)))]
        return [(mul(U(i), S(j)), mul(S(j), U(i)))]

    counts = {f: [0, 0] for f in RELATION_FAMILIES}
    for family, i, j in _relation_instances(n):
        for lhs, rhs in sides(family, i, j):
            counts[family][0] += 1
            if lhs != rhs:
                counts[family][1] += 1
    for family in RELATION_FAMILIES:
        total, bad = counts[family]
        report.add(family, f"n={n}", f"{total} instances hold", f"{total - bad} hold", bad == 0)
    return report


def ideal_structure_check(n: int, ring: Ring) -> Report:
    """
    (a) right multiples of U_ab are exactly the span of diagrams pairing a
    with b on the right; (c) J_X is stable under right multiplication by
    U_ab when a, b are outside X.
    """
    report = Report(f"ideal_structure(n={n})")
    diagrams = enumerate_diagrams(n)
    for a, b in combinations(range(1, n + 1), 2):
        u = generator_uab(n, a, b)
        products = [diagram_compose(d, u) for d in diagrams]
        all_paired = all(r.diagram.mate[a] == b for r in products)
        hit = {r.diagram for r in products if r.loops == 0}
        target = {d for d in diagrams if d.mate[a] == b}
        report.add("right multiples of U_ab", f"n={n}, a={a}, b={b}",
                   f"{len(target)} diagrams", f"{len(hit & target)} reached, paired={all_paired}",
                   all_paired and target <= hit)

    for size in range(0, n - 1):
        for X in combinations(range(1, n + 1), size):
            rest = [v for v in range(1, n + 1) if v not in X]
            J = ideal_basis(n, X)
            for a, b in combinations(rest, 2):
                u = generator_uab(n, a, b)
                stable = all(diagram_compose(j, u).diagram.has_right_arc_within(X) for j in J.basis)
                report.add("J_X U_ab within J_X", f"n={n}, X={set(X) or '{}'}, a={a}, b={b}",
                           True, stable, stable)
    return report


# --- worked product ---
WORKED_LEFT = [(-1, 3), (-2, -4), (-3, -5), (1, 5), (2, 4)]
WORKED_RIGHT = [(-1, -4), (-2, -5), (-3, 1), (2, 5), (3, 4)]
WORKED_RESULT = [(-1, 1), (-2, -4), (-3, -5), (2, 5), (3, 4)]
WORKED_LOOPS = 1


def basis_count_check(n: int) -> Report:
    """The worked five-strand product, then |Br_k basis| = (2k-1)!! for k <= n."""
    if n > 6:
        raise SemanticError(f"basis_count_check supports n <= 6, got {n}")
    report = Report(f"basis_count(n={n})")
    result = diagram_compose(diagram_make(5, WORKED_LEFT), diagram_make(5, WORKED_RIGHT))
    expected = f"{diagram_make(5, WORKED_RESULT)}, loops={WORKED_LOOPS}"
    computed = f"{result.diagram}, loops={result.loops}"
    report.add("worked product", "n=5", expected, computed, computed == expected)
    for k in range(n + 1):
        expected = prod(range(2 * k - 1, 0, -2))
        found = len(enumerate_diagrams(k))
        report.add("dim Br_k = (2k-1)!!", f"k={k}", expected, found, found == expected)
    return report
