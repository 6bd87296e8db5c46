import sys
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.errors import BudgetExceeded, SemanticError
from utils.config import get_max_strands

Pair = Tuple[int, int]


@dataclass(frozen=True)
class BrauerDiagram:
    """
    Perfect matching of {-n..-1} u {1..n}. Left nodes are negative, right
    nodes positive, node 1 is the top strand. `pairs` is canonical: each
    pair sorted, pairs sorted lexicographically.
    """

    n: int
    pairs: Tuple[Pair, ...]

    @cached_property
    def mate(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def left_left(self) -> int:
        return sum(1 for a, b in self.pairs if b < 0)

    @cached_property
    def right_right(self) -> int:
        return sum(1 for a, b in self.pairs if a > 0)

    @property
    def sort_key(self) -> Tuple[Pair, ...]:
        return self.pairs

    @property
    def is_permutation(self) -> bool:
        return self.left_left == 0

    @property
    def is_identity(self) -> bool:
        return all(a == -b for a, b in self.pairs)

    def has_right_arc_within(self, X: Iterable[int]) -> bool:
        xs = set(X)
        return any(a > 0 and a in xs and b in xs for a, b in self.pairs)

    def as_permutation(self) -> Tuple[int, ...]:
        """Images (w(1), ..., w(n)) of a permutation diagram."""
        if not self.is_permutation:
            raise SemanticError("diagram has left-to-left arcs; not a permutation")
        return tuple(self.mate[-j] for j in range(1, self.n + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs]}

    def __str__(self) -> str:
        body = ",".join("{%d,%d}" % p for p in self.pairs)
        return "{" + body + "}"


@dataclass(frozen=True)
class CompositionResult:
    diagram: BrauerDiagram
    loops: int


@dataclass(frozen=True)
class DiagramStats:
    left_left: int
    right_right: int
    is_permutation: bool
    right_arc_within_X: Optional[bool] = None


def _canonical(n: int, pairs: Iterable[Sequence[int]]) -> Tuple[Pair, ...]:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))


def diagram_make(n: int, pairs: Iterable[Sequence[int]]) -> BrauerDiagram:
    """Validates a list of signed pairs and returns the canonical diagram."""
    if n < 0:
        raise SemanticError(f"strand count must be non-negative, got {n}")
    pairs = [tuple(p) for p in pairs]
    if any(len(p) != 2 for p in pairs):
        raise SemanticError("every pair needs exactly two labels")
    if len(pairs) != n:
        raise SemanticError(f"expected {n} pairs, got {len(pairs)}")
    seen = set()
    for label in (x for p in pairs for x in p):
        if not isinstance(label, int) or label == 0 or abs(label) > n:
            raise SemanticError(f"label {label} out of range for n={n}")
        if label in seen:
            raise SemanticError(f"label {label} repeated")
        seen.add(label)
    return BrauerDiagram(n, _canonical(n, pairs))


def identity(n: int) -> BrauerDiagram:
    return BrauerDiagram(n, _canonical(n, [(-j, j) for j in range(1, n + 1)]))


def diagram_compose(d1: BrauerDiagram, d2: BrauerDiagram) -> CompositionResult:
    """
    d1 . d2: right node j of d1 is glued to left node -j of d2. Paths are
    traced through the middle column; closed middle cycles are counted.
    """
    if d1.n != d2.n:
        raise SemanticError(f"strand mismatch: {d1.n} vs {d2.n}")
    n = d1.n
    visited = set()
    out: List[Pair] = []

    def walk(side: int, label: int) -> int:
        # side 1: `label` is an endpoint of d1 reached from outside d1
        while True:
            if side == 1:
                nxt = d1.mate[label]
                if nxt < 0:
                    return nxt
                visited.add(nxt)
                side, label = 2, -nxt
            else:
                nxt = d2.mate[label]
                if nxt > 0:
                    return nxt
                visited.add(-nxt)
                side, label = 1, -nxt

    done = set()
    for j in range(1, n + 1):
        for outer, side in ((-j, 1), (j, 2)):
            if outer in done:
                continue
            end = walk(side, outer)
            done.add(outer)
            done.add(end)
            out.append((outer, end))

    loops = 0
    for k in range(1, n + 1):
        if k in visited:
            continue
        loops += 1
        cur = k
        while cur not in visited:
            visited.add(cur)
            # leave through d2, come back through d1
            back = -d2.mate[-cur]
            visited.add(back)
            cur = d1.mate[back]
    return CompositionResult(BrauerDiagram(n, _canonical(n, out)), loops)


# --- named generators ---
def generator_s(n: int, i: int) -> BrauerDiagram:
    if not 1 <= i <= n - 1:
        raise SemanticError(f"S_{i} needs 1 <= i <= {n - 1}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = i + 1, i
    return permutation(n, w)


def generator_u(n: int, i: int) -> BrauerDiagram:
    if not 1 <= i <= n - 1:
        raise SemanticError(f"U_{i} needs 1 <= i <= {n - 1}")
    return generator_uab(n, i, i + 1)


def generator_uab(n: int, a: int, b: int) -> BrauerDiagram:
    if a == b or not (1 <= a <= n and 1 <= b <= n):
        raise SemanticError(f"U_ab needs distinct a, b in [1, {n}], got ({a}, {b})")
    pairs = [(-a, -b), (a, b)] + [(-j, j) for j in range(1, n + 1) if j not in (a, b)]
    return BrauerDiagram(n, _canonical(n, pairs))


def permutation(n: int, w: Sequence[int]) -> BrauerDiagram:
    """Permutation diagram pairing -j with w(j); `w` lists w(1), ..., w(n)."""
    w = list(w)
    if sorted(w) != list(range(1, n + 1)):
        raise SemanticError(f"{w} is not a permutation of 1..{n}")
    return BrauerDiagram(n, _canonical(n, [(-j, w[j - 1]) for j in range(1, n + 1)]))


def generator(n: int, which: str, *args) -> BrauerDiagram:
    """Dispatch by name: generator(3, "S", 1), generator(3, "U", 2), generator(4, "Uab", 1, 3), generator(3, "perm", [2, 1, 3])."""
    table = {"S": generator_s, "U": generator_u, "Uab": generator_uab, "perm": permutation}
    if which not in table:
        raise SemanticError(f"unknown generator {which!r}")
    return table[which](n, *args)


def flip(d: BrauerDiagram) -> BrauerDiagram:
    """Mirror image; reverses products and keeps loop counts."""
    return BrauerDiagram(d.n, _canonical(d.n, [(-a, -b) for a, b in d.pairs]))


def embed_diagram(d: BrauerDiagram, N: int) -> BrauerDiagram:
    """Br_m -> Br_N on the first m strands, straight strands m+1..N."""
    if d.n > N:
        raise SemanticError(f"cannot embed Br_{d.n} into Br_{N}")
    extra = [(-j, j) for j in range(d.n + 1, N + 1)]
    return BrauerDiagram(N, _canonical(N, list(d.pairs) + extra))


def diagram_stats(d: BrauerDiagram, X: Optional[Iterable[int]] = None) -> DiagramStats:
    within = d.has_right_arc_within(X) if X is not None else None
    return DiagramStats(d.left_left, d.right_right, d.is_permutation, within)


def _check_bound(n: int) -> None:
    bound = get_max_strands()
    if n > bound:
        raise BudgetExceeded(f"n={n} exceeds the configured strand bound {bound}")


def _matchings(labels: Tuple[int, ...]) -> Iterable[List[Pair]]:
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in _matchings(remaining):
            yield [(first, other)] + tail


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> Tuple[BrauerDiagram, ...]:
    labels = tuple(range(-n, 0)) + tuple(range(1, n + 1))
    found = {BrauerDiagram(n, _canonical(n, m)) for m in _matchings(labels)}
    return tuple(sorted(found, key=lambda d: d.pairs))


def enumerate_diagrams(n: int) -> List[BrauerDiagram]:
    """All (2n-1)!! diagrams of Br_n in canonical order."""
    if n < 0:
        raise SemanticError(f"strand count must be non-negative, got {n}")
    _check_bound(n)
    return list(_enumerate_cached(n))


@lru_cache(maxsize=None)
def _permutations_cached(n: int) -> Tuple[BrauerDiagram, ...]:
    found = [permutation(n, w) for w in permutations(range(1, n + 1))]
    return tuple(sorted(found, key=lambda d: d.pairs))


def enumerate_permutations(n: int) -> List[BrauerDiagram]:
    """The n! permutation diagrams in canonical order."""
    _check_bound(n)
    return list(_permutations_cached(n))
