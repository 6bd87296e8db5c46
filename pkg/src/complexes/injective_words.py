"""Injective words with separators and the complexes W_X^(s)."""
import sys
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial
from pathlib import Path
from typing import FrozenSet, Hashable, Iterable, List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring
from src.brauer.errors import BudgetExceeded, SemanticError
from src.complexes.chain_complex import ChainComplex, SparseMatrix
from utils.config import get_max_word_letters

SEP = "|"


@dataclass(frozen=True)
class SepWord:
    letters: Tuple[Hashable, ...]
    X: FrozenSet[Hashable]

    def __post_init__(self):
        used = [a for a in self.letters if a != SEP]
        if len(set(used)) != len(used):
            raise SemanticError(f"letter repeated in {self}")
        if not set(used) <= self.X:
            raise SemanticError(f"{self} uses letters outside X")

    @property
    def separators(self) -> int:
        return sum(1 for a in self.letters if a == SEP)

    @property
    def degree(self) -> int:
        return len(self.letters) - self.separators - 1

    @property
    def sort_key(self):
        return tuple(str(a) for a in self.letters)

    def __str__(self) -> str:
        return "".join(str(a) for a in self.letters)


def word_boundary(word: SepWord) -> List[Tuple[SepWord, int]]:
    """Delete each X-letter with sign (-1)^position, separators counted in the position."""
    out = []
    for pos, a in enumerate(word.letters):
        if a == SEP:
            continue
        rest = word.letters[:pos] + word.letters[pos + 1:]
        out.append((SepWord(rest, word.X), -1 if pos % 2 else 1))
    return out


def words_of_degree(X: Iterable[Hashable], s: int, p: int) -> List[SepWord]:
    """All words with p+1 distinct X-letters and s separators, in a fixed order."""
    xs = sorted(X, key=str)
    frozen = frozenset(xs)
    k = p + 1
    out = []
    if k < 0 or k > len(xs):
        return out
    for letters in permutations(xs, k):
        total = k + s
        for slots in combinations(range(total), s):
            it = iter(letters)
            seq = tuple(SEP if pos in slots else next(it) for pos in range(total))
            out.append(SepWord(seq, frozen))
    return out


def w_rank(n_letters: int, s: int, p: int) -> int:
    """C(|X|, p+1) (p+1)! C(p+1+s, s)."""
    if p + 1 < 0 or p + 1 > n_letters:
        return 0
    return comb(n_letters, p + 1) * factorial(p + 1) * comb(p + 1 + s, s)


def build_w(X: Iterable[Hashable], s: int, ring: Ring, top: Optional[int] = None) -> ChainComplex:
    """W_X^(s) in degrees -1..|X|-1 (or up to `top`)."""
    xs = sorted(set(X), key=str)
    if SEP in xs:
        raise SemanticError(f"{SEP!r} is reserved for the separator")
    if s < 0:
        raise SemanticError(f"separator count must be >= 0, got {s}")
    bound = get_max_word_letters()
    if len(xs) + s > bound:
        raise BudgetExceeded(f"|X| + s = {len(xs) + s} exceeds the configured bound {bound}")
    full = len(xs) - 1
    hi = full if top is None else min(top, full)
    exact = full if hi == full else hi - 1
    arith = ring.assembly
    labels = {p: words_of_degree(xs, s, p) for p in range(-1, hi + 1)}
    index = {p: {w: i for i, w in enumerate(ws)} for p, ws in labels.items()}
    boundaries = {}
    for p in range(0, hi + 1):
        cols = []
        for w in labels[p]:
            col = {}
            for face, sign in word_boundary(w):
                r = index[p - 1][face]
                v = arith.add(col.get(r, arith.zero), arith.one if sign > 0 else arith.neg(arith.one))
                if v == 0:
                    col.pop(r, None)
                else:
                    col[r] = v
            cols.append(col)
        boundaries[p] = SparseMatrix(len(labels[p - 1]), len(labels[p]), cols)
    ranks = {p: len(ws) for p, ws in labels.items()}
    return ChainComplex(ring, -1, hi, ranks, boundaries, labels, exact, name=f"W_{len(xs)}^({s})")
