"""
The tuple map: a box diagram of F_j C_n^(k) / F_{j-1} determines (X, P, Y, a),
and these tuples index the bases of a direct sum of W_X^(k+j) complexes.
"""
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, List, Set, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring
from src.brauer.diagrams import _canonical, _matchings
from src.brauer.errors import SemanticError
from src.brauer.reports import Report
from src.brauer.representations import BoxDiagram
from src.complexes.brauer_complex import build_cn, filter_cnk, split_cn
from src.complexes.injective_words import SEP, SepWord, word_boundary, words_of_degree

Pair = Tuple[int, int]


@dataclass(frozen=True)
class YCode:
    """Isomorphism class of an ordered set with some elements paired."""

    size: int
    paired: Tuple[Pair, ...]
    unpaired: Tuple[int, ...]

    @property
    def j(self) -> int:
        return len(self.paired)


@dataclass(frozen=True)
class WordTuple:
    X: FrozenSet[int]
    P: Tuple[Pair, ...]
    Y: YCode
    a: SepWord

    @property
    def k(self) -> int:
        return len(self.P)

    @property
    def j(self) -> int:
        return self.Y.j

    def with_word(self, word: SepWord) -> "WordTuple":
        return WordTuple(self.X, self.P, self.Y, word)


def phi(label: BoxDiagram) -> WordTuple:
    if not isinstance(label, BoxDiagram):
        raise SemanticError(f"phi expects a box diagram, got {type(label).__name__}")
    mate = label.mate
    in_box = set(label.box)
    X = frozenset(-e for e in label.box if e < 0) | frozenset(-a for a, b in label.pairs if a < 0 < b)
    P = tuple(sorted((-b, -a) for a, b in label.pairs if b < 0))
    letters = []
    y_nodes = []
    for f in range(1, label.free + 1):
        if f in in_box or mate.get(f, 0) > 0:
            letters.append(SEP)
            y_nodes.append(f)
        else:
            letters.append(-mate[f])
    pos = {f: i for i, f in enumerate(y_nodes)}
    paired = tuple(sorted((pos[a], pos[b]) for a, b in label.pairs if a > 0))
    unpaired = tuple(pos[f] for f in y_nodes if f in in_box)
    return WordTuple(X, P, YCode(len(y_nodes), paired, unpaired), SepWord(tuple(letters), X))


def phi_inverse(t: WordTuple, n: int) -> BoxDiagram:
    """Rebuilds the box diagram; the box size is n minus the word length."""
    length = len(t.a.letters)
    m = n - length
    seps = [f for f, a in enumerate(t.a.letters, start=1) if a == SEP]
    if len(seps) != t.Y.size:
        raise SemanticError("separator count does not match Y")
    pairs: List[Pair] = [(-a, -b) for a, b in t.P]
    pairs += [(seps[x], seps[y]) for x, y in t.Y.paired]
    box = [seps[x] for x in t.Y.unpaired]
    in_word = set()
    for f, a in enumerate(t.a.letters, start=1):
        if a != SEP:
            pairs.append((-a, f))
            in_word.add(a)
    box += [-x for x in t.X if x not in in_word]
    if len(box) != m or m < 0:
        raise SemanticError(f"tuple does not fit a box of size {m}")
    return BoxDiagram(n, m, _canonical(n, pairs), tuple(sorted(box)))


def _y_codes(size: int, j: int) -> List[YCode]:
    out = []
    for chosen in combinations(range(size), 2 * j):
        for matching in _matchings(chosen):
            paired = tuple(sorted(matching))
            unpaired = tuple(x for x in range(size) if x not in chosen)
            out.append(YCode(size, paired, unpaired))
    return out


def enumerate_tuples(n: int, k: int, j: int, degree: int) -> Set[WordTuple]:
    """All (X, P, Y, a) with a of W-degree `degree` (= p - (k+j))."""
    out: Set[WordTuple] = set()
    labels = tuple(range(1, n + 1))
    codes = _y_codes(k + j, j)
    for X in combinations(labels, n - 2 * k):
        xs = frozenset(X)
        rest = tuple(x for x in labels if x not in xs)
        for matching in _matchings(rest):
            P = tuple(sorted(matching))
            for word in words_of_degree(xs, k + j, degree):
                for code in codes:
                    out.add(WordTuple(xs, P, code, word))
    return out


def phi_iso_check(n: int, k: int, j: int, ring: Ring) -> Report:
    """Round trip, bijectivity onto the W-bases, and the chain-map square."""
    if not 0 <= j <= k <= n // 2:
        raise SemanticError(f"need 0 <= j <= k <= n/2, got k={k}, j={j}")
    report = Report(f"phi_iso(n={n}, k={k}, j={j})")
    Ck = split_cn(build_cn(n, ring))[k]
    _, Q = filter_cnk(Ck, j)
    shift = k + j
    arith = ring.assembly

    roundtrip = True
    bijective = True
    checked = 0
    for p in Q.degrees:
        images = []
        for b in Q.labels[p]:
            t = phi(b)
            images.append(t)
            roundtrip &= phi_inverse(t, n) == b
            checked += 1
        expected = enumerate_tuples(n, k, j, p - shift)
        bijective &= len(set(images)) == len(images) and set(images) == expected
    report.add("round trip", f"n={n}, k={k}, j={j}", f"{checked} labels", roundtrip, roundtrip)
    report.add("bijective onto W bases", f"n={n}, k={k}, j={j}", True, bijective, bijective)

    chain_map = True
    for p in range(Q.lo + 1, Q.hi + 1):
        mat = Q.boundary(p)
        for c, b in enumerate(Q.labels[p]):
            lhs: Dict[WordTuple, int] = {}
            for r, v in mat.columns[c].items():
                t = phi(Q.labels[p - 1][r])
                lhs[t] = arith.add(lhs.get(t, arith.zero), v)
            t = phi(b)
            rhs: Dict[WordTuple, int] = {}
            for face, sign in word_boundary(t.a):
                key = t.with_word(face)
                rhs[key] = arith.add(rhs.get(key, arith.zero), arith.canon(sign))
            lhs = {key: v for key, v in lhs.items() if v != 0}
            rhs = {key: v for key, v in rhs.items() if v != 0}
            chain_map &= lhs == rhs
    report.add("phi d = d phi", f"n={n}, k={k}, j={j}, shift={-shift}", True, chain_map, chain_map)
    return report
