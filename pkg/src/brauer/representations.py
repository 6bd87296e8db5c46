import sys
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.algebra import AlgebraElement, _validate_subset, multiply, reduce_mod_ideal
from src.brauer.coefficients import Ring, RingElem
from src.brauer.diagrams import (
    BrauerDiagram,
    _canonical,
    _check_bound,
    _matchings,
    diagram_compose,
    embed_diagram,
    enumerate_diagrams,
    enumerate_permutations,
    generator_s,
    generator_u,
    identity,
)
from src.brauer.errors import SemanticError
from src.brauer.linear import FreeElement
from src.brauer.reports import Report

Pair = Tuple[int, int]


@dataclass(frozen=True)
class BoxDiagram:
    """
    Basis element of Br_n (x)_{Br_m} t. The box absorbs right nodes 1..m;
    free right nodes m+1..n are relabelled 1..n-m. Endpoints are the left
    labels -n..-1 and the free labels 1..n-m; `box` lists the endpoints
    wired into the box.
    """

    n: int
    m: int
    pairs: Tuple[Pair, ...]
    box: Tuple[int, ...]

    @property
    def sort_key(self):
        return (self.box, self.pairs)

    @cached_property
    def mate(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    @property
    def free(self) -> int:
        return self.n - self.m

    @cached_property
    def left_left(self) -> int:
        return sum(1 for a, b in self.pairs if b < 0)

    @cached_property
    def free_free(self) -> int:
        """Right-to-right arcs that avoid the box."""
        return sum(1 for a, b in self.pairs if a > 0)

    @cached_property
    def free_to_box(self) -> int:
        return sum(1 for e in self.box if e > 0)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "pairs": [list(p) for p in self.pairs], "box": list(self.box)}

    def __str__(self) -> str:
        body = ",".join("{%d,%d}" % p for p in self.pairs)
        return "{" + body + "}|box" + "{" + ",".join(map(str, self.box)) + "}"


def box_diagram_make(n: int, m: int, pairs: Iterable[Sequence[int]], box: Iterable[int]) -> BoxDiagram:
    """Validating constructor for the JSON box-diagram format."""
    if not 0 <= m <= n:
        raise SemanticError(f"need 0 <= m <= n, got m={m}, n={n}")
    pairs = [tuple(p) for p in pairs]
    box = sorted(int(e) for e in box)
    if len(box) != m:
        raise SemanticError(f"the box must hold {m} endpoints, got {len(box)}")
    endpoints = set(range(-n, 0)) | set(range(1, n - m + 1))
    used = [x for p in pairs for x in p] + box
    if sorted(used) != sorted(endpoints):
        raise SemanticError("every endpoint must occur exactly once in a pair or in the box")
    return BoxDiagram(n, m, _canonical(n, pairs), tuple(box))


class ModuleElement(FreeElement):
    """Element of Br_n (x)_{Br_m} t on the box-diagram basis."""

    __slots__ = ("n", "m")

    def __init__(self, n: int, m: int, ring: Ring, terms: Mapping[BoxDiagram, RingElem] = ()):
        super().__init__(ring, terms)
        self.n = n
        self.m = m

    def _shape(self) -> Tuple:
        return (self.n, self.m)

    def _like(self, terms) -> "ModuleElement":
        return ModuleElement(self.n, self.m, self.ring, terms)

    @classmethod
    def basis(cls, b: BoxDiagram, ring: Ring) -> "ModuleElement":
        return cls(b.n, b.m, ring, {b: ring.one})


# --- box diagrams <-> Brauer diagrams ---
def project_diagram(d: BrauerDiagram, m: int) -> Optional[BoxDiagram]:
    """Merge right nodes 1..m into the box; None when an arc joins two of them."""
    if not 0 <= m <= d.n:
        raise SemanticError(f"need 0 <= m <= n, got m={m}, n={d.n}")
    pairs: List[Pair] = []
    box: List[int] = []

    def relabel(x: int) -> int:
        return x if x < 0 else x - m

    for a, b in d.pairs:
        a_box = 0 < a <= m
        b_box = 0 < b <= m
        if a_box and b_box:
            return None
        if a_box:
            box.append(relabel(b))
        elif b_box:
            box.append(relabel(a))
        else:
            pairs.append((relabel(a), relabel(b)))
    return BoxDiagram(d.n, m, _canonical(d.n, pairs), tuple(sorted(box)))


def box_project(d: BrauerDiagram, m: int, ring: Ring) -> ModuleElement:
    """Image of d under Br_n -> Br_n (x)_{Br_m} t."""
    b = project_diagram(d, m)
    if b is None:
        return ModuleElement(d.n, m, ring)
    return ModuleElement.basis(b, ring)


@lru_cache(maxsize=None)
def lift(b: BoxDiagram) -> BrauerDiagram:
    """A Brauer diagram projecting onto b: box endpoints go to box nodes in sorted order."""
    m = b.m

    def unlabel(x: int) -> int:
        return x if x < 0 else x + m

    pairs = [(unlabel(a), unlabel(c)) for a, c in b.pairs]
    pairs += [(unlabel(e), slot) for slot, e in enumerate(b.box, start=1)]
    return BrauerDiagram(b.n, _canonical(b.n, pairs))


@lru_cache(maxsize=None)
def _induced_cached(n: int, m: int) -> Tuple[BoxDiagram, ...]:
    endpoints = tuple(range(-n, 0)) + tuple(range(1, n - m + 1))
    out = []
    for box in combinations(endpoints, m):
        rest = tuple(e for e in endpoints if e not in box)
        for matching in _matchings(rest):
            out.append(BoxDiagram(n, m, _canonical(n, matching), tuple(sorted(box))))
    return tuple(sorted(out, key=lambda b: b.sort_key))


def induced_basis(n: int, m: int) -> List[BoxDiagram]:
    """Box-diagram basis of Br_n (x)_{Br_m} t; size C(2n-m, m) (2n-2m-1)!!."""
    if not 0 <= m <= n:
        raise SemanticError(f"need 0 <= m <= n, got m={m}, n={n}")
    _check_bound(n)
    return list(_induced_cached(n, m))


def symmetric_induced_basis(n: int, m: int) -> List[BoxDiagram]:
    """Basis of RS_n (x)_{RS_m} t: box diagrams without left-to-left arcs (n!/m! of them)."""
    return [b for b in induced_basis(n, m) if b.left_left == 0]


@lru_cache(maxsize=1 << 16)
def act_on_box(d: BrauerDiagram, b: BoxDiagram) -> Optional[Tuple[BoxDiagram, int]]:
    """d . b on basis elements: (result, loops) or None when the result vanishes."""
    res = diagram_compose(d, lift(b))
    out = project_diagram(res.diagram, b.m)
    if out is None:
        return None
    return out, res.loops


def induced_act(a: AlgebraElement, v: ModuleElement) -> ModuleElement:
    """Left action of Br_n on Br_n (x)_{Br_m} t by pasting onto the lift."""
    if a.n != v.n:
        raise SemanticError(f"strand mismatch: Br_{a.n} acting on a module over Br_{v.n}")
    if a.ring != v.ring:
        raise SemanticError(f"ring mismatch: {a.ring} vs {v.ring}")
    ring = a.ring
    out: Dict[BoxDiagram, RingElem] = {}
    for d, c1 in a._terms.items():
        for b, c2 in v._terms.items():
            hit = act_on_box(d, b)
            if hit is None:
                continue
            target, loops = hit
            coeff = ring.mul(ring.mul(c1, c2), ring.delta_power(loops))
            out[target] = ring.add(out.get(target, ring.zero), coeff)
    return ModuleElement(v.n, v.m, ring, out)


# --- quotient modules Br_n / J_X ---
@dataclass(frozen=True)
class QuotientBasis:
    n: int
    X: FrozenSet[int]
    basis: Tuple[BrauerDiagram, ...]

    def __len__(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> Dict[BrauerDiagram, int]:
        return {d: i for i, d in enumerate(self.basis)}


@lru_cache(maxsize=None)
def _quotient_cached(n: int, X: FrozenSet[int]) -> QuotientBasis:
    return QuotientBasis(n, X, tuple(d for d in enumerate_diagrams(n) if not d.has_right_arc_within(X)))


def quotient_basis(n: int, X: Iterable[int]) -> QuotientBasis:
    return _quotient_cached(n, _validate_subset(n, X))


def quotient_act(a: AlgebraElement, v: AlgebraElement, X: Iterable[int]) -> AlgebraElement:
    """a . (v + J_X), written on the quotient basis."""
    return reduce_mod_ideal(multiply(a, reduce_mod_ideal(v, X)), X)


def quotient_right_act(v: AlgebraElement, c: AlgebraElement, X_target: Iterable[int]) -> AlgebraElement:
    """(v . c) + J_target. For X = {1..m} and c in RS_m this is the right RS_m action."""
    return reduce_mod_ideal(multiply(v, c), X_target)


# --- orbit structure of Br_n / J_m ---
def _sm_orbits(n: int, m: int) -> List[List[BrauerDiagram]]:
    Q = quotient_basis(n, range(1, m + 1))
    group = [embed_diagram(w, n) for w in enumerate_permutations(m)] if m else [identity(n)]
    seen = set()
    orbits = []
    for d in Q.basis:
        if d in seen:
            continue
        orbit = sorted({diagram_compose(d, w).diagram for w in group}, key=lambda e: e.pairs)
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def sm_freeness_check(n: int, m: int) -> Report:
    """Right S_m orbits on the basis of Br_n / J_m all have m! elements."""
    if not 0 <= m <= n:
        raise SemanticError(f"need 0 <= m <= n, got m={m}, n={n}")
    report = Report(f"sm_freeness(n={n}, m={m})")
    size = len(quotient_basis(n, range(1, m + 1)))
    orbits = _sm_orbits(n, m)
    sizes = sorted({len(o) for o in orbits})
    report.add("orbit sizes", f"n={n}, m={m}", [factorial(m)], sizes, sizes == [factorial(m)] or not orbits)
    report.add("orbits * m! = basis size", f"n={n}, m={m}", size, len(orbits) * factorial(m),
               len(orbits) * factorial(m) == size)
    return report


def tensor_iso_check(n: int, m: int, ring: Ring) -> Report:
    """(b + J_m) (x) 1 <-> b (x) 1 is a well-defined, Br_n-equivariant bijection."""
    report = Report(f"tensor_iso(n={n}, m={m})")
    X = range(1, m + 1)
    orbits = _sm_orbits(n, m)
    images = []
    well_defined = True
    for orbit in orbits:
        projected = {project_diagram(d, m) for d in orbit}
        well_defined &= len(projected) == 1 and None not in projected
        images.append(next(iter(projected)))
    target = set(induced_basis(n, m))
    bijective = len(set(images)) == len(images) and set(images) == target
    report.add("well defined on orbits", f"n={n}, m={m}", True, well_defined, well_defined)
    report.add("bijection", f"n={n}, m={m}", len(target), len(set(images)), bijective)

    orbit_of = {d: i for i, orbit in enumerate(orbits) for d in orbit}
    gens = [generator_s(n, i) for i in range(1, n)] + [generator_u(n, i) for i in range(1, n)]
    equivariant = True
    for g in gens:
        ga = AlgebraElement.basis(g, ring)
        for orbit, image in zip(orbits, images):
            left = quotient_act(ga, AlgebraElement.basis(orbit[0], ring), X)
            mapped: Dict[BoxDiagram, RingElem] = {}
            for d, c in left.items():
                b = images[orbit_of[d]]
                mapped[b] = ring.add(mapped.get(b, ring.zero), c)
            right = induced_act(ga, ModuleElement.basis(image, ring))
            equivariant &= ModuleElement(n, m, ring, mapped) == right
    report.add("commutes with generators", f"n={n}, m={m}", True, equivariant, equivariant)
    return report
