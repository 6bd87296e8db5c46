"""
Normalized bar complexes B_k = A-bar^(x)k (x) M computing Tor^A(t, M) for
A = Br_n(R, delta) or RS_n, with A-bar spanned by d - eps(d) 1, d != 1.
"""
import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Tuple

from tqdm import tqdm

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.algebra import _validate_subset
from src.brauer.coefficients import Ring
from src.brauer.diagrams import (
    BrauerDiagram,
    diagram_compose,
    embed_diagram,
    enumerate_diagrams,
    enumerate_permutations,
    flip,
    identity,
)
from src.brauer.errors import BudgetExceeded, SemanticError
from src.brauer.representations import act_on_box, induced_basis, quotient_basis, symmetric_induced_basis
from src.complexes.chain_complex import ChainComplex, Column, SparseMatrix
from src.homology.groups import HomologyGroup, complex_homology
from utils.config import get_budget
from utils.logger import setup_logger
from utils.paths import get_log_path

logger = setup_logger(get_log_path("bar"), "bar")

ALGEBRA_KINDS = ("brauer", "symmetric")


class BarAlgebra:
    """Basis, augmentation and A-bar structure constants of Br_n or RS_n."""

    def __init__(self, kind: str, n: int, ring: Ring):
        if kind not in ALGEBRA_KINDS:
            raise SemanticError(f"unknown algebra {kind!r}; expected one of {ALGEBRA_KINDS}")
        self.kind = kind
        self.n = n
        self.ring = ring
        self.arith = ring.assembly
        self.basis: List[BrauerDiagram] = enumerate_diagrams(n) if kind == "brauer" else enumerate_permutations(n)
        self.identity = identity(n)
        self.abar: List[BrauerDiagram] = [d for d in self.basis if d != self.identity]
        self.abar_index: Dict[BrauerDiagram, int] = {d: i for i, d in enumerate(self.abar)}
        self._products: Dict[Tuple[int, int], Tuple[Tuple[int, object], ...]] = {}

    @property
    def name(self) -> str:
        return f"{'Br' if self.kind == 'brauer' else 'RS'}_{self.n}"

    @property
    def dim_abar(self) -> int:
        return len(self.abar)

    def contains(self, d: BrauerDiagram) -> bool:
        return d.n == self.n and (self.kind == "brauer" or d.is_permutation)

    def eps(self, d: BrauerDiagram):
        return self.arith.one if d.is_permutation else self.arith.zero

    def product(self, i: int, j: int) -> Tuple[Tuple[int, object], ...]:
        """(d_i - e_i)(d_j - e_j) in A-bar coordinates (coefficients of non-identity diagrams)."""
        key = (i, j)
        if key not in self._products:
            ar = self.arith
            d1, d2 = self.abar[i], self.abar[j]
            e1, e2 = self.eps(d1), self.eps(d2)
            res = diagram_compose(d1, d2)
            terms: Dict[BrauerDiagram, object] = {}

            def add(d, c):
                if d != self.identity and c != 0:
                    terms[d] = ar.add(terms.get(d, ar.zero), c)

            add(res.diagram, ar.delta_power(res.loops))
            add(d1, ar.neg(e2))
            add(d2, ar.neg(e1))
            self._products[key] = tuple(
                sorted((self.abar_index[d], c) for d, c in terms.items() if c != 0)
            )
        return self._products[key]

    def __repr__(self) -> str:
        return f"BarAlgebra({self.name}, {self.ring})"


class CoefficientModule(ABC):
    """Left module over a BarAlgebra with a finite basis."""

    kind = "abstract"

    def __init__(self, algebra: BarAlgebra):
        self.algebra = algebra
        self._cache: Dict[BrauerDiagram, List[Column]] = {}

    @cached_property
    @abstractmethod
    def labels(self) -> List[Hashable]:
        pass

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> Dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @abstractmethod
    def _act(self, d: BrauerDiagram, j: int) -> Column:
        pass

    def action(self, d: BrauerDiagram) -> List[Column]:
        """Columns of the matrix of d acting on the module basis."""
        if d not in self._cache:
            self._cache[d] = [self._act(d, j) for j in range(self.dim)]
        return self._cache[d]

    @property
    def name(self) -> str:
        return self.kind


class TrivialModule(CoefficientModule):
    kind = "trivial"

    @cached_property
    def labels(self) -> List[Hashable]:
        return ["1"]

    def _act(self, d, j):
        e = self.algebra.eps(d)
        return {0: e} if e != 0 else {}

    @property
    def name(self) -> str:
        return "t"


class InducedModule(CoefficientModule):
    """Br_n (x)_{Br_m} t, or RS_n (x)_{RS_m} t over the symmetric algebra."""

    kind = "induced"

    def __init__(self, algebra: BarAlgebra, m: int):
        if not 0 <= m <= algebra.n:
            raise SemanticError(f"need 0 <= m <= n, got m={m}, n={algebra.n}")
        self.m = m
        super().__init__(algebra)

    @cached_property
    def labels(self) -> List[Hashable]:
        if self.algebra.kind == "symmetric":
            return symmetric_induced_basis(self.algebra.n, self.m)
        return induced_basis(self.algebra.n, self.m)

    def _act(self, d, j):
        hit = act_on_box(d, self.labels[j])
        if hit is None:
            return {}
        target, loops = hit
        return {self.index[target]: self.algebra.arith.delta_power(loops)}

    @property
    def name(self) -> str:
        prefix = "RS" if self.algebra.kind == "symmetric" else "Br"
        return f"{prefix}_{self.algebra.n}(x){prefix}_{self.m} t"


class QuotientModule(CoefficientModule):
    """Br_n / J_X with the left action reducing modulo J_X."""

    kind = "quotient"

    def __init__(self, algebra: BarAlgebra, X):
        self.X = _validate_subset(algebra.n, X)
        super().__init__(algebra)

    @cached_property
    def labels(self) -> List[Hashable]:
        return list(quotient_basis(self.algebra.n, self.X).basis)

    def _act(self, d, j):
        res = diagram_compose(d, self.labels[j])
        if res.diagram.has_right_arc_within(self.X):
            return {}
        return {self.index[res.diagram]: self.algebra.arith.delta_power(res.loops)}

    @property
    def name(self) -> str:
        return f"Br_{self.algebra.n}/J_{sorted(self.X)}"


class RestrictedModule(CoefficientModule):
    """
    Br_N as a right Br_m-module, turned into a left module through the
    mirror anti-automorphism: d . x = x . flip(d). Tor^{Br_m}(Br_N, t) is
    then Tor^{Br_m}(t, this module).
    """

    kind = "restricted"

    def __init__(self, algebra: BarAlgebra, N: int):
        if N < algebra.n:
            raise SemanticError(f"cannot restrict Br_{N} to Br_{algebra.n}")
        self.N = N
        super().__init__(algebra)

    @cached_property
    def labels(self) -> List[Hashable]:
        return enumerate_diagrams(self.N)

    def _act(self, d, j):
        res = diagram_compose(self.labels[j], embed_diagram(flip(d), self.N))
        return {self.index[res.diagram]: self.algebra.arith.delta_power(res.loops)}

    @property
    def name(self) -> str:
        return f"Br_{self.N}"


class ModuleFactory:
    _modules = {
        "trivial": TrivialModule,
        "induced": InducedModule,
        "quotient": QuotientModule,
        "restricted": RestrictedModule,
    }

    @classmethod
    def get_module(cls, kind: str, algebra: BarAlgebra, *args) -> CoefficientModule:
        module_cls = cls._modules.get(kind)
        if not module_cls:
            raise SemanticError(f"Unsupported coefficient module: {kind}")
        return module_cls(algebra, *args)


def _flat(prefix: Tuple[int, ...], j: int, A: int, M: int) -> int:
    idx = 0
    for i in prefix:
        idx = idx * A + i
    return idx * M + j


def check_budget(algebra: BarAlgebra, module: CoefficientModule, D: int) -> int:
    size = algebra.dim_abar ** D * module.dim
    budget = get_budget()
    if size > budget:
        raise BudgetExceeded(
            f"bar complex {algebra.name} with {module.name} up to degree {D} needs {size} "
            f"basis elements; budget is {budget} (set BRAUER_BUDGET to raise it)"
        )
    return size


def _bar_boundary(algebra: BarAlgebra, module: CoefficientModule, k: int, progress: bool) -> SparseMatrix:
    ar = algebra.arith
    A, M = algebra.dim_abar, module.dim
    sign_k = ar.one if k % 2 == 0 else ar.neg(ar.one)
    cols: List[Column] = []

    def bump(col: Column, r: int, v) -> None:
        s = ar.add(col.get(r, ar.zero), v)
        if s == 0:
            col.pop(r, None)
        else:
            col[r] = s

    prefixes = cartesian(range(A), repeat=k)
    total = A ** k
    for seq in tqdm(prefixes, total=total, desc=f"bar d_{k}", ascii=True,
                    dynamic_ncols=True, disable=not progress or total < 1000):
        head = seq[:-1]
        d = algebra.abar[seq[-1]]
        act = module.action(d)
        e = algebra.eps(d)
        inner = []
        for t in range(k - 1):
            sign = ar.one if (t + 1) % 2 == 0 else ar.neg(ar.one)
            for q, c in algebra.product(seq[t], seq[t + 1]):
                inner.append((seq[:t] + (q,) + seq[t + 2:], ar.mul(sign, c)))
        for j in range(M):
            col: Column = {}
            for new_seq, c in inner:
                bump(col, _flat(new_seq, j, A, M), c)
            for jj, c in act[j].items():
                bump(col, _flat(head, jj, A, M), ar.mul(sign_k, c))
            if e != 0:
                bump(col, _flat(head, j, A, M), ar.neg(ar.mul(sign_k, e)))
            cols.append(col)
    return SparseMatrix(A ** (k - 1) * M, A ** k * M, cols)


def build_bar_complex(algebra: BarAlgebra, module: CoefficientModule, D: int, progress: bool = False) -> ChainComplex:
    """Degrees 0..D; homology is exact through D - 1."""
    if D < 1:
        raise SemanticError(f"maximal degree D must be >= 1, got {D}")
    if module.algebra is not algebra:
        raise SemanticError("coefficient module belongs to a different algebra")
    check_budget(algebra, module, D)
    A, M = algebra.dim_abar, module.dim
    ranks = {k: A ** k * M for k in range(D + 1)}
    boundaries = {k: _bar_boundary(algebra, module, k, progress) for k in range(1, D + 1)}
    logger.info(f"Built bar complex {algebra.name} / {module.name}: ranks {list(ranks.values())}")
    return ChainComplex(algebra.ring, 0, D, ranks, boundaries, None, D - 1,
                        name=f"B({algebra.name}; {module.name})")


@dataclass
class TorResult:
    algebra: str
    module: str
    ring: str
    D: int
    groups: Dict[int, HomologyGroup]
    ranks: Dict[int, int] = field(default_factory=dict)
    complex: Optional[ChainComplex] = field(default=None, repr=False)

    def __getitem__(self, i: int) -> HomologyGroup:
        return self.groups[i]

    def to_rows(self) -> List[dict]:
        return [
            dict(H.to_row(i), algebra=self.algebra, module=self.module, ring=self.ring)
            for i, H in sorted(self.groups.items())
        ]


def bar_tor(algebra: BarAlgebra, module: CoefficientModule, D: int, progress: bool = False) -> TorResult:
    """Tor_i^A(t, M) for 0 <= i < D."""
    C = build_bar_complex(algebra, module, D, progress)
    groups = complex_homology(C, progress=progress)
    return TorResult(algebra.name, module.name, str(algebra.ring), D, groups, dict(C.ranks), C)


def tor(kind: str, n: int, ring: Ring, D: int, module: str = "trivial", *args, progress: bool = False) -> TorResult:
    """Shorthand: tor("brauer", 2, ring, 2) or tor("brauer", 3, ring, 3, "induced", 2)."""
    algebra = BarAlgebra(kind, n, ring)
    return bar_tor(algebra, ModuleFactory.get_module(module, algebra, *args), D, progress)
