"""
Maps on Tor induced by an algebra map f: A -> A' preserving augmentations
and an f-equivariant module map f_L: M -> M', computed on bar complexes.
"""
import sys
from dataclasses import dataclass
from itertools import product as cartesian
from pathlib import Path
from typing import Callable, Dict, List, Optional

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import RingKind
from src.brauer.diagrams import BrauerDiagram, embed_diagram, identity
from src.brauer.errors import ComplexError, SemanticError
from src.brauer.representations import project_diagram
from src.complexes.chain_complex import ChainComplex, Column, SparseMatrix
from src.homology.bar import BarAlgebra, CoefficientModule, InducedModule, TrivialModule, _flat, build_bar_complex
from src.homology.groups import HomologyGroup, complex_homology
from src.homology.snf import kernel_basis, matrix_rank, snf
from utils.logger import setup_logger
from utils.paths import get_log_path

logger = setup_logger(get_log_path("induced"), "induced")

DiagramMap = Callable[[BrauerDiagram], Optional[BrauerDiagram]]


@dataclass
class AlgebraMap:
    """Linear map sending each basis diagram to a basis diagram or to 0 (None)."""

    source: BarAlgebra
    target: BarAlgebra
    on_diagram: DiagramMap
    name: str

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise SemanticError(f"{self.name}: ring mismatch {self.source.ring} vs {self.target.ring}")

    def __call__(self, d: BrauerDiagram) -> Optional[BrauerDiagram]:
        return self.on_diagram(d)

    def validate(self) -> None:
        """Unital, lands in the target and preserves augmentation."""
        if self(self.source.identity) != self.target.identity:
            raise SemanticError(f"{self.name} does not send 1 to 1")
        for d in self.source.basis:
            img = self(d)
            if img is not None and not self.target.contains(img):
                raise SemanticError(f"{self.name}: image of {d} is not in {self.target.name}")
            e_img = self.target.eps(img) if img is not None else self.target.arith.zero
            if e_img != self.source.eps(d):
                raise SemanticError(f"{self.name} does not preserve the augmentation at {d}")

    def abar_image(self, i: int) -> Optional[int]:
        """f(d - eps(d)) = f(d) - eps(f(d)), a basis vector of A'-bar or 0."""
        img = self(self.source.abar[i])
        if img is None or img == self.target.identity:
            return None
        return self.target.abar_index[img]


def iota_map(source: BarAlgebra, target: BarAlgebra) -> AlgebraMap:
    if source.kind != "symmetric" or target.kind != "brauer" or source.n != target.n:
        raise SemanticError("iota maps RS_n into Br_n")
    return AlgebraMap(source, target, lambda d: d, f"iota_{source.n}")


def pi_map(source: BarAlgebra, target: BarAlgebra) -> AlgebraMap:
    if source.kind != "brauer" or target.kind != "symmetric" or source.n != target.n:
        raise SemanticError("pi maps Br_n onto RS_n")
    return AlgebraMap(source, target, lambda d: d if d.is_permutation else None, f"pi_{source.n}")


def embed_map(source: BarAlgebra, target: BarAlgebra) -> AlgebraMap:
    if source.n > target.n or (source.kind == "brauer" and target.kind == "symmetric"):
        raise SemanticError(f"cannot embed {source.name} into {target.name}")
    N = target.n
    return AlgebraMap(source, target, lambda d: embed_diagram(d, N), f"{source.name}->{target.name}")


def identity_map(algebra: BarAlgebra) -> AlgebraMap:
    return AlgebraMap(algebra, algebra, lambda d: d, f"id_{algebra.name}")


@dataclass
class ModuleMap:
    """Matrix of f_L: column j is the image of the j-th source basis vector."""

    source: CoefficientModule
    target: CoefficientModule
    columns: List[Column]
    name: str

    def __post_init__(self):
        if len(self.columns) != self.source.dim:
            raise SemanticError(f"{self.name}: {len(self.columns)} columns for a module of rank {self.source.dim}")


def identity_module_map(module: CoefficientModule) -> ModuleMap:
    one = module.algebra.arith.one
    return ModuleMap(module, module, [{j: one} for j in range(module.dim)], f"id_{module.name}")


def label_module_map(source: CoefficientModule, target: CoefficientModule) -> ModuleMap:
    """Basis vectors go to the target basis vector with the same label, or to 0."""
    one = source.algebra.arith.one
    cols = [{target.index[lab]: one} if lab in target.index else {} for lab in source.labels]
    return ModuleMap(source, target, cols, f"{source.name}->{target.name}")


def unit_module_map(source: TrivialModule, target: InducedModule) -> ModuleMap:
    """t -> A_n (x)_{A_m} t, 1 |-> 1 (x) 1."""
    if not isinstance(source, TrivialModule) or not isinstance(target, InducedModule):
        raise SemanticError("the unit map goes from t to an induced module")
    unit = project_diagram(identity(target.algebra.n), target.m)
    return ModuleMap(source, target, [{target.index[unit]: source.algebra.arith.one}], f"t->{target.name}")


def check_equivariant(f: AlgebraMap, f_L: ModuleMap) -> None:
    """f_L(a v) = f(a) f_L(v) on basis elements."""
    if f_L.source.algebra is not f.source or f_L.target.algebra is not f.target:
        raise SemanticError(f"{f_L.name} is not a module map over {f.name}")
    ar = f.source.arith

    def apply(cols: List[Column], vec: Column) -> Column:
        out: Column = {}
        for j, x in vec.items():
            for r, v in cols[j].items():
                out[r] = ar.add(out.get(r, ar.zero), ar.mul(v, x))
        return {r: v for r, v in out.items() if v != 0}

    for d in f.source.basis:
        img = f(d)
        acting = f_L.target.action(img) if img is not None else None
        for j in range(f_L.source.dim):
            lhs = apply(f_L.columns, f_L.source.action(d)[j])
            rhs = apply(acting, f_L.columns[j]) if acting is not None else {}
            if lhs != rhs:
                raise SemanticError(f"{f_L.name} is not equivariant along {f.name} at {d}, basis vector {j}")


def chain_map(f: AlgebraMap, f_L: ModuleMap, k: int) -> SparseMatrix:
    """Degree-k component f^(x)k (x) f_L of the map of bar complexes."""
    A, M = f.source.dim_abar, f_L.source.dim
    A2, M2 = f.target.dim_abar, f_L.target.dim
    images = [f.abar_image(i) for i in range(A)]
    cols: List[Column] = []
    for seq in cartesian(range(A), repeat=k):
        mapped = [images[i] for i in seq]
        if any(i is None for i in mapped):
            cols.extend({} for _ in range(M))
            continue
        for j in range(M):
            cols.append({_flat(tuple(mapped), jj, A2, M2): c for jj, c in f_L.columns[j].items()})
    return SparseMatrix(A2 ** k * M2, A ** k * M, cols)


class TorMap:
    """f_*: Tor_i^A(t, M) -> Tor_i^{A'}(t, M') for 0 <= i < D."""

    def __init__(
        self,
        f: AlgebraMap,
        f_L: ModuleMap,
        D: int,
        progress: bool = False,
        source_complex: Optional[ChainComplex] = None,
        target_complex: Optional[ChainComplex] = None,
        validate: bool = True,
    ):
        ring = f.source.ring
        if ring.kind not in (RingKind.INTEGERS,) and not ring.is_field:
            raise SemanticError(f"induced maps over {ring.name} are not supported; use Z, Q or F_p")
        if validate:
            f.validate()
            check_equivariant(f, f_L)
        self.f, self.f_L, self.D = f, f_L, D
        self.ring = ring
        self.arith = f.source.arith
        self.source = source_complex or build_bar_complex(f.source, f_L.source, D, progress)
        self.target = target_complex or build_bar_complex(f.target, f_L.target, D, progress)
        self.maps: Dict[int, SparseMatrix] = {k: chain_map(f, f_L, k) for k in range(D + 1)}
        self._check_chain_map()
        self.progress = progress
        self._source_groups: Optional[Dict[int, HomologyGroup]] = None
        self._target_groups: Optional[Dict[int, HomologyGroup]] = None
        self._cycles: Dict[int, List[Column]] = {}

    @property
    def name(self) -> str:
        return f"({self.f.name}, {self.f_L.name})_*"

    def _check_chain_map(self) -> None:
        for k in range(1, self.D + 1):
            left = self.target.boundary(k).matmul(self.maps[k], self.arith)
            right = self.maps[k - 1].matmul(self.source.boundary(k), self.arith)
            if left.columns != right.columns:
                raise ComplexError(f"{self.name} does not commute with the boundary in degree {k}")

    def _degree(self, i: int) -> None:
        if not 0 <= i < self.D:
            raise SemanticError(f"degree {i} outside 0..{self.D - 1}")

    @property
    def source_groups(self) -> Dict[int, HomologyGroup]:
        if self._source_groups is None:
            self._source_groups = complex_homology(self.source, progress=self.progress)
        return self._source_groups

    @property
    def target_groups(self) -> Dict[int, HomologyGroup]:
        if self._target_groups is None:
            self._target_groups = complex_homology(self.target, progress=self.progress)
        return self._target_groups

    def cycles(self, i: int) -> List[Column]:
        if i not in self._cycles:
            self._cycles[i] = kernel_basis(self.source.boundary(i), self.arith)
        return self._cycles[i]

    def _lattice_equal(self, B: SparseMatrix, G: SparseMatrix) -> bool:
        """span(B) = span(G), given span(B) <= span(G)."""
        if self.ring.kind is RingKind.INTEGERS:
            return snf(G).invariant_factors == snf(B).invariant_factors
        return matrix_rank(G, self.ring) == matrix_rank(B, self.ring)

    def is_surjective(self, i: int) -> bool:
        """Cycles of the target are hit modulo boundaries."""
        self._degree(i)
        images = [self.maps[i].apply(z, self.arith) for z in self.cycles(i)]
        G = self.target.boundary(i + 1).hstack(images)
        cycle_rank = self.target.rank(i) - matrix_rank(self.target.boundary(i), self.ring)
        if self.ring.kind is RingKind.INTEGERS:
            res = snf(G)
            ok = res.rank == cycle_rank and not res.torsion
        else:
            ok = matrix_rank(G, self.ring) == cycle_rank
        logger.info(f"{'✅' if ok else '⚠️'} {self.name} in degree {i}: surjective={ok}")
        return ok

    def is_isomorphism(self, i: int) -> bool:
        """Surjective onto an isomorphic group; finitely generated abelian groups are Hopfian."""
        return self.is_surjective(i) and self.source_groups[i] == self.target_groups[i]

    def induces_identity(self, i: int) -> bool:
        """For an endomorphism: every cycle z has f(z) - z in the boundaries."""
        self._degree(i)
        if self.f.source is not self.f.target or self.f_L.source is not self.f_L.target:
            raise SemanticError(f"{self.name} is not an endomorphism")
        ar = self.arith
        diffs = []
        for z in self.cycles(i):
            img = self.maps[i].apply(z, ar)
            for r, v in z.items():
                s = ar.sub(img.get(r, ar.zero), v)
                if s == 0:
                    img.pop(r, None)
                else:
                    img[r] = s
            diffs.append(img)
        B = self.target.boundary(i + 1)
        return self._lattice_equal(B, B.hstack(diffs))

    def compose(self, after: "TorMap") -> "TorMap":
        """after . self, reusing the bar complexes already built."""
        if self.f.target is not after.f.source or self.f_L.target is not after.f_L.source:
            raise SemanticError(f"cannot compose {after.name} after {self.name}")
        first, second = self.f, after.f

        def on_diagram(d):
            img = first(d)
            return second(img) if img is not None else None

        f = AlgebraMap(first.source, second.target, on_diagram, f"{second.name}.{first.name}")
        ar = self.arith
        cols = []
        for col in self.f_L.columns:
            out: Column = {}
            for j, x in col.items():
                for r, v in after.f_L.columns[j].items():
                    out[r] = ar.add(out.get(r, ar.zero), ar.mul(v, x))
            cols.append({r: v for r, v in out.items() if v != 0})
        f_L = ModuleMap(self.f_L.source, after.f_L.target, cols, f"{after.f_L.name}.{self.f_L.name}")
        return TorMap(f, f_L, min(self.D, after.D), source_complex=self.source,
                      target_complex=after.target, validate=False)


def tor_induced_map(f: AlgebraMap, f_L: ModuleMap, D: int, progress: bool = False) -> TorMap:
    return TorMap(f, f_L, D, progress)
