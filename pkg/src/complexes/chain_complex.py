import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Hashable, List, Optional, Sequence

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingElem
from src.brauer.errors import ComplexError

Column = Dict[int, RingElem]


@dataclass
class SparseMatrix:
    """Column-major sparse matrix; each column maps row index -> nonzero entry."""

    nrows: int
    ncols: int
    columns: List[Column] = field(default_factory=list)

    def __post_init__(self):
        if not self.columns:
            self.columns = [dict() for _ in range(self.ncols)]
        if len(self.columns) != self.ncols:
            raise ComplexError(f"expected {self.ncols} columns, got {len(self.columns)}")
        for col in self.columns:
            for r in col:
                if not 0 <= r < self.nrows:
                    raise ComplexError(f"row index {r} outside 0..{self.nrows - 1}")

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[RingElem]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{r: rows[r][c] for r in range(nrows) if rows[r][c] != 0} for c in range(ncols)]
        return cls(nrows, ncols, cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def entry(self, r: int, c: int) -> RingElem:
        return self.columns[c].get(r, 0)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def to_dense(self) -> List[List[RingElem]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def apply(self, vector: Column, ring: Ring) -> Column:
        """Matrix times a sparse column vector."""
        out: Column = {}
        for c, x in vector.items():
            for r, v in self.columns[c].items():
                s = ring.add(out.get(r, ring.zero), ring.mul(v, x))
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def matmul(self, other: "SparseMatrix", ring: Ring) -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ComplexError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(col, ring) for col in other.columns])

    def hstack(self, extra: Sequence[Column]) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols + len(extra), list(self.columns) + [dict(c) for c in extra])

    def triplets(self) -> List[List]:
        """[[row, col, value], ...] sorted by column then row; values as strings."""
        return [[r, c, str(v)] for c, col in enumerate(self.columns) for r, v in sorted(col.items())]


@dataclass
class ChainComplex:
    """
    Graded free modules in degrees lo..hi with boundaries d_p: C_p -> C_{p-1}.
    Entries live in `ring.assembly` (the integer lift for Z/m). Homology is
    trustworthy through `exact_through`; above it the complex is a truncation.
    """

    ring: Ring
    lo: int
    hi: int
    ranks: Dict[int, int]
    boundaries: Dict[int, SparseMatrix]
    labels: Optional[Dict[int, List[Hashable]]] = None
    exact_through: Optional[int] = None
    name: str = "complex"

    def __post_init__(self):
        if self.exact_through is None:
            self.exact_through = self.hi
        for p in range(self.lo, self.hi + 1):
            self.ranks.setdefault(p, 0)
        for p in range(self.lo + 1, self.hi + 1):
            mat = self.boundaries.get(p)
            if mat is None:
                self.boundaries[p] = SparseMatrix.zero(self.ranks[p - 1], self.ranks[p])
            elif (mat.nrows, mat.ncols) != (self.ranks[p - 1], self.ranks[p]):
                raise ComplexError(
                    f"{self.name}: d_{p} is {mat.nrows}x{mat.ncols}, expected "
                    f"{self.ranks[p - 1]}x{self.ranks[p]}"
                )
        if self.labels is not None:
            for p, labs in self.labels.items():
                if len(labs) != self.ranks.get(p, 0):
                    raise ComplexError(f"{self.name}: {len(labs)} labels for rank {self.ranks.get(p, 0)} in degree {p}")
        self.check_square_zero()

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, p: int) -> int:
        return self.ranks.get(p, 0)

    def boundary(self, p: int) -> SparseMatrix:
        """d_p; the zero map outside the stored range."""
        if self.lo < p <= self.hi:
            return self.boundaries[p]
        return SparseMatrix.zero(self.rank(p - 1), self.rank(p))

    def check_square_zero(self) -> None:
        arith = self.ring.assembly
        for p in range(self.lo + 2, self.hi + 1):
            prod = self.boundaries[p - 1].matmul(self.boundaries[p], arith)
            if not prod.is_zero():
                raise ComplexError(f"{self.name}: d_{p - 1} d_{p} != 0")

    def restrict(self, keep: Callable[[int, Hashable], bool], name: Optional[str] = None) -> "ChainComplex":
        """
        Keep the labelled basis vectors selected by `keep(degree, label)` and
        drop the rest (rows and columns). Used for subcomplexes and quotients.
        """
        if self.labels is None:
            raise ComplexError(f"{self.name}: restrict needs basis labels")
        kept = {p: [i for i, lab in enumerate(self.labels.get(p, [])) if keep(p, lab)] for p in self.degrees}
        new_index = {p: {old: new for new, old in enumerate(idx)} for p, idx in kept.items()}
        boundaries = {}
        for p in range(self.lo + 1, self.hi + 1):
            rows = new_index[p - 1]
            cols = []
            for old in kept[p]:
                col = self.boundaries[p].columns[old]
                cols.append({rows[r]: v for r, v in col.items() if r in rows})
            boundaries[p] = SparseMatrix(len(kept[p - 1]), len(kept[p]), cols)
        return ChainComplex(
            ring=self.ring,
            lo=self.lo,
            hi=self.hi,
            ranks={p: len(idx) for p, idx in kept.items()},
            boundaries=boundaries,
            labels={p: [self.labels[p][i] for i in idx] for p, idx in kept.items()},
            exact_through=self.exact_through,
            name=name or f"{self.name}|restricted",
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ring": self.ring.name,
            "delta": str(self.ring.delta),
            "lo": self.lo,
            "hi": self.hi,
            "exact_through": self.exact_through,
            "ranks": {str(p): self.rank(p) for p in self.degrees},
            "matrices": {str(p): self.boundaries[p].triplets() for p in range(self.lo + 1, self.hi + 1)},
        }

    def export(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_json(), f, sort_keys=True)
        return path
